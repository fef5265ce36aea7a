#pragma once

#include <array>

#include "ququart/types.hpp"

namespace ququart {

/// Per-microsecond population-transfer generator Gamma (units 1/us).
///
/// Row j describes the flow out of level j: Gamma(j, i) <= 0 for i != j is
/// minus the rate j -> i and Gamma(j, j) >= 0. One step maps populations by
/// P <- (I - Gamma^T) P.
class DecayMatrix {
 public:
  /// Tolerance applied to row sums on construction. Measured matrices are
  /// averages of rounded values and may miss zero by a few 1e-4.
  static constexpr double kDefaultRowSumTol = 1e-3;

  DecayMatrix() : gamma_(Mat4r::Zero()) {}
  /// Throws InvalidArgument on a negative diagonal, a positive off-diagonal,
  /// or a row sum further than `row_sum_tol` from zero.
  explicit DecayMatrix(const Mat4r& gamma, double row_sum_tol = kDefaultRowSumTol);
  /// Row-major, 16 entries.
  static DecayMatrix from_row_major(const std::array<double, 16>& v, double row_sum_tol = kDefaultRowSumTol);

  /// Averaged matrix measured on the reference device.
  static DecayMatrix reference_device();

  const Mat4r& gamma() const { return gamma_; }
  /// |Gamma(j, i)|, the rate from j to i (zero on the diagonal).
  double rate(int from, int to) const;

  /// max_j |sum_i Gamma(j, i)|: how far I - Gamma^T is from column-stochastic.
  double stochasticity_defect() const;
  /// I - Gamma^T exactly as given.
  Mat4r raw_transfer() const;
  /// I - Gamma^T with each diagonal entry recomputed from the off-diagonal
  /// rates, so every column sums to one.
  Mat4r transfer() const;

 private:
  Mat4r gamma_;
};

/// (I - Gamma^T)^steps p, using the probability-conserving transfer matrix.
Probabilities decay_propagate(const Probabilities& p0, const DecayMatrix& g, int steps);
/// exp(t log(I - Gamma^T)) p for real t >= 0 (in microseconds).
Probabilities decay_propagate_continuous(const Probabilities& p0, const DecayMatrix& g, double t_us);
/// Transfer matrix raised to a real power.
Mat4r transfer_power(const DecayMatrix& g, double t_us);

struct EffectiveT1 {
  double t01 = 0.0;
  double t12 = 0.0;
  double t23 = 0.0;
};

/// 1 / |Gamma(j, j-1)| for the neighbouring transitions, in microseconds.
EffectiveT1 effective_t1(const DecayMatrix& g);

}  // namespace ququart
