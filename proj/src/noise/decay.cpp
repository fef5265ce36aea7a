#include "ququart/noise/decay.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "ququart/core/measure.hpp"

namespace ququart {

DecayMatrix::DecayMatrix(const Mat4r& gamma, double row_sum_tol) : gamma_(gamma) {
  for (int j = 0; j < kDim; ++j) {
    double sum = 0.0;
    for (int i = 0; i < kDim; ++i) {
      const double v = gamma(j, i);
      if (!std::isfinite(v)) throw InvalidArgument("decay matrix has a non-finite entry");
      if (i == j && v < 0) throw InvalidArgument(fmt::format("decay matrix diagonal ({},{}) is negative", j, j));
      if (i != j && v > 0) {
        throw InvalidArgument(fmt::format("decay matrix off-diagonal ({},{}) = {} must be <= 0", j, i, v));
      }
      sum += v;
    }
    if (std::abs(sum) > row_sum_tol) {
      throw InvalidArgument(fmt::format("decay matrix row {} sums to {:.3g}, tolerance {:.3g}", j, sum, row_sum_tol));
    }
  }
}

DecayMatrix DecayMatrix::from_row_major(const std::array<double, 16>& v, double row_sum_tol) {
  Mat4r g;
  for (int k = 0; k < 16; ++k) g(k / 4, k % 4) = v[k];
  return DecayMatrix(g, row_sum_tol);
}

DecayMatrix DecayMatrix::reference_device() {
  return from_row_major({0.00044, -0.00044, 0.0, 0.0,        //
                         -0.00599, 0.00706, -0.00108, 0.0,   //
                         -0.00055, -0.00802, 0.01112, -0.00255,  //
                         -0.00017, -0.00078, -0.0118, 0.01222});
}

double DecayMatrix::rate(int from, int to) const {
  if (from == to) return 0.0;
  return std::abs(gamma_(from, to));
}

double DecayMatrix::stochasticity_defect() const {
  return gamma_.rowwise().sum().cwiseAbs().maxCoeff();
}

Mat4r DecayMatrix::raw_transfer() const { return Mat4r::Identity() - gamma_.transpose(); }

Mat4r DecayMatrix::transfer() const {
  Mat4r t = raw_transfer();
  for (int j = 0; j < kDim; ++j) {
    double out = 0.0;
    for (int i = 0; i < kDim; ++i)
      if (i != j) out += t(i, j);
    t(j, j) = 1.0 - out;
  }
  return t;
}

namespace {

Probabilities apply_transfer(const Mat4r& m, const Probabilities& p0) {
  Vec4r v = m * to_vector(p0);
  for (int n = 0; n < kDim; ++n) v[n] = std::max(0.0, v[n]);
  return to_probabilities(v / v.sum());
}

}  // namespace

Probabilities decay_propagate(const Probabilities& p0, const DecayMatrix& g, int steps) {
  if (steps < 0) throw InvalidArgument("decay time must be non-negative");
  check_normalized(p0);
  Mat4r m = Mat4r::Identity();
  const Mat4r t = g.transfer();
  for (int k = 0; k < steps; ++k) m = t * m;
  return apply_transfer(m, p0);
}

Mat4r transfer_power(const DecayMatrix& g, double t_us) {
  if (!(t_us >= 0)) throw InvalidArgument("decay time must be non-negative");
  if (t_us == 0) return Mat4r::Identity();
  const double rounded = std::round(t_us);
  if (t_us == rounded && rounded < 1e6) {
    Mat4r m = Mat4r::Identity();
    const Mat4r t = g.transfer();
    for (int k = 0; k < static_cast<int>(rounded); ++k) m = t * m;
    return m;
  }
  const Mat4r log_t = g.transfer().log();
  return (t_us * log_t).exp();
}

Probabilities decay_propagate_continuous(const Probabilities& p0, const DecayMatrix& g, double t_us) {
  check_normalized(p0);
  if (!(t_us >= 0)) throw InvalidArgument("decay time must be non-negative");
  if (t_us == 0) return p0;
  const Mat4r log_t = g.transfer().log();
  return apply_transfer((t_us * log_t).exp(), p0);
}

EffectiveT1 effective_t1(const DecayMatrix& g) {
  auto inv = [](double r) { return r > 0 ? 1.0 / r : std::numeric_limits<double>::infinity(); };
  return {inv(g.rate(1, 0)), inv(g.rate(2, 1)), inv(g.rate(3, 2))};
}

}  // namespace ququart
