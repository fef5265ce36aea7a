#pragma once

#include <array>

#include "ququart/core/channel.hpp"
#include "ququart/noise/decay.hpp"

namespace ququart {

/// Jump probabilities gamma(j, i) for the decays j -> i with i < j.
struct DampingSpec {
  /// gamma[j][i]; only entries with i < j are used.
  std::array<std::array<double, 4>, 4> gamma{};

  static DampingSpec none() { return {}; }
  /// xi_j = sum_{i<j} gamma(j, i).
  double xi(int j) const;
  /// Throws InvalidArgument unless every gamma lies in [0, 1] and every xi_j <= 1.
  void validate() const;
};

/// Probability-conserving multi-level amplitude damping:
/// K_0 = |0><0| + sum_{j=1..3} sqrt(1 - xi_j)|j><j|, K_ij = sqrt(gamma_ji)|i><j|.
KrausChannel damping_channel(const DampingSpec& spec);

/// gamma_ji = 1 - exp(-t |Gamma_ji|) for every downward pair, t in microseconds.
DampingSpec gamma_from_rates(const DecayMatrix& g, double t_us);

/// Decay matrix whose single step reproduces the damping channel on diagonal
/// states: the off-diagonal rates are the jump probabilities themselves.
DecayMatrix step_matrix(const DampingSpec& spec);

/// Echo coherence times of the neighbouring subspaces, in microseconds.
struct CoherenceTimes {
  double t2_01 = 118.0;
  double t2_12 = 76.0;
  double t2_23 = 35.0;
};

/// Pure dephasing over `t_us`. Each level carries a random phase built as a
/// sum of independent Gaussian increments, one per neighbouring subspace, so
/// the coherence factors D_ij form a valid (positive semidefinite) Schur
/// multiplier. The increment variance is set from 1/T_phi = 1/T2 - 1/(2 T1)
/// using the effective T1 of `g`, clamped at zero.
KrausChannel dephasing_channel(const CoherenceTimes& t2, const DecayMatrix& g, double t_us);

}  // namespace ququart
