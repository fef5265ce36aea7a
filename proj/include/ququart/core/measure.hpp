#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ququart/core/state.hpp"

namespace ququart {

Probabilities measure_probs(const QuditState& psi);
Probabilities measure_probs(const QuditDensity& rho);

/// Throws InvalidArgument if |sum p - 1| > 1e-9 or any entry is negative.
void check_normalized(const Probabilities& p, double tol = 1e-9);

using Counts = std::array<long, 4>;

/// Multinomial shot counts; a pure function of (p, n, seed).
Counts sample_shots(const Probabilities& p, long n, std::uint64_t seed);

Probabilities frequencies(const Counts& counts);

/// Observable diagonal in the computational basis.
struct DiagObservable {
  std::array<double, 4> diagonal{};
  std::string label;

  static DiagObservable II();
  static DiagObservable IZ();
  static DiagObservable ZI();
  static DiagObservable ZZ();
};

/// <M> = diag(M)^T r. No clamping: mitigated r may be unphysical.
double expectation(const DiagObservable& m, const Probabilities& r);

}  // namespace ququart
