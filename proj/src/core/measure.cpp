#include "ququart/core/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ququart/util/rng.hpp"

namespace ququart {

Probabilities measure_probs(const QuditState& psi) {
  Probabilities p{};
  for (int n = 0; n < kDim; ++n) p[n] = std::norm(psi[n]);
  return p;
}

Probabilities measure_probs(const QuditDensity& rho) {
  Probabilities p{};
  double sum = 0.0;
  for (int n = 0; n < kDim; ++n) {
    // Round-off can push an empty population slightly negative.
    p[n] = std::max(0.0, rho(n, n).real());
    sum += p[n];
  }
  for (auto& x : p) x /= sum;
  return p;
}

void check_normalized(const Probabilities& p, double tol) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= -tol)) throw InvalidArgument("probability vector has a negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw InvalidArgument("probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
}

Counts sample_shots(const Probabilities& p, long n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("shot count must be at least 1");
  check_normalized(p);
  Probabilities q = p;
  for (auto& x : q) x = std::max(0.0, x);
  Rng rng(seed);
  const auto c = multinomial(rng, q, n);
  return {c[0], c[1], c[2], c[3]};
}

Probabilities frequencies(const Counts& counts) {
  const double n = static_cast<double>(counts[0] + counts[1] + counts[2] + counts[3]);
  if (n <= 0) throw InvalidArgument("no shots recorded");
  return {counts[0] / n, counts[1] / n, counts[2] / n, counts[3] / n};
}

DiagObservable DiagObservable::II() { return {{1, 1, 1, 1}, "II"}; }
// Level n = A + 2B; the left Pauli letter acts on B, the right one on A.
DiagObservable DiagObservable::IZ() { return {{1, -1, 1, -1}, "IZ"}; }
DiagObservable DiagObservable::ZI() { return {{1, 1, -1, -1}, "ZI"}; }
DiagObservable DiagObservable::ZZ() { return {{1, -1, -1, 1}, "ZZ"}; }

double expectation(const DiagObservable& m, const Probabilities& r) {
  double v = 0.0;
  for (int n = 0; n < kDim; ++n) v += m.diagonal[n] * r[n];
  return v;
}

}  // namespace ququart
