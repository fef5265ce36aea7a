#include "ququart/util/rng.hpp"

#include <algorithm>

namespace ququart {

std::vector<long> multinomial(Rng& rng, std::span<const double> p, long n) {
  std::vector<long> counts(p.size(), 0);
  long remaining = n;
  double mass_left = 1.0;
  for (std::size_t k = 0; k + 1 < p.size() && remaining > 0; ++k) {
    const double q = mass_left > 0.0 ? std::clamp(p[k] / mass_left, 0.0, 1.0) : 0.0;
    if (q >= 1.0) {
      counts[k] = remaining;
      remaining = 0;
      break;
    }
    if (q > 0.0) {
      std::binomial_distribution<long> bin(remaining, q);
      counts[k] = bin(rng);
      remaining -= counts[k];
    }
    mass_left -= p[k];
  }
  if (!p.empty()) counts.back() += remaining;
  return counts;
}

}  // namespace ququart
