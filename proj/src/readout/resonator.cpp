#include "ququart/readout/resonator.hpp"

#include <cmath>

namespace ququart {

ResonatorParams ResonatorParams::matched(double chi_mhz) {
  ResonatorParams p;
  p.chi_mhz = chi_mhz;
  p.kappa_mhz = 2 * chi_mhz;
  p.bare_mhz = p.probe_mhz + 1.5 * chi_mhz;
  for (int n = 0; n < kDim; ++n) p.shift_mhz[n] = -n * chi_mhz;
  return p;
}

void ResonatorParams::validate() const {
  if (!(kappa_mhz > 0)) throw InvalidArgument("resonator linewidth kappa must be positive");
  for (double s : shift_mhz)
    if (!std::isfinite(s)) throw InvalidArgument("non-finite dispersive shift");
  if (!std::isfinite(probe_mhz) || !std::isfinite(bare_mhz)) throw InvalidArgument("non-finite frequency");
}

double resonance_mhz(const ResonatorParams& p, KetIndex n) {
  if (n < 0 || n >= kDim) throw InvalidArgument("level out of range");
  return p.bare_mhz + p.shift_mhz[n];
}

double phase_at(const ResonatorParams& p, KetIndex n, double probe_mhz) {
  p.validate();
  return 2.0 * std::atan(2.0 * (probe_mhz - resonance_mhz(p, n)) / p.kappa_mhz);
}

double phase_response(const ResonatorParams& p, KetIndex n) { return phase_at(p, n, p.probe_mhz); }

}  // namespace ququart
