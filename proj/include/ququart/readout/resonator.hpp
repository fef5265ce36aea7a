#pragma once

#include <array>

#include "ququart/types.hpp"

namespace ququart {

/// Dispersively coupled readout resonator. Frequencies in MHz.
struct ResonatorParams {
  double kappa_mhz = 0.524;
  double chi_mhz = 0.288;
  /// Probe (readout) frequency.
  double probe_mhz = 8782.41;
  /// Resonator frequency with the transmon in |0>.
  double bare_mhz = 8782.41 + 1.5 * 0.288;
  /// Cumulative pull of the resonator for each level relative to |0>. The
  /// default is -n chi, which puts the probe midway between the four lines
  /// when bare = probe + 1.5 chi.
  std::array<double, 4> shift_mhz{0.0, -0.288, -2 * 0.288, -3 * 0.288};

  /// Device values with kappa = 2 chi and the probe at the midpoint.
  static ResonatorParams matched(double chi_mhz);
  void validate() const;
};

/// Resonator line for level n.
double resonance_mhz(const ResonatorParams& p, KetIndex n);

/// Reflection phase of a single-port resonator probed at `probe_mhz`:
/// 2 atan(2 (f_probe - f_n) / kappa), in (-pi, pi).
double phase_response(const ResonatorParams& p, KetIndex n);
/// Same model at an arbitrary probe frequency.
double phase_at(const ResonatorParams& p, KetIndex n, double probe_mhz);

}  // namespace ququart
