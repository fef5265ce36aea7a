#pragma once

#include <string>

#include "ququart/core/state.hpp"
#include "ququart/types.hpp"

namespace ququart {

inline constexpr double kPulseDurationNs = 50.0;
inline constexpr double kPulseBufferNs = 10.0;

enum class GateKind { X, Y, VZ };

/// One element of the intrinsic alphabet {X_ij(theta), Y_ij(theta), Z_k(theta)}.
///
/// X/Y act on a neighbouring subspace {|lower>, |lower+1>} and follow the
/// exp(+i theta/2 G) convention with the tabulated generators, which are the
/// identity (not zero) on the two spectator levels. `drive_phase` is the
/// frame offset accumulated by virtual-Z propagation; for a Y drive it is
/// added on top of the intrinsic -pi/2 quadrature.
///
/// VZ is diagonal: Z_k(theta) = diag(..., e^{i theta} at level k, ...).
struct NativeGate {
  GateKind kind = GateKind::VZ;
  int lower = 0;  // X/Y: 0 -> {01}, 1 -> {12}, 2 -> {23}
  int level = 1;  // VZ: 1, 2 or 3
  double angle = 0.0;
  double drive_phase = 0.0;
  double duration_ns = 0.0;

  static NativeGate x(int lower, double theta, double drive_phase = 0.0);
  static NativeGate y(int lower, double theta, double drive_phase = 0.0);
  static NativeGate vz(int level, double theta);

  bool is_pulse() const { return kind != GateKind::VZ; }
  /// Total phase of the drive relative to the X quadrature.
  double total_phase() const;

  /// Canonical mnemonic, e.g. "X01", "Y23", "VZ2".
  std::string name() const;

  friend bool operator==(const NativeGate&, const NativeGate&) = default;
};

/// Wraps a pulse angle into (-2pi, 2pi] (period 4pi).
double wrap_pulse_angle(double theta);
/// Wraps a phase into (-pi, pi] (period 2pi).
double wrap_phase(double phi);

/// Hermitian, involutory generator of a drive on subspace {lower, lower+1}
/// with the given phase. Phase 0 reproduces the tabulated X generator,
/// phase -pi/2 the tabulated Y generator.
Mat4 subspace_generator(int lower, double phase);

Mat4 gate_unitary(const NativeGate& g);

QuditState apply_gate(const QuditState& psi, const NativeGate& g);
QuditDensity apply_gate(const QuditDensity& rho, const NativeGate& g);

}  // namespace ququart
