#include "ququart/core/gates.hpp"

#include <cmath>
#include <string>

namespace ququart {

namespace {

void check_lower(int lower) {
  if (lower < 0 || lower > 2) {
    throw InvalidArgument("drive subspace must be 01, 12 or 23 (lower level " +
                          std::to_string(lower) + ")");
  }
}

double wrap_into(double x, double period) {
  // Result in (-period/2, period/2].
  double r = std::fmod(x, period);
  if (r > period / 2) r -= period;
  if (r <= -period / 2) r += period;
  return r;
}

}  // namespace

double wrap_pulse_angle(double theta) { return wrap_into(theta, 4 * kPi); }

double wrap_phase(double phi) { return wrap_into(phi, 2 * kPi); }

NativeGate NativeGate::x(int lower, double theta, double drive_phase) {
  check_lower(lower);
  if (!std::isfinite(theta) || !std::isfinite(drive_phase)) throw InvalidArgument("non-finite angle");
  NativeGate g;
  g.kind = GateKind::X;
  g.lower = lower;
  g.level = 0;
  g.angle = wrap_pulse_angle(theta);
  g.drive_phase = wrap_phase(drive_phase);
  g.duration_ns = kPulseDurationNs;
  return g;
}

NativeGate NativeGate::y(int lower, double theta, double drive_phase) {
  NativeGate g = x(lower, theta, drive_phase);
  g.kind = GateKind::Y;
  return g;
}

NativeGate NativeGate::vz(int level, double theta) {
  if (level < 1 || level > 3) {
    throw InvalidArgument("virtual Z level must be 1, 2 or 3 (got " + std::to_string(level) + ")");
  }
  if (!std::isfinite(theta)) throw InvalidArgument("non-finite angle");
  NativeGate g;
  g.kind = GateKind::VZ;
  g.lower = 0;
  g.level = level;
  g.angle = wrap_phase(theta);
  g.duration_ns = 0.0;
  return g;
}

double NativeGate::total_phase() const {
  return kind == GateKind::Y ? drive_phase - kPi / 2 : drive_phase;
}

std::string NativeGate::name() const {
  switch (kind) {
    case GateKind::X:
      return "X" + std::to_string(lower) + std::to_string(lower + 1);
    case GateKind::Y:
      return "Y" + std::to_string(lower) + std::to_string(lower + 1);
    case GateKind::VZ:
      return "VZ" + std::to_string(level);
  }
  return "?";
}

Mat4 subspace_generator(int lower, double phase) {
  check_lower(lower);
  const int i = lower;
  const int j = lower + 1;
  Mat4 g = Mat4::Identity();
  g(i, i) = 0.0;
  g(j, j) = 0.0;
  const Complex I(0.0, 1.0);
  g(i, j) = -I * std::exp(-I * phase);
  g(j, i) = I * std::exp(I * phase);
  return g;
}

Mat4 gate_unitary(const NativeGate& g) {
  if (g.kind == GateKind::VZ) {
    Mat4 u = Mat4::Identity();
    u(g.level, g.level) = std::polar(1.0, g.angle);
    return u;
  }
  // The generator squares to the identity, so the exponential is closed-form.
  const Mat4 gen = subspace_generator(g.lower, g.total_phase());
  const double half = g.angle / 2.0;
  return std::cos(half) * Mat4::Identity() + Complex(0.0, std::sin(half)) * gen;
}

QuditState apply_gate(const QuditState& psi, const NativeGate& g) {
  return QuditState::trusted(gate_unitary(g) * psi.amplitudes());
}

QuditDensity apply_gate(const QuditDensity& rho, const NativeGate& g) {
  const Mat4 u = gate_unitary(g);
  return QuditDensity::trusted(u * rho.matrix() * u.adjoint());
}

}  // namespace ququart
