#include "ququart/compiler/compile.hpp"

#include <cmath>
#include <string>

#include "ququart/compiler/clifford.hpp"

namespace ququart {

Mat2 rotation_matrix(const Rotation& r) {
  const double c = std::cos(r.angle / 2);
  const double s = std::sin(r.angle / 2);
  Mat2 sigma;
  switch (r.axis) {
    case Axis::X:
      sigma = pauli::X();
      break;
    case Axis::Y:
      sigma = pauli::Y();
      break;
    case Axis::Z:
      sigma = pauli::Z();
      break;
  }
  return c * Mat2::Identity() - Complex(0, s) * sigma;
}

Mat2 rotation_sequence_matrix(const std::vector<Rotation>& seq) {
  Mat2 u = Mat2::Identity();
  for (const auto& r : seq) u = rotation_matrix(r) * u;
  return u;
}

VirtualQubitGate VirtualQubitGate::rotation(Target t, const Rotation& r) {
  if (t == Target::Both) throw InvalidArgument("a rotation targets qubit A or B");
  Kind k = Kind::Rx;
  if (r.axis == Axis::Y) k = Kind::Ry;
  if (r.axis == Axis::Z) k = Kind::Rz;
  return {k, t, r.angle, 0};
}

namespace {

Rotation as_rotation(const VirtualQubitGate& g) {
  switch (g.kind) {
    case VirtualQubitGate::Kind::Rx:
      return {Axis::X, g.angle};
    case VirtualQubitGate::Kind::Ry:
      return {Axis::Y, g.angle};
    case VirtualQubitGate::Kind::Rz:
      return {Axis::Z, g.angle};
    default:
      throw InvalidArgument("not a single-qubit rotation");
  }
}

Mat4 on_target(Target t, const Mat2& u) {
  return t == Target::A ? two_qubit(Mat2::Identity(), u) : two_qubit(u, Mat2::Identity());
}

}  // namespace

Mat4 target_unitary(const VirtualQubitGate& g) {
  using K = VirtualQubitGate::Kind;
  switch (g.kind) {
    case K::Rx:
    case K::Ry:
    case K::Rz:
      return on_target(g.target, rotation_matrix(as_rotation(g)));
    case K::Swap: {
      Mat4 s = Mat4::Zero();
      s(0, 0) = s(3, 3) = 1.0;
      s(1, 2) = s(2, 1) = 1.0;
      return s;
    }
    case K::ISwap: {
      Mat4 s = Mat4::Zero();
      s(0, 0) = s(3, 3) = 1.0;
      s(1, 2) = s(2, 1) = Complex(0, 1);
      return s;
    }
    case K::ZZ: {
      Mat4 d = Mat4::Identity();
      d(1, 1) = d(2, 2) = std::polar(1.0, -g.angle);
      return d;
    }
    case K::UZX: {
      // exp(-i pi/4 ZX) = (I - i ZX)/sqrt(2) since (ZX)^2 = I.
      return (Mat4::Identity() - Complex(0, 1) * pauli_string("ZX")) / std::sqrt(2.0);
    }
    case K::Clifford:
      if (g.target == Target::Both) return two_qubit_cliffords().element(g.clifford).unitary;
      return on_target(g.target, single_qubit_cliffords().element(g.clifford).unitary);
  }
  throw InvalidArgument("unknown virtual gate kind");
}

double phase_insensitive_overlap(const Mat4& u, const Mat4& v) {
  return std::abs((u.adjoint() * v).trace()) / 4.0;
}

bool equal_up_to_phase(const Mat4& u, const Mat4& v, double tol) {
  return phase_insensitive_overlap(u, v) > 1.0 - tol;
}

QuditCircuit compile_1q_A(const Rotation& r) {
  const double theta = wrap_pulse_angle(r.angle);
  if (theta == 0.0) return {};
  switch (r.axis) {
    // The tabulated Y generator is sigma_x on its block, so Y_ij(-theta)
    // is Rx(theta) there; the spectator phases e^{-i theta/2} of the two
    // drives cancel into a global phase.
    case Axis::X:
      return {NativeGate::y(0, -theta), NativeGate::y(2, -theta)};
    // The tabulated X generator is sigma_y on its block.
    case Axis::Y:
      return {NativeGate::x(0, -theta), NativeGate::x(2, -theta)};
    // diag(1, e^{i theta}, 1, e^{i theta}) is Rz(theta) on A up to phase.
    case Axis::Z:
      return {NativeGate::vz(1, theta), NativeGate::vz(3, theta)};
  }
  return {};
}

QuditCircuit compile_1q_B(const Rotation& r) {
  const double theta = wrap_pulse_angle(r.angle);
  if (theta == 0.0) return {};
  if (r.axis == Axis::Z) return {NativeGate::vz(2, theta), NativeGate::vz(3, theta)};
  QuditCircuit c = compile_swap();
  c.append(compile_1q_A(r));
  c.append(compile_swap());
  return c;
}

QuditCircuit compile_1q(Target t, const Rotation& r) {
  if (t == Target::Both) throw InvalidArgument("a rotation targets qubit A or B");
  return t == Target::A ? compile_1q_A(r) : compile_1q_B(r);
}

// X_12(pi) maps |1> -> -|2>, |2> -> |1> and multiplies |0>,|3> by i;
// Z_1(pi/2) Z_2(-pi/2) restores a common phase i on all four paths.
QuditCircuit compile_swap() {
  return {NativeGate::x(1, kPi), NativeGate::vz(1, kPi / 2), NativeGate::vz(2, -kPi / 2)};
}

// Y_12(pi) is i*SWAP; Z_1(pi/2) Z_2(pi/2) adds the relative i on the swapped pair.
QuditCircuit compile_iswap() {
  return {NativeGate::y(1, kPi), NativeGate::vz(1, kPi / 2), NativeGate::vz(2, kPi / 2)};
}

QuditCircuit compile_zz(double theta) {
  const double t = wrap_phase(theta);
  if (t == 0.0) return {};
  return {NativeGate::vz(1, -t), NativeGate::vz(2, -t)};
}

// Y_23(pi) contributes the opposite-sign rotation on the B=1 block, the
// qubit-A X(-pi/2) (in the exp(+i) convention) supplies Rx(pi/2) on both
// blocks, and Z_2 Z_3 (pi/2) removes the e^{i pi/2} relative block phase
// left by the spectator phases of the three drives.
QuditCircuit compile_uzx() {
  return {NativeGate::y(2, kPi),           NativeGate::y(0, -kPi / 2), NativeGate::y(2, -kPi / 2),
          NativeGate::vz(2, kPi / 2), NativeGate::vz(3, kPi / 2)};
}

QuditCircuit compile(const VirtualQubitGate& g) {
  using K = VirtualQubitGate::Kind;
  switch (g.kind) {
    case K::Rx:
    case K::Ry:
    case K::Rz:
      return compile_1q(g.target, as_rotation(g));
    case K::Swap:
      return compile_swap();
    case K::ISwap:
      return compile_iswap();
    case K::ZZ:
      return compile_zz(g.angle);
    case K::UZX:
      return compile_uzx();
    case K::Clifford:
      if (g.target == Target::Both) return two_qubit_cliffords().compile(g.clifford);
      return single_qubit_cliffords().compile(g.target, g.clifford);
  }
  throw InvalidArgument("unknown virtual gate kind");
}

QuditCircuit compile(const std::vector<VirtualQubitGate>& program) {
  QuditCircuit c;
  for (const auto& g : program) c.append(compile(g));
  return c;
}

}  // namespace ququart
