#pragma once

#include <vector>

#include "ququart/compiler/embedding.hpp"
#include "ququart/core/circuit.hpp"

namespace ququart {

enum class Axis { X, Y, Z };

/// Single-qubit rotation exp(-i angle/2 sigma_axis).
struct Rotation {
  Axis axis = Axis::X;
  double angle = 0.0;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

Mat2 rotation_matrix(const Rotation& r);
Mat2 rotation_sequence_matrix(const std::vector<Rotation>& seq);

enum class Target { A, B, Both };

/// Emulated two-qubit operation.
struct VirtualQubitGate {
  enum class Kind { Rx, Ry, Rz, Swap, ISwap, ZZ, UZX, Clifford };

  Kind kind = Kind::Rx;
  Target target = Target::A;
  double angle = 0.0;
  /// Clifford element index: < 24 for a single-qubit target, < 11520 for Both.
  int clifford = 0;

  static VirtualQubitGate rotation(Target t, const Rotation& r);
  static VirtualQubitGate swap() { return {Kind::Swap, Target::Both, 0.0, 0}; }
  static VirtualQubitGate iswap() { return {Kind::ISwap, Target::Both, 0.0, 0}; }
  static VirtualQubitGate zz(double theta) { return {Kind::ZZ, Target::Both, theta, 0}; }
  static VirtualQubitGate uzx() { return {Kind::UZX, Target::Both, 0.0, 0}; }
  static VirtualQubitGate clifford1(Target t, int index) { return {Kind::Clifford, t, 0.0, index}; }
  static VirtualQubitGate clifford2(int index) { return {Kind::Clifford, Target::Both, 0.0, index}; }
};

/// Ideal two-qubit unitary of an emulated operation in the level basis.
/// ZZ(theta) is diag(1, e^{-i theta}, e^{-i theta}, 1); U_ZX is exp(-i pi/4 Z(x)X).
Mat4 target_unitary(const VirtualQubitGate& g);

/// |Tr(U^dagger V)| / 4 > 1 - tol.
bool equal_up_to_phase(const Mat4& u, const Mat4& v, double tol = 1e-10);
double phase_insensitive_overlap(const Mat4& u, const Mat4& v);

/// Rotation on qubit A: simultaneous drives on {01} and {23}; Rz is virtual.
QuditCircuit compile_1q_A(const Rotation& r);
/// Rotation on qubit B: SWAP, the qubit-A lowering, SWAP; Rz is virtual.
QuditCircuit compile_1q_B(const Rotation& r);
QuditCircuit compile_1q(Target t, const Rotation& r);

/// Pi pulse on {12} followed by virtual-Z phase corrections.
QuditCircuit compile_swap();
/// Y-quadrature pi pulse on {12} followed by virtual-Z phase corrections.
QuditCircuit compile_iswap();
/// [Z_1(-theta), Z_2(-theta)], zero duration.
QuditCircuit compile_zz(double theta);
/// Pi pulse on {23}, then X(-pi/2) on qubit A, then virtual-Z corrections.
QuditCircuit compile_uzx();

/// Dispatches on the gate kind; Clifford indices go through the group tables.
QuditCircuit compile(const VirtualQubitGate& g);
QuditCircuit compile(const std::vector<VirtualQubitGate>& program);

}  // namespace ququart
