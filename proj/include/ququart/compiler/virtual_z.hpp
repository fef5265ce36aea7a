#pragma once

#include <array>

#include "ququart/core/circuit.hpp"

namespace ququart {

/// Accumulated drive-frame offsets for the three neighbouring subspaces.
struct PhaseFrame {
  std::array<double, 3> offset{0.0, 0.0, 0.0};  // {01}, {12}, {23}

  /// Commutes Z_k(theta) past later pulses.
  void absorb(int level, double theta);
};

struct PropagatedCircuit {
  /// Pulse-only circuit with updated drive phases.
  QuditCircuit pulses;
  /// Diagonal applied after `pulses`; the original unitary equals residual * U(pulses).
  Vec4c residual;
  PhaseFrame frame;
};

/// Removes every virtual-Z gate by folding it into the drive phases of the
/// pulses that follow it. Populations of the output are unchanged because
/// the leftover operator is diagonal.
PropagatedCircuit propagate_virtual_z(const QuditCircuit& c);

}  // namespace ququart
