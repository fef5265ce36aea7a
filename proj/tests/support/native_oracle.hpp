#pragma once

// Oracle unitaries for library circuits: only the gate fields are read,
// the matrices come from the independent reference in oracle.hpp.

#include <stdexcept>

#include "ququart/core/circuit.hpp"
#include "support/oracle.hpp"

namespace oracle {

// Only undriven-frame gates (drive_phase = 0) are supported here.
inline M4 gate(const ququart::NativeGate& g) {
  if (g.drive_phase != 0.0) throw std::logic_error("oracle::gate: nonzero drive phase");
  const std::string n = g.name();
  if (n[0] == 'V') return Z(n.back() - '0', g.angle);
  const int lower = n[1] - '0';
  return n[0] == 'X' ? X(lower, g.angle) : Y(lower, g.angle);
}

inline M4 circuit(const ququart::QuditCircuit& c) {
  std::vector<M4> gs;
  for (const auto& g : c.gates()) gs.push_back(gate(g));
  return product(gs);
}

}  // namespace oracle
