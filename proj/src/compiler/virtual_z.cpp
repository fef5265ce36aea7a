#include "ququart/compiler/virtual_z.hpp"

#include <cmath>

namespace ququart {

// Z^-1 G Z multiplies G[i][j] by e^{i theta} when j = k and by e^{-i theta}
// when i = k, which shifts the drive phase of the subspace below k down and
// the one above k up.
void PhaseFrame::absorb(int level, double theta) {
  if (level < 1 || level > 3) throw InvalidArgument("virtual Z level must be 1, 2 or 3");
  offset[level - 1] = wrap_phase(offset[level - 1] - theta);
  if (level < 3) offset[level] = wrap_phase(offset[level] + theta);
}

PropagatedCircuit propagate_virtual_z(const QuditCircuit& c) {
  PropagatedCircuit out;
  out.residual = Vec4c::Ones();
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::VZ) {
      out.frame.absorb(g.level, g.angle);
      out.residual[g.level] *= std::polar(1.0, g.angle);
      continue;
    }
    NativeGate p = g;
    p.drive_phase = wrap_phase(g.drive_phase + out.frame.offset[g.lower]);
    out.pulses.push_back(p);
  }
  out.pulses.set_shots(c.shots());
  return out;
}

}  // namespace ququart
