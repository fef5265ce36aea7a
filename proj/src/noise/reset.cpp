#include "ququart/noise/reset.hpp"

namespace ququart {

QuditDensity thermal_init(const Probabilities& populations) { return QuditDensity::diagonal(populations); }

QuditCircuit reset_sequence(KetIndex k) {
  if (k < 0 || k > 3) throw InvalidArgument("reset target level out of range");
  QuditCircuit c;
  for (int lower = k - 1; lower >= 0; --lower) c.push_back(NativeGate::x(lower, kPi));
  return c;
}

QuditCircuit excite_sequence(KetIndex n) {
  if (n < 0 || n > 3) throw InvalidArgument("excitation target level out of range");
  QuditCircuit c;
  for (int lower = 0; lower < n; ++lower) c.push_back(NativeGate::x(lower, kPi));
  return c;
}

QuditDensity active_reset(const QuditDensity& rho, int rounds, const AssignmentMatrix& classifier,
                          const DampingSpec& pulse_damping) {
  if (rounds < 0) throw InvalidArgument("reset rounds must be non-negative");
  const KrausChannel damping = damping_channel(pulse_damping);
  QuditDensity state = rho;
  for (int r = 0; r < rounds; ++r) {
    Mat4 next = Mat4::Zero();
    for (int k = 0; k < kDim; ++k) {
      Probabilities branch{};
      double weight = 0.0;
      for (int n = 0; n < kDim; ++n) {
        branch[n] = std::max(0.0, state.population(n)) * classifier(n, k);
        weight += branch[n];
      }
      if (weight <= 0.0) continue;
      for (auto& b : branch) b /= weight;
      QuditDensity sub = thermal_init(branch);
      const QuditCircuit chain = reset_sequence(k);
      for (const auto& g : chain.gates()) sub = apply_channel(apply_gate(sub, g), damping);
      next += weight * sub.matrix();
    }
    state = QuditDensity::trusted(next / next.trace().real());
  }
  return state;
}

QuditDensity active_reset(const QuditDensity& rho, int rounds, const MisclassificationModel& classifier,
                          const DampingSpec& pulse_damping) {
  return active_reset(rho, rounds, classifier.assignment(), pulse_damping);
}

}  // namespace ququart
