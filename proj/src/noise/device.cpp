#include "ququart/noise/device.hpp"

#include "ququart/noise/reset.hpp"

namespace ququart {

namespace {

KrausChannel idle_channel(const DeviceNoise& n, double ns) {
  const double us = ns * 1e-3;
  KrausChannel ch = damping_channel(gamma_from_rates(*n.gamma, us));
  if (n.dephasing) ch = dephasing_channel(*n.dephasing, *n.gamma, us).after(ch);
  return ch;
}

// Population map of the damping channel: diagonal inputs stay diagonal.
Mat4r damping_transfer(const DampingSpec& s) { return step_matrix(s).transfer(); }

}  // namespace

NoisyDevice::NoisyDevice(DeviceNoise noise) : noise_(std::move(noise)) {
  if (noise_.readout_window_us < 0) throw InvalidArgument("readout window must be non-negative");
  if (noise_.reset_rounds < 0) throw InvalidArgument("reset rounds must be non-negative");
  check_normalized(noise_.thermal);
  if (noise_.gamma && noise_.gate_damping) {
    pulse_idle_ = idle_channel(noise_, kPulseDurationNs);
    buffer_idle_ = idle_channel(noise_, kPulseBufferNs);
  }
  readout_transfer_ = Mat4r::Identity();
  if (noise_.gamma) {
    if (noise_.readout_model == ReadoutDecayModel::MatrixPower) {
      readout_transfer_ = transfer_power(*noise_.gamma, noise_.readout_window_us);
    } else {
      readout_transfer_ = damping_transfer(gamma_from_rates(*noise_.gamma, noise_.readout_window_us));
    }
  }
  const DampingSpec reset_damping =
      pulse_idle_ ? gamma_from_rates(*noise_.gamma, kPulseDurationNs * 1e-3) : DampingSpec::none();
  prepared_ = active_reset(thermal_init(noise_.thermal), noise_.reset_rounds, noise_.reset_classifier, reset_damping);
}

QuditDensity NoisyDevice::prepare() const { return prepared_; }

QuditDensity NoisyDevice::evolve(const QuditDensity& rho, const QuditCircuit& c) const {
  QuditDensity state = rho;
  bool after_pulse = false;
  for (const auto& g : c.gates()) {
    if (g.is_pulse() && after_pulse && buffer_idle_) state = apply_channel(state, *buffer_idle_);
    state = apply_gate(state, g);
    if (g.is_pulse()) {
      if (pulse_idle_) state = apply_channel(state, *pulse_idle_);
      after_pulse = true;
    }
  }
  return state;
}

Probabilities NoisyDevice::readout_populations(const QuditDensity& rho) const {
  Vec4r p = readout_transfer_ * to_vector(measure_probs(rho));
  for (int n = 0; n < kDim; ++n) p[n] = std::max(0.0, p[n]);
  return to_probabilities(p / p.sum());
}

Probabilities NoisyDevice::classified_distribution(const QuditDensity& rho) const {
  return misclassify(readout_populations(rho), noise_.misclassification);
}

Probabilities NoisyDevice::run(const QuditCircuit& c) const { return readout_populations(run_density(c)); }

QuditDensity NoisyDevice::run_density(const QuditCircuit& c) const { return evolve(prepare(), c); }

Counts NoisyDevice::sample(const Probabilities& readout, long shots, Rng& rng) const {
  if (shots < 1) throw InvalidArgument("shot count must be at least 1");
  check_normalized(readout);
  const auto draw = multinomial(rng, readout, shots);
  const Counts c{draw[0], draw[1], draw[2], draw[3]};
  return misclassify_counts(c, noise_.misclassification, noise_.misclassification_mode, rng);
}

}  // namespace ququart
