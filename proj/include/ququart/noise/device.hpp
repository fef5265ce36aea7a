#pragma once

#include <optional>

#include "ququart/core/circuit.hpp"
#include "ququart/noise/damping.hpp"
#include "ququart/noise/misclassify.hpp"

namespace ququart {

enum class ReadoutDecayModel {
  /// (I - Gamma^T)^t on the populations.
  MatrixPower,
  /// The Kraus damping channel with gamma_ji = 1 - exp(-t |Gamma_ji|).
  DampingChannel,
};

struct DeviceNoise {
  /// No decay at all when empty.
  std::optional<DecayMatrix> gamma;
  /// Damping during pulses and the buffers between them.
  bool gate_damping = true;
  /// Pure dephasing alongside gate damping; off unless set.
  std::optional<CoherenceTimes> dephasing;
  double readout_window_us = 10.0;
  ReadoutDecayModel readout_model = ReadoutDecayModel::MatrixPower;

  Probabilities thermal{1.0, 0.0, 0.0, 0.0};
  int reset_rounds = 0;
  /// Classifier used by the active-reset feedback loop.
  AssignmentMatrix reset_classifier;

  MisclassificationModel misclassification;
  MisclassificationMode misclassification_mode = MisclassificationMode::PerBatch;

  static DeviceNoise ideal() { return {}; }
};

/// Executes circuits as density matrices under a DeviceNoise description.
class NoisyDevice {
 public:
  explicit NoisyDevice(DeviceNoise noise);

  const DeviceNoise& noise() const { return noise_; }

  /// Thermal state followed by the configured active-reset rounds.
  QuditDensity prepare() const;
  /// Gates in time order; each pulse and each inter-pulse buffer is followed
  /// by the idle channel for its duration.
  QuditDensity evolve(const QuditDensity& rho, const QuditCircuit& c) const;
  /// Level populations at the end of the readout window, before classification.
  Probabilities readout_populations(const QuditDensity& rho) const;
  /// Mean classified distribution including misclassification.
  Probabilities classified_distribution(const QuditDensity& rho) const;
  /// prepare, evolve, readout_populations.
  Probabilities run(const QuditCircuit& c) const;
  QuditDensity run_density(const QuditCircuit& c) const;

  /// One batch of shots: multinomial draw from `readout` followed by misclassification.
  Counts sample(const Probabilities& readout, long shots, Rng& rng) const;

  /// Population map of the readout window (column-stochastic).
  const Mat4r& readout_transfer() const { return readout_transfer_; }

 private:
  DeviceNoise noise_;
  std::optional<KrausChannel> pulse_idle_;
  std::optional<KrausChannel> buffer_idle_;
  Mat4r readout_transfer_;
  QuditDensity prepared_;
};

}  // namespace ququart
