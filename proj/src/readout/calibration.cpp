#include "ququart/readout/calibration.hpp"

#include "ququart/noise/reset.hpp"
#include "ququart/readout/mitigation.hpp"

namespace ququart {

namespace {

NoisyDevice calibration_device(const NoisyDevice& device, std::optional<double> classifier_eps) {
  if (!classifier_eps) return device;
  DeviceNoise n = device.noise();
  n.misclassification = MisclassificationModel(*classifier_eps);
  return NoisyDevice(n);
}

}  // namespace

AssignmentMatrix calibrate_assignment(const NoisyDevice& device, const CalibrationOptions& opt, std::uint64_t seed) {
  if (opt.shots_per_batch < 1 || opt.batches < 1) throw InvalidArgument("calibration needs at least one shot");
  const NoisyDevice dev = calibration_device(device, opt.classifier_eps);
  std::array<Counts, 4> counts{};
  for (int n = 0; n < kDim; ++n) {
    const Probabilities readout = dev.run(excite_sequence(n));
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(n)}));
    for (int b = 0; b < opt.batches; ++b) {
      const Counts c = dev.sample(readout, opt.shots_per_batch, rng);
      for (int k = 0; k < kDim; ++k) counts[n][k] += c[k];
    }
  }
  return estimate_assignment(counts);
}

AssignmentMatrix expected_assignment(const NoisyDevice& device, std::optional<double> classifier_eps) {
  const NoisyDevice dev = calibration_device(device, classifier_eps);
  Mat4r a;
  for (int n = 0; n < kDim; ++n) {
    const auto p = dev.classified_distribution(dev.run_density(excite_sequence(n)));
    for (int k = 0; k < kDim; ++k) a(n, k) = p[k];
  }
  return AssignmentMatrix(a);
}

}  // namespace ququart
