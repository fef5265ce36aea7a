#pragma once

#include <cstdint>
#include <optional>

#include "ququart/noise/device.hpp"
#include "ququart/readout/assignment.hpp"

namespace ququart {

struct CalibrationOptions {
  long shots_per_batch = 500;
  int batches = 1000;
  /// When set, the classifier that labels calibration shots differs from
  /// the one used for the experiment: its 2/3 confusion is this value
  /// instead of the device's.
  std::optional<double> classifier_eps;
};

/// Prepares each level with its pi-pulse ladder on `device`, reads it out in
/// batches through the device's sampling path, and row-normalizes the counts.
AssignmentMatrix calibrate_assignment(const NoisyDevice& device, const CalibrationOptions& opt, std::uint64_t seed);

/// Mean-value counterpart: row n is the expected classified distribution
/// after preparing level n.
AssignmentMatrix expected_assignment(const NoisyDevice& device, std::optional<double> classifier_eps = std::nullopt);

}  // namespace ququart
