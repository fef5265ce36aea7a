#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ququart/noise/device.hpp"
#include "ququart/qcvv/rb.hpp"
#include "ququart/readout/gmm.hpp"
#include "ququart/readout/resonator.hpp"
#include "ququart/vqe/ansatz.hpp"

namespace ququart {

/// Invalid run configuration; the message names the field and its line.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class ExperimentKind { Vqe, Rb, Gst, Readout, Reset };
std::string to_string(ExperimentKind k);

enum class MitigationSource {
  None,
  /// Assignment matrix measured by the calibration experiment on the device.
  Calibrated,
  /// Mean-value assignment matrix of the device.
  Expected,
};

struct VqeConfig {
  std::string table;  // resolved path
  std::vector<double> distances;  // empty: every tabulated R
  int points = 100;
  double theta_min = -kPi;
  double theta_max = kPi;
  int repeats = 100;
  /// 0 selects the noiseless statevector path.
  long shots = 500;
  std::vector<HamiltonianTerm> terms{kHamiltonianTerms.begin(), kHamiltonianTerms.end()};
  MitigationSource mitigation = MitigationSource::None;
  long calibration_shots_per_batch = 500;
  int calibration_batches = 1000;
  std::optional<double> calibration_epsilon;
  double outlier_fraction = 0.0;
};

struct RbConfig {
  RBKind kind = RBKind::SingleA;
  std::vector<int> lengths{1, 2, 4, 8, 16, 32, 64, 128};
  int sequences = 20;
  long shots = 1000;
  double depolarizing = 1.0;
  std::optional<VirtualQubitGate> interleaved;
};

struct GstConfig {
  std::vector<int> powers{0, 1};
  long shots = 0;
};

struct ReadoutConfig {
  ResonatorParams resonator;
  BlobGeometry geometry;
  long shots_per_state = 5000;
  double outlier_fraction = 0.5;
  /// Fraction of uniformly scattered points added to every calibration record.
  double contamination = 0.0;
};

struct ResetConfig {
  std::vector<int> rounds{0, 1, 2, 3};
};

struct RunConfig {
  std::string source;  // path of the config file
  ExperimentKind experiment = ExperimentKind::Vqe;
  std::uint64_t seed = 0;
  std::string output;
  int jobs = 1;
  DeviceNoise noise;
  ReadoutConfig readout;
  VqeConfig vqe;
  RbConfig rb;
  GstConfig gst;
  ResetConfig reset;
};

/// Parses a YAML run configuration. Relative paths resolve against the
/// config file's directory. Unknown keys, wrong types and out-of-range
/// values raise ConfigError with the field path and line number.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& yaml_text, const std::string& source_name,
                           const std::string& base_dir);

}  // namespace ququart
