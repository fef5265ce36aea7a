#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ququart/noise/device.hpp"
#include "ququart/qcvv/ptm.hpp"

namespace ququart {

struct FiducialSet {
  std::vector<QuditCircuit> prep;  // 16 circuits
  std::vector<QuditCircuit> meas;  // 9 circuits
};

/// The tabulated two-qubit fiducials written over {X01, X12, X23, Z1, Z2, Z3}(pi/2).
/// Each row is read left to right as time order.
FiducialSet gst_fiducials();

struct GstGate {
  std::string name;
  NativeGate gate;
};

/// X01, X12, X23, Z1, Z2, Z3, all at pi/2.
std::vector<GstGate> gst_gate_set();

struct GstCircuit {
  std::string id;
  int prep = 0;
  int meas = 0;
  /// Index into the gate set, or -1 for the SPAM-only circuits.
  int gate = -1;
  int power = 0;
  /// prep fiducial, gate^power, measurement fiducial.
  QuditCircuit circuit;
};

/// F_meas G^k F_prep for every k in `powers` (k = 0 gives the 16 x 9 SPAM circuits once).
std::vector<GstCircuit> gst_circuits(const std::vector<GstGate>& gates, const FiducialSet& fid,
                                     const std::vector<int>& powers);

/// Outcome counts per circuit id. Counts may be fractional for exact data.
using GstDataset = std::map<std::string, std::array<double, 4>>;

/// Executes every circuit on `device`; shots = 0 stores the exact classified
/// distribution instead of sampled counts.
GstDataset simulate_gst(const std::vector<GstCircuit>& circuits, const NoisyDevice& device, long shots,
                        std::uint64_t seed);

void write_gst_dataset_csv(const std::string& path, const GstDataset& data);
GstDataset read_gst_dataset_csv(const std::string& path);

struct GstEstimate {
  std::vector<std::string> gate_names;
  std::vector<PTM> gates;
  PauliVector rho;
  std::array<PauliVector, 4> effects;
  /// Gauge transformation mapping the raw inversion frame to the target frame.
  PTM gauge;

  /// 1 - <0|rho|0>.
  double state_infidelity() const;
  /// Average gate infidelity of gate k against its ideal PTM.
  double gate_infidelity(std::size_t k, const std::vector<GstGate>& targets) const;
};

/// Linear-inversion GST on the k = 0 and k = 1 circuits of `data`, followed
/// by a least-squares gauge fit to the ideal gates with the measurement
/// effects anchored to the ideal projectors. Throws NumericError naming the
/// deficient fiducials if the SPAM design matrix is rank deficient.
GstEstimate linear_inversion_gst(const GstDataset& data, const std::vector<GstGate>& gates,
                                 const FiducialSet& fid);

}  // namespace ququart
