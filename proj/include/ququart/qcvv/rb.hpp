#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ququart/compiler/compile.hpp"
#include "ququart/noise/device.hpp"
#include "ququart/qcvv/fit.hpp"

namespace ququart {

enum class RBKind { SingleA, SingleB, Simultaneous, TwoQubit, Interleaved };

std::string to_string(RBKind k);
/// Accepts single_a, single_b, simultaneous, two_qubit, interleaved.
RBKind rb_kind_from_string(const std::string& s);

/// Dimension used to convert the decay parameter into an error per Clifford.
int rb_dimension(RBKind k);
/// r = (1 - p)(d - 1)/d.
double rb_error_from_decay(RBKind k, double p);

/// A compiled benchmarking sequence: one entry per random Clifford (for
/// Interleaved, the Clifford followed by a separate entry for the
/// interleaved gate), then the recovery Clifford.
struct RBSequence {
  RBKind kind = RBKind::SingleA;
  std::vector<QuditCircuit> steps;
  /// Marks steps holding the interleaved gate.
  std::vector<bool> interleaved_step;

  QuditCircuit flatten() const;
};

/// Random sequence of `length` Cliffords plus the inverting Clifford.
/// `interleaved` must be a two-qubit Clifford and is required for the
/// Interleaved kind.
RBSequence rb_sequence(RBKind kind, int length, std::uint64_t seed,
                       const std::optional<VirtualQubitGate>& interleaved = std::nullopt);

struct RBOptions {
  RBKind kind = RBKind::SingleA;
  std::vector<int> lengths{1, 2, 4, 8, 16, 32, 64};
  int sequences = 20;
  /// Shots per sequence; 0 uses the exact classified |00> probability.
  long shots = 1000;
  std::uint64_t seed = 1;
  /// Depolarizing parameter applied after every Clifford and interleaved
  /// gate (1 = none). Single-qubit kinds depolarize the benchmarked qubit,
  /// the others the full two-qubit space.
  double depolarizing = 1.0;
  std::optional<VirtualQubitGate> interleaved;
};

struct RBPoint {
  int length = 0;
  int sequence = 0;
  double survival = 0.0;
};

struct RBResult {
  RBKind kind = RBKind::SingleA;
  std::vector<RBPoint> points;
  /// Empty when the fit failed; the raw points are kept either way.
  std::optional<DecayFit> fit;
  std::string fit_error;

  double error_per_clifford() const;
  double error_per_clifford_err() const;
  /// Mean survival per length, in the order of `lengths`.
  std::vector<std::pair<int, double>> mean_survival() const;
};

RBResult run_rb(const RBOptions& opt, const NoisyDevice& device);

struct InterleavedRBResult {
  RBResult reference;
  RBResult interleaved;
  /// (d - 1)/d (1 - p_int / p_ref), d = 4.
  double gate_error = 0.0;
  double gate_error_err = 0.0;
};

/// Runs two-qubit reference RB and the interleaved variant with the same options.
InterleavedRBResult run_interleaved_rb(RBOptions opt, const NoisyDevice& device);

}  // namespace ququart
