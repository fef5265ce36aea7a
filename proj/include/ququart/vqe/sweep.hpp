#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ququart/noise/device.hpp"
#include "ququart/readout/assignment.hpp"
#include "ququart/vqe/ansatz.hpp"
#include "ququart/vqe/hamiltonian.hpp"

namespace ququart {

enum class EstimateVariant {
  Raw,
  /// Assignment-matrix inversion of each batch.
  Mitigated,
  /// Robust inliers of the mitigated estimates (raw ones when no
  /// assignment matrix is configured).
  Filtered,
};

std::string to_string(EstimateVariant v);

struct SweepOptions {
  int points = 100;
  double theta_min = -kPi;
  double theta_max = kPi;  // inclusive
  int repeats = 100;
  long shots = 500;
  std::uint64_t seed = 1;
  std::vector<HamiltonianTerm> terms{kHamiltonianTerms.begin(), kHamiltonianTerms.end()};
  std::optional<AssignmentMatrix> mitigation;
  /// Fraction of estimates dropped by the Filtered variant; 0 disables it.
  double outlier_fraction = 0.0;
  int jobs = 1;
};

/// Grid of `points` angles from theta_min to theta_max inclusive.
std::vector<double> theta_grid(const SweepOptions& opt);

/// Repeated estimates of one term at one angle.
struct TermSamples {
  std::vector<double> raw;
  std::vector<double> mitigated;
  std::vector<double> filtered;

  const std::vector<double>& get(EstimateVariant v) const;
};

struct VqeSweep {
  std::vector<double> thetas;
  std::vector<HamiltonianTerm> terms;
  /// samples[theta index][term index]
  std::vector<std::vector<TermSamples>> samples;

  const TermSamples& at(std::size_t theta_index, HamiltonianTerm t) const;
  bool has(EstimateVariant v) const;
  double mean(std::size_t theta_index, HamiltonianTerm t, EstimateVariant v) const;
  /// Sample standard deviation of the repeated estimates.
  double stddev(std::size_t theta_index, HamiltonianTerm t, EstimateVariant v) const;
};

/// Runs ansatz + basis change on `device` for every (theta, term), then
/// draws `repeats` batches of `shots`. Work items run on `jobs` threads with
/// per-item seeds, so the result does not depend on `jobs`.
VqeSweep sweep(const SweepOptions& opt, const NoisyDevice& device);

/// Noiseless, infinite-shot sweep from the compiled statevector.
VqeSweep analytic_sweep(const std::vector<double>& thetas);

struct EnergyEstimate {
  double mean = 0.0;
  /// sqrt(sum g_i^2 sigma_i^2) with sigma_i the spread of the term estimates.
  double sigma = 0.0;
};

/// g0 + sum g_i <P_i> at one grid point.
EnergyEstimate energy(const VqeSweep& s, std::size_t theta_index, const HamiltonianSpec& h, EstimateVariant v);

struct EnergyPoint {
  double r = 0.0;
  double theta = 0.0;
  double e_mean = 0.0;
  double e_sigma = 0.0;
  double e_exact = 0.0;
  bool within_chemical_accuracy = false;
};

inline constexpr double kChemicalAccuracy = 1.5e-2;

/// Grid minimum of the mean energy per tabulated R.
std::vector<EnergyPoint> energy_curve(const VqeSweep& s, const HamiltonianTable& table,
                                      const std::vector<double>& distances, EstimateVariant v);

struct VariationalMinimum {
  double theta = 0.0;
  double energy = 0.0;
};

/// Statevector energy of the compiled ansatz.
double statevector_energy(double theta, const HamiltonianSpec& h);
/// Grid search over [-pi, pi] followed by golden-section refinement.
VariationalMinimum minimize_statevector_energy(const HamiltonianSpec& h, int grid_points = 100);

/// One- versus two-component Gaussian comparison of a set of estimates.
struct BimodalityTest {
  double bic_one = 0.0;
  double bic_two = 0.0;
  /// Ashman's D = sqrt(2) |mu1 - mu2| / sqrt(s1^2 + s2^2).
  double separation = 0.0;
  double minor_weight = 0.0;
  /// Two components preferred by BIC, separated (D > 2) and not degenerate.
  bool bimodal = false;
};

BimodalityTest test_bimodality(const std::vector<double>& values);

}  // namespace ququart
