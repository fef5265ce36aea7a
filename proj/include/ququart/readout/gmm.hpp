#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ququart/core/measure.hpp"
#include "ququart/readout/resonator.hpp"

namespace ququart {

using IQPoint = Eigen::Vector2d;

/// Single-shot readout points with optional true-state labels.
struct IQRecord {
  std::vector<IQPoint> points;
  /// Empty, or one label per point.
  std::vector<int> labels;

  std::size_t size() const { return points.size(); }
  bool labeled() const { return !labels.empty(); }
  void validate() const;
};

/// CSV with header `I,Q` or `I,Q,label`.
void write_iq_csv(std::ostream& os, const IQRecord& rec);
IQRecord read_iq_csv(std::istream& is);

/// Mixture of isotropic Gaussians in the IQ plane.
struct SphericalGmm {
  struct Component {
    IQPoint mean = IQPoint::Zero();
    double var = 1.0;
    double weight = 1.0;
  };
  std::vector<Component> components;

  int size() const { return static_cast<int>(components.size()); }
  void validate() const;
  /// log(w_k N(x | mu_k, var_k I)).
  double log_joint(int k, const IQPoint& x) const;
  double log_likelihood(const IQPoint& x) const;
  double mean_log_likelihood(const IQRecord& rec) const;
};

/// Blob geometry: level n sits at radius[n] e^{i phase_n} with standard deviation sigma[n].
struct BlobGeometry {
  std::array<double, 4> radius{1.0, 1.0, 1.2, 1.2};
  std::array<double, 4> sigma{0.08, 0.08, 0.1, 0.1};
};

/// Equal-weight model whose means come from the resonator phase response.
SphericalGmm readout_model(const ResonatorParams& res, const BlobGeometry& geom);

/// n points: component drawn from p, then Gaussian noise. Labels record the component.
IQRecord synthesize_shots(const Probabilities& p, const SphericalGmm& gmm, long n, std::uint64_t seed);
/// Same, for arbitrary component counts.
IQRecord synthesize_shots(const std::vector<double>& p, const SphericalGmm& gmm, long n, std::uint64_t seed);

/// Exactly counts[k] points from component k, labeled k, in label order.
IQRecord synthesize_from_counts(const Counts& counts, const SphericalGmm& gmm, std::uint64_t seed);

struct GmmFitOptions {
  double tol = 1e-8;
  int max_iter = 500;
  int max_restarts = 10;
  /// Use labels (when present) for the initial means.
  bool init_from_labels = true;
};

struct GmmFitResult {
  SphericalGmm model;
  int iterations = 0;
  bool converged = false;
  int restarts = 0;
  /// Mean log-likelihood after each EM iteration; non-decreasing.
  std::vector<double> trace;
};

/// EM for a k-component spherical mixture. When the record is labeled the
/// components are relabeled so that component j best matches label j.
/// Throws NumericError if a component collapses (variance < 1e-12) on
/// more than `max_restarts` reseeded attempts.
GmmFitResult fit_gmm(const IQRecord& rec, int k, std::uint64_t seed, const GmmFitOptions& opt = {});

/// Argmax posterior; ties go to the lower index.
KetIndex classify(const SphericalGmm& gmm, const IQPoint& x);
std::vector<int> classify(const SphericalGmm& gmm, const IQRecord& rec);
Counts classify_counts(const SphericalGmm& gmm, const IQRecord& rec);

/// Permutes components so that component j collects the most points with
/// label j (exhaustive search over permutations).
SphericalGmm relabel(const SphericalGmm& gmm, const IQRecord& labeled);

/// Plain-text model: one line per component, `k mean_I mean_Q var weight`.
std::string to_text(const SphericalGmm& gmm);
SphericalGmm gmm_from_text(const std::string& text);

}  // namespace ququart
