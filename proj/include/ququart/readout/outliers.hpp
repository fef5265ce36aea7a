#pragma once

#include <vector>

#include "ququart/readout/gmm.hpp"

namespace ququart {

struct OutlierResult {
  IQRecord kept;
  /// Indices (into the input) of removed points, ascending.
  std::vector<int> removed;
  /// Envelope score per input point; higher is more typical.
  std::vector<double> score;
};

/// Fits a robust full-covariance Gaussian envelope to each cluster and drops
/// the ceil(fraction * n) points with the lowest score, where the score is
/// minus the squared Mahalanobis distance to the point's own cluster.
/// Clusters are the labels when present, otherwise the GMM classification.
/// Clusters with fewer than 3 points score 0.
OutlierResult remove_outliers(const IQRecord& rec, double fraction, const SphericalGmm* gmm = nullptr);

/// One-dimensional version for a set of scalar estimates.
std::vector<int> robust_inliers(const std::vector<double>& values, double fraction);

}  // namespace ququart
