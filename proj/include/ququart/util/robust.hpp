#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ququart {

/// Location/scatter estimate from a minimum-covariance-determinant fit.
struct RobustGaussian {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  /// Indices of the h points that define the raw estimate.
  std::vector<int> support;

  /// Squared Mahalanobis distance of x.
  double mahalanobis2(const Eigen::VectorXd& x) const;
  /// Gaussian log density at x.
  double log_density(const Eigen::VectorXd& x) const;
};

/// MCD via concentration steps: start from the h points nearest the
/// coordinate-wise median, then repeatedly refit on the h points with the
/// smallest Mahalanobis distance until the subset is stable. h defaults to
/// ceil((n + d + 1) / 2). The covariance is rescaled so the median squared
/// distance matches the chi-square median for d dimensions.
/// Rows of `x` are observations. Requires n > d.
RobustGaussian fit_robust_gaussian(const Eigen::MatrixXd& x, int h = 0);

}  // namespace ququart
