#include "ququart/util/robust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ququart/types.hpp"

namespace ququart {

namespace {

// Medians of the chi-square distribution for small dimensions.
double chi2_median(int d) {
  switch (d) {
    case 1:
      return 0.454936423119572;
    case 2:
      return 1.386294361119891;
    case 3:
      return 2.365973884375338;
    default:
      // Wilson-Hilferty approximation.
      return d * std::pow(1.0 - 2.0 / (9.0 * d), 3);
  }
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<long>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

void fit_subset(const Eigen::MatrixXd& x, const std::vector<int>& idx, Eigen::VectorXd& mean, Eigen::MatrixXd& cov) {
  const int d = static_cast<int>(x.cols());
  mean = Eigen::VectorXd::Zero(d);
  for (int i : idx) mean += x.row(i).transpose();
  mean /= static_cast<double>(idx.size());
  cov = Eigen::MatrixXd::Zero(d, d);
  for (int i : idx) {
    const Eigen::VectorXd c = x.row(i).transpose() - mean;
    cov += c * c.transpose();
  }
  cov /= static_cast<double>(idx.size());
  // Keep the scatter invertible when the subset is (nearly) collinear.
  const double scale = std::max(cov.trace() / d, 1e-300);
  cov += Eigen::MatrixXd::Identity(d, d) * (1e-12 * scale);
}

std::vector<double> distances(const Eigen::MatrixXd& x, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  std::vector<double> d2(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Eigen::VectorXd c = x.row(i).transpose() - mean;
    d2[static_cast<std::size_t>(i)] = c.dot(llt.solve(c));
  }
  return d2;
}

std::vector<int> smallest(const std::vector<double>& score, int h) {
  std::vector<int> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score[a] < score[b]; });
  order.resize(static_cast<std::size_t>(h));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

double RobustGaussian::mahalanobis2(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd c = x - mean;
  return c.dot(cov.llt().solve(c));
}

double RobustGaussian::log_density(const Eigen::VectorXd& x) const {
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  const Eigen::VectorXd c = x - mean;
  const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return -0.5 * (c.dot(llt.solve(c)) + logdet + static_cast<double>(mean.size()) * std::log(2 * kPi));
}

RobustGaussian fit_robust_gaussian(const Eigen::MatrixXd& x, int h) {
  const int n = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  if (d < 1 || n <= d) throw InvalidArgument("robust Gaussian fit needs more points than dimensions");
  if (h <= 0) h = (n + d + 2) / 2;
  h = std::clamp(h, d + 1, n);

  Eigen::VectorXd med(d);
  Eigen::VectorXd mad(d);
  for (int j = 0; j < d; ++j) {
    std::vector<double> col(x.col(j).data(), x.col(j).data() + n);
    med[j] = median(col);
    for (auto& v : col) v = std::abs(v - med[j]);
    mad[j] = std::max(median(col), 1e-300);
  }
  std::vector<double> start(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) start[i] = ((x.row(i).transpose() - med).array() / mad.array()).square().sum();

  RobustGaussian out;
  out.support = smallest(start, h);
  fit_subset(x, out.support, out.mean, out.cov);
  for (int iter = 0; iter < 100; ++iter) {
    auto next = smallest(distances(x, out.mean, out.cov), h);
    if (next == out.support) break;
    out.support = std::move(next);
    fit_subset(x, out.support, out.mean, out.cov);
  }
  const double med_d2 = median(distances(x, out.mean, out.cov));
  if (med_d2 > 0) out.cov *= med_d2 / chi2_median(d);
  return out;
}

}  // namespace ququart
