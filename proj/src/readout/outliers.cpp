#include "ququart/readout/outliers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ququart/util/robust.hpp"

namespace ququart {

namespace {

std::vector<int> lowest(const std::vector<double>& score, std::size_t count) {
  std::vector<int> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score[a] < score[b]; });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::size_t removal_count(std::size_t n, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw InvalidArgument("outlier fraction must lie in [0, 1)");
  return std::min(n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));
}

}  // namespace

OutlierResult remove_outliers(const IQRecord& rec, double fraction, const SphericalGmm* gmm) {
  rec.validate();
  const std::size_t n_remove = removal_count(rec.size(), fraction);
  OutlierResult out;
  out.score.assign(rec.size(), 0.0);
  if (n_remove == 0) {
    out.kept = rec;
    return out;
  }
  std::vector<int> cluster;
  if (rec.labeled()) cluster = rec.labels;
  else if (gmm) cluster = classify(*gmm, rec);
  else cluster.assign(rec.size(), 0);

  std::map<int, std::vector<int>> members;
  for (std::size_t i = 0; i < rec.size(); ++i) members[cluster[i]].push_back(static_cast<int>(i));
  for (const auto& [label, idx] : members) {
    if (idx.size() < 3) continue;
    Eigen::MatrixXd x(static_cast<Eigen::Index>(idx.size()), 2);
    for (std::size_t r = 0; r < idx.size(); ++r) x.row(static_cast<Eigen::Index>(r)) = rec.points[idx[r]].transpose();
    const RobustGaussian env = fit_robust_gaussian(x);
    for (int i : idx) out.score[i] = -env.mahalanobis2(rec.points[i]);
  }
  out.removed = lowest(out.score, n_remove);
  std::vector<bool> drop(rec.size(), false);
  for (int i : out.removed) drop[i] = true;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (drop[i]) continue;
    out.kept.points.push_back(rec.points[i]);
    if (rec.labeled()) out.kept.labels.push_back(rec.labels[i]);
  }
  return out;
}

std::vector<int> robust_inliers(const std::vector<double>& values, double fraction) {
  const std::size_t n_remove = removal_count(values.size(), fraction);
  std::vector<int> keep(values.size());
  std::iota(keep.begin(), keep.end(), 0);
  if (n_remove == 0 || values.size() < 3) return keep;
  Eigen::MatrixXd x(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) x(static_cast<Eigen::Index>(i), 0) = values[i];
  // A sample with no spread has nothing to reject.
  if ((x.array() == x(0, 0)).all()) return keep;
  const RobustGaussian env = fit_robust_gaussian(x);
  std::vector<double> score(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    score[i] = -env.mahalanobis2(x.row(static_cast<Eigen::Index>(i)).transpose());
  }
  const auto removed = lowest(score, n_remove);
  std::vector<bool> drop(values.size(), false);
  for (int i : removed) drop[i] = true;
  keep.clear();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!drop[i]) keep.push_back(static_cast<int>(i));
  return keep;
}

}  // namespace ququart
