#include "ququart/qcvv/fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include <fmt/format.h>
#include <unsupported/Eigen/NonLinearOptimization>

#include "ququart/types.hpp"

namespace ququart {

namespace {

struct DecayResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const std::vector<double>& x;
  const std::vector<double>& y;

  int inputs() const { return 3; }
  int values() const { return static_cast<int>(x.size()); }

  int operator()(const Eigen::VectorXd& q, Eigen::VectorXd& f) const {
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = q[0] * std::pow(q[1], x[i]) + q[2] - y[i];
    return 0;
  }

  int df(const Eigen::VectorXd& q, Eigen::MatrixXd& j) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double pm = std::pow(q[1], x[i]);
      j(i, 0) = pm;
      j(i, 1) = x[i] == 0.0 ? 0.0 : q[0] * x[i] * std::pow(q[1], x[i] - 1.0);
      j(i, 2) = 1.0;
    }
    return 0;
  }
};

Eigen::Vector3d initial_guess(const std::vector<double>& x, const std::vector<double>& y, double b0) {
  std::map<double, std::pair<double, int>> by_x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    by_x[x[i]].first += y[i];
    by_x[x[i]].second += 1;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [xi, acc] : by_x) {
    const double z = acc.first / acc.second - b0;
    if (z <= 1e-3) continue;
    const double ly = std::log(z);
    sx += xi;
    sy += ly;
    sxx += xi * xi;
    sxy += xi * ly;
    ++n;
  }
  const double first = by_x.begin()->second.first / by_x.begin()->second.second;
  if (n < 2) return {first - b0, 0.9, b0};
  const double denom = n * sxx - sx * sx;
  const double slope = denom > 0 ? (n * sxy - sx * sy) / denom : 0.0;
  const double intercept = (sy - slope * sx) / n;
  const double p0 = std::clamp(std::exp(slope), 0.5, 1.0);
  return {std::exp(intercept), p0, b0};
}

}  // namespace

namespace {

struct Candidate {
  Eigen::VectorXd q;
  double ssr = 0.0;
  int evaluations = 0;
};

std::optional<Candidate> solve_from(DecayResidual& functor, Eigen::VectorXd q, std::string& why) {
  Eigen::LevenbergMarquardt<DecayResidual> lm(functor);
  lm.parameters.maxfev = 2000;
  const auto status = lm.minimize(q);
  using S = Eigen::LevenbergMarquardtSpace::Status;
  if (status == S::ImproperInputParameters || status == S::TooManyFunctionEvaluation ||
      status == S::NotStarted || status == S::Running) {
    why = fmt::format("solver status {}", int(status));
    return std::nullopt;
  }
  if (!q.allFinite() || q[1] <= 0.0 || q[1] > 1.0 + 1e-6) {
    why = fmt::format("left the valid region at a={} p={} b={}", q[0], q[1], q[2]);
    return std::nullopt;
  }
  Eigen::VectorXd f(functor.values());
  functor(q, f);
  return Candidate{q, f.squaredNorm(), static_cast<int>(lm.nfev)};
}

}  // namespace

DecayFit fit_exponential_decay(const std::vector<double>& x, const std::vector<double>& y,
                               double asymptote_guess) {
  if (x.size() != y.size()) throw InvalidArgument("fit: x and y differ in length");
  if (x.size() < 4) throw InvalidArgument("fit: need at least four points for three parameters");
  for (double v : y)
    if (!std::isfinite(v)) throw NumericError("decay fit: non-finite data point");

  // A slowly decaying curve is nearly linear and the asymptote is poorly
  // determined, so the solver is started from several asymptotes below the
  // data and the best valid optimum is kept.
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const double span = std::max(*hi - *lo, 1e-6);
  std::vector<double> starts{asymptote_guess};
  for (double k : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) starts.push_back(*lo - k * span);

  DecayResidual functor{x, y};
  std::optional<Candidate> best;
  std::string why;
  for (double b0 : starts) {
    auto c = solve_from(functor, initial_guess(x, y, b0), why);
    if (c && (!best || c->ssr < best->ssr)) best = std::move(c);
  }
  if (!best) throw NumericError("decay fit did not converge: " + why);

  const Eigen::VectorXd& q = best->q;
  Eigen::MatrixXd j(x.size(), 3);
  functor.df(q, j);

  DecayFit out;
  out.a = q[0];
  out.p = q[1];
  out.b = q[2];
  out.ssr = best->ssr;
  out.evaluations = best->evaluations;
  const double s2 = out.ssr / static_cast<double>(x.size() - 3);
  const Eigen::MatrixXd cov = s2 * (j.transpose() * j).completeOrthogonalDecomposition().pseudoInverse();
  out.a_err = std::sqrt(std::max(0.0, cov(0, 0)));
  out.p_err = std::sqrt(std::max(0.0, cov(1, 1)));
  out.b_err = std::sqrt(std::max(0.0, cov(2, 2)));
  return out;
}

}  // namespace ququart
