#include "ququart/readout/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "ququart/util/rng.hpp"

namespace ququart {

void IQRecord::validate() const {
  if (!labels.empty() && labels.size() != points.size()) {
    throw InvalidArgument("IQ record has a label count different from its point count");
  }
  for (const auto& p : points)
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw InvalidArgument("IQ record has a non-finite point");
}

void write_iq_csv(std::ostream& os, const IQRecord& rec) {
  rec.validate();
  os << (rec.labeled() ? "I,Q,label\n" : "I,Q\n");
  for (std::size_t i = 0; i < rec.size(); ++i) {
    os << fmt::format("{},{}", rec.points[i][0], rec.points[i][1]);
    if (rec.labeled()) os << ',' << rec.labels[i];
    os << '\n';
  }
}

IQRecord read_iq_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("IQ CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool labeled = false;
  if (line == "I,Q,label") labeled = true;
  else if (line != "I,Q") throw InvalidArgument("IQ CSV header must be 'I,Q' or 'I,Q,label'");
  IQRecord rec;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double i = 0, q = 0;
    int label = 0;
    if (!(ss >> i >> q) || (labeled && !(ss >> label))) {
      throw InvalidArgument(fmt::format("IQ CSV line {}: expected {} columns", lineno, labeled ? 3 : 2));
    }
    rec.points.emplace_back(i, q);
    if (labeled) rec.labels.push_back(label);
  }
  rec.validate();
  return rec;
}

void SphericalGmm::validate() const {
  if (components.empty()) throw InvalidArgument("mixture has no components");
  double w = 0.0;
  for (const auto& c : components) {
    if (!(c.var > 0)) throw InvalidArgument("mixture component variance must be positive");
    if (!(c.weight >= 0)) throw InvalidArgument("mixture weight must be non-negative");
    w += c.weight;
  }
  if (std::abs(w - 1.0) > 1e-9) throw InvalidArgument("mixture weights must sum to 1");
}

double SphericalGmm::log_joint(int k, const IQPoint& x) const {
  const auto& c = components[static_cast<std::size_t>(k)];
  if (c.weight <= 0) return -std::numeric_limits<double>::infinity();
  return std::log(c.weight) - std::log(2 * kPi * c.var) - (x - c.mean).squaredNorm() / (2 * c.var);
}

namespace {

double log_sum_exp(const double* v, int n) {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) m = std::max(m, v[i]);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

}  // namespace

double SphericalGmm::log_likelihood(const IQPoint& x) const {
  std::vector<double> lj(components.size());
  for (int k = 0; k < size(); ++k) lj[static_cast<std::size_t>(k)] = log_joint(k, x);
  return log_sum_exp(lj.data(), size());
}

double SphericalGmm::mean_log_likelihood(const IQRecord& rec) const {
  double s = 0.0;
  for (const auto& p : rec.points) s += log_likelihood(p);
  return s / static_cast<double>(rec.size());
}

SphericalGmm readout_model(const ResonatorParams& res, const BlobGeometry& geom) {
  SphericalGmm g;
  for (int n = 0; n < kDim; ++n) {
    if (!(geom.radius[n] > 0) || !(geom.sigma[n] > 0)) throw InvalidArgument("blob radius and sigma must be positive");
    const double phi = phase_response(res, n);
    g.components.push_back({geom.radius[n] * IQPoint(std::cos(phi), std::sin(phi)), geom.sigma[n] * geom.sigma[n], 0.25});
  }
  return g;
}

IQRecord synthesize_shots(const std::vector<double>& p, const SphericalGmm& gmm, long n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("shot count must be at least 1");
  if (static_cast<int>(p.size()) != gmm.size()) throw InvalidArgument("probability count differs from component count");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= -1e-12)) throw InvalidArgument("negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("probabilities must sum to 1");
  Rng rng(seed);
  std::vector<double> w(p.size());
  std::transform(p.begin(), p.end(), w.begin(), [](double v) { return std::max(0.0, v); });
  std::discrete_distribution<int> pick(w.begin(), w.end());
  std::normal_distribution<double> noise(0.0, 1.0);
  IQRecord rec;
  rec.points.reserve(static_cast<std::size_t>(n));
  rec.labels.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const int k = pick(rng);
    const auto& c = gmm.components[static_cast<std::size_t>(k)];
    const double s = std::sqrt(c.var);
    const double di = noise(rng);
    const double dq = noise(rng);
    rec.points.emplace_back(c.mean[0] + s * di, c.mean[1] + s * dq);
    rec.labels.push_back(k);
  }
  return rec;
}

IQRecord synthesize_shots(const Probabilities& p, const SphericalGmm& gmm, long n, std::uint64_t seed) {
  return synthesize_shots(std::vector<double>(p.begin(), p.end()), gmm, n, seed);
}

IQRecord synthesize_from_counts(const Counts& counts, const SphericalGmm& gmm, std::uint64_t seed) {
  if (gmm.size() != kDim) throw InvalidArgument("level counts need a four-component mixture");
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  IQRecord rec;
  for (int k = 0; k < kDim; ++k) {
    if (counts[k] < 0) throw InvalidArgument("negative count");
    const auto& c = gmm.components[static_cast<std::size_t>(k)];
    const double s = std::sqrt(c.var);
    for (long i = 0; i < counts[k]; ++i) {
      const double di = noise(rng);
      const double dq = noise(rng);
      rec.points.emplace_back(c.mean[0] + s * di, c.mean[1] + s * dq);
      rec.labels.push_back(k);
    }
  }
  return rec;
}

KetIndex classify(const SphericalGmm& gmm, const IQPoint& x) {
  int best = 0;
  double best_v = gmm.log_joint(0, x);
  for (int k = 1; k < gmm.size(); ++k) {
    const double v = gmm.log_joint(k, x);
    if (v > best_v) {
      best = k;
      best_v = v;
    }
  }
  return best;
}

std::vector<int> classify(const SphericalGmm& gmm, const IQRecord& rec) {
  std::vector<int> out(rec.size());
  for (std::size_t i = 0; i < rec.size(); ++i) out[i] = classify(gmm, rec.points[i]);
  return out;
}

Counts classify_counts(const SphericalGmm& gmm, const IQRecord& rec) {
  if (gmm.size() != kDim) throw InvalidArgument("level counts need a four-component mixture");
  Counts c{};
  for (const auto& p : rec.points) ++c[static_cast<std::size_t>(classify(gmm, p))];
  return c;
}

SphericalGmm relabel(const SphericalGmm& gmm, const IQRecord& labeled) {
  if (!labeled.labeled()) throw InvalidArgument("relabeling needs labeled calibration shots");
  const int k = gmm.size();
  std::vector<std::vector<long>> count(static_cast<std::size_t>(k), std::vector<long>(static_cast<std::size_t>(k), 0));
  const auto assigned = classify(gmm, labeled);
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    const int l = labeled.labels[i];
    if (l >= 0 && l < k) ++count[static_cast<std::size_t>(assigned[i])][static_cast<std::size_t>(l)];
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  long best_score = -1;
  if (k <= 8) {
    do {
      long s = 0;
      for (int j = 0; j < k; ++j) s += count[static_cast<std::size_t>(perm[j])][static_cast<std::size_t>(j)];
      if (s > best_score) {
        best_score = s;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (int j = 0; j < k; ++j) {
      int arg = -1;
      for (int c = 0; c < k; ++c)
        if (!used[c] && (arg < 0 || count[c][j] > count[arg][j])) arg = c;
      used[static_cast<std::size_t>(arg)] = true;
      best[static_cast<std::size_t>(j)] = arg;
    }
  }
  SphericalGmm out;
  for (int j = 0; j < k; ++j) out.components.push_back(gmm.components[static_cast<std::size_t>(best[j])]);
  return out;
}

namespace {

SphericalGmm init_from_labels(const IQRecord& rec, int k, bool& ok) {
  ok = false;
  std::vector<IQPoint> sum(static_cast<std::size_t>(k), IQPoint::Zero());
  std::vector<long> n(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const int l = rec.labels[i];
    if (l < 0 || l >= k) return {};
    sum[l] += rec.points[i];
    ++n[l];
  }
  SphericalGmm g;
  for (int j = 0; j < k; ++j) {
    if (n[j] == 0) return {};
    g.components.push_back({sum[j] / static_cast<double>(n[j]), 0.0, static_cast<double>(n[j]) / rec.size()});
  }
  std::vector<double> ss(static_cast<std::size_t>(k), 0.0);
  for (std::size_t i = 0; i < rec.size(); ++i) ss[rec.labels[i]] += (rec.points[i] - g.components[rec.labels[i]].mean).squaredNorm();
  for (int j = 0; j < k; ++j) g.components[j].var = std::max(ss[j] / (2.0 * n[j]), 1e-10);
  ok = true;
  return g;
}

SphericalGmm init_kmeanspp(const IQRecord& rec, int k, Rng& rng) {
  const std::size_t n = rec.size();
  std::vector<IQPoint> centers;
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  centers.push_back(rec.points[first(rng)]);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (rec.points[i] - centers.back()).squaredNorm());
      total += d2[i];
    }
    if (total <= 0) {
      centers.push_back(rec.points[first(rng)]);
      continue;
    }
    std::discrete_distribution<std::size_t> pick(d2.begin(), d2.end());
    centers.push_back(rec.points[pick(rng)]);
  }
  IQPoint mean = IQPoint::Zero();
  for (const auto& p : rec.points) mean += p;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const auto& p : rec.points) var += (p - mean).squaredNorm();
  var = std::max(var / (2.0 * n * k), 1e-10);
  SphericalGmm g;
  for (const auto& c : centers) g.components.push_back({c, var, 1.0 / k});
  return g;
}

struct Degenerate {};

// One EM run; throws Degenerate on component collapse.
GmmFitResult run_em(const IQRecord& rec, SphericalGmm g, const GmmFitOptions& opt) {
  const int k = g.size();
  const std::size_t n = rec.size();
  std::vector<double> resp(n * static_cast<std::size_t>(k));
  auto e_step = [&](const SphericalGmm& m) {
    double ll = 0.0;
    std::vector<double> lj(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j) lj[j] = m.log_joint(j, rec.points[i]);
      const double lse = log_sum_exp(lj.data(), k);
      ll += lse;
      for (int j = 0; j < k; ++j) resp[i * k + j] = std::exp(lj[j] - lse);
    }
    return ll / static_cast<double>(n);
  };
  GmmFitResult out;
  double ll = e_step(g);
  for (int it = 1; it <= opt.max_iter; ++it) {
    for (int j = 0; j < k; ++j) {
      double nk = 0.0;
      IQPoint mu = IQPoint::Zero();
      for (std::size_t i = 0; i < n; ++i) {
        nk += resp[i * k + j];
        mu += resp[i * k + j] * rec.points[i];
      }
      if (nk < 1e-10) throw Degenerate{};
      mu /= nk;
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) ss += resp[i * k + j] * (rec.points[i] - mu).squaredNorm();
      const double var = ss / (2.0 * nk);
      if (var < 1e-12) throw Degenerate{};
      g.components[j] = {mu, var, nk / static_cast<double>(n)};
    }
    const double next = e_step(g);
    if (next < ll - 1e-10 * std::max(1.0, std::abs(ll))) {
      throw NumericError(fmt::format("EM log-likelihood decreased at iteration {} ({} -> {})", it, ll, next));
    }
    out.trace.push_back(next);
    out.iterations = it;
    const double change = next - ll;
    ll = next;
    if (std::abs(change) < opt.tol) {
      out.converged = true;
      break;
    }
  }
  out.model = std::move(g);
  return out;
}

}  // namespace

GmmFitResult fit_gmm(const IQRecord& rec, int k, std::uint64_t seed, const GmmFitOptions& opt) {
  rec.validate();
  if (k < 1) throw InvalidArgument("mixture needs at least one component");
  if (rec.size() < static_cast<std::size_t>(4 * k)) {
    throw InvalidArgument(fmt::format("mixture fit needs at least {} points, got {}", 4 * k, rec.size()));
  }
  Rng rng(seed);
  for (int attempt = 0; attempt <= opt.max_restarts; ++attempt) {
    SphericalGmm init;
    bool ok = false;
    if (attempt == 0 && opt.init_from_labels && rec.labeled()) init = init_from_labels(rec, k, ok);
    if (!ok) init = init_kmeanspp(rec, k, rng);
    try {
      GmmFitResult r = run_em(rec, init, opt);
      r.restarts = attempt;
      if (rec.labeled()) r.model = relabel(r.model, rec);
      return r;
    } catch (const Degenerate&) {
    }
  }
  throw NumericError(fmt::format("mixture fit collapsed to a zero-variance component in {} attempts",
                                 opt.max_restarts + 1));
}

std::string to_text(const SphericalGmm& gmm) {
  std::string s = "# component mean_I mean_Q variance weight\n";
  for (int k = 0; k < gmm.size(); ++k) {
    const auto& c = gmm.components[k];
    s += fmt::format("{} {} {} {} {}\n", k, c.mean[0], c.mean[1], c.var, c.weight);
  }
  return s;
}

SphericalGmm gmm_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  SphericalGmm g;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int k = 0;
    SphericalGmm::Component c;
    if (!(ss >> k >> c.mean[0] >> c.mean[1] >> c.var >> c.weight) || k != g.size()) {
      throw InvalidArgument("malformed mixture line: " + line);
    }
    g.components.push_back(c);
  }
  g.validate();
  return g;
}

}  // namespace ququart
