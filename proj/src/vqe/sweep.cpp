#include "ququart/vqe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "ququart/readout/mitigation.hpp"
#include "ququart/readout/outliers.hpp"
#include "ququart/util/rng.hpp"

namespace ququart {

std::string to_string(EstimateVariant v) {
  switch (v) {
    case EstimateVariant::Raw:
      return "raw";
    case EstimateVariant::Mitigated:
      return "mitigated";
    case EstimateVariant::Filtered:
      return "filtered";
  }
  return "?";
}

std::vector<double> theta_grid(const SweepOptions& opt) {
  if (opt.points < 1) throw InvalidArgument("theta grid needs at least one point");
  if (opt.points == 1) return {opt.theta_min};
  std::vector<double> g(opt.points);
  for (int i = 0; i < opt.points; ++i)
    g[i] = opt.theta_min + (opt.theta_max - opt.theta_min) * i / (opt.points - 1);
  return g;
}

const std::vector<double>& TermSamples::get(EstimateVariant v) const {
  switch (v) {
    case EstimateVariant::Raw:
      return raw;
    case EstimateVariant::Mitigated:
      return mitigated;
    case EstimateVariant::Filtered:
      return filtered;
  }
  return raw;
}

const TermSamples& VqeSweep::at(std::size_t i, HamiltonianTerm t) const {
  const auto it = std::find(terms.begin(), terms.end(), t);
  if (it == terms.end()) throw InvalidArgument("term " + to_string(t) + " was not measured in this sweep");
  return samples.at(i)[it - terms.begin()];
}

bool VqeSweep::has(EstimateVariant v) const {
  return !samples.empty() && !samples[0].empty() && !samples[0][0].get(v).empty();
}

double VqeSweep::mean(std::size_t i, HamiltonianTerm t, EstimateVariant v) const {
  const auto& x = at(i, t).get(v);
  if (x.empty()) throw InvalidArgument("variant " + to_string(v) + " not available in this sweep");
  return std::accumulate(x.begin(), x.end(), 0.0) / x.size();
}

double VqeSweep::stddev(std::size_t i, HamiltonianTerm t, EstimateVariant v) const {
  const auto& x = at(i, t).get(v);
  if (x.size() < 2) return 0.0;
  const double m = mean(i, t, v);
  double s = 0.0;
  for (double e : x) s += (e - m) * (e - m);
  return std::sqrt(s / (x.size() - 1));
}

namespace {

TermSamples measure_item(const SweepOptions& opt, const NoisyDevice& device, double theta, HamiltonianTerm term,
                         std::uint64_t seed) {
  QuditCircuit c = ansatz_circuit(theta);
  c.append(basis_change(term));
  const Probabilities readout = device.run(c);
  Rng rng(seed);
  TermSamples out;
  out.raw.reserve(opt.repeats);
  for (int r = 0; r < opt.repeats; ++r) {
    const Probabilities f = frequencies(device.sample(readout, opt.shots, rng));
    out.raw.push_back(expectation_from_distribution(term, f));
    if (opt.mitigation) out.mitigated.push_back(expectation_from_distribution(term, mitigate(*opt.mitigation, f)));
  }
  if (opt.outlier_fraction > 0.0) {
    const auto& base = opt.mitigation ? out.mitigated : out.raw;
    for (int i : robust_inliers(base, opt.outlier_fraction)) out.filtered.push_back(base[i]);
  }
  return out;
}

}  // namespace

VqeSweep sweep(const SweepOptions& opt, const NoisyDevice& device) {
  if (opt.repeats < 1) throw InvalidArgument("sweep needs at least one repeat");
  if (opt.shots < 1) throw InvalidArgument("sweep needs at least one shot per repeat");
  if (opt.terms.empty()) throw InvalidArgument("sweep needs at least one term");
  if (opt.outlier_fraction < 0.0 || opt.outlier_fraction >= 1.0)
    throw InvalidArgument("outlier fraction must lie in [0, 1)");
  if (opt.mitigation && opt.mitigation->condition_number() > kMaxAssignmentCondition)
    throw NumericError(fmt::format("assignment matrix condition number {} exceeds {}",
                                   opt.mitigation->condition_number(), kMaxAssignmentCondition));

  VqeSweep s;
  s.thetas = theta_grid(opt);
  s.terms = opt.terms;
  const std::size_t nt = s.thetas.size(), np = s.terms.size();
  s.samples.assign(nt, std::vector<TermSamples>(np));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t item = next++; item < nt * np; item = next++) {
      const std::size_t i = item / np, k = item % np;
      try {
        s.samples[i][k] = measure_item(opt, device, s.thetas[i], s.terms[k],
                                       derive_seed(opt.seed, {std::uint64_t(i), std::uint64_t(s.terms[k])}));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return s;
}

VqeSweep analytic_sweep(const std::vector<double>& thetas) {
  VqeSweep s;
  s.thetas = thetas;
  s.terms.assign(kHamiltonianTerms.begin(), kHamiltonianTerms.end());
  for (double th : thetas) {
    std::vector<TermSamples> row;
    for (auto t : s.terms) {
      TermSamples ts;
      ts.raw = {statevector_expectation(th, t)};
      row.push_back(ts);
    }
    s.samples.push_back(row);
  }
  return s;
}

EnergyEstimate energy(const VqeSweep& s, std::size_t i, const HamiltonianSpec& h, EstimateVariant v) {
  const std::pair<HamiltonianTerm, double> parts[] = {{HamiltonianTerm::IZ, h.g_iz},
                                                      {HamiltonianTerm::ZI, h.g_zi},
                                                      {HamiltonianTerm::ZZ, h.g_zz},
                                                      {HamiltonianTerm::XX, h.g_xx},
                                                      {HamiltonianTerm::YY, h.g_yy}};
  EnergyEstimate e{h.g0, 0.0};
  double var = 0.0;
  for (const auto& [term, g] : parts) {
    if (g == 0.0) continue;
    e.mean += g * s.mean(i, term, v);
    const double sd = s.stddev(i, term, v);
    var += g * g * sd * sd;
  }
  e.sigma = std::sqrt(var);
  return e;
}

std::vector<EnergyPoint> energy_curve(const VqeSweep& s, const HamiltonianTable& table,
                                      const std::vector<double>& distances, EstimateVariant v) {
  std::vector<EnergyPoint> out;
  for (double r : distances) {
    const HamiltonianSpec& h = table.at(r);
    EnergyPoint best;
    best.e_mean = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.thetas.size(); ++i) {
      const auto e = energy(s, i, h, v);
      if (e.mean < best.e_mean) {
        best.theta = s.thetas[i];
        best.e_mean = e.mean;
        best.e_sigma = e.sigma;
      }
    }
    best.r = h.r;
    best.e_exact = exact_ground_energy(h);
    best.within_chemical_accuracy = std::abs(best.e_mean - best.e_exact) <= kChemicalAccuracy;
    out.push_back(best);
  }
  return out;
}

double statevector_energy(double theta, const HamiltonianSpec& h) {
  const Vec4c psi = run_circuit(QuditState(), ansatz_circuit(theta)).amplitudes();
  return (psi.adjoint() * h.matrix() * psi)(0, 0).real();
}

VariationalMinimum minimize_statevector_energy(const HamiltonianSpec& h, int grid_points) {
  if (grid_points < 3) throw InvalidArgument("need at least 3 grid points");
  const double step = 2 * kPi / (grid_points - 1);
  double best_theta = -kPi, best = statevector_energy(-kPi, h);
  for (int i = 1; i < grid_points; ++i) {
    const double th = -kPi + i * step;
    const double e = statevector_energy(th, h);
    if (e < best) {
      best = e;
      best_theta = th;
    }
  }
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double a = best_theta - step, b = best_theta + step;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = statevector_energy(c, h), fd = statevector_energy(d, h);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = statevector_energy(c, h);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = statevector_energy(d, h);
    }
  }
  const double th = (a + b) / 2;
  return {th, statevector_energy(th, h)};
}

namespace {

double gaussian_logpdf(double x, double mu, double var) {
  return -0.5 * (std::log(2 * kPi * var) + (x - mu) * (x - mu) / var);
}

}  // namespace

BimodalityTest test_bimodality(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 5) throw InvalidArgument("bimodality test needs at least 5 values");
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double var = 0.0;
  for (double x : values) var += (x - mean) * (x - mean);
  var = std::max(var / n, 1e-12);

  BimodalityTest t;
  double ll1 = 0.0;
  for (double x : values) ll1 += gaussian_logpdf(x, mean, var);
  t.bic_one = 2 * std::log(double(n)) - 2 * ll1;

  // Two-component EM started one standard deviation either side of the mean.
  double mu[2] = {mean - std::sqrt(var), mean + std::sqrt(var)};
  double v[2] = {var, var};
  double w[2] = {0.5, 0.5};
  const double floor = 1e-6 * var + 1e-12;
  double ll2 = -std::numeric_limits<double>::infinity();
  std::vector<double> resp(n);
  for (int iter = 0; iter < 500; ++iter) {
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::log(w[0]) + gaussian_logpdf(values[i], mu[0], v[0]);
      const double b = std::log(w[1]) + gaussian_logpdf(values[i], mu[1], v[1]);
      const double m = std::max(a, b);
      const double lse = m + std::log(std::exp(a - m) + std::exp(b - m));
      resp[i] = std::exp(b - lse);
      ll += lse;
    }
    double nk[2] = {0, 0}, sk[2] = {0, 0};
    for (std::size_t i = 0; i < n; ++i) {
      nk[0] += 1 - resp[i];
      nk[1] += resp[i];
      sk[0] += (1 - resp[i]) * values[i];
      sk[1] += resp[i] * values[i];
    }
    if (nk[0] < 1e-9 || nk[1] < 1e-9) break;
    for (int k = 0; k < 2; ++k) {
      mu[k] = sk[k] / nk[k];
      w[k] = nk[k] / n;
    }
    double vk[2] = {0, 0};
    for (std::size_t i = 0; i < n; ++i) {
      vk[0] += (1 - resp[i]) * (values[i] - mu[0]) * (values[i] - mu[0]);
      vk[1] += resp[i] * (values[i] - mu[1]) * (values[i] - mu[1]);
    }
    for (int k = 0; k < 2; ++k) v[k] = std::max(vk[k] / nk[k], floor);
    const bool done = std::abs(ll - ll2) < 1e-10 * std::abs(ll);
    ll2 = ll;
    if (done) break;
  }
  t.bic_two = 5 * std::log(double(n)) - 2 * ll2;
  t.separation = std::sqrt(2.0) * std::abs(mu[0] - mu[1]) / std::sqrt(v[0] + v[1]);
  t.minor_weight = std::min(w[0], w[1]);
  t.bimodal = t.bic_two < t.bic_one && t.separation > 2.0 && t.minor_weight >= 2.0 / n;
  return t;
}

}  // namespace ququart
