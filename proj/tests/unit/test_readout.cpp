#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ququart/noise/decay.hpp"
#include "ququart/noise/misclassify.hpp"
#include "ququart/readout/calibration.hpp"
#include "ququart/readout/mitigation.hpp"
#include "ququart/readout/outliers.hpp"
#include "ququart/readout/resonator.hpp"
#include "ququart/util/log.hpp"

using namespace ququart;

namespace {

SphericalGmm separated_blobs(double sigma, double spacing_sigmas) {
  SphericalGmm g;
  const double d = sigma * spacing_sigmas;
  const IQPoint centers[4] = {{0, 0}, {d, 0}, {0, d}, {d, d}};
  for (const auto& c : centers) g.components.push_back({c, sigma * sigma, 0.25});
  return g;
}

}  // namespace

TEST(Resonator, PhaseMatchesClosedForm) {
  const auto p = ResonatorParams::matched(0.288);
  // Detunings of the probe from the four lines are (-1.5, -0.5, 0.5, 1.5) chi
  // and kappa/2 = chi, so the phases are 2 atan(+-0.5), 2 atan(+-1.5).
  const double want[4] = {-2 * std::atan(1.5), -2 * std::atan(0.5), 2 * std::atan(0.5), 2 * std::atan(1.5)};
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(phase_response(p, n), want[n], 1e-9);
}

TEST(Resonator, SeparationsNearQuarterTurn) {
  const auto p = ResonatorParams::matched(0.288);
  for (int n = 0; n < 3; ++n) {
    const double sep = phase_response(p, n + 1) - phase_response(p, n);
    EXPECT_GT(sep, 0.0);
    EXPECT_LT(std::abs(sep - kPi / 2), kPi / 4) << n;
  }
}

TEST(Resonator, TailsAndDegenerateShifts) {
  auto p = ResonatorParams::matched(0.288);
  EXPECT_NEAR(phase_at(p, 0, p.bare_mhz + 1e6), kPi, 1e-5);
  EXPECT_NEAR(phase_at(p, 0, p.bare_mhz - 1e6), -kPi, 1e-5);
  p.shift_mhz[2] = p.shift_mhz[1];
  EXPECT_EQ(phase_response(p, 1), phase_response(p, 2));
  p.kappa_mhz = 0;
  EXPECT_THROW(phase_response(p, 0), InvalidArgument);
  // Monotone in probe frequency.
  const auto q = ResonatorParams::matched(0.288);
  double prev = -10;
  for (double f = q.probe_mhz - 3; f < q.probe_mhz + 3; f += 0.01) {
    const double v = phase_at(q, 1, f);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Synthesis, FrequenciesAndDegenerateLimit) {
  const auto g = separated_blobs(0.1, 8);
  const auto rec = synthesize_shots(Probabilities{0.25, 0.25, 0.25, 0.25}, g, 100000, 3);
  long c[4] = {};
  for (int l : rec.labels) ++c[l];
  for (long v : c) EXPECT_NEAR(v / 1e5, 0.25, 5 * std::sqrt(0.25 * 0.75 / 1e5));
  const auto only0 = synthesize_shots(Probabilities{1, 0, 0, 0}, g, 100, 1);
  for (int l : only0.labels) EXPECT_EQ(l, 0);
  auto tight = g;
  for (auto& comp : tight.components) comp.var = 0;
  const auto exact = synthesize_shots(Probabilities{0.1, 0.2, 0.3, 0.4}, tight, 500, 2);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    EXPECT_EQ(exact.points[i], tight.components[exact.labels[i]].mean);
    EXPECT_EQ(classify(g, exact.points[i]), exact.labels[i]);
  }
  EXPECT_EQ(synthesize_shots(Probabilities{0.1, 0.2, 0.3, 0.4}, g, 50, 9).points,
            synthesize_shots(Probabilities{0.1, 0.2, 0.3, 0.4}, g, 50, 9).points);
}

TEST(Gmm, RecoversWellSeparatedMeans) {
  const auto truth = separated_blobs(0.1, 8);
  const long n = 20000;
  const auto rec = synthesize_shots(Probabilities{0.25, 0.25, 0.25, 0.25}, truth, n, 5);
  IQRecord unlabeled{rec.points, {}};
  const auto fit = fit_gmm(unlabeled, 4, 17);
  EXPECT_TRUE(fit.converged);
  for (std::size_t i = 1; i < fit.trace.size(); ++i) EXPECT_GE(fit.trace[i], fit.trace[i - 1] - 1e-12);
  // Unlabeled fits come out in arbitrary order; relabel with the truth.
  const auto model = relabel(fit.model, rec);
  for (int k = 0; k < 4; ++k) {
    // Standard error of a mean from ~n/4 points, per axis: sigma / sqrt(n/4).
    const double se = 0.1 / std::sqrt(n / 4.0);
    EXPECT_LT((model.components[k].mean - truth.components[k].mean).norm(), 5 * se) << k;
    EXPECT_NEAR(std::sqrt(model.components[k].var), 0.1, 0.005);
  }
}

TEST(Gmm, SingleComponentIsMaximumLikelihood) {
  const auto rec = synthesize_shots(std::vector<double>{1.0}, SphericalGmm{{{{2.0, -1.0}, 0.04, 1.0}}}, 400, 8);
  const auto fit = fit_gmm(rec, 1, 1);
  IQPoint mean = IQPoint::Zero();
  for (const auto& p : rec.points) mean += p;
  mean /= 400.0;
  double ss = 0;
  for (const auto& p : rec.points) ss += (p - mean).squaredNorm();
  EXPECT_LT((fit.model.components[0].mean - mean).norm(), 1e-12);
  EXPECT_NEAR(fit.model.components[0].var, ss / 400.0 / 2.0, 1e-12);
}

TEST(Gmm, DegenerateDataFails) {
  IQRecord rec;
  for (int i = 0; i < 40; ++i) rec.points.emplace_back(1.0, 1.0);
  EXPECT_THROW(fit_gmm(rec, 4, 1), NumericError);
  EXPECT_THROW(fit_gmm(IQRecord{{{0, 0}}, {}}, 4, 1), InvalidArgument);
}

TEST(Gmm, ClassificationRulesAndAccuracy) {
  const auto g = separated_blobs(0.1, 6);
  EXPECT_EQ(classify(g, g.components[2].mean), 2);
  // Midpoint between components 0 and 1 (equal weights and variances).
  EXPECT_EQ(classify(g, IQPoint(0.3, -5.0)), 0);
  const auto rec = synthesize_shots(Probabilities{0.25, 0.25, 0.25, 0.25}, g, 100000, 12);
  const auto fit = fit_gmm(rec, 4, 3);
  const auto labels = classify(fit.model, rec);
  long correct = 0;
  for (std::size_t i = 0; i < rec.size(); ++i) correct += labels[i] == rec.labels[i];
  EXPECT_GE(correct / 1e5, 0.99);
}

TEST(Gmm, TextAndCsvRoundTrip) {
  const auto g = separated_blobs(0.1, 6);
  const auto back = gmm_from_text(to_text(g));
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(back.components[k].mean, g.components[k].mean);
    EXPECT_EQ(back.components[k].var, g.components[k].var);
  }
  const auto rec = synthesize_shots(Probabilities{0.25, 0.25, 0.25, 0.25}, g, 30, 1);
  std::stringstream ss;
  write_iq_csv(ss, rec);
  const auto r2 = read_iq_csv(ss);
  EXPECT_EQ(r2.points, rec.points);
  EXPECT_EQ(r2.labels, rec.labels);
  std::stringstream bad("I,Q\n1.0\n");
  EXPECT_THROW(read_iq_csv(bad), InvalidArgument);
}

TEST(Assignment, EstimationCases) {
  std::array<Counts, 4> perfect{};
  for (int i = 0; i < 4; ++i) perfect[i][i] = 100;
  EXPECT_LT((estimate_assignment(perfect).matrix() - Mat4r::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  // Pure 2/3 misclassification through the sampling path.
  DeviceNoise n;
  n.misclassification = MisclassificationModel(0.25);
  n.misclassification_mode = MisclassificationMode::PerShot;
  const auto a = calibrate_assignment(NoisyDevice(n), {500, 200, std::nullopt}, 4);
  const double se = std::sqrt(0.25 * 0.75 / 1e5);
  EXPECT_NEAR(a(2, 2), 0.75, 5 * se);
  EXPECT_NEAR(a(2, 3), 0.25, 5 * se);
  EXPECT_NEAR(a(3, 2), 0.25, 5 * se);
  EXPECT_NEAR(a(3, 3), 0.75, 5 * se);
  EXPECT_EQ(a(0, 0), 1.0);
  std::array<Counts, 4> empty{};
  EXPECT_THROW(estimate_assignment(empty), InvalidArgument);
}

TEST(Assignment, DecayOnlyMatchesTransferPower) {
  DeviceNoise n;
  n.gamma = DecayMatrix::reference_device();
  n.gate_damping = false;
  const NoisyDevice dev(n);
  const Mat4r t10 = transfer_power(*n.gamma, 10.0);
  const auto a = expected_assignment(dev);
  EXPECT_LT((a.matrix() - t10.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  // Largest off-diagonal error comes from level 3.
  double worst = 0;
  int worst_row = -1;
  for (int i = 0; i < 4; ++i) {
    if (1 - a(i, i) > worst) {
      worst = 1 - a(i, i);
      worst_row = i;
    }
  }
  EXPECT_EQ(worst_row, 3);
}

TEST(Mitigation, RoundTripAndConditioning) {
  Mat4r m;
  m << 0.97, 0.02, 0.01, 0.0,  //
      0.05, 0.9, 0.03, 0.02,    //
      0.01, 0.06, 0.8, 0.13,    //
      0.0, 0.02, 0.2, 0.78;
  const AssignmentMatrix a(m);
  const Probabilities p{0.1, 0.2, 0.3, 0.4};
  const auto back = mitigate(a, a.apply(p));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(back[k], p[k], 1e-12);
  EXPECT_EQ(mitigate(AssignmentMatrix::identity(), p), p);
  Mat4r singular = Mat4r::Identity();
  singular.row(3) = singular.row(2);
  EXPECT_THROW(mitigate(AssignmentMatrix(singular), p), NumericError);
  // Unphysical output is allowed and still sums to one.
  const auto odd = mitigate(a, {0.5, 0.5, 0.0, 0.0});
  EXPECT_NEAR(odd[0] + odd[1] + odd[2] + odd[3], 1.0, 1e-12);
  EXPECT_LT(std::min({odd[0], odd[1], odd[2], odd[3]}), 0.0);
}

TEST(Mitigation, WarnsOnDoubleCorrection) {
  int warnings = 0;
  auto old = set_warning_sink([&](std::string_view) { ++warnings; });
  mitigate(AssignmentMatrix::identity(), {1, 0, 0, 0}, {true});
  mitigate(AssignmentMatrix::identity(), {1, 0, 0, 0}, {false});
  set_warning_sink(old);
  EXPECT_EQ(warnings, 1);
}

TEST(Outliers, FractionSemantics) {
  const auto g = separated_blobs(0.1, 6);
  const auto rec = synthesize_shots(Probabilities{0.25, 0.25, 0.25, 0.25}, g, 1001, 4);
  EXPECT_EQ(remove_outliers(rec, 0.0).kept.points, rec.points);
  const auto half = remove_outliers(rec, 0.5);
  EXPECT_EQ(half.removed.size(), 501u);
  EXPECT_EQ(half.kept.size(), 500u);
  double min_kept = 1e300, max_removed = -1e300;
  std::vector<bool> gone(rec.size(), false);
  for (int i : half.removed) gone[i] = true;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (gone[i]) max_removed = std::max(max_removed, half.score[i]);
    else min_kept = std::min(min_kept, half.score[i]);
  }
  EXPECT_LE(max_removed, min_kept);
  EXPECT_THROW(remove_outliers(rec, 1.0), InvalidArgument);
}

TEST(Outliers, RemovesPlantedContamination) {
  const auto g = separated_blobs(0.1, 6);
  auto rec = synthesize_shots(Probabilities{0.25, 0.25, 0.25, 0.25}, g, 4000, 6);
  // Move 10% of the shots onto a different blob but keep their labels.
  std::vector<bool> planted(rec.size(), false);
  for (std::size_t i = 0; i < rec.size(); i += 10) {
    const int wrong = (rec.labels[i] + 1) % 4;
    rec.points[i] += g.components[wrong].mean - g.components[rec.labels[i]].mean;
    planted[i] = true;
  }
  for (double fraction : {0.2, 0.5}) {
    const auto res = remove_outliers(rec, fraction);
    long caught = 0, total = 0;
    for (std::size_t i = 0; i < rec.size(); ++i) total += planted[i];
    for (int i : res.removed) caught += planted[i];
    EXPECT_GE(static_cast<double>(caught) / total, 0.9) << fraction;
  }
}

TEST(Outliers, OneDimensionalInliers) {
  std::vector<double> v;
  for (int i = 0; i < 90; ++i) v.push_back(0.5 + 0.01 * ((i % 7) - 3));
  for (int i = 0; i < 10; ++i) v.push_back(-0.4);
  const auto keep = robust_inliers(v, 0.2);
  EXPECT_EQ(keep.size(), 80u);
  for (int i : keep) EXPECT_GT(v[i], 0.0);
}
