#include <gtest/gtest.h>

#include <cmath>

#include "ququart/compiler/compile.hpp"
#include "ququart/noise/damping.hpp"
#include "ququart/noise/decay.hpp"
#include "ququart/noise/device.hpp"
#include "ququart/noise/misclassify.hpp"
#include "ququart/noise/reset.hpp"
#include "support/oracle.hpp"

using namespace ququart;

namespace {

// Measured device matrix, entered independently of the library preset.
Eigen::Matrix4d measured_gamma() {
  Eigen::Matrix4d g;
  g << 0.00044, -0.00044, 0.0, 0.0,  //
      -0.00599, 0.00706, -0.00108, 0.0,  //
      -0.00055, -0.00802, 0.01112, -0.00255,  //
      -0.00017, -0.00078, -0.0118, 0.01222;
  return g;
}

}  // namespace

TEST(Decay, PresetMatchesMeasuredMatrix) {
  EXPECT_LT((DecayMatrix::reference_device().gamma() - measured_gamma()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Decay, EffectiveT1) {
  const auto t1 = effective_t1(DecayMatrix::reference_device());
  EXPECT_NEAR(t1.t01, 1 / 0.00599, 1e-9);
  EXPECT_NEAR(t1.t12, 1 / 0.00802, 1e-9);
  EXPECT_NEAR(t1.t23, 1 / 0.0118, 1e-9);
  EXPECT_NEAR(t1.t01, 167, 1);
  EXPECT_NEAR(t1.t12, 125, 1);
  EXPECT_NEAR(t1.t23, 85, 1);
}

TEST(Decay, ValidationRejectsBadMatrices) {
  Mat4r g = measured_gamma();
  g(1, 0) = 0.1;
  EXPECT_THROW(DecayMatrix{g}, InvalidArgument);
  g = measured_gamma();
  g(2, 2) = -0.01;
  EXPECT_THROW(DecayMatrix{g}, InvalidArgument);
  EXPECT_THROW(DecayMatrix(measured_gamma(), 1e-5), InvalidArgument);
}

TEST(Decay, TransferConservesProbability) {
  const auto g = DecayMatrix::reference_device();
  const Mat4r t = g.transfer();
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(t.col(j).sum(), 1.0, 1e-15);
  EXPECT_NEAR(g.stochasticity_defect(), 5.3e-4, 1e-9);
}

TEST(Decay, PropagationMatchesEigenOracle) {
  const auto g = DecayMatrix::reference_device();
  const Probabilities p0{0.1, 0.2, 0.3, 0.4};
  // Oracle: diagonalize the completed transfer matrix and raise eigenvalues.
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity() - measured_gamma().transpose();
  for (int j = 0; j < 4; ++j) t(j, j) = 1.0 - (t.col(j).sum() - t(j, j));
  Eigen::EigenSolver<Eigen::Matrix4d> es(t);
  for (double time : {0.0, 1.0, 10.0, 7.3}) {
    const Eigen::Vector4cd lam = es.eigenvalues().array().pow(time);
    const Eigen::Matrix4cd m = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().inverse();
    const Eigen::Vector4d want = (m * Eigen::Vector4cd(0.1, 0.2, 0.3, 0.4)).real();
    const auto got = decay_propagate_continuous(p0, g, time);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(got[n], want[n], 1e-12) << "t=" << time;
    if (time == std::round(time)) {
      const auto got_int = decay_propagate(p0, g, static_cast<int>(time));
      for (int n = 0; n < 4; ++n) EXPECT_NEAR(got_int[n], want[n], 1e-12);
    }
  }
}

TEST(Decay, IteratedStepsEqualPower) {
  const auto g = DecayMatrix::reference_device();
  Probabilities p{0, 0, 0, 1};
  for (int k = 0; k < 10; ++k) p = decay_propagate(p, g, 1);
  const auto q = decay_propagate({0, 0, 0, 1}, g, 10);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(p[n], q[n], 1e-14);
}

TEST(Decay, GroundStateNearlyFixedAndExcitedDecays) {
  const auto g = DecayMatrix::reference_device();
  EXPECT_GT(decay_propagate({1, 0, 0, 0}, g, 10)[0], 0.995);
  // One step leaves exactly the diagonal transfer entry; afterwards the
  // level keeps decaying on the ~1/0.00706 us scale with slight refilling.
  EXPECT_NEAR(decay_propagate({0, 1, 0, 0}, g, 1)[1], 1 - 0.00599 - 0.00108, 1e-15);
  const double s = decay_propagate({0, 1, 0, 0}, g, 100)[1];
  EXPECT_GT(s, std::pow(1 - 0.00706, 100));
  EXPECT_LT(s, std::exp(-100 / 189.0));
}

TEST(Damping, ZeroIsIdentity) {
  const auto ch = damping_channel(DampingSpec::none());
  ASSERT_EQ(ch.operators().size(), 1u);
  EXPECT_LT((ch.operators()[0] - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Damping, FullDecayOfLevelOne) {
  DampingSpec s;
  s.gamma[1][0] = 1.0;
  const auto out = apply_channel(QuditDensity::diagonal({0, 1, 0, 0}), damping_channel(s));
  EXPECT_NEAR(out.population(0), 1.0, 1e-15);
}

TEST(Damping, RejectsInvalidSpec) {
  DampingSpec s;
  s.gamma[3][0] = 0.6;
  s.gamma[3][1] = 0.6;
  EXPECT_THROW(damping_channel(s), InvalidArgument);
  s = {};
  s.gamma[2][1] = -0.1;
  EXPECT_THROW(damping_channel(s), InvalidArgument);
}

TEST(Damping, GammaFromRatesClosedForm) {
  const auto g = DecayMatrix::reference_device();
  const auto s = gamma_from_rates(g, 10.0);
  EXPECT_NEAR(s.gamma[3][2], 1 - std::exp(-0.118), 1e-12);
  EXPECT_NEAR(s.gamma[3][2], 0.1113, 1e-4);
  const auto zero = gamma_from_rates(g, 0.0);
  for (int j = 1; j < 4; ++j) EXPECT_EQ(zero.xi(j), 0.0);
  const auto big = gamma_from_rates(g, 1e6);
  EXPECT_NEAR(big.xi(3), 1.0, 1e-12);
}

TEST(Damping, ChannelIsCptpAndMatchesClassicalStep) {
  const auto s = gamma_from_rates(DecayMatrix::reference_device(), 3.0);
  const auto ch = damping_channel(s);
  EXPECT_LT(ch.completeness_error(), 1e-12);
  const Probabilities p{0.1, 0.2, 0.3, 0.4};
  const auto out = apply_channel(QuditDensity::diagonal(p), ch);
  const auto step = decay_propagate(p, step_matrix(s), 1);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(out.population(n), step[n], 1e-9);
}

TEST(Dephasing, ShrinksCoherencesOnly) {
  const auto g = DecayMatrix::reference_device();
  const auto ch = dephasing_channel(CoherenceTimes{}, g, 20.0);
  EXPECT_LT(ch.completeness_error(), 1e-12);
  Vec4c v = Vec4c::Constant(0.5);
  const auto out = apply_channel(QuditDensity::from_state(QuditState::from_amplitudes(v)), ch);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(out.population(n), 0.25, 1e-12);
  const double rate01 = 1 / 118.0 - 0.5 / (1 / 0.00599);
  EXPECT_NEAR(std::abs(out(0, 1)), 0.25 * std::exp(-20 * rate01), 1e-12);
  EXPECT_LT(std::abs(out(0, 3)), std::abs(out(0, 1)));
}

TEST(Misclassify, ModelAlgebra) {
  const Probabilities p{0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(misclassify(p, MisclassificationModel(0.0)), p);
  const auto half = misclassify({0, 0, 1, 0}, MisclassificationModel(0.5));
  EXPECT_NEAR(half[2], 0.5, 1e-15);
  EXPECT_NEAR(half[3], 0.5, 1e-15);
  // Two stages compose to eps'' = e1 + e2 - 2 e1 e2.
  const double e1 = 0.1, e2 = 0.25;
  const auto twice = misclassify(misclassify(p, MisclassificationModel(e1)), MisclassificationModel(e2));
  const auto once = misclassify(p, MisclassificationModel(e1 + e2 - 2 * e1 * e2));
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(twice[n], once[n], 1e-15);
  EXPECT_THROW(MisclassificationModel(0.6), InvalidArgument);
}

TEST(Misclassify, SampledModesShareTheMean) {
  const MisclassificationModel m(0.25);
  Rng rng(5);
  double shot2 = 0, batch2 = 0;
  const int trials = 20000;
  for (int k = 0; k < trials; ++k) {
    shot2 += misclassify_counts({0, 0, 100, 0}, m, MisclassificationMode::PerShot, rng)[2];
    batch2 += misclassify_counts({0, 0, 100, 0}, m, MisclassificationMode::PerBatch, rng)[2];
  }
  EXPECT_NEAR(shot2 / trials, 75.0, 0.1);
  EXPECT_NEAR(batch2 / trials, 75.0, 5 * 100 * std::sqrt(0.25 * 0.75 / trials));
}

TEST(Reset, ThermalInitFidelity) {
  const auto rho = thermal_init({0.9, 0.0734, 0.0166, 0.01});
  EXPECT_NEAR(rho.fidelity_to(QuditState{}), 0.9, 1e-15);
  EXPECT_LT((thermal_init({0.25, 0.25, 0.25, 0.25}).matrix() - Mat4::Identity() / 4.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Reset, PerfectClassifierReturnsGround) {
  for (int n = 0; n < 4; ++n) {
    const auto out = active_reset(QuditDensity::from_state(QuditState::basis(n)), 1, AssignmentMatrix::identity());
    EXPECT_NEAR(out.population(0), 1.0, 1e-12) << n;
  }
}

TEST(Reset, TwoRoundsReachHighFidelity) {
  const auto rho = thermal_init({0.9, 0.0734, 0.0166, 0.01});
  const MisclassificationModel eps(0.1);
  const auto damping = gamma_from_rates(DecayMatrix::reference_device(), 0.05);
  const double f1 = active_reset(rho, 1, eps, damping).population(0);
  const double f2 = active_reset(rho, 2, eps, damping).population(0);
  EXPECT_GE(f2, f1);
  EXPECT_GE(f2, 0.99);
  // Monotone under a perfect classifier.
  double prev = 0.0;
  for (int r = 0; r < 4; ++r) {
    const double f = active_reset(rho, r, AssignmentMatrix::identity()).population(0);
    EXPECT_GE(f, prev - 1e-15);
    prev = f;
  }
}

TEST(Device, IdealDeviceMatchesUnitaryExecution) {
  const NoisyDevice dev(DeviceNoise::ideal());
  const auto c = compile_uzx();
  const auto p = dev.run(c);
  const auto want = measure_probs(run_circuit(QuditState{}, c));
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(p[n], want[n], 1e-12);
}

TEST(Device, ReadoutDecayMatchesMatrixPower) {
  DeviceNoise n;
  n.gamma = DecayMatrix::reference_device();
  n.gate_damping = false;
  const NoisyDevice dev(n);
  const auto p = dev.readout_populations(QuditDensity::diagonal({0, 0, 0, 1}));
  const auto want = decay_propagate({0, 0, 0, 1}, *n.gamma, 10);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[k], want[k], 1e-12);
}

TEST(Device, GateDampingScalesWithPulseCount) {
  DeviceNoise n;
  n.gamma = DecayMatrix::reference_device();
  n.readout_window_us = 0;
  const NoisyDevice dev(n);
  // Two pi pulses take |0> -> |1> -> |0>. Whatever decays during the first
  // pulse and the buffer is flipped up by the second pulse.
  const QuditCircuit c{NativeGate::x(0, kPi), NativeGate::x(0, kPi)};
  const auto p = dev.run(c);
  const double g_pulse = 1 - std::exp(-0.05 * 0.00599);
  const double g_buf = 1 - std::exp(-0.01 * 0.00599);
  const double lost = 1 - (1 - g_pulse) * (1 - g_buf);
  EXPECT_NEAR(p[0], 1 - lost * (1 - g_pulse), 1e-12);
}
