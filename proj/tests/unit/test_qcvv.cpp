#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "ququart/compiler/clifford.hpp"
#include "ququart/noise/decay.hpp"
#include "ququart/qcvv/gst.hpp"
#include "ququart/qcvv/rb.hpp"
#include "support/native_oracle.hpp"

using namespace ququart;

namespace {

oracle::M4 oracle_pauli(int index) {
  const oracle::M2 single[4] = {oracle::M2::Identity(), oracle::sx(), oracle::sy(), oracle::sz()};
  return oracle::kron(single[index / 4], single[index % 4]);
}

oracle::M4 oracle_circuit(const QuditCircuit& c) { return oracle::circuit(c); }

NoisyDevice ideal_device() { return NoisyDevice(DeviceNoise::ideal()); }

}  // namespace

TEST(Ptm, UnitaryPtmMatchesDirectTraceFormula) {
  const oracle::M4 u = oracle::X(0, kPi / 2) * oracle::Y(2, 0.3) * oracle::Z(3, 1.1);
  const PTM r = ptm_of_unitary(u);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const double ref = (oracle_pauli(a) * u * oracle_pauli(b) * u.adjoint()).trace().real() / 4.0;
      EXPECT_NEAR(r(a, b), ref, 1e-12);
    }
}

TEST(Ptm, UnitaryPtmIsOrthogonalAndTracePreserving) {
  for (const auto& g : gst_gate_set()) {
    const PTM r = ptm_of_unitary(gate_unitary(g.gate));
    EXPECT_LT((r.transpose() * r - PTM::Identity()).norm(), 1e-9) << g.name;
    EXPECT_NEAR(r(0, 0), 1.0, 1e-9);
    EXPECT_LT(r.row(0).tail(15).norm(), 1e-9);
  }
  EXPECT_EQ(pauli_labels()[1], "IX");
  EXPECT_EQ(pauli_labels()[4], "XI");
  EXPECT_EQ(pauli_labels()[15], "ZZ");
}

TEST(Ptm, InfidelityOfDepolarizingMatchesRbFormula) {
  const PTM ideal = ptm_of_unitary(gate_unitary(NativeGate::x(1, kPi / 2)));
  EXPECT_NEAR(avg_gate_infidelity(ideal, ideal), 0.0, 1e-12);
  for (double p : {0.99, 0.9, 0.5, 0.0}) {
    const PTM dep = ptm_of_map([&](const Mat4& m) { return depolarize(m, p); });
    EXPECT_NEAR(avg_gate_infidelity(dep * ideal, ideal), (1 - p) * 0.75, 1e-12);
  }
}

TEST(Ptm, StateVectorRoundTrip) {
  const Mat4 rho = QuditDensity::diagonal({0.9, 0.0734, 0.0166, 0.01}).matrix();
  EXPECT_LT((state_from_vector(state_vector(rho)) - rho).norm(), 1e-12);
  Mat4 e = Mat4::Zero();
  e(0, 0) = 1;
  EXPECT_NEAR(effect_vector(e).dot(state_vector(rho)), 0.9, 1e-12);
}

TEST(Ptm, QubitDepolarizingKeepsOtherQubit) {
  // |B=1, A=0> under full depolarizing of A: B stays 1, A becomes mixed.
  const Mat4 rho = QuditDensity::diagonal({0, 0, 1, 0}).matrix();
  const Mat4 out = depolarize_qubit(rho, 0.0, true);
  EXPECT_NEAR(out(2, 2).real(), 0.5, 1e-12);
  EXPECT_NEAR(out(3, 3).real(), 0.5, 1e-12);
  const Mat4 out_b = depolarize_qubit(rho, 0.0, false);
  EXPECT_NEAR(out_b(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(out_b(2, 2).real(), 0.5, 1e-12);
}

TEST(RbSequence, ComposesToIdentityForAllKinds) {
  const auto gate = VirtualQubitGate::uzx();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const RBKind kind = static_cast<RBKind>(seed % 5);
    const int m = 1 + static_cast<int>(seed % 7);
    const auto seq = rb_sequence(kind, m, seed, gate);
    const oracle::M4 u = oracle_circuit(seq.flatten());
    ASSERT_GT(oracle::overlap(u, oracle::M4::Identity()), 1 - 1e-9) << to_string(kind) << " seed " << seed;
  }
}

TEST(RbSequence, DeterministicAndSized) {
  const auto a = rb_sequence(RBKind::TwoQubit, 5, 42);
  const auto b = rb_sequence(RBKind::TwoQubit, 5, 42);
  EXPECT_EQ(a.flatten(), b.flatten());
  EXPECT_EQ(a.steps.size(), 6u);
  const auto i = rb_sequence(RBKind::Interleaved, 5, 42, VirtualQubitGate::iswap());
  EXPECT_EQ(i.steps.size(), 11u);
  EXPECT_THROW(rb_sequence(RBKind::Interleaved, 3, 1), InvalidArgument);
  EXPECT_THROW(rb_sequence(RBKind::Interleaved, 3, 1, VirtualQubitGate::zz(0.3)), InvalidArgument);
  EXPECT_EQ(rb_kind_from_string("simultaneous"), RBKind::Simultaneous);
  EXPECT_THROW(rb_kind_from_string("triple"), InvalidArgument);
}

TEST(RbSequence, SingleAStaysInQubitASubspace) {
  const auto seq = rb_sequence(RBKind::SingleA, 10, 3);
  const QuditState out = run_circuit(QuditState::basis(0), seq.steps.front());
  EXPECT_NEAR(std::norm(out[2]) + std::norm(out[3]), 0.0, 1e-12);
}

TEST(Fit, RecoversExactDecay) {
  std::vector<double> x, y;
  for (int m : {1, 2, 4, 8, 16, 32, 64, 128}) {
    x.push_back(m);
    y.push_back(0.45 * std::pow(0.97, m) + 0.52);
  }
  const auto f = fit_exponential_decay(x, y, 0.5);
  EXPECT_NEAR(f.p, 0.97, 1e-8);
  EXPECT_NEAR(f.a, 0.45, 1e-7);
  EXPECT_NEAR(f.b, 0.52, 1e-7);
}

TEST(Fit, NonFiniteDataIsReported) {
  std::vector<double> x{1, 2, 3, 4, 5}, y{0.9, NAN, 0.8, 0.7, 0.6};
  EXPECT_THROW(fit_exponential_decay(x, y, 0.5), NumericError);
  EXPECT_THROW(fit_exponential_decay({1, 2}, {1, 1}, 0.5), InvalidArgument);
}

TEST(Rb, NoiselessSurvivalIsOne) {
  RBOptions opt;
  opt.kind = RBKind::TwoQubit;
  opt.lengths = {1, 2, 4, 8};
  opt.sequences = 3;
  opt.shots = 200;
  const auto res = run_rb(opt, ideal_device());
  for (const auto& pt : res.points) EXPECT_DOUBLE_EQ(pt.survival, 1.0);
  ASSERT_TRUE(res.fit) << res.fit_error;
  EXPECT_LT(res.error_per_clifford(), 1e-6);
}

class RbDepolarizing : public ::testing::TestWithParam<RBKind> {};

TEST_P(RbDepolarizing, RecoversInjectedDecayWithinTwoStandardErrors) {
  RBOptions opt;
  opt.kind = GetParam();
  opt.lengths = {1, 3, 6, 10, 15, 25, 40, 60};
  opt.sequences = 10;
  opt.shots = 2000;
  opt.seed = 11;
  opt.depolarizing = 0.97;
  const auto res = run_rb(opt, ideal_device());
  ASSERT_TRUE(res.fit) << res.fit_error;
  EXPECT_LT(std::abs(res.fit->p - 0.97), 2 * res.fit->p_err) << "p=" << res.fit->p << " se=" << res.fit->p_err;
  const double expected_b = GetParam() == RBKind::TwoQubit || GetParam() == RBKind::Simultaneous ? 0.25 : 0.5;
  EXPECT_NEAR(res.fit->b, expected_b, 0.05);
}

INSTANTIATE_TEST_SUITE_P(Kinds, RbDepolarizing,
                         ::testing::Values(RBKind::SingleA, RBKind::SingleB, RBKind::Simultaneous,
                                           RBKind::TwoQubit));

TEST(Rb, InterleavedRatioRecoversGateError) {
  RBOptions opt;
  opt.lengths = {1, 2, 4, 8, 12, 20, 30};
  opt.sequences = 4;
  opt.shots = 0;
  opt.depolarizing = 0.98;
  opt.interleaved = VirtualQubitGate::iswap();
  const auto res = run_interleaved_rb(opt, ideal_device());
  EXPECT_NEAR(res.gate_error, 0.75 * 0.02, 1e-6);
}

TEST(Rb, DeviceDampingGivesPositiveError) {
  DeviceNoise n;
  n.gamma = DecayMatrix::reference_device();
  RBOptions opt;
  opt.kind = RBKind::TwoQubit;
  opt.lengths = {1, 4, 16, 32, 64, 128, 256, 512};
  opt.sequences = 3;
  opt.shots = 0;
  const auto res = run_rb(opt, NoisyDevice(n));
  ASSERT_TRUE(res.fit) << res.fit_error;
  EXPECT_GT(res.error_per_clifford(), 1e-3);
  EXPECT_LT(res.error_per_clifford(), 0.05);
}

TEST(GstFiducials, MatchTableAndAreInformationallyComplete) {
  const auto f = gst_fiducials();
  ASSERT_EQ(f.prep.size(), 16u);
  ASSERT_EQ(f.meas.size(), 9u);
  EXPECT_TRUE(f.prep[0].empty());
  EXPECT_EQ(f.prep[1], (QuditCircuit{NativeGate::x(0, kPi / 2)}));
  EXPECT_EQ(f.meas[2], (QuditCircuit{NativeGate::x(0, kPi / 2), NativeGate::x(2, kPi / 2)}));
  EXPECT_EQ(f.meas[8].size(), 12u);

  Eigen::Matrix<std::complex<double>, 16, 16> gram_cols;
  for (int p = 0; p < 16; ++p) {
    const oracle::M4 u = oracle_circuit(f.prep[p]);
    const oracle::M4 rho = u.col(0) * u.col(0).adjoint();
    gram_cols.col(p) = Eigen::Map<const Eigen::Matrix<std::complex<double>, 16, 1>>(rho.data());
  }
  Eigen::FullPivLU<Eigen::Matrix<std::complex<double>, 16, 16>> lu(gram_cols.adjoint() * gram_cols);
  lu.setThreshold(1e-10);
  EXPECT_EQ(lu.rank(), 16);
}

TEST(GstCircuits, CountsIdsAndRoundTrip) {
  const auto gates = gst_gate_set();
  const auto fid = gst_fiducials();
  EXPECT_EQ(gst_circuits(gates, fid, {0}).size(), 144u);
  const auto k1 = gst_circuits(gates, fid, {1});
  EXPECT_EQ(k1.size(), 864u);
  EXPECT_EQ(gst_circuits(gates, fid, {0, 1, 2}).size(), 144u + 2 * 864u);
  for (const auto& c : k1) EXPECT_EQ(parse_circuit(serialize(c.circuit)), c.circuit) << c.id;
  EXPECT_EQ(k1.front().id, "p00_m00_X01^1");
  EXPECT_THROW(gst_circuits(gates, fid, {-1}), InvalidArgument);
}

namespace {

GstEstimate closed_loop(const NoisyDevice& dev, long shots = 0) {
  const auto gates = gst_gate_set();
  const auto fid = gst_fiducials();
  const auto data = simulate_gst(gst_circuits(gates, fid, {0, 1}), dev, shots, 5);
  return linear_inversion_gst(data, gates, fid);
}

}  // namespace

TEST(Gst, NoiselessClosedLoopIsExact) {
  const auto est = closed_loop(ideal_device());
  const auto gates = gst_gate_set();
  for (std::size_t k = 0; k < gates.size(); ++k) {
    EXPECT_LT((est.gates[k] - ptm_of_unitary(gate_unitary(gates[k].gate))).norm(), 1e-6) << gates[k].name;
    EXPECT_NEAR(est.gate_infidelity(k, gates), 0.0, 1e-9);
  }
  EXPECT_NEAR(est.state_infidelity(), 0.0, 1e-9);
}

TEST(Gst, ThermalInitialStateInfidelity) {
  DeviceNoise n;
  n.thermal = {0.9, 0.0734, 0.0166, 0.01};
  const auto est = closed_loop(NoisyDevice(n));
  EXPECT_NEAR(est.state_infidelity(), 0.10, 1e-6);
  const auto gates = gst_gate_set();
  for (std::size_t k = 0; k < gates.size(); ++k) EXPECT_NEAR(est.gate_infidelity(k, gates), 0.0, 1e-6);
}

TEST(Gst, DampingShowsUpAsGateInfidelity) {
  DeviceNoise n;
  n.gamma = DecayMatrix::reference_device();
  n.readout_window_us = 0.0;
  const auto est = closed_loop(NoisyDevice(n));
  const auto gates = gst_gate_set();
  EXPECT_GT(est.gate_infidelity(0, gates), 1e-5);
  EXPECT_LT(est.gate_infidelity(0, gates), 1e-2);
  // Diagonal decay: the 00-population component shrinks for a pulsed gate.
  const PTM ideal = ptm_of_unitary(gate_unitary(gates[2].gate));
  EXPECT_LT(est.gates[2].diagonal().cwiseAbs().sum(), ideal.diagonal().cwiseAbs().sum());
}

TEST(Gst, RankDeficientDesignNamesFiducials) {
  auto fid = gst_fiducials();
  fid.prep[15] = fid.prep[1];
  const auto gates = gst_gate_set();
  const auto data = simulate_gst(gst_circuits(gates, fid, {0, 1}), ideal_device(), 0, 1);
  try {
    linear_inversion_gst(data, gates, fid);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("rank 15"), std::string::npos) << msg;
    EXPECT_NE(msg.find("2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("16"), std::string::npos) << msg;
  }
}

TEST(Gst, DatasetCsvRoundTrip) {
  const auto gates = gst_gate_set();
  const auto fid = gst_fiducials();
  const auto data = simulate_gst(gst_circuits(gates, fid, {0}), ideal_device(), 100, 9);
  const auto path = (std::filesystem::temp_directory_path() / "gst_roundtrip.csv").string();
  write_gst_dataset_csv(path, data);
  EXPECT_EQ(read_gst_dataset_csv(path), data);
  const auto missing = linear_inversion_gst;
  EXPECT_THROW(missing(data, gates, fid), InvalidArgument);
}
