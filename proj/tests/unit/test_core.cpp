#include <gtest/gtest.h>

#include <cmath>

#include "ququart/core/channel.hpp"
#include "ququart/core/circuit.hpp"
#include "ququart/core/measure.hpp"
#include "support/oracle.hpp"

using namespace ququart;

namespace {

double max_abs_diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Gates, MatchMatrixExponentialOfTabulatedGenerators) {
  for (int lower = 0; lower < 3; ++lower) {
    for (double theta : {0.3, kPi / 2, kPi, -1.7, 3 * kPi}) {
      EXPECT_LT(max_abs_diff(gate_unitary(NativeGate::x(lower, theta)), oracle::X(lower, theta)), 1e-12);
      EXPECT_LT(max_abs_diff(gate_unitary(NativeGate::y(lower, theta)), oracle::Y(lower, theta)), 1e-12);
    }
  }
  for (int level = 1; level < 4; ++level) {
    EXPECT_LT(max_abs_diff(gate_unitary(NativeGate::vz(level, 0.9)), oracle::Z(level, 0.9)), 1e-15);
  }
}

TEST(Gates, UnitaryAndRejectInvalidSubspace) {
  EXPECT_TRUE(is_unitary(gate_unitary(NativeGate::x(1, 0.77))));
  EXPECT_THROW(NativeGate::x(3, 1.0), InvalidArgument);
  EXPECT_THROW(NativeGate::vz(0, 1.0), InvalidArgument);
  EXPECT_THROW(NativeGate::x(0, std::nan("")), InvalidArgument);
}

TEST(Gates, AngleWrapping) {
  EXPECT_NEAR(wrap_pulse_angle(5 * kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_pulse_angle(-2 * kPi), 2 * kPi, 1e-12);
  EXPECT_NEAR(wrap_phase(3 * kPi / 2), -kPi / 2, 1e-12);
  EXPECT_NEAR(wrap_phase(-kPi), kPi, 1e-12);
  // 4pi periodicity keeps the unitary, a 2pi shift flips its sign.
  EXPECT_LT(max_abs_diff(gate_unitary(NativeGate::x(0, 0.4 + 4 * kPi)), oracle::X(0, 0.4)), 1e-12);
}

TEST(Gates, Names) {
  EXPECT_EQ(NativeGate::x(1, 1).name(), "X12");
  EXPECT_EQ(NativeGate::y(2, 1).name(), "Y23");
  EXPECT_EQ(NativeGate::vz(3, 1).name(), "VZ3");
}

TEST(Circuit, DurationCountsPulsesAndBuffers) {
  QuditCircuit c{NativeGate::x(0, 1), NativeGate::vz(1, 1), NativeGate::x(1, 1), NativeGate::y(2, 1)};
  EXPECT_DOUBLE_EQ(circuit_duration(c), 3 * 50 + 2 * 10);
  EXPECT_EQ(c.pulse_count(), 3u);
  EXPECT_DOUBLE_EQ(circuit_duration(QuditCircuit{NativeGate::vz(2, 1)}), 0.0);
  EXPECT_DOUBLE_EQ(circuit_duration(QuditCircuit{}), 0.0);
}

TEST(Circuit, UnitaryIsTimeOrderedProduct) {
  QuditCircuit c{NativeGate::x(0, kPi / 2), NativeGate::vz(1, kPi / 2), NativeGate::x(1, kPi / 2)};
  const auto want = oracle::product({oracle::X(0, kPi / 2), oracle::Z(1, kPi / 2), oracle::X(1, kPi / 2)});
  EXPECT_LT(max_abs_diff(circuit_unitary(c), want), 1e-12);
}

TEST(Circuit, StateAndDensityAgree) {
  QuditCircuit c{NativeGate::x(0, 0.7), NativeGate::y(1, 1.9), NativeGate::vz(2, 0.3), NativeGate::x(2, 2.2)};
  const auto psi = run_circuit(QuditState{}, c);
  const auto rho = run_circuit(QuditDensity{}, c);
  const auto p1 = measure_probs(psi);
  const auto p2 = measure_probs(rho);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(p1[n], p2[n], 1e-12);
  EXPECT_NEAR(rho.fidelity_to(psi), 1.0, 1e-12);
}

TEST(Circuit, SerializationRoundTrips) {
  QuditCircuit c{NativeGate::x(0, 0.1 + 1e-17), NativeGate::vz(3, -2.5), NativeGate::y(1, kPi, 0.25)};
  c.set_shots(500);
  const auto text = serialize(c);
  EXPECT_EQ(parse_circuit(text), c);
  EXPECT_THROW(parse_circuit("X05 1.0\n"), InvalidArgument);
  EXPECT_THROW(parse_circuit("X01 abc\n"), InvalidArgument);
}

TEST(State, Validation) {
  Vec4c v = Vec4c::Zero();
  v[0] = 0.5;
  EXPECT_THROW(QuditState::from_amplitudes(v), InvalidArgument);
  EXPECT_NO_THROW(QuditState::normalized(v));
  Mat4 bad = Mat4::Zero();
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  EXPECT_THROW(QuditDensity::from_matrix(bad), InvalidArgument);
  EXPECT_THROW(QuditDensity::diagonal({0.9, 0.0733, 0.0166, 0.01}), InvalidArgument);
  EXPECT_NO_THROW(QuditDensity::diagonal({0.9, 0.0734, 0.0166, 0.01}));
}

TEST(Channel, CompletenessAndComposition) {
  EXPECT_THROW(KrausChannel({Mat4::Identity() * 0.9}), InvalidArgument);
  const auto u = unitary_channel(gate_unitary(NativeGate::x(0, kPi)));
  const auto twice = u.after(u);
  const auto out = apply_channel(QuditDensity{}, twice);
  EXPECT_NEAR(out.population(0), 1.0, 1e-12);
  EXPECT_LT(twice.completeness_error(), 1e-12);
}

TEST(Measure, SamplingIsDeterministicAndConservesShots) {
  const Probabilities p{0.1, 0.2, 0.3, 0.4};
  const auto a = sample_shots(p, 10000, 42);
  const auto b = sample_shots(p, 10000, 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[0] + a[1] + a[2] + a[3], 10000);
  EXPECT_THROW(sample_shots(p, 0, 1), InvalidArgument);
  EXPECT_THROW(sample_shots({0.5, 0.5, 0.5, 0.0}, 10, 1), InvalidArgument);
}

TEST(Measure, SamplingMatchesProbabilities) {
  const Probabilities p{0.1, 0.2, 0.3, 0.4};
  const long n = 200000;
  const auto c = sample_shots(p, n, 7);
  for (int k = 0; k < 4; ++k) {
    const double sd = std::sqrt(p[k] * (1 - p[k]) / n);
    EXPECT_NEAR(static_cast<double>(c[k]) / n, p[k], 5 * sd);
  }
}

TEST(Measure, DiagonalObservables) {
  const Probabilities r{0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(expectation(DiagObservable::IZ(), r), 0.1 - 0.2 + 0.3 - 0.4, 1e-15);
  EXPECT_NEAR(expectation(DiagObservable::ZI(), r), 0.1 + 0.2 - 0.3 - 0.4, 1e-15);
  EXPECT_NEAR(expectation(DiagObservable::ZZ(), r), 0.1 - 0.2 - 0.3 + 0.4, 1e-15);
  EXPECT_NEAR(expectation(DiagObservable::II(), r), 1.0, 1e-15);
}
