#include "ququart/vqe/ansatz.hpp"

#include "ququart/core/circuit.hpp"

namespace ququart {

std::string to_string(HamiltonianTerm t) {
  switch (t) {
    case HamiltonianTerm::IZ:
      return "IZ";
    case HamiltonianTerm::ZI:
      return "ZI";
    case HamiltonianTerm::ZZ:
      return "ZZ";
    case HamiltonianTerm::XX:
      return "XX";
    case HamiltonianTerm::YY:
      return "YY";
  }
  return "?";
}

HamiltonianTerm hamiltonian_term_from_string(const std::string& s) {
  for (auto t : kHamiltonianTerms)
    if (to_string(t) == s) return t;
  throw InvalidArgument("unknown Hamiltonian term '" + s + "' (expected IZ, ZI, ZZ, XX or YY)");
}

Mat4 term_matrix(HamiltonianTerm t) { return pauli_string(to_string(t)); }

QuditState hf_state() { return QuditState::basis(embed_two_qubit(1, 0)); }

QuditCircuit ansatz_circuit(double theta) {
  const Rotation va{Axis::X, kPi / 2}, vb{Axis::Y, -kPi / 2};
  QuditCircuit c{NativeGate::x(0, kPi)};
  c.append(compile_1q_A(va));
  c.append(compile_1q_B(vb));
  c.append(compile_zz(-2.0 * theta));
  c.append(compile_1q_B({vb.axis, -vb.angle}));
  c.append(compile_1q_A({va.axis, -va.angle}));
  return c;
}

QuditCircuit basis_change(HamiltonianTerm t) {
  QuditCircuit c;
  if (t == HamiltonianTerm::XX) {
    c.append(compile_1q_A({Axis::Y, -kPi / 2}));
    c.append(compile_1q_B({Axis::Y, -kPi / 2}));
  } else if (t == HamiltonianTerm::YY) {
    c.append(compile_1q_A({Axis::X, kPi / 2}));
    c.append(compile_1q_B({Axis::X, kPi / 2}));
  }
  return c;
}

std::array<double, 4> measured_diagonal(HamiltonianTerm t) {
  switch (t) {
    case HamiltonianTerm::IZ:
      return {1, -1, 1, -1};
    case HamiltonianTerm::ZI:
      return {1, 1, -1, -1};
    default:
      return {1, -1, -1, 1};
  }
}

double expectation_from_distribution(HamiltonianTerm t, const Probabilities& p) {
  const auto d = measured_diagonal(t);
  return d[0] * p[0] + d[1] * p[1] + d[2] * p[2] + d[3] * p[3];
}

double statevector_expectation(double theta, HamiltonianTerm t) {
  const Vec4c psi = run_circuit(QuditState(), ansatz_circuit(theta)).amplitudes();
  return (psi.adjoint() * term_matrix(t) * psi)(0, 0).real();
}

}  // namespace ququart
