#pragma once

#include <array>
#include <string>
#include <vector>

#include "ququart/compiler/compile.hpp"
#include "ququart/core/measure.hpp"

namespace ququart {

/// Measured Pauli terms of the H2 Hamiltonian (first letter on qubit B).
enum class HamiltonianTerm { IZ, ZI, ZZ, XX, YY };

inline constexpr std::array<HamiltonianTerm, 5> kHamiltonianTerms{
    HamiltonianTerm::IZ, HamiltonianTerm::ZI, HamiltonianTerm::ZZ, HamiltonianTerm::XX, HamiltonianTerm::YY};

std::string to_string(HamiltonianTerm t);
HamiltonianTerm hamiltonian_term_from_string(const std::string& s);
Mat4 term_matrix(HamiltonianTerm t);

/// Hartree-Fock reference |B=0, A=1>, i.e. physical level 1.
QuditState hf_state();

/// X01(pi), V, ZZ(-2 theta), V^dagger with V = Rx(pi/2) on A and Ry(-pi/2) on B,
/// so that V (X (x) Y) V^dagger = Z (x) Z and the circuit prepares
/// exp(-i theta XY)|01> = cos(theta)|01> - sin(theta)|10> up to global phase.
QuditCircuit ansatz_circuit(double theta);

/// Rotations taking the term's eigenbasis to the computational basis:
/// empty for diagonal terms, Ry(-pi/2) on both qubits for XX, Rx(pi/2) on both for YY.
QuditCircuit basis_change(HamiltonianTerm t);

/// Eigenvalue of the measured operator on each level after basis_change.
std::array<double, 4> measured_diagonal(HamiltonianTerm t);

/// diag(M)^T p.
double expectation_from_distribution(HamiltonianTerm t, const Probabilities& p);

/// Exact statevector expectation of the compiled ansatz.
double statevector_expectation(double theta, HamiltonianTerm t);

}  // namespace ququart
