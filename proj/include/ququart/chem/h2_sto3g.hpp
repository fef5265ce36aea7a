#pragma once

#include "ququart/vqe/hamiltonian.hpp"

namespace ququart {

/// Spin-orbital Hamiltonian of H2 in STO-3G on 4 qubits under the
/// Jordan-Wigner map (16 x 16, real), nuclear repulsion included. Qubit 0
/// is the most significant bit; orbitals are (sigma_g up, sigma_g down,
/// sigma_u up, sigma_u down).
Eigen::Matrix<double, 16, 16> h2_sto3g_fock_hamiltonian(double r_angstrom);

/// Two-qubit reduction: Bravyi-Kitaev transform of the Fock Hamiltonian,
/// tapered to the sector where BK qubits 1 and 3 are 0. Qubit A carries BK
/// qubit 0 and qubit B carries BK qubit 2; the Hartree-Fock state is |B=0, A=1>.
HamiltonianSpec h2_sto3g_hamiltonian(double r_angstrom);

}  // namespace ququart
