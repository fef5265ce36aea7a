#pragma once

#include <array>
#include <functional>
#include <string>

#include "ququart/core/channel.hpp"

namespace ququart {

using PTM = Eigen::Matrix<double, 16, 16>;
using PauliVector = Eigen::Matrix<double, 16, 1>;

/// Two-qubit Pauli labels in PTM order: II, IX, IY, IZ, XI, ..., ZZ. The
/// first letter acts on qubit B, the second on qubit A.
const std::array<std::string, 16>& pauli_labels();
/// Embedded Pauli operators in the same order.
const std::array<Mat4, 16>& pauli_basis();

/// R_ab = Tr(P_a L(P_b)) / 4 for a linear map L on 4x4 matrices.
PTM ptm_of_map(const std::function<Mat4(const Mat4&)>& map);
PTM ptm_of_unitary(const Mat4& u);
PTM ptm_of_channel(const KrausChannel& ch);

/// Coordinates of rho in the orthonormal basis P_a / 2: r_a = Tr(P_a rho) / 2.
PauliVector state_vector(const Mat4& rho);
Mat4 state_from_vector(const PauliVector& r);
/// Effect coordinates with the same normalization, so p = e . r.
PauliVector effect_vector(const Mat4& effect);

/// Average gate infidelity 1 - (Tr(R_ideal^-1 R_est) + d) / (d^2 + d), d = 4.
double avg_gate_infidelity(const PTM& r_est, const PTM& r_ideal);

/// rho -> p rho + (1 - p) I / 4.
Mat4 depolarize(const Mat4& rho, double p);
/// Depolarizes one virtual qubit: rho -> p rho + (1 - p) Tr_q(rho) (x) I/2.
Mat4 depolarize_qubit(const Mat4& rho, double p, bool qubit_a);

}  // namespace ququart
