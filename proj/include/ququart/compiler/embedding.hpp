#pragma once

#include <string_view>

#include "ququart/types.hpp"

namespace ququart {

using Mat2 = Eigen::Matrix<Complex, 2, 2>;

/// Physical level holding the virtual two-qubit basis state |B A>.
///
/// Qubit A is the bit flipped by the neighbouring transitions {0,1} and {2,3};
/// qubit B is flipped by the Delta-n = 2 transitions {0,2} and {1,3}. Hence
/// level n = A + 2B, and the label "|01>" (B=0, A=1) is level 1.
constexpr KetIndex embed_two_qubit(int a, int b) { return a + 2 * b; }

constexpr int qubit_a_of(KetIndex n) { return n & 1; }
constexpr int qubit_b_of(KetIndex n) { return (n >> 1) & 1; }

namespace pauli {
Mat2 I();
Mat2 X();
Mat2 Y();
Mat2 Z();
/// Letter in {I, X, Y, Z}.
Mat2 from_letter(char c);
}  // namespace pauli

/// Two-qubit operator on_b (x) on_a in the embedded level basis.
Mat4 two_qubit(const Mat2& on_b, const Mat2& on_a);

/// Pauli string such as "XY": the first letter acts on B, the second on A.
Mat4 pauli_string(std::string_view letters);

}  // namespace ququart
