#include "ququart/compiler/embedding.hpp"

#include <string>

namespace ququart {

namespace pauli {

Mat2 I() { return Mat2::Identity(); }

Mat2 X() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 Y() {
  Mat2 m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Mat2 Z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 from_letter(char c) {
  switch (c) {
    case 'I':
      return I();
    case 'X':
      return X();
    case 'Y':
      return Y();
    case 'Z':
      return Z();
    default:
      throw InvalidArgument(std::string("unknown Pauli letter '") + c + "'");
  }
}

}  // namespace pauli

Mat4 two_qubit(const Mat2& on_b, const Mat2& on_a) {
  Mat4 out;
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a)
      for (int bp = 0; bp < 2; ++bp)
        for (int ap = 0; ap < 2; ++ap)
          out(embed_two_qubit(a, b), embed_two_qubit(ap, bp)) = on_b(b, bp) * on_a(a, ap);
  return out;
}

Mat4 pauli_string(std::string_view letters) {
  if (letters.size() != 2) throw InvalidArgument("two-qubit Pauli string needs two letters");
  return two_qubit(pauli::from_letter(letters[0]), pauli::from_letter(letters[1]));
}

}  // namespace ququart
