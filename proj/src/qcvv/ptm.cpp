#include "ququart/qcvv/ptm.hpp"

#include "ququart/compiler/embedding.hpp"

namespace ququart {

const std::array<std::string, 16>& pauli_labels() {
  static const std::array<std::string, 16> labels = [] {
    std::array<std::string, 16> l;
    const char letters[] = "IXYZ";
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a) l[4 * b + a] = std::string{letters[b], letters[a]};
    return l;
  }();
  return labels;
}

const std::array<Mat4, 16>& pauli_basis() {
  static const std::array<Mat4, 16> basis = [] {
    std::array<Mat4, 16> p;
    for (int k = 0; k < 16; ++k) p[k] = pauli_string(pauli_labels()[k]);
    return p;
  }();
  return basis;
}

PTM ptm_of_map(const std::function<Mat4(const Mat4&)>& map) {
  const auto& p = pauli_basis();
  PTM r;
  for (int b = 0; b < 16; ++b) {
    const Mat4 image = map(p[b]);
    for (int a = 0; a < 16; ++a) r(a, b) = (p[a] * image).trace().real() / 4.0;
  }
  return r;
}

PTM ptm_of_unitary(const Mat4& u) {
  return ptm_of_map([&](const Mat4& m) { return Mat4(u * m * u.adjoint()); });
}

PTM ptm_of_channel(const KrausChannel& ch) {
  return ptm_of_map([&](const Mat4& m) {
    Mat4 out = Mat4::Zero();
    for (const auto& k : ch.operators()) out += k * m * k.adjoint();
    return out;
  });
}

PauliVector state_vector(const Mat4& rho) {
  PauliVector r;
  for (int a = 0; a < 16; ++a) r[a] = (pauli_basis()[a] * rho).trace().real() / 2.0;
  return r;
}

Mat4 state_from_vector(const PauliVector& r) {
  Mat4 rho = Mat4::Zero();
  for (int a = 0; a < 16; ++a) rho += r[a] / 2.0 * pauli_basis()[a];
  return rho;
}

PauliVector effect_vector(const Mat4& effect) { return state_vector(effect); }

double avg_gate_infidelity(const PTM& r_est, const PTM& r_ideal) {
  const double t = (r_ideal.partialPivLu().solve(r_est)).trace();
  return 1.0 - (t + 4.0) / 20.0;
}

Mat4 depolarize(const Mat4& rho, double p) {
  return p * rho + (1.0 - p) * rho.trace() * Mat4::Identity() / 4.0;
}

Mat4 depolarize_qubit(const Mat4& rho, double p, bool qubit_a) {
  // Partial trace over the chosen qubit, then re-embed with I/2 on it.
  Mat4 mixed = Mat4::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int ai = qubit_a_of(i), bi = qubit_b_of(i);
      const int aj = qubit_a_of(j), bj = qubit_b_of(j);
      Complex s = 0.0;
      if (qubit_a) {
        if (ai != aj) continue;
        for (int a = 0; a < 2; ++a) s += rho(embed_two_qubit(a, bi), embed_two_qubit(a, bj));
      } else {
        if (bi != bj) continue;
        for (int b = 0; b < 2; ++b) s += rho(embed_two_qubit(ai, b), embed_two_qubit(aj, b));
      }
      mixed(i, j) = s / 2.0;
    }
  }
  return p * rho + (1.0 - p) * mixed;
}

}  // namespace ququart
