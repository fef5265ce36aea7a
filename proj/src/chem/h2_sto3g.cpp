#include "ququart/chem/h2_sto3g.hpp"

#include <array>
#include <cmath>

#include "ququart/compiler/embedding.hpp"

namespace ququart {

namespace {

using Mat16 = Eigen::Matrix<double, 16, 16>;

constexpr double kBohrPerAngstrom = 1.0 / 0.529177210903;
// STO-3G hydrogen 1s contraction (zeta = 1.24).
constexpr std::array<double, 3> kExponents{3.42525091, 0.62391373, 0.16885540};
constexpr std::array<double, 3> kCoefficients{0.15432897, 0.53532814, 0.44463454};

double boys0(double t) {
  if (t < 1e-12) return 1.0 - t / 3.0;
  return 0.5 * std::sqrt(kPi / t) * std::erf(std::sqrt(t));
}

double norm(double alpha) { return std::pow(2.0 * alpha / kPi, 0.75); }

// Atomic integrals over the two 1s functions on the z axis.
struct AtomicIntegrals {
  Eigen::Matrix2d overlap;
  Eigen::Matrix2d core;  // kinetic + nuclear attraction
  double eri[2][2][2][2];
  double nuclear_repulsion;
};

AtomicIntegrals atomic_integrals(double r_bohr) {
  const std::array<double, 2> z{0.0, r_bohr};
  AtomicIntegrals out{};
  out.overlap.setZero();
  out.core.setZero();
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double a = kExponents[i], b = kExponents[j], p = a + b;
          const double rab2 = (z[A] - z[B]) * (z[A] - z[B]);
          const double zp = (a * z[A] + b * z[B]) / p;
          const double c = kCoefficients[i] * kCoefficients[j] * norm(a) * norm(b);
          const double k = std::exp(-a * b / p * rab2);
          const double s = std::pow(kPi / p, 1.5) * k;
          out.overlap(A, B) += c * s;
          out.core(A, B) += c * a * b / p * (3.0 - 2.0 * a * b / p * rab2) * s;
          for (int n = 0; n < 2; ++n)
            out.core(A, B) += c * (-2.0 * kPi / p) * k * boys0(p * (zp - z[n]) * (zp - z[n]));
        }
  for (int A = 0; A < 2; ++A)
    for (int B = 0; B < 2; ++B)
      for (int C = 0; C < 2; ++C)
        for (int D = 0; D < 2; ++D) {
          double v = 0.0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                  const double a = kExponents[i], b = kExponents[j], c = kExponents[k], d = kExponents[l];
                  const double p = a + b, q = c + d;
                  const double zp = (a * z[A] + b * z[B]) / p, zq = (c * z[C] + d * z[D]) / q;
                  const double coef = kCoefficients[i] * kCoefficients[j] * kCoefficients[k] * kCoefficients[l] *
                                      norm(a) * norm(b) * norm(c) * norm(d);
                  const double rab2 = (z[A] - z[B]) * (z[A] - z[B]);
                  const double rcd2 = (z[C] - z[D]) * (z[C] - z[D]);
                  v += coef * 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q)) *
                       std::exp(-a * b / p * rab2 - c * d / q * rcd2) *
                       boys0(p * q / (p + q) * (zp - zq) * (zp - zq));
                }
          out.eri[A][B][C][D] = v;
        }
  out.nuclear_repulsion = 1.0 / r_bohr;
  return out;
}

// Jordan-Wigner annihilator for spin orbital p; qubit 0 is the most significant bit.
Mat16 annihilator(int p) {
  Mat16 m = Mat16::Zero();
  for (int in = 0; in < 16; ++in) {
    const int bit = 1 << (3 - p);
    if (!(in & bit)) continue;
    int parity = 0;
    for (int q = 0; q < p; ++q) parity += (in >> (3 - q)) & 1;
    m(in ^ bit, in) = parity % 2 ? -1.0 : 1.0;
  }
  return m;
}

}  // namespace

Mat16 h2_sto3g_fock_hamiltonian(double r_angstrom) {
  if (!(r_angstrom > 0.0)) throw InvalidArgument("bond distance must be positive");
  const AtomicIntegrals ao = atomic_integrals(r_angstrom * kBohrPerAngstrom);

  // The two molecular orbitals are fixed by symmetry: sigma_g and sigma_u.
  const double s = ao.overlap(0, 1);
  Eigen::Matrix2d c;
  c << 1.0 / std::sqrt(2 * (1 + s)), 1.0 / std::sqrt(2 * (1 - s)), 1.0 / std::sqrt(2 * (1 + s)),
      -1.0 / std::sqrt(2 * (1 - s));
  const Eigen::Matrix2d h = c.transpose() * ao.core * c;
  double g[2][2][2][2] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
              for (int r = 0; r < 2; ++r)
                for (int t = 0; t < 2; ++t)
                  g[i][j][k][l] += c(p, i) * c(q, j) * c(r, k) * c(t, l) * ao.eri[p][q][r][t];

  std::array<Mat16, 4> a;
  for (int p = 0; p < 4; ++p) a[p] = annihilator(p);
  auto spatial = [](int p) { return p / 2; };
  auto spin = [](int p) { return p % 2; };

  Mat16 H = ao.nuclear_repulsion * Mat16::Identity();
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      if (spin(p) == spin(q)) H += h(spatial(p), spatial(q)) * a[p].transpose() * a[q];
  // Chemist's notation (pq|rs): 1/2 sum a_p^+ a_r^+ a_s a_q.
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int t = 0; t < 4; ++t)
          if (spin(p) == spin(q) && spin(r) == spin(t))
            H += 0.5 * g[spatial(p)][spatial(q)][spatial(r)][spatial(t)] * a[p].transpose() *
                 a[r].transpose() * a[t] * a[q];
  return H;
}

HamiltonianSpec h2_sto3g_hamiltonian(double r_angstrom) {
  const Mat16 H = h2_sto3g_fock_hamiltonian(r_angstrom);
  // Bravyi-Kitaev on four modes: b = beta n (mod 2).
  const int beta[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 1}};
  std::array<int, 4> fock_index{};
  for (int idx = 0; idx < 16; ++idx) {
    int n[4], b[4];
    for (int p = 0; p < 4; ++p) n[p] = (idx >> (3 - p)) & 1;
    for (int i = 0; i < 4; ++i) {
      b[i] = 0;
      for (int p = 0; p < 4; ++p) b[i] += beta[i][p] * n[p];
      b[i] %= 2;
    }
    if (b[1] == 0 && b[3] == 0) fock_index[embed_two_qubit(b[0], b[2])] = idx;
  }
  Mat4 reduced;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) reduced(x, y) = H(fock_index[x], fock_index[y]);

  auto coeff = [&](const char* label) { return (pauli_string(label) * reduced).trace().real() / 4.0; };
  HamiltonianSpec spec{r_angstrom, coeff("II"), coeff("IZ"), coeff("ZI"), coeff("ZZ"), coeff("XX"), coeff("YY")};
  return spec;
}

}  // namespace ququart
