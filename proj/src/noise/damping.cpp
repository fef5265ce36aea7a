#include "ququart/noise/damping.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ququart {

double DampingSpec::xi(int j) const {
  double s = 0.0;
  for (int i = 0; i < j; ++i) s += gamma[j][i];
  return s;
}

void DampingSpec::validate() const {
  for (int j = 1; j < kDim; ++j) {
    for (int i = 0; i < j; ++i) {
      const double g = gamma[j][i];
      if (!(g >= 0.0 && g <= 1.0)) {
        throw InvalidArgument(fmt::format("damping probability gamma({},{}) = {} outside [0, 1]", j, i, g));
      }
    }
    if (xi(j) > 1.0 + kAlgebraicTol) {
      throw InvalidArgument(fmt::format("total damping out of level {} exceeds 1", j));
    }
  }
}

KrausChannel damping_channel(const DampingSpec& spec) {
  spec.validate();
  std::vector<Mat4> ops;
  Mat4 k0 = Mat4::Zero();
  k0(0, 0) = 1.0;
  for (int j = 1; j < kDim; ++j) k0(j, j) = std::sqrt(std::max(0.0, 1.0 - spec.xi(j)));
  ops.push_back(k0);
  for (int j = 1; j < kDim; ++j) {
    for (int i = 0; i < j; ++i) {
      if (spec.gamma[j][i] == 0.0) continue;
      Mat4 k = Mat4::Zero();
      k(i, j) = std::sqrt(spec.gamma[j][i]);
      ops.push_back(k);
    }
  }
  return KrausChannel(std::move(ops));
}

DampingSpec gamma_from_rates(const DecayMatrix& g, double t_us) {
  if (!(t_us >= 0)) throw InvalidArgument("damping time must be non-negative");
  DampingSpec s;
  for (int j = 1; j < kDim; ++j)
    for (int i = 0; i < j; ++i) s.gamma[j][i] = -std::expm1(-t_us * g.rate(j, i));
  // Rare for physical rates, but a large t could push the sum past one.
  for (int j = 1; j < kDim; ++j) {
    const double x = s.xi(j);
    if (x > 1.0)
      for (int i = 0; i < j; ++i) s.gamma[j][i] /= x;
  }
  return s;
}

DecayMatrix step_matrix(const DampingSpec& spec) {
  spec.validate();
  Mat4r m = Mat4r::Zero();
  for (int j = 1; j < kDim; ++j) {
    for (int i = 0; i < j; ++i) m(j, i) = -spec.gamma[j][i];
    m(j, j) = spec.xi(j);
  }
  return DecayMatrix(m, 1e-12);
}

KrausChannel dephasing_channel(const CoherenceTimes& t2, const DecayMatrix& g, double t_us) {
  if (!(t_us >= 0)) throw InvalidArgument("dephasing time must be non-negative");
  const EffectiveT1 t1 = effective_t1(g);
  auto phi_rate = [](double t2v, double t1v) {
    if (!(t2v > 0)) throw InvalidArgument("coherence time must be positive");
    return std::max(0.0, 1.0 / t2v - 0.5 / t1v);
  };
  // Half-variance of the phase increment across each neighbouring subspace.
  const std::array<double, 3> half_var{t_us * phi_rate(t2.t2_01, t1.t01), t_us * phi_rate(t2.t2_12, t1.t12),
                                       t_us * phi_rate(t2.t2_23, t1.t23)};
  Mat4r d;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      double s = 0.0;
      for (int k = std::min(i, j); k < std::max(i, j); ++k) s += half_var[k];
      d(i, j) = std::exp(-s);
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat4r> eig(d);
  std::vector<Mat4> ops;
  for (int m = 0; m < kDim; ++m) {
    const double lambda = eig.eigenvalues()[m];
    if (lambda <= 1e-15) continue;
    Mat4 k = Mat4::Zero();
    for (int n = 0; n < kDim; ++n) k(n, n) = std::sqrt(lambda) * eig.eigenvectors()(n, m);
    ops.push_back(k);
  }
  // Dropping negligible eigenvalues leaves a completeness error far below
  // the channel check, but renormalize the diagonal to keep it exact.
  Vec4r norm = Vec4r::Zero();
  for (const auto& k : ops)
    for (int n = 0; n < kDim; ++n) norm[n] += std::norm(k(n, n));
  for (auto& k : ops)
    for (int n = 0; n < kDim; ++n) k(n, n) /= std::sqrt(norm[n]);
  return KrausChannel(std::move(ops));
}

}  // namespace ququart
