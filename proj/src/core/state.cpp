#include "ququart/core/state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace ququart {

QuditState::QuditState() : amps_(Vec4c::Zero()) { amps_[0] = 1.0; }

QuditState QuditState::basis(KetIndex n) {
  if (n < 0 || n >= kDim) throw InvalidArgument("basis level out of range: " + std::to_string(n));
  Vec4c a = Vec4c::Zero();
  a[n] = 1.0;
  return QuditState(a);
}

QuditState QuditState::from_amplitudes(const Vec4c& amplitudes) {
  const double norm2 = amplitudes.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kAlgebraicTol) {
    throw InvalidArgument("state amplitudes are not normalized (|psi|^2 = " + std::to_string(norm2) +
                          ")");
  }
  return QuditState(amplitudes);
}

QuditState QuditState::normalized(const Vec4c& amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("cannot normalize zero state");
  return QuditState(amplitudes / norm);
}

QuditDensity::QuditDensity() : rho_(Mat4::Zero()) { rho_(0, 0) = 1.0; }

QuditDensity QuditDensity::from_matrix(const Mat4& rho) {
  if (!rho.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  if (!is_hermitian(rho)) throw InvalidArgument("density matrix is not Hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kAlgebraicTol) {
    throw InvalidArgument("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  const double lo = min_eigenvalue(rho);
  if (lo < -kPsdTol) {
    throw InvalidArgument("density matrix has negative eigenvalue " + std::to_string(lo));
  }
  return QuditDensity(rho);
}

QuditDensity QuditDensity::from_state(const QuditState& psi) {
  return QuditDensity(psi.amplitudes() * psi.amplitudes().adjoint());
}

QuditDensity QuditDensity::diagonal(const Probabilities& populations) {
  double sum = 0.0;
  for (double p : populations) {
    if (!(p >= 0.0) || p > 1.0) throw InvalidArgument("population outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("populations sum to " + std::to_string(sum) + ", expected 1");
  }
  Mat4 rho = Mat4::Zero();
  for (int n = 0; n < kDim; ++n) rho(n, n) = populations[n];
  return QuditDensity(rho);
}

QuditDensity QuditDensity::maximally_mixed() { return QuditDensity(Mat4::Identity() * 0.25); }

double QuditDensity::fidelity_to(const QuditState& psi) const {
  const Vec4c& a = psi.amplitudes();
  return (a.adjoint() * rho_ * a)(0, 0).real();
}

bool is_unitary(const Mat4& u, double tol) {
  return ((u.adjoint() * u - Mat4::Identity()).cwiseAbs().maxCoeff() < tol);
}

bool is_hermitian(const Mat4& m, double tol) {
  return ((m - m.adjoint()).cwiseAbs().maxCoeff() < tol);
}

double min_eigenvalue(const Mat4& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace ququart
