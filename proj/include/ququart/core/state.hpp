#pragma once

#include "ququart/types.hpp"

namespace ququart {

/// Pure state of the physical ququart; amplitude n belongs to level |n>.
class QuditState {
 public:
  /// |0>.
  QuditState();

  static QuditState basis(KetIndex n);
  /// Throws InvalidArgument unless the squared norm is 1 within 1e-12.
  static QuditState from_amplitudes(const Vec4c& amplitudes);
  /// Renormalizes instead of validating; rejects the zero vector.
  static QuditState normalized(const Vec4c& amplitudes);
  /// Wraps the image of a valid state under a unitary. No checks.
  static QuditState trusted(const Vec4c& amplitudes) { return QuditState(amplitudes); }

  const Vec4c& amplitudes() const { return amps_; }
  Complex operator[](int n) const { return amps_[n]; }

 private:
  explicit QuditState(const Vec4c& a) : amps_(a) {}
  Vec4c amps_;
};

/// 4x4 density operator. Construction through from_matrix validates
/// Hermiticity, unit trace and positivity.
class QuditDensity {
 public:
  /// |0><0|.
  QuditDensity();

  static QuditDensity from_matrix(const Mat4& rho);
  static QuditDensity from_state(const QuditState& psi);
  /// Diagonal density with the given populations (must be normalized).
  static QuditDensity diagonal(const Probabilities& populations);
  static QuditDensity maximally_mixed();
  /// Wraps a matrix produced by a trace-preserving map of a valid density.
  /// No checks beyond debug assertions.
  static QuditDensity trusted(const Mat4& rho) { return QuditDensity(rho); }

  const Mat4& matrix() const { return rho_; }
  Complex operator()(int i, int j) const { return rho_(i, j); }

  double trace() const { return rho_.trace().real(); }
  /// <n|rho|n>.
  double population(KetIndex n) const { return rho_(n, n).real(); }
  /// <psi|rho|psi>.
  double fidelity_to(const QuditState& psi) const;

 private:
  explicit QuditDensity(const Mat4& rho) : rho_(rho) {}
  Mat4 rho_;
};

/// Validation helpers shared by several modules.
bool is_unitary(const Mat4& u, double tol = kAlgebraicTol);
bool is_hermitian(const Mat4& m, double tol = kAlgebraicTol);
/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Mat4& hermitian);

}  // namespace ququart
