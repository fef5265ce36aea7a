#pragma once

#include "ququart/core/measure.hpp"

namespace ququart {

/// Row-stochastic confusion matrix: A(i, j) = P(classified j | prepared i).
/// Measured frequencies relate to true populations by r = A^T p.
class AssignmentMatrix {
 public:
  AssignmentMatrix() : a_(Mat4r::Identity()) {}
  /// Throws InvalidArgument unless entries lie in [0, 1] and rows sum to 1 within 1e-9.
  explicit AssignmentMatrix(const Mat4r& a);
  static AssignmentMatrix identity() { return {}; }
  /// From a column-stochastic transfer map M (p_out = M p_in), i.e. A = M^T.
  static AssignmentMatrix from_transfer(const Mat4r& m);
  /// Row-normalizes raw counts; row i holds the outcomes for prepared state i.
  static AssignmentMatrix from_counts(const std::array<Counts, 4>& rows);

  const Mat4r& matrix() const { return a_; }
  double operator()(int i, int j) const { return a_(i, j); }
  /// Measured distribution for true populations p: A^T p.
  Probabilities apply(const Probabilities& p) const;
  /// 2-norm condition number.
  double condition_number() const;

 private:
  Mat4r a_;
};

}  // namespace ququart
