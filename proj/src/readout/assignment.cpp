#include "ququart/readout/assignment.hpp"

#include <cmath>

#include <fmt/format.h>

namespace ququart {

AssignmentMatrix::AssignmentMatrix(const Mat4r& a) : a_(a) {
  for (int i = 0; i < kDim; ++i) {
    double sum = 0.0;
    for (int j = 0; j < kDim; ++j) {
      if (!(a(i, j) >= 0.0 && a(i, j) <= 1.0)) {
        throw InvalidArgument(fmt::format("assignment entry ({},{}) = {} outside [0, 1]", i, j, a(i, j)));
      }
      sum += a(i, j);
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument(fmt::format("assignment row {} sums to {}", i, sum));
  }
}

AssignmentMatrix AssignmentMatrix::from_transfer(const Mat4r& m) {
  Mat4r a = m.transpose();
  // Absorb round-off so the row check measures modelling error only.
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) a(i, j) = std::clamp(a(i, j), 0.0, 1.0);
    a.row(i) /= a.row(i).sum();
  }
  return AssignmentMatrix(a);
}

AssignmentMatrix AssignmentMatrix::from_counts(const std::array<Counts, 4>& rows) {
  Mat4r a;
  for (int i = 0; i < kDim; ++i) {
    const auto f = frequencies(rows[i]);
    for (int j = 0; j < kDim; ++j) a(i, j) = f[j];
  }
  return AssignmentMatrix(a);
}

Probabilities AssignmentMatrix::apply(const Probabilities& p) const {
  return to_probabilities(a_.transpose() * to_vector(p));
}

double AssignmentMatrix::condition_number() const {
  Eigen::JacobiSVD<Mat4r> svd(a_);
  const auto& s = svd.singularValues();
  return s[kDim - 1] > 0 ? s[0] / s[kDim - 1] : std::numeric_limits<double>::infinity();
}

}  // namespace ququart
