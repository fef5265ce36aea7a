#include "ququart/noise/misclassify.hpp"

#include <fmt/format.h>

namespace ququart {

MisclassificationModel::MisclassificationModel(double e) : eps(e) {
  if (!(e >= 0.0 && e <= 0.5)) throw InvalidArgument(fmt::format("misclassification eps = {} outside [0, 0.5]", e));
}

AssignmentMatrix MisclassificationModel::assignment() const {
  Mat4r a = Mat4r::Identity();
  a(2, 2) = a(3, 3) = 1.0 - eps;
  a(2, 3) = a(3, 2) = eps;
  return AssignmentMatrix(a);
}

Probabilities misclassify(const Probabilities& p, const MisclassificationModel& m) {
  check_normalized(p);
  Probabilities q = p;
  q[2] = (1 - m.eps) * p[2] + m.eps * p[3];
  q[3] = (1 - m.eps) * p[3] + m.eps * p[2];
  return q;
}

Counts misclassify_counts(const Counts& c, const MisclassificationModel& m, MisclassificationMode mode, Rng& rng) {
  if (m.eps == 0.0) return c;
  Counts out = c;
  if (mode == MisclassificationMode::PerBatch) {
    if (std::bernoulli_distribution(m.eps)(rng)) std::swap(out[2], out[3]);
    return out;
  }
  const long from2 = std::binomial_distribution<long>(c[2], m.eps)(rng);
  const long from3 = std::binomial_distribution<long>(c[3], m.eps)(rng);
  out[2] = c[2] - from2 + from3;
  out[3] = c[3] - from3 + from2;
  return out;
}

}  // namespace ququart
