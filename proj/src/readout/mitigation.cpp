#include "ququart/readout/mitigation.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "ququart/util/log.hpp"

namespace ququart {

AssignmentMatrix estimate_assignment(const std::array<Counts, 4>& per_prepared_state) {
  for (int i = 0; i < kDim; ++i) {
    const auto& c = per_prepared_state[i];
    if (c[0] + c[1] + c[2] + c[3] < 1) {
      throw InvalidArgument(fmt::format("no calibration shots for prepared state {}", i));
    }
  }
  return AssignmentMatrix::from_counts(per_prepared_state);
}

AssignmentMatrix estimate_assignment(const SphericalGmm& gmm, const std::array<IQRecord, 4>& per_prepared_state) {
  std::array<Counts, 4> counts{};
  for (int i = 0; i < kDim; ++i) counts[i] = classify_counts(gmm, per_prepared_state[i]);
  return estimate_assignment(counts);
}

Probabilities mitigate(const AssignmentMatrix& a, const Probabilities& r, const MitigationOptions& opt) {
  const double cond = a.condition_number();
  if (!(cond <= kMaxAssignmentCondition)) {
    throw NumericError(fmt::format("assignment matrix is ill-conditioned (condition number {:.3g})", cond));
  }
  if (opt.outliers_removed) {
    warn("assignment mitigation after outlier removal corrects misclassification and decay twice");
  }
  const Vec4r x = a.matrix().transpose().partialPivLu().solve(to_vector(r));
  return to_probabilities(x);
}

void write_assignment_csv(std::ostream& os, const AssignmentMatrix& a) {
  for (int i = 0; i < kDim; ++i) os << fmt::format("{},{},{},{}\n", a(i, 0), a(i, 1), a(i, 2), a(i, 3));
}

AssignmentMatrix read_assignment_csv(std::istream& is) {
  Mat4r m;
  std::string line;
  int row = 0;
  while (row < kDim && std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    for (int j = 0; j < kDim; ++j)
      if (!(ss >> m(row, j))) throw InvalidArgument(fmt::format("assignment CSV row {} needs 4 values", row));
    ++row;
  }
  if (row != kDim) throw InvalidArgument("assignment CSV needs 4 rows");
  return AssignmentMatrix(m);
}

}  // namespace ququart
