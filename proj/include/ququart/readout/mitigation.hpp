#pragma once

#include <array>
#include <iosfwd>

#include "ququart/readout/assignment.hpp"
#include "ququart/readout/gmm.hpp"

namespace ququart {

/// Row i from the classified outcomes of the shots prepared in state i.
AssignmentMatrix estimate_assignment(const std::array<Counts, 4>& per_prepared_state);
/// Classifies per-state calibration records with `gmm`.
AssignmentMatrix estimate_assignment(const SphericalGmm& gmm, const std::array<IQRecord, 4>& per_prepared_state);

/// Condition number above which mitigation refuses to invert.
inline constexpr double kMaxAssignmentCondition = 1e6;

struct MitigationOptions {
  /// Set when the data already went through outlier removal; the assignment
  /// matrix then corrects the same errors a second time and a warning is issued.
  bool outliers_removed = false;
};

/// Solves A^T x = r. The result sums to one but is not clipped to [0, 1].
/// Throws NumericError when cond(A) > 1e6.
Probabilities mitigate(const AssignmentMatrix& a, const Probabilities& r, const MitigationOptions& opt = {});

/// 4x4 CSV without header, row i = prepared state i.
void write_assignment_csv(std::ostream& os, const AssignmentMatrix& a);
AssignmentMatrix read_assignment_csv(std::istream& is);

}  // namespace ququart
