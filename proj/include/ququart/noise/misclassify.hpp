#pragma once

#include "ququart/core/measure.hpp"
#include "ququart/readout/assignment.hpp"
#include "ququart/util/rng.hpp"

namespace ququart {

/// Symmetric confusion between levels 2 and 3 with probability eps.
struct MisclassificationModel {
  double eps = 0.0;

  MisclassificationModel() = default;
  /// Throws InvalidArgument unless 0 <= eps <= 0.5.
  explicit MisclassificationModel(double e);

  AssignmentMatrix assignment() const;
};

/// P'(2) = (1 - eps) P(2) + eps P(3), P'(3) = (1 - eps) P(3) + eps P(2).
Probabilities misclassify(const Probabilities& p, const MisclassificationModel& m);

/// How misclassification enters sampled data.
enum class MisclassificationMode {
  /// Each shot in level 2 or 3 is flipped independently.
  PerShot,
  /// With probability eps the classifier swaps the 2 and 3 labels for a
  /// whole batch of shots. Same mean as PerShot, but repeated estimates
  /// split into two clusters.
  PerBatch,
};

/// Applies the model to a batch of classified counts.
Counts misclassify_counts(const Counts& c, const MisclassificationModel& m, MisclassificationMode mode, Rng& rng);

}  // namespace ququart
