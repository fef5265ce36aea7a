#pragma once

#include <vector>

#include "ququart/core/state.hpp"

namespace ququart {

/// Kraus representation of a CPTP map on the ququart.
class KrausChannel {
 public:
  /// Identity channel {I}.
  KrausChannel();
  /// Throws InvalidArgument unless sum_k K_k^dagger K_k = I within 1e-12.
  explicit KrausChannel(std::vector<Mat4> operators);

  const std::vector<Mat4>& operators() const { return ops_; }
  /// max |sum_k K_k^dagger K_k - I|.
  double completeness_error() const;

  /// Channel that applies `first`, then `this`.
  KrausChannel after(const KrausChannel& first) const;

 private:
  std::vector<Mat4> ops_;
};

QuditDensity apply_channel(const QuditDensity& rho, const KrausChannel& ch);

/// Single-operator channel rho -> U rho U^dagger.
KrausChannel unitary_channel(const Mat4& u);

}  // namespace ququart
