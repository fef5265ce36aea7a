#pragma once

#include <vector>

namespace ququart {

/// Least-squares fit of y = a p^x + b.
struct DecayFit {
  double a = 0.0, p = 1.0, b = 0.0;
  /// Standard errors from s^2 (J^T J)^-1 at the optimum, s^2 = SSR / (n - 3).
  double a_err = 0.0, p_err = 0.0, b_err = 0.0;
  double ssr = 0.0;
  int evaluations = 0;
};

/// Levenberg-Marquardt fit started from a log-linear estimate around
/// `asymptote_guess`. Throws NumericError if the solver does not converge
/// or returns a non-finite or out-of-range decay parameter.
DecayFit fit_exponential_decay(const std::vector<double>& x, const std::vector<double>& y,
                               double asymptote_guess);

}  // namespace ququart
