#pragma once

#include <string>
#include <vector>

namespace ququart {

/// Renders an SVG for every recognised result file in `dir` into
/// `dir`/plots: rb.csv (survival against length with the fitted decay),
/// sweep.csv (one estimate-density heatmap per Pauli term with the
/// noiseless curve on top) and energy.csv (energy against bond distance
/// with the exact ground energy). Data files are only read. A figure that
/// fails to render is reported through warn() and skipped.
/// Returns the written paths relative to `dir`.
std::vector<std::string> emit_plots(const std::string& dir);

}  // namespace ququart
