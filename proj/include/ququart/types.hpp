#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ququart {

inline constexpr int kDim = 4;
inline constexpr double kPi = std::numbers::pi;

using Complex = std::complex<double>;
using Mat4 = Eigen::Matrix<Complex, 4, 4>;
using Vec4c = Eigen::Matrix<Complex, 4, 1>;
using Mat4r = Eigen::Matrix4d;
using Vec4r = Eigen::Vector4d;

/// Four computational-basis probabilities (index n is the physical level |n>).
using Probabilities = std::array<double, 4>;
/// Physical level index in {0, 1, 2, 3}.
using KetIndex = int;

// Tolerance ladder: algebraic identities, PSD / phase checks.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Invalid input handed to a library routine (maps to CLI exit code 2 when it
/// originates from configuration).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (singular matrix, fit divergence, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Vec4r to_vector(const Probabilities& p) { return Vec4r(p[0], p[1], p[2], p[3]); }
inline Probabilities to_probabilities(const Vec4r& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace ququart
