#include "ququart/core/channel.hpp"

#include <string>

namespace ququart {

namespace {

double completeness_error_of(const std::vector<Mat4>& ops) {
  Mat4 sum = Mat4::Zero();
  for (const auto& k : ops) sum += k.adjoint() * k;
  return (sum - Mat4::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace

KrausChannel::KrausChannel() : ops_{Mat4::Identity()} {}

KrausChannel::KrausChannel(std::vector<Mat4> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw InvalidArgument("Kraus channel needs at least one operator");
  const double err = completeness_error_of(ops_);
  if (!(err <= kAlgebraicTol)) {
    throw InvalidArgument("Kraus operators fail completeness (max deviation " +
                          std::to_string(err) + ")");
  }
}

double KrausChannel::completeness_error() const { return completeness_error_of(ops_); }

KrausChannel KrausChannel::after(const KrausChannel& first) const {
  std::vector<Mat4> out;
  out.reserve(ops_.size() * first.ops_.size());
  for (const auto& a : ops_) {
    for (const auto& b : first.ops_) {
      Mat4 ab = a * b;
      if (ab.cwiseAbs().maxCoeff() > 0.0) out.push_back(ab);
    }
  }
  if (out.empty()) out.push_back(Mat4::Zero());
  return KrausChannel(std::move(out));
}

QuditDensity apply_channel(const QuditDensity& rho, const KrausChannel& ch) {
  Mat4 out = Mat4::Zero();
  for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
  // Re-symmetrize so Hermiticity does not drift over long sequences.
  return QuditDensity::trusted(0.5 * (out + out.adjoint()));
}

KrausChannel unitary_channel(const Mat4& u) { return KrausChannel({u}); }

}  // namespace ququart
