#include "ququart/compiler/clifford.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <queue>
#include <string>

namespace ququart {

std::string canonical_key(const Eigen::Ref<const Eigen::MatrixXcd>& u) {
  Complex ref = 1.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const Complex z = u(k % u.rows(), k / u.rows());
    if (std::abs(z) > 1e-6) {
      ref = std::conj(z) / std::abs(z);
      break;
    }
  }
  std::string key(static_cast<std::size_t>(u.size()) * 2 * sizeof(std::int64_t), '\0');
  char* out = key.data();
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const Complex z = u(k % u.rows(), k / u.rows()) * ref;
    const std::int64_t parts[2] = {std::llround(z.real() * 1e6), std::llround(z.imag() * 1e6)};
    std::memcpy(out, parts, sizeof(parts));
    out += sizeof(parts);
  }
  return key;
}

namespace {

// Generator moves for the single-qubit search. A Z rotation is virtual, so it
// costs far less than a pulse but is not free; among equally short
// sequences the one with fewer frame updates wins.
struct Move {
  Rotation rotation;
  double cost;
};

std::vector<Move> single_qubit_moves() {
  std::vector<Move> moves;
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const double cost = axis == Axis::Z ? 1e-3 : 1.0;
    for (double angle : {kPi / 2, -kPi / 2, kPi}) moves.push_back({{axis, angle}, cost});
  }
  return moves;
}

}  // namespace

CliffordGroup1::CliffordGroup1() {
  const auto moves = single_qubit_moves();
  struct Node {
    double cost;
    std::vector<Rotation> seq;
    Mat2 u;
  };
  auto cmp = [](const Node& a, const Node& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.seq.size() > b.seq.size();
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> frontier(cmp);
  frontier.push({0.0, {}, Mat2::Identity()});
  while (!frontier.empty() && elements_.size() < kSize) {
    Node n = frontier.top();
    frontier.pop();
    const std::string key = canonical_key(n.u);
    if (lookup_.count(key)) continue;
    lookup_.emplace(key, static_cast<int>(elements_.size()));
    elements_.push_back({n.u, n.seq, 0});
    for (const auto& m : moves) {
      Node next{n.cost + m.cost, n.seq, rotation_matrix(m.rotation) * n.u};
      next.seq.push_back(m.rotation);
      if (!lookup_.count(canonical_key(next.u))) frontier.push(std::move(next));
    }
  }
  if (elements_.size() != kSize) throw NumericError("single-qubit Clifford search did not close");

  table_.resize(kSize * kSize);
  for (int a = 0; a < kSize; ++a) {
    elements_[a].inverse = find(elements_[a].unitary.adjoint());
    for (int b = 0; b < kSize; ++b) {
      const int c = find(elements_[b].unitary * elements_[a].unitary);
      if (c < 0) throw NumericError("single-qubit Clifford table is not closed");
      table_[a * kSize + b] = c;
    }
  }
}

const Clifford1& CliffordGroup1::element(int i) const {
  if (i < 0 || i >= size()) throw InvalidArgument("single-qubit Clifford index out of range");
  return elements_[i];
}

int CliffordGroup1::find(const Mat2& u) const {
  auto it = lookup_.find(canonical_key(u));
  return it == lookup_.end() ? -1 : it->second;
}

int CliffordGroup1::compose(int a, int b) const {
  element(a);
  element(b);
  return table_[a * kSize + b];
}

QuditCircuit CliffordGroup1::compile(Target t, int index) const {
  const auto& seq = element(index).decomposition;
  if (t == Target::Both) throw InvalidArgument("single-qubit Clifford needs target A or B");
  bool needs_pulse = false;
  for (const auto& r : seq) needs_pulse |= r.axis != Axis::Z;
  // On B, one swap pair brackets the whole sequence instead of every rotation.
  const bool bracket = t == Target::B && needs_pulse;
  QuditCircuit c;
  if (bracket) c.append(compile_swap());
  for (const auto& r : seq) c.append(bracket ? compile_1q_A(r) : compile_1q(t, r));
  if (bracket) c.append(compile_swap());
  return c;
}

Mat4 clifford_layer_unitary(int layer) {
  const auto& c1 = single_qubit_cliffords();
  if (layer < 0 || layer >= CliffordGroup1::kSize * CliffordGroup1::kSize) {
    throw InvalidArgument("Clifford layer index out of range");
  }
  return two_qubit(c1.element(layer / CliffordGroup1::kSize).unitary,
                   c1.element(layer % CliffordGroup1::kSize).unitary);
}

CliffordGroup2::CliffordGroup2() {
  constexpr int kLayers = CliffordGroup1::kSize * CliffordGroup1::kSize;
  std::vector<Mat4> layer(kLayers);
  for (int l = 0; l < kLayers; ++l) layer[l] = clifford_layer_unitary(l);
  const Mat4 uzx = target_unitary(VirtualQubitGate::uzx());

  auto insert = [&](const Mat4& u, std::vector<int> layers) {
    auto [it, fresh] = lookup_.emplace(canonical_key(u), static_cast<int>(elements_.size()));
    if (fresh) elements_.push_back({u, std::move(layers), 0});
    return fresh;
  };

  for (int l = 0; l < kLayers; ++l) insert(layer[l], {l});
  std::size_t begin = 0;
  std::size_t end = elements_.size();
  while (begin < end && elements_.size() < kSize) {
    for (std::size_t e = begin; e < end; ++e) {
      const Mat4 base = uzx * elements_[e].unitary;
      for (int l = 0; l < kLayers; ++l) {
        auto layers = elements_[e].layers;
        layers.push_back(l);
        insert(layer[l] * base, std::move(layers));
      }
    }
    begin = end;
    end = elements_.size();
  }
  if (elements_.size() != kSize) throw NumericError("two-qubit Clifford generation did not close");
  for (auto& e : elements_) {
    e.inverse = find(e.unitary.adjoint());
    if (e.inverse < 0) throw NumericError("two-qubit Clifford inverse missing");
  }
}

const Clifford2& CliffordGroup2::element(int i) const {
  if (i < 0 || i >= size()) throw InvalidArgument("two-qubit Clifford index out of range");
  return elements_[i];
}

int CliffordGroup2::find(const Mat4& u) const {
  auto it = lookup_.find(canonical_key(u));
  return it == lookup_.end() ? -1 : it->second;
}

std::vector<int> CliffordGroup2::level_sizes() const {
  std::vector<int> sizes;
  for (const auto& e : elements_) {
    const auto k = static_cast<std::size_t>(e.uzx_count());
    if (sizes.size() <= k) sizes.resize(k + 1, 0);
    ++sizes[k];
  }
  return sizes;
}

QuditCircuit CliffordGroup2::compile(int index) const {
  const auto& c1 = single_qubit_cliffords();
  const auto& layers = element(index).layers;
  QuditCircuit c;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (k > 0) c.append(compile_uzx());
    c.append(c1.compile(Target::A, layers[k] % CliffordGroup1::kSize));
    c.append(c1.compile(Target::B, layers[k] / CliffordGroup1::kSize));
  }
  return c;
}

const CliffordGroup1& single_qubit_cliffords() {
  static const CliffordGroup1 group;
  return group;
}

const CliffordGroup2& two_qubit_cliffords() {
  static const CliffordGroup2 group;
  return group;
}

}  // namespace ququart
