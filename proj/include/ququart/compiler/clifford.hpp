#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ququart/compiler/compile.hpp"

namespace ququart {

/// Phase-insensitive hash key: the matrix is divided by the phase of its
/// first entry with modulus above 1e-6 and rounded to 1e-6.
std::string canonical_key(const Eigen::Ref<const Eigen::MatrixXcd>& u);

struct Clifford1 {
  Mat2 unitary;
  /// Time-ordered rotations realising the element with the fewest pulses.
  std::vector<Rotation> decomposition;
  int inverse = 0;
};

/// The 24-element single-qubit Clifford group.
class CliffordGroup1 {
 public:
  static constexpr int kSize = 24;

  CliffordGroup1();

  int size() const { return static_cast<int>(elements_.size()); }
  const Clifford1& element(int i) const;
  /// Index of `u` up to global phase, or -1 when it is not a Clifford.
  int find(const Mat2& u) const;
  /// Index of element(b) * element(a), i.e. a followed by b.
  int compose(int a, int b) const;
  QuditCircuit compile(Target t, int index) const;

 private:
  std::vector<Clifford1> elements_;
  std::unordered_map<std::string, int> lookup_;
  std::vector<int> table_;  // table_[a * 24 + b] = compose(a, b)
};

struct Clifford2 {
  Mat4 unitary;
  /// Single-qubit layers a + 24 b (A gets a, B gets b) in time order,
  /// separated by one U_ZX each; uzx_count = layers.size() - 1.
  std::vector<int> layers;
  int inverse = 0;
  int uzx_count() const { return static_cast<int>(layers.size()) - 1; }
};

/// The 11520-element two-qubit Clifford group, generated breadth first in
/// the number of U_ZX gates.
class CliffordGroup2 {
 public:
  static constexpr int kSize = 11520;

  CliffordGroup2();

  int size() const { return static_cast<int>(elements_.size()); }
  const Clifford2& element(int i) const;
  int find(const Mat4& u) const;
  /// Number of elements needing exactly k U_ZX gates.
  std::vector<int> level_sizes() const;
  QuditCircuit compile(int index) const;

 private:
  std::vector<Clifford2> elements_;
  std::unordered_map<std::string, int> lookup_;
};

/// Lazily built, process-wide tables.
const CliffordGroup1& single_qubit_cliffords();
const CliffordGroup2& two_qubit_cliffords();

/// Unitary of a local layer a + 24 b.
Mat4 clifford_layer_unitary(int layer);

}  // namespace ququart
