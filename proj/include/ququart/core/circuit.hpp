#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "ququart/core/gates.hpp"

namespace ququart {

/// Time-ordered native gate sequence (gates()[0] is applied first).
class QuditCircuit {
 public:
  QuditCircuit() = default;
  QuditCircuit(std::initializer_list<NativeGate> gates) : gates_(gates) {}
  explicit QuditCircuit(std::vector<NativeGate> gates) : gates_(std::move(gates)) {}

  const std::vector<NativeGate>& gates() const { return gates_; }
  bool empty() const { return gates_.empty(); }
  std::size_t size() const { return gates_.size(); }
  std::size_t pulse_count() const;

  void push_back(const NativeGate& g) { gates_.push_back(g); }
  /// Appends `other` so that it executes after this circuit.
  QuditCircuit& append(const QuditCircuit& other);

  int shots() const { return shots_; }
  void set_shots(int shots) { shots_ = shots; }

  friend bool operator==(const QuditCircuit&, const QuditCircuit&) = default;

 private:
  std::vector<NativeGate> gates_;
  int shots_ = 0;
};

/// Sum of pulse durations plus one 10 ns buffer between consecutive pulses.
/// Virtual-Z gates take no time and do not split a buffer.
double circuit_duration(const QuditCircuit& c);

/// Product U_n ... U_1 of the circuit's gate unitaries.
Mat4 circuit_unitary(const QuditCircuit& c);

QuditState run_circuit(const QuditState& psi, const QuditCircuit& c);
QuditDensity run_circuit(const QuditDensity& rho, const QuditCircuit& c);

/// Line format, one gate per line: `X01 1.5707963267948966`, `VZ2 -0.785...`,
/// with an optional third field carrying a nonzero drive phase. A leading
/// `# shots <n>` line records the shot count. Round-trips exactly.
std::string serialize(const QuditCircuit& c);
/// Throws InvalidArgument naming the offending line on malformed input.
QuditCircuit parse_circuit(std::string_view text);

}  // namespace ququart
