#include "ququart/core/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

#include <fmt/format.h>

namespace ququart {

std::size_t QuditCircuit::pulse_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [](const NativeGate& g) { return g.is_pulse(); }));
}

QuditCircuit& QuditCircuit::append(const QuditCircuit& other) {
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

double circuit_duration(const QuditCircuit& c) {
  double total = 0.0;
  int pulses = 0;
  for (const auto& g : c.gates()) {
    if (g.duration_ns > 0.0) {
      total += g.duration_ns;
      ++pulses;
    }
  }
  if (pulses > 1) total += kPulseBufferNs * (pulses - 1);
  return total;
}

Mat4 circuit_unitary(const QuditCircuit& c) {
  Mat4 u = Mat4::Identity();
  for (const auto& g : c.gates()) u = gate_unitary(g) * u;
  return u;
}

QuditState run_circuit(const QuditState& psi, const QuditCircuit& c) {
  return QuditState::trusted(circuit_unitary(c) * psi.amplitudes());
}

QuditDensity run_circuit(const QuditDensity& rho, const QuditCircuit& c) {
  const Mat4 u = circuit_unitary(c);
  return QuditDensity::trusted(u * rho.matrix() * u.adjoint());
}

std::string serialize(const QuditCircuit& c) {
  std::string out;
  if (c.shots() != 0) out += fmt::format("# shots {}\n", c.shots());
  for (const auto& g : c.gates()) {
    if (g.is_pulse() && g.drive_phase != 0.0) {
      out += fmt::format("{} {} {}\n", g.name(), g.angle, g.drive_phase);
    } else {
      out += fmt::format("{} {}\n", g.name(), g.angle);
    }
  }
  return out;
}

namespace {

double parse_double(std::string_view tok, int line_no) {
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument(fmt::format("line {}: '{}' is not a number", line_no, tok));
  }
  return v;
}

NativeGate parse_gate(const std::vector<std::string>& tok, int line_no) {
  const std::string& op = tok[0];
  if (tok.size() < 2 || tok.size() > 3) {
    throw InvalidArgument(fmt::format("line {}: expected '<gate> <angle> [<phase>]'", line_no));
  }
  const double angle = parse_double(tok[1], line_no);
  if (op.size() == 3 && op[0] == 'V' && op[1] == 'Z') {
    if (tok.size() != 2) throw InvalidArgument(fmt::format("line {}: VZ takes one angle", line_no));
    return NativeGate::vz(op[2] - '0', angle);
  }
  if (op.size() == 3 && (op[0] == 'X' || op[0] == 'Y')) {
    const int lo = op[1] - '0';
    if (op[2] - '0' != lo + 1 || lo < 0 || lo > 2) {
      throw InvalidArgument(fmt::format("line {}: unknown subspace in '{}'", line_no, op));
    }
    const double phase = tok.size() == 3 ? parse_double(tok[2], line_no) : 0.0;
    return op[0] == 'X' ? NativeGate::x(lo, angle, phase) : NativeGate::y(lo, angle, phase);
  }
  throw InvalidArgument(fmt::format("line {}: unknown gate '{}'", line_no, op));
}

}  // namespace

QuditCircuit parse_circuit(std::string_view text) {
  QuditCircuit c;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "#") {
      if (tok.size() == 3 && tok[1] == "shots") {
        c.set_shots(static_cast<int>(parse_double(tok[2], line_no)));
      }
      continue;
    }
    c.push_back(parse_gate(tok, line_no));
  }
  return c;
}

}  // namespace ququart
