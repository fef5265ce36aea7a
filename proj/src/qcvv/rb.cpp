#include "ququart/qcvv/rb.hpp"

#include <cmath>
#include <map>

#include <fmt/format.h>

#include "ququart/compiler/clifford.hpp"
#include "ququart/noise/misclassify.hpp"
#include "ququart/qcvv/ptm.hpp"
#include "ququart/util/rng.hpp"

namespace ququart {

std::string to_string(RBKind k) {
  switch (k) {
    case RBKind::SingleA:
      return "single_a";
    case RBKind::SingleB:
      return "single_b";
    case RBKind::Simultaneous:
      return "simultaneous";
    case RBKind::TwoQubit:
      return "two_qubit";
    case RBKind::Interleaved:
      return "interleaved";
  }
  return "?";
}

RBKind rb_kind_from_string(const std::string& s) {
  for (auto k : {RBKind::SingleA, RBKind::SingleB, RBKind::Simultaneous, RBKind::TwoQubit,
                 RBKind::Interleaved})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown RB kind '" + s + "'");
}

int rb_dimension(RBKind k) { return k == RBKind::SingleA || k == RBKind::SingleB ? 2 : 4; }

double rb_error_from_decay(RBKind k, double p) {
  const double d = rb_dimension(k);
  return (1.0 - p) * (d - 1.0) / d;
}

QuditCircuit RBSequence::flatten() const {
  QuditCircuit c;
  for (const auto& s : steps) c.append(s);
  return c;
}

namespace {

int interleaved_index(const std::optional<VirtualQubitGate>& g) {
  if (!g) throw InvalidArgument("interleaved RB needs an interleaved gate");
  const int idx = two_qubit_cliffords().find(target_unitary(*g));
  if (idx < 0) throw InvalidArgument("interleaved gate is not a two-qubit Clifford");
  return idx;
}

}  // namespace

RBSequence rb_sequence(RBKind kind, int length, std::uint64_t seed,
                       const std::optional<VirtualQubitGate>& interleaved) {
  if (length < 0) throw InvalidArgument("RB length must be nonnegative");
  Rng rng(seed);
  RBSequence seq;
  seq.kind = kind;
  auto push = [&](QuditCircuit c, bool inter) {
    seq.steps.push_back(std::move(c));
    seq.interleaved_step.push_back(inter);
  };

  const auto& c1 = single_qubit_cliffords();
  const auto& c2 = two_qubit_cliffords();
  std::uniform_int_distribution<int> pick1(0, CliffordGroup1::kSize - 1);
  std::uniform_int_distribution<int> pick2(0, CliffordGroup2::kSize - 1);

  switch (kind) {
    case RBKind::SingleA:
    case RBKind::SingleB: {
      const Target t = kind == RBKind::SingleA ? Target::A : Target::B;
      int total = 0;
      for (int i = 0; i < length; ++i) {
        const int k = pick1(rng);
        total = c1.compose(total, k);
        push(c1.compile(t, k), false);
      }
      push(c1.compile(t, c1.element(total).inverse), false);
      break;
    }
    case RBKind::Simultaneous: {
      int ta = 0, tb = 0;
      for (int i = 0; i < length; ++i) {
        const int a = pick1(rng), b = pick1(rng);
        ta = c1.compose(ta, a);
        tb = c1.compose(tb, b);
        QuditCircuit step = c1.compile(Target::A, a);
        step.append(c1.compile(Target::B, b));
        push(std::move(step), false);
      }
      QuditCircuit rec = c1.compile(Target::A, c1.element(ta).inverse);
      rec.append(c1.compile(Target::B, c1.element(tb).inverse));
      push(std::move(rec), false);
      break;
    }
    case RBKind::TwoQubit:
    case RBKind::Interleaved: {
      const bool inter = kind == RBKind::Interleaved;
      const int gi = inter ? interleaved_index(interleaved) : -1;
      const QuditCircuit gate_circuit = inter ? compile(*interleaved) : QuditCircuit{};
      Mat4 total = Mat4::Identity();
      for (int i = 0; i < length; ++i) {
        const int k = pick2(rng);
        total = c2.element(k).unitary * total;
        push(c2.compile(k), false);
        if (inter) {
          total = c2.element(gi).unitary * total;
          push(gate_circuit, true);
        }
      }
      const int rec = c2.find(total.adjoint());
      if (rec < 0) throw NumericError("RB recovery lookup failed");
      push(c2.compile(rec), false);
      break;
    }
  }
  return seq;
}

double RBResult::error_per_clifford() const {
  if (!fit) throw NumericError("RB fit unavailable: " + fit_error);
  return rb_error_from_decay(kind, fit->p);
}

double RBResult::error_per_clifford_err() const {
  if (!fit) throw NumericError("RB fit unavailable: " + fit_error);
  const double d = rb_dimension(kind);
  return fit->p_err * (d - 1.0) / d;
}

std::vector<std::pair<int, double>> RBResult::mean_survival() const {
  std::vector<std::pair<int, double>> out;
  std::map<int, std::size_t> slot;
  std::vector<int> n;
  for (const auto& pt : points) {
    auto [it, fresh] = slot.try_emplace(pt.length, out.size());
    if (fresh) {
      out.emplace_back(pt.length, 0.0);
      n.push_back(0);
    }
    out[it->second].second += pt.survival;
    n[it->second] += 1;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].second /= n[i];
  return out;
}

RBResult run_rb(const RBOptions& opt, const NoisyDevice& device) {
  if (opt.lengths.empty()) throw InvalidArgument("RB needs at least one length");
  if (opt.sequences < 1) throw InvalidArgument("RB needs at least one sequence per length");
  if (opt.shots < 0) throw InvalidArgument("RB shots must be nonnegative");
  if (!(opt.depolarizing > 0.0 && opt.depolarizing <= 1.0))
    throw InvalidArgument("depolarizing parameter must lie in (0, 1]");

  RBResult res;
  res.kind = opt.kind;
  const QuditDensity start = device.prepare();
  for (int m : opt.lengths) {
    for (int s = 0; s < opt.sequences; ++s) {
      const auto seq = rb_sequence(opt.kind, m, derive_seed(opt.seed, {std::uint64_t(m), std::uint64_t(s), 0}),
                                   opt.interleaved);
      QuditDensity rho = start;
      for (const auto& step : seq.steps) {
        rho = device.evolve(rho, step);
        if (opt.depolarizing < 1.0) {
          Mat4 r = rho.matrix();
          switch (opt.kind) {
            case RBKind::SingleA:
              r = depolarize_qubit(r, opt.depolarizing, true);
              break;
            case RBKind::SingleB:
              r = depolarize_qubit(r, opt.depolarizing, false);
              break;
            default:
              r = depolarize(r, opt.depolarizing);
          }
          rho = QuditDensity::trusted(r);
        }
      }
      const Probabilities readout = device.readout_populations(rho);
      double survival;
      if (opt.shots == 0) {
        survival = misclassify(readout, device.noise().misclassification)[0];
      } else {
        Rng rng(derive_seed(opt.seed, {std::uint64_t(m), std::uint64_t(s), 1}));
        survival = static_cast<double>(device.sample(readout, opt.shots, rng)[0]) / opt.shots;
      }
      res.points.push_back({m, s, survival});
    }
  }

  std::vector<double> x, y;
  for (const auto& pt : res.points) {
    x.push_back(pt.length);
    y.push_back(pt.survival);
  }
  try {
    res.fit = fit_exponential_decay(x, y, 1.0 / rb_dimension(opt.kind));
  } catch (const std::exception& e) {
    res.fit_error = e.what();
  }
  return res;
}

InterleavedRBResult run_interleaved_rb(RBOptions opt, const NoisyDevice& device) {
  interleaved_index(opt.interleaved);
  InterleavedRBResult out;
  opt.kind = RBKind::TwoQubit;
  out.reference = run_rb(opt, device);
  opt.kind = RBKind::Interleaved;
  out.interleaved = run_rb(opt, device);
  if (!out.reference.fit || !out.interleaved.fit)
    throw NumericError("interleaved RB: a decay fit failed (" + out.reference.fit_error +
                       out.interleaved.fit_error + ")");
  const double pr = out.reference.fit->p, pi = out.interleaved.fit->p;
  out.gate_error = 0.75 * (1.0 - pi / pr);
  const double rel = std::hypot(out.interleaved.fit->p_err / pi, out.reference.fit->p_err / pr);
  out.gate_error_err = 0.75 * (pi / pr) * rel;
  return out;
}

}  // namespace ququart
