#include "ququart/harness/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "ququart/noise/decay.hpp"
#include "ququart/vqe/hamiltonian.hpp"

namespace ququart {

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Vqe:
      return "vqe";
    case ExperimentKind::Rb:
      return "rb";
    case ExperimentKind::Gst:
      return "gst";
    case ExperimentKind::Readout:
      return "readout";
    case ExperimentKind::Reset:
      return "reset";
  }
  return "?";
}

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

// A YAML mapping whose keys are consumed one by one; leftovers are errors.
class Section {
 public:
  Section(YAML::Node node, std::string path, std::string source)
      : node_(std::move(node)), path_(std::move(path)), source_(std::move(source)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) fail_at(node_, path_, "expected a mapping");
  }

  [[noreturn]] void fail_at(const YAML::Node& n, const std::string& field, const std::string& what) const {
    throw ConfigError(fmt::format("{}:{}: {}: {}", source_, line_of(n), field, what));
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return static_cast<bool>(lookup(key)); }

  YAML::Node raw(const std::string& key) {
    used_.insert(key);
    return lookup(key);
  }

  // Const lookup: the non-const operator[] would insert the key.
  YAML::Node lookup(const std::string& key) const {
    if (!node_ || !node_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
    const YAML::Node& n = node_;
    const YAML::Node v = n[key];
    return v.IsDefined() ? v : YAML::Node(YAML::NodeType::Undefined);
  }

  template <class T>
  T get(const std::string& key, const T& fallback) {
    const YAML::Node n = raw(key);
    if (!n) return fallback;
    return convert<T>(n, field(key));
  }

  template <class T>
  T required(const std::string& key) {
    const YAML::Node n = raw(key);
    if (!n) throw ConfigError(fmt::format("{}:{}: missing required field '{}'", source_, line(), field(key)));
    return convert<T>(n, field(key));
  }

  template <class T>
  T convert(const YAML::Node& n, const std::string& f) const {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail_at(n, f, "wrong type or malformed value '" + (n.IsScalar() ? n.Scalar() : std::string("<node>")) + "'");
    }
  }

  Section child(const std::string& key) {
    const YAML::Node n = raw(key);
    return Section(n, field(key), source_);
  }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.count(key)) fail_at(kv.first, field(key), "unknown field");
    }
  }

  int line() const { return node_ ? line_of(node_) : 0; }
  const std::string& source() const { return source_; }
  YAML::Node node() const { return node_; }

 private:
  YAML::Node node_;
  std::string path_;
  std::string source_;
  std::set<std::string> used_;
};

template <class T>
void check(Section& s, const std::string& key, const T& value, bool ok, const std::string& what) {
  if (!ok) s.fail_at(s.has(key) ? s.lookup(key) : s.node(), s.field(key), fmt::format("{} (got {})", what, value));
}

double parse_angle(Section& s, const std::string& key, double fallback) {
  const YAML::Node n = s.raw(key);
  if (!n) return fallback;
  const std::string text = s.convert<std::string>(n, s.field(key));
  if (text == "pi") return kPi;
  if (text == "-pi") return -kPi;
  return s.convert<double>(n, s.field(key));
}

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || std::filesystem::path(p).is_absolute()) return p;
  return (std::filesystem::path(base) / p).lexically_normal().string();
}

void parse_noise(Section s, RunConfig& cfg) {
  DeviceNoise& n = cfg.noise;
  const YAML::Node g = s.raw("gamma");
  if (g) {
    if (g.IsScalar()) {
      const auto v = g.as<std::string>();
      if (v == "reference")
        n.gamma = DecayMatrix::reference_device();
      else if (v != "none")
        s.fail_at(g, s.field("gamma"), "expected 'reference', 'none' or a 4x4 matrix");
    } else {
      const auto rows = s.convert<std::vector<std::vector<double>>>(g, s.field("gamma"));
      if (rows.size() != 4) s.fail_at(g, s.field("gamma"), "expected 4 rows");
      std::array<double, 16> flat{};
      for (int i = 0; i < 4; ++i) {
        if (rows[i].size() != 4) s.fail_at(g, s.field("gamma"), fmt::format("row {} needs 4 entries", i));
        for (int j = 0; j < 4; ++j) flat[4 * i + j] = rows[i][j];
      }
      try {
        n.gamma = DecayMatrix::from_row_major(flat);
      } catch (const InvalidArgument& e) {
        s.fail_at(g, s.field("gamma"), e.what());
      }
    }
  }
  n.gate_damping = s.get<bool>("gate_damping", n.gate_damping);
  if (s.has("dephasing_t2_us")) {
    const auto t2 = s.get<std::vector<double>>("dephasing_t2_us", {});
    check(s, "dephasing_t2_us", t2.size(), t2.size() == 3, "expected three T2 values");
    for (double t : t2) check(s, "dephasing_t2_us", t, t > 0, "T2 must be positive");
    n.dephasing = CoherenceTimes{t2[0], t2[1], t2[2]};
  }
  n.readout_window_us = s.get<double>("readout_window_us", n.readout_window_us);
  check(s, "readout_window_us", n.readout_window_us, n.readout_window_us >= 0, "must be nonnegative");
  const auto model = s.get<std::string>("readout_decay", "matrix_power");
  if (model == "matrix_power")
    n.readout_model = ReadoutDecayModel::MatrixPower;
  else if (model == "damping_channel")
    n.readout_model = ReadoutDecayModel::DampingChannel;
  else
    check(s, "readout_decay", model, false, "expected matrix_power or damping_channel");

  if (s.has("thermal")) {
    const auto t = s.get<std::vector<double>>("thermal", {});
    check(s, "thermal", t.size(), t.size() == 4, "expected four populations");
    double sum = 0;
    for (double v : t) {
      check(s, "thermal", v, v >= 0, "populations must be nonnegative");
      sum += v;
    }
    check(s, "thermal", sum, std::abs(sum - 1.0) < 1e-9, "populations must sum to 1");
    n.thermal = {t[0], t[1], t[2], t[3]};
  }
  n.reset_rounds = s.get<int>("reset_rounds", 0);
  check(s, "reset_rounds", n.reset_rounds, n.reset_rounds >= 0, "must be nonnegative");

  const double eps = s.get<double>("misclassification", 0.0);
  check(s, "misclassification", eps, eps >= 0 && eps <= 0.5, "must lie in [0, 0.5]");
  n.misclassification = MisclassificationModel(eps);
  const auto mode = s.get<std::string>("misclassification_mode", "per_batch");
  if (mode == "per_batch")
    n.misclassification_mode = MisclassificationMode::PerBatch;
  else if (mode == "per_shot")
    n.misclassification_mode = MisclassificationMode::PerShot;
  else
    check(s, "misclassification_mode", mode, false, "expected per_batch or per_shot");
  const double reset_eps = s.get<double>("reset_classifier_epsilon", eps);
  check(s, "reset_classifier_epsilon", reset_eps, reset_eps >= 0 && reset_eps <= 0.5, "must lie in [0, 0.5]");
  n.reset_classifier = MisclassificationModel(reset_eps).assignment();
  s.finish();
}

void parse_device(Section s) {
  // Physical constants of the preset; pulse timing is fixed by the gate model.
  const double pulse = s.get<double>("pulse_ns", kPulseDurationNs);
  check(s, "pulse_ns", pulse, pulse == kPulseDurationNs, fmt::format("only {} ns pulses are modelled", kPulseDurationNs));
  const double buffer = s.get<double>("buffer_ns", kPulseBufferNs);
  check(s, "buffer_ns", buffer, buffer == kPulseBufferNs, fmt::format("only {} ns buffers are modelled", kPulseBufferNs));
  const auto f = s.get<std::vector<double>>("transitions_mhz", {});
  check(s, "transitions_mhz", f.size(), f.empty() || f.size() == 3, "expected three transition frequencies");
  s.finish();
}

void parse_readout(Section s, ReadoutConfig& r) {
  Section res = s.child("resonator");
  r.resonator.kappa_mhz = res.get<double>("kappa_mhz", r.resonator.kappa_mhz);
  r.resonator.chi_mhz = res.get<double>("chi_mhz", r.resonator.chi_mhz);
  r.resonator.probe_mhz = res.get<double>("probe_mhz", r.resonator.probe_mhz);
  r.resonator.bare_mhz = res.get<double>("bare_mhz", r.resonator.probe_mhz + 1.5 * r.resonator.chi_mhz);
  for (int k = 0; k < 4; ++k) r.resonator.shift_mhz[k] = -k * r.resonator.chi_mhz;
  try {
    r.resonator.validate();
  } catch (const InvalidArgument& e) {
    res.fail_at(res.node(), "readout.resonator", e.what());
  }
  res.finish();
  if (s.has("radius")) {
    const auto v = s.get<std::vector<double>>("radius", {});
    check(s, "radius", v.size(), v.size() == 4, "expected four radii");
    std::copy(v.begin(), v.end(), r.geometry.radius.begin());
  }
  if (s.has("sigma")) {
    const auto v = s.get<std::vector<double>>("sigma", {});
    check(s, "sigma", v.size(), v.size() == 4, "expected four widths");
    for (double x : v) check(s, "sigma", x, x > 0, "widths must be positive");
    std::copy(v.begin(), v.end(), r.geometry.sigma.begin());
  }
  r.shots_per_state = s.get<long>("shots_per_state", r.shots_per_state);
  check(s, "shots_per_state", r.shots_per_state, r.shots_per_state >= 10, "needs at least 10 shots");
  r.outlier_fraction = s.get<double>("outlier_fraction", r.outlier_fraction);
  check(s, "outlier_fraction", r.outlier_fraction, r.outlier_fraction >= 0 && r.outlier_fraction < 1,
        "must lie in [0, 1)");
  r.contamination = s.get<double>("contamination", r.contamination);
  check(s, "contamination", r.contamination, r.contamination >= 0 && r.contamination < 1, "must lie in [0, 1)");
  s.finish();
}

void parse_vqe(Section s, VqeConfig& v, const std::string& base) {
  v.table = resolve(base, s.get<std::string>("table", default_hamiltonian_table_path()));
  if (!std::filesystem::exists(v.table))
    check(s, "table", v.table, false, "coefficient table does not exist");
  v.distances = s.get<std::vector<double>>("distances", {});
  v.points = s.get<int>("points", v.points);
  check(s, "points", v.points, v.points >= 2, "needs at least 2 grid points");
  v.theta_min = parse_angle(s, "theta_min", v.theta_min);
  v.theta_max = parse_angle(s, "theta_max", v.theta_max);
  check(s, "theta_max", v.theta_max, v.theta_max > v.theta_min, "must exceed theta_min");
  v.repeats = s.get<int>("repeats", v.repeats);
  check(s, "repeats", v.repeats, v.repeats >= 1, "must be positive");
  v.shots = s.get<long>("shots", v.shots);
  check(s, "shots", v.shots, v.shots >= 0, "must be nonnegative");
  if (s.has("terms")) {
    v.terms.clear();
    for (const auto& t : s.get<std::vector<std::string>>("terms", {})) {
      try {
        v.terms.push_back(hamiltonian_term_from_string(t));
      } catch (const InvalidArgument& e) {
        check(s, "terms", t, false, e.what());
      }
    }
  }
  const auto m = s.get<std::string>("mitigation", "none");
  if (m == "none")
    v.mitigation = MitigationSource::None;
  else if (m == "calibrated")
    v.mitigation = MitigationSource::Calibrated;
  else if (m == "expected")
    v.mitigation = MitigationSource::Expected;
  else
    check(s, "mitigation", m, false, "expected none, calibrated or expected");
  v.calibration_shots_per_batch = s.get<long>("calibration_shots_per_batch", v.calibration_shots_per_batch);
  v.calibration_batches = s.get<int>("calibration_batches", v.calibration_batches);
  check(s, "calibration_batches", v.calibration_batches, v.calibration_batches >= 1, "must be positive");
  if (s.has("calibration_epsilon")) {
    const double e = s.get<double>("calibration_epsilon", 0.0);
    check(s, "calibration_epsilon", e, e >= 0 && e <= 0.5, "must lie in [0, 0.5]");
    v.calibration_epsilon = e;
  }
  v.outlier_fraction = s.get<double>("outlier_fraction", v.outlier_fraction);
  check(s, "outlier_fraction", v.outlier_fraction, v.outlier_fraction >= 0 && v.outlier_fraction < 1,
        "must lie in [0, 1)");
  s.finish();
}

void parse_rb(Section s, RbConfig& r) {
  try {
    r.kind = rb_kind_from_string(s.get<std::string>("kind", to_string(r.kind)));
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    check(s, "kind", std::string("?"), false, e.what());
  }
  r.lengths = s.get<std::vector<int>>("lengths", r.lengths);
  check(s, "lengths", r.lengths.size(), r.lengths.size() >= 2, "needs at least two lengths");
  for (int m : r.lengths) check(s, "lengths", m, m >= 0, "lengths must be nonnegative");
  r.sequences = s.get<int>("sequences", r.sequences);
  check(s, "sequences", r.sequences, r.sequences >= 1, "must be positive");
  r.shots = s.get<long>("shots", r.shots);
  check(s, "shots", r.shots, r.shots >= 0, "must be nonnegative");
  r.depolarizing = s.get<double>("depolarizing", r.depolarizing);
  check(s, "depolarizing", r.depolarizing, r.depolarizing > 0 && r.depolarizing <= 1, "must lie in (0, 1]");
  if (s.has("interleaved")) {
    const auto g = s.get<std::string>("interleaved", "");
    if (g == "swap")
      r.interleaved = VirtualQubitGate::swap();
    else if (g == "iswap")
      r.interleaved = VirtualQubitGate::iswap();
    else if (g == "uzx")
      r.interleaved = VirtualQubitGate::uzx();
    else if (g == "cz")
      r.interleaved = VirtualQubitGate::zz(kPi / 2);
    else
      check(s, "interleaved", g, false, "expected swap, iswap, uzx or cz");
  }
  if (r.kind == RBKind::Interleaved && !r.interleaved)
    check(s, "interleaved", std::string("missing"), false, "interleaved RB needs an interleaved gate");
  s.finish();
}

void parse_gst(Section s, GstConfig& g) {
  g.powers = s.get<std::vector<int>>("powers", g.powers);
  bool has0 = false, has1 = false;
  for (int k : g.powers) {
    check(s, "powers", k, k >= 0, "powers must be nonnegative");
    has0 |= k == 0;
    has1 |= k == 1;
  }
  check(s, "powers", g.powers.size(), has0 && has1, "linear inversion needs powers 0 and 1");
  g.shots = s.get<long>("shots", g.shots);
  check(s, "shots", g.shots, g.shots >= 0, "must be nonnegative");
  s.finish();
}

void parse_reset(Section s, ResetConfig& r) {
  r.rounds = s.get<std::vector<int>>("rounds", r.rounds);
  for (int k : r.rounds) check(s, "rounds", k, k >= 0, "must be nonnegative");
  s.finish();
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& source, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("{}:{}: YAML syntax error: {}", source, e.mark.line + 1, e.msg));
  }
  if (!root || !root.IsMap()) throw ConfigError(source + ": top level must be a mapping");

  RunConfig cfg;
  cfg.source = source;
  Section top(root, "", source);
  const auto kind = top.required<std::string>("experiment");
  bool found = false;
  for (auto k : {ExperimentKind::Vqe, ExperimentKind::Rb, ExperimentKind::Gst, ExperimentKind::Readout,
                 ExperimentKind::Reset})
    if (to_string(k) == kind) {
      cfg.experiment = k;
      found = true;
    }
  if (!found) top.fail_at(root["experiment"], "experiment", "expected vqe, rb, gst, readout or reset");
  // Seeds are mandatory so no run depends on wall-clock entropy.
  cfg.seed = top.required<std::uint64_t>("seed");
  cfg.output = resolve(base_dir, top.get<std::string>("output", "out"));
  cfg.jobs = top.get<int>("jobs", 1);
  check(top, "jobs", cfg.jobs, cfg.jobs >= 1, "must be positive");

  parse_device(top.child("device"));
  parse_noise(top.child("noise"), cfg);
  parse_readout(top.child("readout"), cfg.readout);
  // Only the selected experiment's block is required to be valid, but all are parsed.
  parse_vqe(top.child("vqe"), cfg.vqe, base_dir);
  parse_rb(top.child("rb"), cfg.rb);
  parse_gst(top.child("gst"), cfg.gst);
  parse_reset(top.child("reset"), cfg.reset);
  top.finish();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto base = std::filesystem::absolute(path).parent_path().string();
  return parse_run_config(ss.str(), path, base);
}

}  // namespace ququart
