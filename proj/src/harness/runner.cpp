#include "ququart/harness/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "ququart/harness/plots.hpp"
#include "ququart/noise/reset.hpp"
#include "ququart/qcvv/gst.hpp"
#include "ququart/readout/calibration.hpp"
#include "ququart/readout/mitigation.hpp"
#include "ququart/readout/outliers.hpp"
#include "ququart/util/log.hpp"
#include "ququart/util/rng.hpp"
#include "ququart/vqe/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace ququart {

namespace {

// Stream tags for child seeds of the run seed.
constexpr std::uint64_t kCalibrationStream = 1;
constexpr std::uint64_t kExperimentStream = 2;

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write " + p.string());
  return os;
}

void write_json(const fs::path& p, const ordered_json& j) { open_out(p) << j.dump(2) << '\n'; }

ordered_json matrix_json(const Mat4r& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
  return rows;
}

template <class Derived>
ordered_json dense_json(const Eigen::MatrixBase<Derived>& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> selected_distances(const VqeConfig& v, const HamiltonianTable& table) {
  if (!v.distances.empty()) {
    for (double r : v.distances) table.at(r);
    return v.distances;
  }
  std::vector<double> all;
  for (const auto& row : table.rows) all.push_back(row.r);
  return all;
}

void write_energy_csv(const fs::path& p, const std::vector<EnergyPoint>& pts) {
  auto os = open_out(p);
  os << "R,E_mean,E_sigma,E_exact,within_chem_acc\n";
  for (const auto& e : pts)
    os << fmt::format("{},{},{},{},{}\n", e.r, e.e_mean, e.e_sigma, e.e_exact, e.within_chemical_accuracy ? 1 : 0);
}

ordered_json energy_summary(const std::vector<EnergyPoint>& pts) {
  ordered_json rows = ordered_json::array();
  double worst = 0.0;
  bool all_ok = true;
  for (const auto& e : pts) {
    const double err = e.e_mean - e.e_exact;
    worst = std::max(worst, std::abs(err));
    all_ok = all_ok && e.within_chemical_accuracy;
    rows.push_back({{"R", e.r}, {"theta", e.theta}, {"error", err}});
  }
  return {{"max_abs_error", worst}, {"all_within_chemical_accuracy", all_ok}, {"points", rows}};
}

void run_vqe(const RunConfig& cfg, const fs::path& out) {
  const VqeConfig& v = cfg.vqe;
  const HamiltonianTable table = read_hamiltonian_csv(v.table);
  const auto distances = selected_distances(v, table);

  SweepOptions opt;
  opt.points = v.points;
  opt.theta_min = v.theta_min;
  opt.theta_max = v.theta_max;
  opt.repeats = v.repeats;
  opt.shots = v.shots;
  opt.seed = derive_seed(cfg.seed, {kExperimentStream});
  opt.terms = v.terms;
  opt.outlier_fraction = v.outlier_fraction;
  opt.jobs = cfg.jobs;

  ordered_json summary = {{"experiment", "vqe"}, {"table", fs::path(v.table).filename().string()}};

  if (v.shots == 0) {
    // Noiseless statevector path: exact expectations on the grid and a
    // continuous minimization per bond distance.
    const VqeSweep s = analytic_sweep(theta_grid(opt));
    {
      auto os = open_out(out / "sweep.csv");
      os << "theta,pauli,repeat,estimate,variant\n";
      for (std::size_t i = 0; i < s.thetas.size(); ++i)
        for (std::size_t k = 0; k < s.terms.size(); ++k)
          os << fmt::format("{},{},0,{},raw\n", s.thetas[i], to_string(s.terms[k]), s.samples[i][k].raw[0]);
    }
    std::vector<EnergyPoint> pts;
    for (double r : distances) {
      const auto& h = table.at(r);
      const auto m = minimize_statevector_energy(h, v.points);
      const double exact = exact_ground_energy(h);
      pts.push_back({r, m.theta, m.energy, 0.0, exact, std::abs(m.energy - exact) <= kChemicalAccuracy});
    }
    write_energy_csv(out / "energy.csv", pts);
    summary["path"] = "statevector";
    summary["energy"] = energy_summary(pts);
    write_json(out / "vqe_summary.json", summary);
    return;
  }

  const NoisyDevice device(cfg.noise);
  if (v.mitigation != MitigationSource::None) {
    AssignmentMatrix a;
    if (v.mitigation == MitigationSource::Calibrated) {
      CalibrationOptions co;
      co.shots_per_batch = v.calibration_shots_per_batch;
      co.batches = v.calibration_batches;
      co.classifier_eps = v.calibration_epsilon;
      a = calibrate_assignment(device, co, derive_seed(cfg.seed, {kCalibrationStream}));
    } else {
      a = expected_assignment(device, v.calibration_epsilon);
    }
    auto os = open_out(out / "assignment.csv");
    write_assignment_csv(os, a);
    opt.mitigation = a;
    summary["assignment_condition_number"] = a.condition_number();
  }

  const VqeSweep s = sweep(opt, device);
  std::vector<EstimateVariant> variants;
  for (auto var : {EstimateVariant::Raw, EstimateVariant::Mitigated, EstimateVariant::Filtered})
    if (s.has(var)) variants.push_back(var);
  {
    auto os = open_out(out / "sweep.csv");
    os << "theta,pauli,repeat,estimate,variant\n";
    for (auto var : variants)
      for (std::size_t i = 0; i < s.thetas.size(); ++i)
        for (std::size_t k = 0; k < s.terms.size(); ++k) {
          const auto& xs = s.samples[i][k].get(var);
          for (std::size_t r = 0; r < xs.size(); ++r)
            os << fmt::format("{},{},{},{},{}\n", s.thetas[i], to_string(s.terms[k]), r, xs[r], to_string(var));
        }
  }

  const bool full_hamiltonian = s.terms.size() == kHamiltonianTerms.size();
  if (!full_hamiltonian) {
    warn("vqe: not every Hamiltonian term was measured; no energy file is written");
  } else {
    const EstimateVariant primary = variants.back();
    summary["primary_variant"] = to_string(primary);
    ordered_json per_variant = ordered_json::object();
    for (auto var : variants) {
      const auto pts = energy_curve(s, table, distances, var);
      write_energy_csv(out / fmt::format("energy_{}.csv", to_string(var)), pts);
      if (var == primary) write_energy_csv(out / "energy.csv", pts);
      per_variant[to_string(var)] = energy_summary(pts);
    }
    summary["energy"] = per_variant;
  }
  summary["path"] = "sampled";
  write_json(out / "vqe_summary.json", summary);
}

ordered_json fit_json(const RBResult& r) {
  ordered_json j = {{"kind", to_string(r.kind)}, {"dimension", rb_dimension(r.kind)}};
  ordered_json means = ordered_json::array();
  for (const auto& [m, y] : r.mean_survival()) means.push_back({{"m", m}, {"survival", y}});
  j["mean_survival"] = means;
  if (r.fit) {
    j["A"] = r.fit->a;
    j["p"] = r.fit->p;
    j["B"] = r.fit->b;
    j["A_err"] = r.fit->a_err;
    j["p_err"] = r.fit->p_err;
    j["B_err"] = r.fit->b_err;
    j["ssr"] = r.fit->ssr;
    j["error_per_clifford"] = r.error_per_clifford();
    j["error_per_clifford_err"] = r.error_per_clifford_err();
  } else {
    j["fit_error"] = r.fit_error;
  }
  return j;
}

void write_rb_points(std::ostream& os, const RBResult& r) {
  for (const auto& p : r.points) os << fmt::format("{},{},{},{}\n", to_string(r.kind), p.length, p.sequence, p.survival);
}

void run_rb_experiment(const RunConfig& cfg, const fs::path& out) {
  const NoisyDevice device(cfg.noise);
  RBOptions opt;
  opt.kind = cfg.rb.kind;
  opt.lengths = cfg.rb.lengths;
  opt.sequences = cfg.rb.sequences;
  opt.shots = cfg.rb.shots;
  opt.seed = derive_seed(cfg.seed, {kExperimentStream});
  opt.depolarizing = cfg.rb.depolarizing;
  opt.interleaved = cfg.rb.interleaved;

  auto os = open_out(out / "rb.csv");
  os << "kind,m,seq_index,survival\n";
  ordered_json j = {{"experiment", "rb"}, {"injected_depolarizing", opt.depolarizing}};
  if (opt.kind == RBKind::Interleaved) {
    const auto res = run_interleaved_rb(opt, device);
    write_rb_points(os, res.reference);
    write_rb_points(os, res.interleaved);
    j["fits"] = {fit_json(res.reference), fit_json(res.interleaved)};
    j["gate_error"] = res.gate_error;
    j["gate_error_err"] = res.gate_error_err;
  } else {
    const auto res = run_rb(opt, device);
    write_rb_points(os, res);
    j["fits"] = {fit_json(res)};
  }
  write_json(out / "rb_fit.json", j);
}

void run_gst_experiment(const RunConfig& cfg, const fs::path& out) {
  const NoisyDevice device(cfg.noise);
  const auto gates = gst_gate_set();
  const auto fid = gst_fiducials();
  const auto circuits = gst_circuits(gates, fid, cfg.gst.powers);
  const auto data = simulate_gst(circuits, device, cfg.gst.shots, derive_seed(cfg.seed, {kExperimentStream}));
  write_gst_dataset_csv((out / "gst_dataset.csv").string(), data);

  const auto est = linear_inversion_gst(data, gates, fid);
  ordered_json j = {{"experiment", "gst"}, {"circuits", circuits.size()}, {"shots", cfg.gst.shots}};
  j["state_infidelity"] = est.state_infidelity();
  j["rho"] = dense_json(est.rho.transpose());
  ordered_json g = ordered_json::array();
  for (std::size_t k = 0; k < est.gates.size(); ++k) {
    const PTM ideal = ptm_of_unitary(gate_unitary(gates[k].gate));
    g.push_back({{"name", est.gate_names[k]},
                 {"avg_gate_infidelity", est.gate_infidelity(k, gates)},
                 {"frobenius_to_ideal", (est.gates[k] - ideal).norm()},
                 {"ptm", dense_json(est.gates[k])}});
  }
  j["gates"] = g;
  ordered_json e = ordered_json::array();
  for (const auto& v : est.effects) e.push_back(dense_json(v.transpose()));
  j["effects"] = e;
  write_json(out / "gst_result.json", j);
}

void run_readout(const RunConfig& cfg, const fs::path& out) {
  const ReadoutConfig& rc = cfg.readout;
  const NoisyDevice device(cfg.noise);
  const SphericalGmm model = readout_model(rc.resonator, rc.geometry);
  const double box = 1.5 * *std::max_element(rc.geometry.radius.begin(), rc.geometry.radius.end());
  const long planted_per_state = std::lround(rc.contamination * rc.shots_per_state);

  // One labeled record over all prepared states; labels are the level
  // actually occupied at readout, planted points take the prepared level.
  IQRecord all;
  std::vector<int> prepared;
  std::vector<char> planted;
  for (int n = 0; n < 4; ++n) {
    const Probabilities pops = device.run(excite_sequence(n));
    const IQRecord r = synthesize_shots(pops, model, rc.shots_per_state, derive_seed(cfg.seed, {kExperimentStream, std::uint64_t(n)}));
    for (std::size_t i = 0; i < r.size(); ++i) {
      all.points.push_back(r.points[i]);
      all.labels.push_back(r.labels[i]);
      prepared.push_back(n);
      planted.push_back(0);
    }
    Rng rng(derive_seed(cfg.seed, {kExperimentStream, std::uint64_t(n), 1}));
    std::uniform_real_distribution<double> u(-box, box);
    for (long i = 0; i < planted_per_state; ++i) {
      const double x = u(rng);
      const double y = u(rng);
      all.points.emplace_back(x, y);
      all.labels.push_back(n);
      prepared.push_back(n);
      planted.push_back(1);
    }
  }

  const auto fit = fit_gmm(all, 4, derive_seed(cfg.seed, {kExperimentStream, 9}));
  const auto cls = classify(fit.model, all);
  long correct = 0, genuine = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!planted[i]) {
      ++genuine;
      correct += cls[i] == all.labels[i];
    }

  const auto outl = remove_outliers(all, rc.outlier_fraction, &fit.model);
  std::vector<char> removed(all.size(), 0);
  for (int i : outl.removed) removed[i] = 1;
  long planted_total = 0, planted_removed = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (planted[i]) {
      ++planted_total;
      planted_removed += removed[i];
    }

  std::array<Counts, 4> raw_counts{}, kept_counts{};
  for (std::size_t i = 0; i < all.size(); ++i) {
    raw_counts[prepared[i]][cls[i]] += 1;
    if (!removed[i]) kept_counts[prepared[i]][cls[i]] += 1;
  }
  const AssignmentMatrix a_raw = estimate_assignment(raw_counts);
  const AssignmentMatrix a_kept = estimate_assignment(kept_counts);
  const AssignmentMatrix a_expected = AssignmentMatrix::from_transfer(device.readout_transfer());

  {
    auto os = open_out(out / "iq_shots.csv");
    os << "prepared,level,I,Q,planted,removed,classified\n";
    for (std::size_t i = 0; i < all.size(); ++i)
      os << fmt::format("{},{},{},{},{},{},{}\n", prepared[i], all.labels[i], all.points[i].x(), all.points[i].y(),
                        int(planted[i]), int(removed[i]), cls[i]);
  }
  open_out(out / "gmm.txt") << to_text(fit.model);
  {
    auto os = open_out(out / "assignment_raw.csv");
    write_assignment_csv(os, a_raw);
  }
  {
    auto os = open_out(out / "assignment_filtered.csv");
    write_assignment_csv(os, a_kept);
  }
  ordered_json j = {{"experiment", "readout"},
                    {"shots_per_state", rc.shots_per_state},
                    {"gmm_iterations", fit.iterations},
                    {"gmm_converged", fit.converged},
                    {"classification_accuracy", genuine ? double(correct) / genuine : 0.0},
                    {"outlier_fraction", rc.outlier_fraction},
                    {"removed", outl.removed.size()},
                    {"planted", planted_total},
                    {"planted_recall", planted_total ? double(planted_removed) / planted_total : 1.0},
                    {"assignment_raw", matrix_json(a_raw.matrix())},
                    {"assignment_filtered", matrix_json(a_kept.matrix())},
                    {"assignment_decay_closed_form", matrix_json(a_expected.matrix())}};
  write_json(out / "readout.json", j);
}

void run_reset(const RunConfig& cfg, const fs::path& out) {
  auto os = open_out(out / "reset.csv");
  os << "rounds,p0,p1,p2,p3,ground_fidelity\n";
  for (int rounds : cfg.reset.rounds) {
    DeviceNoise n = cfg.noise;
    n.reset_rounds = rounds;
    const QuditDensity rho = NoisyDevice(n).prepare();
    const double p0 = rho.matrix()(0, 0).real();
    os << fmt::format("{},{},{},{},{},{}\n", rounds, p0, rho.matrix()(1, 1).real(), rho.matrix()(2, 2).real(),
                      rho.matrix()(3, 3).real(), p0);
  }
}

}  // namespace

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

void write_manifest(const std::string& dir, const RunConfig& cfg) {
  std::vector<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) {
      const auto rel = fs::relative(e.path(), dir).generic_string();
      if (rel != "manifest.json") files.push_back(rel);
    }
  std::sort(files.begin(), files.end());
  ordered_json list = ordered_json::array();
  for (const auto& f : files) {
    const auto p = fs::path(dir) / f;
    list.push_back({{"path", f}, {"bytes", fs::file_size(p)}, {"sha256", sha256_file(p.string())}});
  }
  write_json(fs::path(dir) / "manifest.json",
             {{"experiment", to_string(cfg.experiment)}, {"seed", cfg.seed}, {"artifacts", list}});
}

RunArtifacts run_experiment(const RunConfig& cfg) {
  const fs::path out = cfg.output;
  fs::create_directories(out);
  // Stale files from an earlier run would otherwise land in the manifest.
  for (const char* stale : {"manifest.json", "plots"}) fs::remove_all(out / stale);

  if (!cfg.source.empty() && fs::exists(cfg.source)) fs::copy_file(cfg.source, out / "config.yaml", fs::copy_options::overwrite_existing);
  switch (cfg.experiment) {
    case ExperimentKind::Vqe:
      run_vqe(cfg, out);
      break;
    case ExperimentKind::Rb:
      run_rb_experiment(cfg, out);
      break;
    case ExperimentKind::Gst:
      run_gst_experiment(cfg, out);
      break;
    case ExperimentKind::Readout:
      run_readout(cfg, out);
      break;
    case ExperimentKind::Reset:
      run_reset(cfg, out);
      break;
  }
  emit_plots(out.string());
  write_manifest(out.string(), cfg);

  RunArtifacts a{out.string(), {}};
  for (const auto& e : fs::recursive_directory_iterator(out))
    if (e.is_regular_file()) a.files.push_back(fs::relative(e.path(), out).generic_string());
  std::sort(a.files.begin(), a.files.end());
  return a;
}

}  // namespace ququart
