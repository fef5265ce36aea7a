#include "ququart/qcvv/gst.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ququart/core/measure.hpp"
#include "ququart/noise/misclassify.hpp"
#include "ququart/util/rng.hpp"

namespace ququart {

namespace {

constexpr double kHalfPi = kPi / 2;

NativeGate X(int lower) { return NativeGate::x(lower, kHalfPi); }
NativeGate Z(int level) { return NativeGate::vz(level, kHalfPi); }

QuditCircuit concat(std::initializer_list<QuditCircuit> parts) {
  QuditCircuit c;
  for (const auto& p : parts) c.append(p);
  return c;
}

std::string circuit_id(int prep, int meas, int gate, int power, const std::vector<GstGate>& gates) {
  if (gate < 0 || power == 0) return fmt::format("p{:02d}_m{:02d}", prep, meas);
  return fmt::format("p{:02d}_m{:02d}_{}^{}", prep, meas, gates[gate].name, power);
}

}  // namespace

FiducialSet gst_fiducials() {
  FiducialSet f;
  f.prep = {
      {},
      {X(0)},
      {X(0), Z(1)},
      {X(0), X(0)},
      {X(0), X(0), X(1)},
      {X(0), X(0), X(1), Z(2)},
      {X(0), X(1), X(1)},
      {X(0), Z(1), X(1), X(1)},
      {X(0), X(0), X(1), X(1)},
      {X(0), X(1), X(1), X(2), X(2)},
      {X(0), Z(1), X(1), X(1), X(2), X(2)},
      {X(0), X(0), X(1), X(2), X(2)},
      {X(0), X(0), X(1), Z(2), X(2), X(2)},
      {X(0), X(0), X(1), X(1), X(2)},
      {X(0), X(0), X(1), X(1), X(2), Z(3)},
      {X(0), X(0), X(1), X(1), X(2), X(2)},
  };
  // Measurement rows are built from a virtual-qubit SWAP block and two
  // local rotation blocks.
  const QuditCircuit swap_blk{X(1), X(1), Z(1), Z(2)};
  const QuditCircuit y_blk{Z(1), Z(3), X(0), X(2)};
  const QuditCircuit x_blk{X(0), X(2)};
  f.meas = {
      {},
      y_blk,
      x_blk,
      concat({swap_blk, y_blk, swap_blk}),
      concat({swap_blk, y_blk, swap_blk, y_blk}),
      concat({swap_blk, y_blk, swap_blk, x_blk}),
      concat({swap_blk, x_blk, swap_blk}),
      concat({swap_blk, x_blk, swap_blk, y_blk}),
      concat({swap_blk, x_blk, swap_blk, x_blk}),
  };
  return f;
}

std::vector<GstGate> gst_gate_set() {
  return {{"X01", X(0)}, {"X12", X(1)}, {"X23", X(2)}, {"Z1", Z(1)}, {"Z2", Z(2)}, {"Z3", Z(3)}};
}

std::vector<GstCircuit> gst_circuits(const std::vector<GstGate>& gates, const FiducialSet& fid,
                                     const std::vector<int>& powers) {
  std::vector<GstCircuit> out;
  for (int k : powers) {
    if (k < 0) throw InvalidArgument("germ power must be nonnegative");
    const int ngates = k == 0 ? 1 : static_cast<int>(gates.size());
    for (int g = 0; g < ngates; ++g) {
      for (std::size_t m = 0; m < fid.meas.size(); ++m) {
        for (std::size_t p = 0; p < fid.prep.size(); ++p) {
          GstCircuit c;
          c.prep = static_cast<int>(p);
          c.meas = static_cast<int>(m);
          c.gate = k == 0 ? -1 : g;
          c.power = k;
          c.circuit = fid.prep[p];
          for (int r = 0; r < k; ++r) c.circuit.push_back(gates[g].gate);
          c.circuit.append(fid.meas[m]);
          c.id = circuit_id(c.prep, c.meas, c.gate, k, gates);
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

GstDataset simulate_gst(const std::vector<GstCircuit>& circuits, const NoisyDevice& device, long shots,
                        std::uint64_t seed) {
  if (shots < 0) throw InvalidArgument("GST shots must be nonnegative");
  GstDataset data;
  std::uint64_t n = 0;
  for (const auto& c : circuits) {
    const Probabilities readout = device.run(c.circuit);
    std::array<double, 4> row{};
    if (shots == 0) {
      const Probabilities p = misclassify(readout, device.noise().misclassification);
      for (int i = 0; i < 4; ++i) row[i] = p[i];
    } else {
      Rng rng(derive_seed(seed, {n}));
      const Counts k = device.sample(readout, shots, rng);
      for (int i = 0; i < 4; ++i) row[i] = static_cast<double>(k[i]);
    }
    data[c.id] = row;
    ++n;
  }
  return data;
}

void write_gst_dataset_csv(const std::string& path, const GstDataset& data) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << "circuit_id,n0,n1,n2,n3\n";
  for (const auto& [id, row] : data)
    out << fmt::format("{},{},{},{},{}\n", id, row[0], row[1], row[2], row[3]);
}

GstDataset read_gst_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("circuit_id,n0,n1,n2,n3", 0) != 0)
    throw InvalidArgument(path + ": expected header circuit_id,n0,n1,n2,n3");
  GstDataset data;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string id, field;
    std::getline(ss, id, ',');
    std::array<double, 4> row{};
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(ss, field, ',')) throw InvalidArgument(fmt::format("{}:{}: expected 5 fields", path, lineno));
      try {
        row[i] = std::stod(field);
      } catch (const std::exception&) {
        throw InvalidArgument(fmt::format("{}:{}: bad count '{}'", path, lineno, field));
      }
      if (row[i] < 0) throw InvalidArgument(fmt::format("{}:{}: negative count", path, lineno));
    }
    data[id] = row;
  }
  return data;
}

double GstEstimate::state_infidelity() const { return 1.0 - state_from_vector(rho)(0, 0).real(); }

double GstEstimate::gate_infidelity(std::size_t k, const std::vector<GstGate>& targets) const {
  return avg_gate_infidelity(gates.at(k), ptm_of_unitary(gate_unitary(targets.at(k).gate)));
}

namespace {

using DesignMatrix = Eigen::Matrix<double, Eigen::Dynamic, 16>;

DesignMatrix design(const GstDataset& data, const FiducialSet& fid, int gate, const std::vector<GstGate>& gates) {
  const int nm = static_cast<int>(fid.meas.size());
  DesignMatrix d(4 * nm, 16);
  if (fid.prep.size() != 16) throw InvalidArgument("linear inversion needs exactly 16 preparation fiducials");
  for (int m = 0; m < nm; ++m) {
    for (int p = 0; p < 16; ++p) {
      const std::string id = circuit_id(p, m, gate, gate < 0 ? 0 : 1, gates);
      const auto it = data.find(id);
      if (it == data.end()) throw InvalidArgument("GST dataset is missing circuit " + id);
      const auto& row = it->second;
      const double total = row[0] + row[1] + row[2] + row[3];
      if (total <= 0) throw InvalidArgument("GST circuit " + id + " has no counts");
      for (int o = 0; o < 4; ++o) d(4 * m + o, p) = row[o] / total;
    }
  }
  return d;
}

std::string list(const std::vector<int>& v) {
  std::string s;
  for (int i : v) s += (s.empty() ? "" : ", ") + std::to_string(i + 1);
  return s;
}

}  // namespace

GstEstimate linear_inversion_gst(const GstDataset& data, const std::vector<GstGate>& gates,
                                 const FiducialSet& fid) {
  const DesignMatrix d0 = design(data, fid, -1, gates);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d0, Eigen::ComputeFullV | Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-9 * sv[0]) ++rank;
  if (rank < 16) {
    std::vector<int> preps;
    for (int c = rank; c < 16; ++c)
      for (int p = 0; p < 16; ++p)
        if (std::abs(svd.matrixV()(p, c)) > 0.1 && std::find(preps.begin(), preps.end(), p) == preps.end())
          preps.push_back(p);
    std::sort(preps.begin(), preps.end());
    throw NumericError(fmt::format(
        "GST design matrix has rank {} < 16: preparation fiducials {{{}}} are linearly dependent "
        "under the measurement fiducials",
        rank, list(preps)));
  }
  const Eigen::MatrixXd pinv = d0.completeOrthogonalDecomposition().pseudoInverse();

  std::vector<PTM> raw(gates.size());
  for (std::size_t k = 0; k < gates.size(); ++k) raw[k] = pinv * design(data, fid, static_cast<int>(k), gates);

  // Raw frame: rho is D0^+ applied to the data of the identity preparation,
  // effects are the identity-measurement rows of D0.
  int id_prep = -1, id_meas = -1;
  for (std::size_t p = 0; p < fid.prep.size(); ++p)
    if (fid.prep[p].empty()) id_prep = static_cast<int>(p);
  for (std::size_t m = 0; m < fid.meas.size(); ++m)
    if (fid.meas[m].empty()) id_meas = static_cast<int>(m);
  if (id_prep < 0 || id_meas < 0) throw InvalidArgument("fiducial sets must contain the empty circuit");
  const PauliVector rho_raw = pinv * d0.col(id_prep);
  std::array<PauliVector, 4> eff_raw;
  for (int o = 0; o < 4; ++o) eff_raw[o] = d0.row(4 * id_meas + o).transpose();

  // Gauge: minimize sum_k ||M G_k - T_k M||^2 + sum_o ||E_o M - e_o||^2 over M.
  const int ng = static_cast<int>(gates.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(256 * ng + 64, 256);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(256 * ng + 64);
  auto col = [](int i, int j) { return i + 16 * j; };  // vec(M) column-major
  for (int k = 0; k < ng; ++k) {
    const PTM t = ptm_of_unitary(gate_unitary(gates[k].gate));
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const int row = 256 * k + col(i, j);
        for (int l = 0; l < 16; ++l) {
          a(row, col(i, l)) += raw[k](l, j);  // (M G)_ij
          a(row, col(l, j)) -= t(i, l);       // (T M)_ij
        }
      }
  }
  for (int o = 0; o < 4; ++o) {
    Mat4 proj = Mat4::Zero();
    proj(o, o) = 1.0;
    const PauliVector e = effect_vector(proj);
    for (int j = 0; j < 16; ++j) {
      const int row = 256 * ng + 16 * o + j;
      for (int l = 0; l < 16; ++l) a(row, col(l, j)) = e[l];  // (e^T M)_j
      b[row] = eff_raw[o][j];
    }
  }
  const Eigen::VectorXd m_vec = a.colPivHouseholderQr().solve(b);
  const PTM m = Eigen::Map<const PTM>(m_vec.data());
  const auto lu = m.fullPivLu();
  if (!lu.isInvertible()) throw NumericError("GST gauge transformation is singular");
  const PTM m_inv = lu.inverse();

  GstEstimate est;
  est.gauge = m;
  for (const auto& g : gates) est.gate_names.push_back(g.name);
  for (const auto& g : raw) est.gates.push_back(m * g * m_inv);
  est.rho = m * rho_raw;
  for (int o = 0; o < 4; ++o) est.effects[o] = (eff_raw[o].transpose() * m_inv).transpose();
  return est;
}

}  // namespace ququart
