#include "ququart/vqe/hamiltonian.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "ququart/compiler/embedding.hpp"
#include "ququart/util/log.hpp"

namespace ququart {

void HamiltonianSpec::validate() const {
  for (double v : {r, g0, g_iz, g_zi, g_zz, g_xx, g_yy})
    if (!std::isfinite(v)) throw InvalidArgument(fmt::format("Hamiltonian at R={}: non-finite coefficient", r));
  if (std::abs(g_xx - g_yy) > 1e-6)
    warn(fmt::format("Hamiltonian at R={}: g_XX={} and g_YY={} differ", r, g_xx, g_yy));
}

Mat4 HamiltonianSpec::matrix() const {
  return g0 * Mat4::Identity() + g_iz * pauli_string("IZ") + g_zi * pauli_string("ZI") +
         g_zz * pauli_string("ZZ") + g_xx * pauli_string("XX") + g_yy * pauli_string("YY");
}

double exact_ground_energy(const HamiltonianSpec& h) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

const HamiltonianSpec& HamiltonianTable::at(double r, double tol) const {
  for (const auto& row : rows)
    if (std::abs(row.r - r) <= tol) return row;
  throw InvalidArgument(fmt::format("R = {} is not in the coefficient table; interpolation is not supported", r));
}

HamiltonianTable read_hamiltonian_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read Hamiltonian table " + path);
  HamiltonianTable t;
  std::string line;
  int lineno = 0;
  bool have_columns = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.header.push_back(line);
      continue;
    }
    if (!have_columns) {
      if (line.rfind("R,g0,g_IZ,g_ZI,g_ZZ,g_XX,g_YY", 0) != 0)
        throw InvalidArgument(fmt::format("{}:{}: expected column header R,g0,g_IZ,g_ZI,g_ZZ,g_XX,g_YY", path, lineno));
      have_columns = true;
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    std::vector<double> v;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(field, &used));
        if (used != field.size() && field.find_first_not_of(" \t\r", used) != std::string::npos)
          throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw InvalidArgument(fmt::format("{}:{}: bad number '{}'", path, lineno, field));
      }
    }
    if (v.size() != 7) throw InvalidArgument(fmt::format("{}:{}: expected 7 columns, got {}", path, lineno, v.size()));
    HamiltonianSpec h{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    h.validate();
    t.rows.push_back(h);
  }
  if (!have_columns) throw InvalidArgument(path + ": no column header");
  if (t.rows.empty()) throw InvalidArgument(path + ": no rows");
  return t;
}

void write_hamiltonian_csv(const std::string& path, const HamiltonianTable& table) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  for (const auto& h : table.header) out << h << '\n';
  out << "R,g0,g_IZ,g_ZI,g_ZZ,g_XX,g_YY\n";
  for (const auto& r : table.rows)
    out << fmt::format("{},{},{},{},{},{},{}\n", r.r, r.g0, r.g_iz, r.g_zi, r.g_zz, r.g_xx, r.g_yy);
}

std::string default_hamiltonian_table_path() { return std::string(QUQUART_DATA_DIR) + "/h2_sto3g_bk.csv"; }

}  // namespace ququart
