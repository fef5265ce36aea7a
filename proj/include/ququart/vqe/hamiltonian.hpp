#pragma once

#include <string>
#include <vector>

#include "ququart/types.hpp"

namespace ququart {

/// Two-qubit H2 Hamiltonian g0 II + g_IZ IZ + g_ZI ZI + g_ZZ ZZ + g_XX XX + g_YY YY
/// in Hartree, with the first Pauli letter on qubit B.
struct HamiltonianSpec {
  double r = 0.0;  // bond distance in Angstrom
  double g0 = 0.0, g_iz = 0.0, g_zi = 0.0, g_zz = 0.0, g_xx = 0.0, g_yy = 0.0;

  /// Finite coefficients; warns when g_XX and g_YY differ by more than 1e-6.
  void validate() const;
  Mat4 matrix() const;
};

double exact_ground_energy(const HamiltonianSpec& h);

struct HamiltonianTable {
  /// Leading `#` lines of the source file.
  std::vector<std::string> header;
  std::vector<HamiltonianSpec> rows;

  /// Row whose R matches within `tol`; throws InvalidArgument otherwise
  /// (no interpolation between tabulated distances).
  const HamiltonianSpec& at(double r, double tol = 1e-9) const;
};

/// CSV with header `R,g0,g_IZ,g_ZI,g_ZZ,g_XX,g_YY` after optional `#` comment lines.
HamiltonianTable read_hamiltonian_csv(const std::string& path);
void write_hamiltonian_csv(const std::string& path, const HamiltonianTable& table);

/// Table shipped with the repository.
std::string default_hamiltonian_table_path();

}  // namespace ququart
