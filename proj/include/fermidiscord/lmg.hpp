#pragma once

// Exact ground state of the Lipkin-Meshkov-Glick model
//   H = eps J0 - (V/2) (J+^2 + J-^2),   V = eps chi / (N - 1),   eps = 1,
// in the maximal quasispin irrep J = N/2, and the up-down orbital discord it
// implies in the Hartree-Fock and Hamiltonian bases.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "fermidiscord/two_orbital.hpp"

namespace fermidiscord {

/// The two M-parity sectors: M = -J, -J+2, ... and M = -J+1, -J+3, ...
enum class QuasispinSector { ContainsLowest = 0, Other = 1 };

/// Tridiagonal Hamiltonian restricted to one sector, rows ordered by
/// increasing M.
struct QuasispinHamiltonian {
  int n = 0;
  QuasispinSector sector = QuasispinSector::ContainsLowest;
  std::vector<double> m_values;
  Eigen::VectorXd diagonal;
  Eigen::VectorXd off_diagonal;  // <M+2|H|M>

  Eigen::MatrixXd dense() const;
};

QuasispinHamiltonian build_hamiltonian(
    int n, double chi, QuasispinSector sector = QuasispinSector::ContainsLowest);

struct QuasispinVector {
  int n = 0;
  double j = 0.0;
  QuasispinSector sector = QuasispinSector::ContainsLowest;
  std::vector<double> m_values;
  Eigen::VectorXd amplitudes;  // real, normalized, largest entry positive
  double energy = 0.0;
  double other_sector_energy = 0.0;
};

/// Lowest eigenpair over both sectors; ties within 1e-10 go to the sector
/// containing M = -J.
QuasispinVector ground_state(int n, double chi);

/// ||H v - E v|| in the state's own sector.
double residual(const QuasispinVector& gs, double chi);

/// 2 <J0> / N.
double d_parameter(const QuasispinVector& gs);

/// <J+> evaluated over the full M ladder (zero by M-parity).
double raising_expectation(const QuasispinVector& gs);

/// Mean-field deformation angle: 0 for chi <= 1, arccos(1/chi) above.
double hf_rotation_angle(double chi);

/// Two-orbital state of an up-down HF orbital pair with the same m, for an
/// exact state with occupation asymmetry d, rotated by phi. The pair holds
/// exactly one particle, so rho1 = rho4 = alpha = 0.
TwoOrbitalRDM hf_pair_rdm(double d, double phi);

struct LmgCurvePoint {
  int n = 0;
  double chi = 0.0;
  double d = 0.0;
  double discord = 0.0;
};

LmgCurvePoint discord_exact_gs_hf_pair(int n, double chi);

/// Discord between an up-down Hamiltonian pair in the HF ground state:
/// 0 for chi <= 1, h(chi) above; independent of N.
double discord_hf_gs_hamiltonian_pair(double chi);

/// One point per (n, chi), n outer.
std::vector<LmgCurvePoint> exact_curve(std::span<const int> ns,
                                       std::span<const double> chis,
                                       int threads = 0);

}  // namespace fermidiscord
