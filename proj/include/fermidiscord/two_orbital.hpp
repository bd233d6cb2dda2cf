#pragma once

// Two-orbital correlation measures for fermionic states obeying the
// number-parity superselection rule.
//
// Under that rule the reduced state of orbitals (i, j) in the occupation basis
// |n_i n_j> = (|00>, |01>, |10>, |11>) has only two coherences: alpha between
// |00> and |11>, and gamma_off between |01> and |10>. The only admissible
// single-orbital measurement is the occupation projector pair, so the discord
// needs no optimisation: it is the entropy gained by dephasing.
//
// All entropies are in nats.

#include <array>
#include <complex>
#include <span>

#include <Eigen/Core>

namespace fermidiscord {

using Complex = std::complex<double>;

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kCrossCheckTol = 1e-10;

/// -sum p ln p with 0 ln 0 = 0. Entries in [-1e-12, 0) are treated as zero.
/// Throws InvalidInput for entries below -1e-9 or a sum off by more than 1e-6.
double shannon_entropy(std::span<const double> p);

/// Binary entropy H(p, 1-p) in nats.
double binary_entropy(double p);

class TwoOrbitalRDM {
 public:
  /// Validates the parity-block structure: populations sum to one, are
  /// non-negative (tiny negatives clamped) and both 2x2 blocks are PSD.
  /// Throws InvalidInput otherwise.
  TwoOrbitalRDM(double rho1, double rho2, double rho3, double rho4,
                Complex alpha = {}, Complex gamma_off = {});

  double rho1() const { return rho_[0]; }
  double rho2() const { return rho_[1]; }
  double rho3() const { return rho_[2]; }
  double rho4() const { return rho_[3]; }
  const std::array<double, 4>& populations() const { return rho_; }
  Complex alpha() const { return alpha_; }
  Complex gamma_off() const { return gamma_off_; }

  /// Dense 4x4 matrix in the (00, 01, 10, 11) basis.
  Eigen::Matrix4cd matrix() const;

  /// Marginal of orbital i: (empty, occupied) = (rho1 + rho2, rho3 + rho4).
  std::array<double, 2> marginal_i() const;
  /// Marginal of orbital j: (rho1 + rho3, rho2 + rho4).
  std::array<double, 2> marginal_j() const;

 private:
  std::array<double, 4> rho_;
  Complex alpha_;
  Complex gamma_off_;
};

/// Closed-form spectrum (lambda0, lambda1) of the {00, 11} block and
/// (lambda2, lambda3) of the {01, 10} block, each pair in descending order.
std::array<double, 4> eigenvalues(const TwoOrbitalRDM& rdm);

/// The dephasing channel: drops both coherences.
TwoOrbitalRDM dephase(const TwoOrbitalRDM& rdm);

/// Double-sided occupation measurement sum_{k,l} (P_k x P_l) rho (P_k x P_l)
/// applied to an arbitrary 4x4 matrix in the (00, 01, 10, 11) basis.
Eigen::Matrix4cd occupation_measurement(const Eigen::Matrix4cd& rho);

double entropy(const TwoOrbitalRDM& rdm);
double dephased_entropy(const TwoOrbitalRDM& rdm);

/// S(Z(rho)) - S(rho). Coincides with the measurement-induced disturbance.
double discord(const TwoOrbitalRDM& rdm);
double mutual_information(const TwoOrbitalRDM& rdm);
/// S(rho_i) + S(rho_j) - S(Z(rho)); the occupation measurement on j is the
/// only one allowed, so no maximisation is needed.
double classical_correlation(const TwoOrbitalRDM& rdm);

struct CorrelationReport {
  double discord = 0.0;
  double mutual_info = 0.0;
  double classical_corr = 0.0;
  double entropy_ab = 0.0;
  double entropy_dephased = 0.0;
  double entropy_a = 0.0;
  double entropy_b = 0.0;
};

CorrelationReport report(const TwoOrbitalRDM& rdm);

}  // namespace fermidiscord
