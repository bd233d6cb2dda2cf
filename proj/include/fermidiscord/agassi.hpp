#pragma once

// Mean-field (HFB) ground state of the Agassi model: two levels sigma = +-1,
// each Omega-fold degenerate (m = +-1, ..., +-Omega/2), filled with Omega
// fermions, with monopole (V) and pairing (g) interactions.
//
// Orbitals are flattened m-major with m ordered (+1, -1, +2, -2, ...) and
// sigma = -1 before sigma = +1 inside each m:
//   index(sigma, m) = 2 * slot(m) + (sigma == +1),
//   slot(m)         = 2 * (|m| - 1) + (m < 0).

#include <string>
#include <vector>

#include "fermidiscord/densities.hpp"
#include "fermidiscord/grid.hpp"

namespace fermidiscord {

struct AgassiModelSpec {
  int omega = 20;
  double epsilon = 1.0;
  double chi = 0.0;    // (Omega - 1) V / epsilon
  double sigma = 0.0;  // (Omega - 1) g / epsilon

  /// Sigma + V / epsilon = Sigma + chi / (Omega - 1).
  double sigma0() const { return sigma + chi / (omega - 1); }
  double monopole_strength() const { return chi * epsilon / (omega - 1); }
  double pairing_strength() const { return sigma * epsilon / (omega - 1); }

  /// Throws InvalidInput unless Omega is even and >= 4, epsilon > 0 and
  /// chi, sigma >= 0 (all finite).
  void validate() const;
};

enum class Phase { SphericalHF, DeformedHF, BCS };

std::string to_string(Phase p);

struct PhaseSolution {
  Phase phase = Phase::SphericalHF;
  double phi = 0.0;    // cos(phi) = 1 / chi in the deformed phase
  double alpha = 0.0;  // cos(alpha) = 1 / sigma0 in the BCS phase
};

struct OrbitalLabel {
  int sigma = -1;  // +1 upper level, -1 lower level
  int m = 1;       // +-1, ..., +-Omega/2

  friend bool operator==(const OrbitalLabel&, const OrbitalLabel&) = default;
};

int m_slot(int m);
int slot_m(int slot);
int orbital_index(OrbitalLabel label, int omega);
OrbitalLabel orbital_label(int index, int omega);

/// Deformed if chi > 1 and chi >= sigma0; BCS if sigma0 > 1 and sigma0 > chi;
/// spherical otherwise. The chi == sigma0 > 1 line therefore resolves to the
/// deformed phase and chi = 1 / sigma0 = 1 to the spherical one.
PhaseSolution classify_phase(const AgassiModelSpec& spec);

/// gamma block-diagonal in m with
///   gamma_{ss}  = (1 - s cos(phi) cos(alpha)) / 2,
///   gamma_{s,-s} = -sin(phi) cos(alpha) / 2,
/// kappa_{sm, s'm'} = sgn(m) sin(alpha) / 2 delta_{ss'} delta_{m,-m'},
/// and the two-body diagonal from the quasiparticle-vacuum factorisation.
DensitySet hfb_densities(const AgassiModelSpec& spec);

/// Binary entropy of ((1 - 1/x)/2, (1 + 1/x)/2) for x >= 1; zero at x = 1,
/// increasing, tends to ln 2.
double discord_h(double x);

/// Pairwise discord through the density pipeline.
double discord_pair(const AgassiModelSpec& spec, OrbitalLabel a, OrbitalLabel b);

/// h(chi) for (m, s; m, -s) in the deformed phase, h(sigma0) for
/// (m, s; -m, s) in the BCS phase, zero otherwise.
double discord_pair_closed_form(const AgassiModelSpec& spec, OrbitalLabel a,
                                OrbitalLabel b);

/// Correlation report for a pair through the density pipeline.
CorrelationReport pair_report(const AgassiModelSpec& spec, OrbitalLabel a,
                              OrbitalLabel b);

struct OrderParameters {
  double rho = 0.0;    // -sin(phi) cos(alpha) / 2
  double kappa = 0.0;  // sin(alpha) / 2
};

OrderParameters order_parameters(const AgassiModelSpec& spec);

enum class PairKind { UpDown, Pairing };

PairKind parse_pair_kind(const std::string& text);
std::string to_string(PairKind k);

/// (m=1, s=+1; m=1, s=-1) for UpDown, (m=1, s=+1; m=-1, s=+1) for Pairing.
std::pair<OrbitalLabel, OrbitalLabel> representative_pair(PairKind kind);

struct ScanRow {
  double chi = 0.0;
  double sigma = 0.0;
  Phase phase = Phase::SphericalHF;
  double discord = 0.0;
  double mutual_info = 0.0;
};

/// Row-major in (chi, sigma): chi outer, sigma inner.
std::vector<ScanRow> scan_grid(int omega, const GridRange& chi,
                               const GridRange& sigma, PairKind kind,
                               int threads = 0);

}  // namespace fermidiscord
