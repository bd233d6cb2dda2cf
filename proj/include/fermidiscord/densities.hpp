#pragma once

// One-body density matrix, pairing tensor and two-body diagonal of a fermionic
// state over Omega orbitals, and the operations built on them.
//
// Index conventions:
//   gamma(i, j)         = <a_j^dag a_i>
//   kappa(i, j)         = <a_j a_i>
//   two_body_diag(i, j) = <a_i^dag a_j^dag a_j a_i>,  two_body_diag(i, i) = 0

#include <vector>

#include <Eigen/Core>

#include "fermidiscord/two_orbital.hpp"

namespace fermidiscord {

struct DensitySet {
  int omega = 0;
  Eigen::MatrixXcd gamma;
  Eigen::MatrixXcd kappa;
  Eigen::MatrixXd two_body_diag;
};

struct SymmetryResiduals {
  double gamma_hermiticity = 0.0;
  double kappa_antisymmetry = 0.0;
  double two_body_symmetry = 0.0;
};

/// Projects gamma onto its Hermitian part, kappa onto its antisymmetric part
/// and the two-body diagonal onto its symmetric part (diagonal zeroed).
/// Returns the residuals removed; throws InvalidInput if any exceeds 1e-8.
SymmetryResiduals symmetrize(DensitySet& d);

/// Checks shapes, gamma spectrum in [-1e-10, 1 + 1e-10] and two-body bounds.
/// Throws InvalidInput on violation.
void validate(const DensitySet& d);

/// Symmetrizes and validates in one step.
DensitySet make_density_set(Eigen::MatrixXcd gamma, Eigen::MatrixXcd kappa,
                            Eigen::MatrixXd two_body_diag);

TwoOrbitalRDM assemble_rdm(const DensitySet& d, int i, int j);

/// Wick factorisation of the two-body diagonal for a quasiparticle vacuum (or
/// any Gaussian state): gamma_ii gamma_jj + |kappa_ij|^2 - |gamma_ij|^2.
Eigen::MatrixXd qp_vacuum_two_body(const Eigen::MatrixXcd& gamma,
                                   const Eigen::MatrixXcd& kappa);

struct NaturalOccupations {
  Eigen::VectorXd p;        // descending
  Eigen::MatrixXcd basis;   // columns are natural orbitals
};

/// Eigendecomposition of gamma. Each column is phase-fixed so that its
/// largest-magnitude component (first one on ties) is real positive; within a
/// degenerate group columns are ordered by that pivot's row index.
NaturalOccupations natural_orbitals(const Eigen::MatrixXcd& gamma);

struct OneBodyDensities {
  Eigen::MatrixXcd gamma;
  Eigen::MatrixXcd kappa;
};

/// gamma' = W^dag gamma W and kappa' = W^dag kappa W^*, where column l of W
/// holds the amplitudes of new orbital l on the old ones.
OneBodyDensities rotate_one_body(const Eigen::MatrixXcd& gamma,
                                 const Eigen::MatrixXcd& kappa,
                                 const Eigen::MatrixXcd& w);

/// beta_k^dag = sum_l U(l, k) c_l^dag + V(l, k) c_l.
struct BogoliubovTransform {
  Eigen::MatrixXcd u;
  Eigen::MatrixXcd v;
};

/// Max absolute deviation over the four canonicity relations
/// U^dag U + V^dag V = I, U U^dag + V^* V^T = I,
/// U^T V + V^T U = 0, U V^dag + V^* U^T = 0.
double check_canonical(const BogoliubovTransform& t);

/// Product of the doubled-space matrices [[U, V^*], [V, U^*]] of a and b.
BogoliubovTransform compose(const BogoliubovTransform& a,
                            const BogoliubovTransform& b);

/// Densities in the transformed basis of a state that is diagonal in the
/// natural basis with occupations p and no pairing there.
OneBodyDensities transform_densities(const BogoliubovTransform& t,
                                     const Eigen::VectorXd& p);

/// Sum of single-orbital binary entropies of the diagonal of gamma.
double overall_entropy(const Eigen::MatrixXcd& gamma);

/// -sum_l p_l ln p_l over the natural occupations.
double one_body_entropy(const Eigen::MatrixXcd& gamma);

/// Symmetric Omega x Omega matrix of pairwise discords, zero diagonal.
/// threads <= 0 uses all hardware threads.
Eigen::MatrixXd all_pairs_discord(const DensitySet& d, int threads = 0);

}  // namespace fermidiscord
