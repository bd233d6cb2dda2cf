#pragma once

// Brute-force occupation-number engine used as an independent oracle.
//
// Mode k is bit k of a Bitstring. The basis state with occupied modes
// i1 < i2 < ... < ir is a^dag_{i1} a^dag_{i2} ... a^dag_{ir} |0>, so acting
// with a mode operator on mode k picks up (-1)^(number of occupied modes
// below k).
//
// For the two-level models, mode = 2 * slot + (sigma == +1), with slots
// ordered m = +1, -1, +2, -2, ... (see agassi.hpp).

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "fermidiscord/agassi.hpp"
#include "fermidiscord/densities.hpp"
#include "fermidiscord/two_orbital.hpp"

namespace fermidiscord {

using Bitstring = std::uint64_t;

inline constexpr int kMaxFockModes = 24;
inline constexpr std::size_t kMaxSectorDimension = 200000;

enum class ModeOp { Create, Annihilate };

struct SignedState {
  int sign = 1;
  Bitstring state = 0;
};

/// nullopt when Pauli-blocked (create on occupied) or empty (annihilate on
/// empty).
std::optional<SignedState> apply_mode_operator(ModeOp op, int mode, Bitstring state);

struct ModeOperator {
  ModeOp op;
  int mode;
};

inline ModeOperator cdag(int mode) { return {ModeOp::Create, mode}; }
inline ModeOperator c(int mode) { return {ModeOp::Annihilate, mode}; }

/// Operator product written left to right; the right-most factor acts first.
std::optional<SignedState> apply_string(std::span<const ModeOperator> ops,
                                        Bitstring state);

struct Sector {
  std::optional<int> particles;
  std::optional<int> parity;  // 0 even, 1 odd

  static Sector number(int n) { return {n, n % 2}; }
  static Sector with_parity(int p) { return {std::nullopt, p}; }
  static Sector all() { return {}; }
  bool contains(Bitstring s) const;
};

class FockSpace {
 public:
  /// Enumerates the sector basis in ascending order. Throws InvalidInput if
  /// mode_count exceeds kMaxFockModes or the sector exceeds
  /// kMaxSectorDimension.
  FockSpace(int mode_count, Sector sector);

  int mode_count() const { return mode_count_; }
  const Sector& sector() const { return sector_; }
  const std::vector<Bitstring>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  std::optional<std::size_t> index_of(Bitstring s) const;

 private:
  int mode_count_;
  Sector sector_;
  std::vector<Bitstring> basis_;
};

using FockSpacePtr = std::shared_ptr<const FockSpace>;

FockSpacePtr make_fock_space(int mode_count, Sector sector);

struct FockVector {
  FockSpacePtr space;
  Eigen::VectorXcd amplitudes;
};

/// Normalizes; throws InvalidInput on size mismatch or zero norm.
FockVector make_fock_vector(FockSpacePtr space, Eigen::VectorXcd amplitudes);
FockVector basis_vector(FockSpacePtr space, Bitstring state);

/// <v| ops |v>; components leaving the space contribute nothing.
Complex expectation(const FockVector& v, std::span<const ModeOperator> ops);

struct OperatorTerm {
  Complex coefficient;
  std::vector<ModeOperator> ops;
};

/// sum_t coefficient_t * ops_t applied to v, projected onto `target`. Throws
/// NumericalFailure if a component lands outside `target`.
Eigen::VectorXcd apply_terms(std::span<const OperatorTerm> terms,
                             const FockVector& v, const FockSpace& target);

struct SparseHermitianOperator {
  FockSpacePtr space;
  Eigen::SparseMatrix<Complex> matrix;  // both triangles stored
};

/// Assembles the matrix of sum_t terms on `space`. Throws NumericalFailure if
/// a term leaves the space or the result is not Hermitian within 1e-12.
SparseHermitianOperator build_operator(FockSpacePtr space,
                                       std::span<const OperatorTerm> terms);

inline int two_level_mode(int slot, int sigma) { return 2 * slot + (sigma > 0 ? 1 : 0); }

/// eps J0 - g sum_{s,s'} A_s^dag A_s' - (V/2) (J+^2 + J-^2) on `omega` slots.
struct TwoLevelCouplings {
  int omega = 4;
  double epsilon = 1.0;
  double monopole = 0.0;  // V
  double pairing = 0.0;   // g; requires even omega when nonzero
};

std::vector<OperatorTerm> two_level_terms(const TwoLevelCouplings& k);

/// Two-level Hamiltonian on the half-filled (N = omega) sector.
SparseHermitianOperator build_two_level(const TwoLevelCouplings& k);
SparseHermitianOperator build_agassi(const AgassiModelSpec& spec);
/// LMG with N = omega = n, V = chi / (n - 1), eps = 1.
SparseHermitianOperator build_lmg(int n, double chi);

struct EigenPair {
  double energy = 0.0;
  FockVector state;
  double residual = 0.0;
};

inline constexpr std::size_t kDenseEigenLimit = 2000;

/// Lowest eigenpair: dense Hermitian solver up to kDenseEigenLimit, Lanczos
/// (full reorthogonalization, uniform start vector) above. Phase fixed so the
/// largest-magnitude amplitude is real positive. Throws NumericalFailure when
/// the residual exceeds 1e-9.
EigenPair exact_ground_state(const SparseHermitianOperator& op);

/// gamma, kappa and two-body diagonal as operator expectation values.
DensitySet extract_densities(const FockVector& v);

/// All sixteen entries <|b><a|> of the (i, j) reduced state in the
/// (00, 01, 10, 11) basis, with |11> = a^dag_j a^dag_i |0>.
Eigen::Matrix4cd two_orbital_matrix_direct(const FockVector& v, int i, int j);
TwoOrbitalRDM two_orbital_rdm_direct(const FockVector& v, int i, int j);

/// exp(theta G) v with G = a^dag_a a_b - a^dag_b a_a. This maps
/// a^dag_a -> cos a^dag_a - sin a^dag_b and a^dag_b -> cos a^dag_b + sin a^dag_a,
/// so amplitudes in the rotated orbital basis are obtained with -theta.
FockVector rotate_mode_pair(const FockVector& v, int a, int b, double theta);

/// D(p * n + q, r * n + s) = <a^dag_p a^dag_q a_r a_s>.
Eigen::MatrixXcd two_body_density(const FockVector& v);

/// Densities in the orbital basis given by the columns of w (unitary),
/// including the transformed two-body diagonal.
DensitySet densities_in_basis(const FockVector& v, const Eigen::MatrixXcd& w);

// ---------------------------------------------------------------------------
// Multipartite discord over a chain of orbitals.

inline constexpr int kMaxMultipartiteModes = 8;

/// Dense density matrix over all 2^n occupation states (index = bitstring).
Eigen::MatrixXcd full_density_matrix(const FockVector& v);

/// Relabels modes so that new mode p is old mode ordering[p], including the
/// fermionic reordering signs.
Eigen::MatrixXcd reorder_modes(const Eigen::MatrixXcd& rho, int mode_count,
                               std::span<const int> ordering);

struct MultipartiteResult {
  double total_correlation = 0.0;      // sum of chain mutual informations + S
  double classical_correlation = 0.0;  // sum of chain J terms + S
  double discord = 0.0;                // difference of the two
  double entropy = 0.0;                // von Neumann entropy of the state
  std::vector<double> mutual_terms;    // I(k; k+1, ..., n-1)
  std::vector<double> classical_terms; // J(k; k+1, ..., n-1)
};

/// Chain evaluation with occupation-basis measurements on each tail
/// subsystem. `ordering` lists the orbitals from first to last (empty means
/// 0, 1, ..., n-1).
MultipartiteResult multipartite_discord(const Eigen::MatrixXcd& rho, int mode_count,
                                        std::span<const int> ordering = {});
MultipartiteResult multipartite_discord(const FockVector& v,
                                        std::span<const int> ordering = {});

// ---------------------------------------------------------------------------
// Oracle verification reports.

inline constexpr int kMaxOracleOmega = 8;

struct OracleReport {
  std::string model;
  int omega = 0;
  double chi = 0.0;
  double sigma = 0.0;
  double energy = 0.0;
  double max_offdiag_gamma = 0.0;
  double max_kappa = 0.0;
  double max_pair_discord = 0.0;
  // Detail for the Agassi check.
  double max_updown_gamma = 0.0;   // |gamma_{sm, -sm}|
  double max_pairing_gamma = 0.0;  // |gamma_{sm, s-m}|
  // Detail for the LMG check.
  double quasispin_energy = 0.0;
  double hf_discord_fock = 0.0;
  double hf_discord_quasispin = 0.0;
  double residual = 0.0;
  bool pass = false;
};

/// Exact Agassi ground state on the N = Omega sector; all pairwise
/// Hamiltonian-orbital discords and the off-diagonal one-body elements should
/// vanish. Omega must be even and <= 8.
OracleReport verify_agassi(const AgassiModelSpec& spec);

/// Fock-space LMG at N = Omega = n against the quasispin solution: energies,
/// up-down HF-pair discord, and vanishing Hamiltonian-pair discord.
OracleReport verify_lmg(int n, double chi);

std::string to_json(const OracleReport& r);

}  // namespace fermidiscord
