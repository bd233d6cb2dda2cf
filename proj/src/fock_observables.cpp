#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fermidiscord/errors.hpp"
#include "fermidiscord/fock.hpp"
#include "fermidiscord/lmg.hpp"

namespace fermidiscord {

namespace {

constexpr double kOracleTol = 1e-10;

void check_pair(const FockVector& v, int i, int j) {
  const int n = v.space->mode_count();
  if (i == j) throw InvalidInput("two-orbital state: orbitals must differ");
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw InvalidInput("two-orbital state: orbital index out of range");
}

std::vector<ModeOperator> concat(std::initializer_list<std::span<const ModeOperator>> parts) {
  std::vector<ModeOperator> out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

DensitySet extract_densities(const FockVector& v) {
  const int n = v.space->mode_count();
  DensitySet d;
  d.omega = n;
  d.gamma = Eigen::MatrixXcd::Zero(n, n);
  d.kappa = Eigen::MatrixXcd::Zero(n, n);
  d.two_body_diag = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::array<ModeOperator, 2> g{cdag(j), c(i)};
      d.gamma(i, j) = expectation(v, g);
      if (i == j) continue;
      const std::array<ModeOperator, 2> k{c(j), c(i)};
      d.kappa(i, j) = expectation(v, k);
      const std::array<ModeOperator, 4> t{cdag(i), cdag(j), c(j), c(i)};
      d.two_body_diag(i, j) = expectation(v, t).real();
    }
  }
  return d;
}

Eigen::Matrix4cd two_orbital_matrix_direct(const FockVector& v, int i, int j) {
  check_pair(v, i, j);
  // Creation strings for |00>, |01>, |10>, |11> and their adjoints.
  const std::array<std::vector<ModeOperator>, 4> create{
      std::vector<ModeOperator>{}, {cdag(j)}, {cdag(i)}, {cdag(j), cdag(i)}};
  const std::array<std::vector<ModeOperator>, 4> destroy{
      std::vector<ModeOperator>{}, {c(j)}, {c(i)}, {c(i), c(j)}};
  const std::array<ModeOperator, 4> vacuum_projector{c(i), cdag(i), c(j), cdag(j)};

  Eigen::Matrix4cd rho;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      // rho(a, b) = <a| rho |b> = < |b><a| >
      const auto ops = concat({create[static_cast<std::size_t>(b)], vacuum_projector,
                               destroy[static_cast<std::size_t>(a)]});
      rho(a, b) = expectation(v, ops);
    }
  }
  return rho;
}

TwoOrbitalRDM two_orbital_rdm_direct(const FockVector& v, int i, int j) {
  const Eigen::Matrix4cd m = two_orbital_matrix_direct(v, i, j);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const bool allowed = a == b || (a + b == 3);
      if (!allowed && std::abs(m(a, b)) > kStructuralTol)
        throw InvalidInput("two-orbital state violates the parity superselection rule");
    }
  }
  return TwoOrbitalRDM(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(),
                       m(0, 3), m(1, 2));
}

FockVector rotate_mode_pair(const FockVector& v, int a, int b, double theta) {
  check_pair(v, a, b);
  const std::array<OperatorTerm, 2> generator{
      OperatorTerm{1.0, {cdag(a), c(b)}}, OperatorTerm{-1.0, {cdag(b), c(a)}}};
  const Eigen::VectorXcd gv = apply_terms(generator, v, *v.space);
  Eigen::VectorXcd out = v.amplitudes + std::sin(theta) * gv;
  const Bitstring ma = Bitstring{1} << a, mb = Bitstring{1} << b;
  const auto& basis = v.space->basis();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const bool single = ((basis[k] & ma) != 0) != ((basis[k] & mb) != 0);
    if (single)
      out(static_cast<Eigen::Index>(k)) +=
          (std::cos(theta) - 1.0) * v.amplitudes(static_cast<Eigen::Index>(k));
  }
  return make_fock_vector(v.space, std::move(out));
}

Eigen::MatrixXcd two_body_density(const FockVector& v) {
  const int n = v.space->mode_count();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n * n, n * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (r == s) continue;
          const std::array<ModeOperator, 4> ops{cdag(p), cdag(q), c(r), c(s)};
          d(p * n + q, r * n + s) = expectation(v, ops);
        }
    }
  return d;
}

DensitySet densities_in_basis(const FockVector& v, const Eigen::MatrixXcd& w) {
  const int n = v.space->mode_count();
  if (w.rows() != n || w.cols() != n)
    throw InvalidInput("densities_in_basis: basis shape mismatch");
  if ((w.adjoint() * w - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() >
      kOracleTol)
    throw InvalidInput("densities_in_basis: basis is not unitary");

  const DensitySet base = extract_densities(v);
  const OneBodyDensities one = rotate_one_body(base.gamma, base.kappa, w);
  const Eigen::MatrixXcd d2 = two_body_density(v);

  DensitySet out;
  out.omega = n;
  out.gamma = one.gamma;
  out.kappa = one.kappa;
  out.two_body_diag = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXcd x(n * n), y(n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      if (k == l) continue;
      // <b_k^dag b_l^dag b_l b_k> = sum W_pk W_ql W*_rl W*_sk D(pq, rs)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          x(p * n + q) = w(p, k) * w(q, l);
          y(p * n + q) = std::conj(w(p, l) * w(q, k));
        }
      out.two_body_diag(k, l) = (x.transpose() * d2 * y).value().real();
    }
  return out;
}

OracleReport verify_agassi(const AgassiModelSpec& spec) {
  spec.validate();
  if (spec.omega > kMaxOracleOmega) {
    std::ostringstream msg;
    msg << "oracle size guard: omega " << spec.omega << " exceeds " << kMaxOracleOmega;
    throw InvalidInput(msg.str());
  }
  const EigenPair gs = exact_ground_state(build_agassi(spec));
  const DensitySet d = extract_densities(gs.state);

  OracleReport r;
  r.model = "agassi";
  r.omega = spec.omega;
  r.chi = spec.chi;
  r.sigma = spec.sigma;
  r.energy = gs.energy;
  r.residual = gs.residual;
  for (int i = 0; i < d.omega; ++i)
    for (int j = 0; j < d.omega; ++j)
      if (i != j) r.max_offdiag_gamma = std::max(r.max_offdiag_gamma, std::abs(d.gamma(i, j)));
  r.max_kappa = d.kappa.cwiseAbs().maxCoeff();
  for (int slot = 0; slot < spec.omega; ++slot) {
    for (int s : {-1, 1}) {
      const int here = two_level_mode(slot, s);
      r.max_updown_gamma =
          std::max(r.max_updown_gamma, std::abs(d.gamma(here, two_level_mode(slot, -s))));
      r.max_pairing_gamma = std::max(
          r.max_pairing_gamma, std::abs(d.gamma(here, two_level_mode(slot ^ 1, s))));
    }
  }
  r.max_pair_discord = all_pairs_discord(d, 1).maxCoeff();
  r.pass = r.max_offdiag_gamma <= kOracleTol && r.max_kappa <= kOracleTol &&
           r.max_pair_discord <= kOracleTol;
  return r;
}

OracleReport verify_lmg(int n, double chi) {
  if (n > kMaxOracleOmega) {
    std::ostringstream msg;
    msg << "oracle size guard: omega " << n << " exceeds " << kMaxOracleOmega;
    throw InvalidInput(msg.str());
  }
  const EigenPair gs = exact_ground_state(build_lmg(n, chi));
  const DensitySet d = extract_densities(gs.state);
  const QuasispinVector qs = ground_state(n, chi);

  OracleReport r;
  r.model = "lmg";
  r.omega = n;
  r.chi = chi;
  r.energy = gs.energy;
  r.residual = gs.residual;
  r.quasispin_energy = qs.energy;
  for (int i = 0; i < d.omega; ++i)
    for (int j = 0; j < d.omega; ++j)
      if (i != j) r.max_offdiag_gamma = std::max(r.max_offdiag_gamma, std::abs(d.gamma(i, j)));
  r.max_kappa = d.kappa.cwiseAbs().maxCoeff();
  r.max_pair_discord = all_pairs_discord(d, 1).maxCoeff();

  const int lower = two_level_mode(0, -1), upper = two_level_mode(0, 1);
  const double phi = hf_rotation_angle(chi);
  const FockVector hf = rotate_mode_pair(gs.state, lower, upper, -0.5 * phi);
  r.hf_discord_fock = discord(two_orbital_rdm_direct(hf, upper, lower));
  r.hf_discord_quasispin = discord_exact_gs_hf_pair(n, chi).discord;

  r.pass = std::abs(r.energy - r.quasispin_energy) <= kOracleTol &&
           std::abs(r.hf_discord_fock - r.hf_discord_quasispin) <= kOracleTol &&
           r.max_offdiag_gamma <= kOracleTol && r.max_pair_discord <= kOracleTol;
  return r;
}

std::string to_json(const OracleReport& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model;
  j["omega"] = r.omega;
  j["chi"] = r.chi;
  j["sigma"] = r.sigma;
  j["energy"] = r.energy;
  j["max_offdiag_gamma"] = r.max_offdiag_gamma;
  j["max_kappa"] = r.max_kappa;
  j["max_pair_discord"] = r.max_pair_discord;
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

}  // namespace fermidiscord
