#include "fermidiscord/lmg.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fermidiscord/agassi.hpp"
#include "fermidiscord/errors.hpp"
#include "fermidiscord/grid.hpp"

namespace fermidiscord {

namespace {

constexpr double kSectorTieTol = 1e-10;

void check_inputs(int n, double chi) {
  if (n < 2) throw InvalidInput("LMG: particle number must be >= 2");
  if (!(chi >= 0.0) || !std::isfinite(chi))
    throw InvalidInput("LMG: chi must be finite and >= 0");
}

// <M+1|J+|M>
double ladder(double j, double m) { return std::sqrt((j - m) * (j + m + 1.0)); }

struct SectorSolution {
  QuasispinHamiltonian h;
  double energy;
  Eigen::VectorXd vector;
};

SectorSolution solve_sector(int n, double chi, QuasispinSector sector) {
  QuasispinHamiltonian h = build_hamiltonian(n, chi, sector);
  const auto dim = h.diagonal.size();
  if (dim == 1) {
    const double e = h.diagonal(0);
    return {std::move(h), e, Eigen::VectorXd::Ones(1)};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(h.diagonal, h.off_diagonal, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("LMG: tridiagonal eigensolver did not converge");
  const double e0 = es.eigenvalues()(0);
  Eigen::VectorXd v = es.eigenvectors().col(0);
  return {std::move(h), e0, v};
}

}  // namespace

Eigen::MatrixXd QuasispinHamiltonian::dense() const {
  const auto dim = diagonal.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  out.diagonal() = diagonal;
  for (Eigen::Index k = 0; k + 1 < dim; ++k) {
    out(k, k + 1) = off_diagonal(k);
    out(k + 1, k) = off_diagonal(k);
  }
  return out;
}

QuasispinHamiltonian build_hamiltonian(int n, double chi, QuasispinSector sector) {
  check_inputs(n, chi);
  const double j = 0.5 * n;
  const double v = chi / (n - 1);
  QuasispinHamiltonian h;
  h.n = n;
  h.sector = sector;
  for (double m = -j + static_cast<int>(sector); m <= j + 1e-9; m += 2.0)
    h.m_values.push_back(m);
  const auto dim = static_cast<Eigen::Index>(h.m_values.size());
  h.diagonal.resize(dim);
  h.off_diagonal.resize(dim > 0 ? dim - 1 : 0);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double m = h.m_values[static_cast<std::size_t>(k)];
    h.diagonal(k) = m;
    if (k + 1 < dim) h.off_diagonal(k) = -0.5 * v * ladder(j, m) * ladder(j, m + 1.0);
  }
  return h;
}

QuasispinVector ground_state(int n, double chi) {
  SectorSolution low = solve_sector(n, chi, QuasispinSector::ContainsLowest);
  SectorSolution other = solve_sector(n, chi, QuasispinSector::Other);
  const bool other_wins = other.energy < low.energy - kSectorTieTol;
  SectorSolution& win = other_wins ? other : low;

  QuasispinVector gs;
  gs.n = n;
  gs.j = 0.5 * n;
  gs.sector = win.h.sector;
  gs.m_values = win.h.m_values;
  gs.amplitudes = win.vector.normalized();
  gs.energy = win.energy;
  gs.other_sector_energy = other_wins ? low.energy : other.energy;

  Eigen::Index pivot = 0;
  for (Eigen::Index k = 1; k < gs.amplitudes.size(); ++k) {
    if (std::abs(gs.amplitudes(k)) > std::abs(gs.amplitudes(pivot)) + 1e-12) pivot = k;
  }
  if (gs.amplitudes(pivot) < 0.0) gs.amplitudes = -gs.amplitudes;
  return gs;
}

double residual(const QuasispinVector& gs, double chi) {
  const Eigen::MatrixXd h = build_hamiltonian(gs.n, chi, gs.sector).dense();
  return (h * gs.amplitudes - gs.energy * gs.amplitudes).norm();
}

double d_parameter(const QuasispinVector& gs) {
  double j0 = 0.0;
  for (Eigen::Index k = 0; k < gs.amplitudes.size(); ++k)
    j0 += gs.m_values[static_cast<std::size_t>(k)] * gs.amplitudes(k) * gs.amplitudes(k);
  return 2.0 * j0 / gs.n;
}

double raising_expectation(const QuasispinVector& gs) {
  // Embed in the full ladder M = -J, ..., J (index M + J).
  const int dim = gs.n + 1;
  Eigen::VectorXd full = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index k = 0; k < gs.amplitudes.size(); ++k) {
    const auto idx = static_cast<Eigen::Index>(
        std::lround(gs.m_values[static_cast<std::size_t>(k)] + gs.j));
    full(idx) = gs.amplitudes(k);
  }
  double value = 0.0;
  for (int idx = 0; idx + 1 < dim; ++idx) {
    const double m = idx - gs.j;
    value += full(idx + 1) * ladder(gs.j, m) * full(idx);
  }
  return value;
}

double hf_rotation_angle(double chi) {
  if (!(chi >= 0.0) || !std::isfinite(chi))
    throw InvalidInput("hf_rotation_angle: chi must be finite and >= 0");
  return chi <= 1.0 ? 0.0 : std::acos(1.0 / chi);
}

TwoOrbitalRDM hf_pair_rdm(double d, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  // i = upper HF orbital, j = lower HF orbital of the same m.
  return TwoOrbitalRDM(0.0, 0.5 * (1.0 - d * c), 0.5 * (1.0 + d * c), 0.0, 0.0,
                       -0.5 * s * d);
}

LmgCurvePoint discord_exact_gs_hf_pair(int n, double chi) {
  if (n < 2 || n > 64) throw InvalidInput("LMG curve: N must lie in [2, 64]");
  const QuasispinVector gs = ground_state(n, chi);
  const double d = d_parameter(gs);
  return {n, chi, d, discord(hf_pair_rdm(d, hf_rotation_angle(chi)))};
}

double discord_hf_gs_hamiltonian_pair(double chi) {
  if (!(chi >= 0.0) || !std::isfinite(chi))
    throw InvalidInput("discord_hf_gs_hamiltonian_pair: chi must be finite and >= 0");
  return chi <= 1.0 ? 0.0 : discord_h(chi);
}

std::vector<LmgCurvePoint> exact_curve(std::span<const int> ns,
                                       std::span<const double> chis, int threads) {
  if (ns.empty()) throw InvalidInput("LMG curve: empty particle-number list");
  if (chis.empty()) throw InvalidInput("LMG curve: empty chi grid");
  std::vector<LmgCurvePoint> out(ns.size() * chis.size());
  parallel_for(out.size(), threads, [&](std::size_t k) {
    out[k] = discord_exact_gs_hf_pair(ns[k / chis.size()], chis[k % chis.size()]);
  });
  return out;
}

}  // namespace fermidiscord
