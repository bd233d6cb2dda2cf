// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and never loosened.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fermidiscord/agassi.hpp"
#include "fermidiscord/densities.hpp"
#include "fermidiscord/fock.hpp"
#include "fermidiscord/lmg.hpp"
#include "fermidiscord/two_orbital.hpp"
#include "support/oracles.hpp"

using namespace fermidiscord;

namespace {

constexpr double kLn2 = std::numbers::ln2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Reference h(x) = binary entropy of (1 - 1/x) / 2.
double h_ref(double x) { return x <= 1.0 ? 0.0 : oracle::binary(0.5 * (1.0 - 1.0 / x)); }

AgassiModelSpec agassi(int omega, double chi, double sigma) {
  AgassiModelSpec s;
  s.omega = omega;
  s.chi = chi;
  s.sigma = sigma;
  return s;
}

// Up-down HF pair of the exact LMG state, built by hand: one particle per
// slot, occupation asymmetry d, no coherence, rotated by phi / 2.
double lmg_hf_pair_discord_ref(double d, double phi) {
  Eigen::Matrix2d rho = Eigen::Matrix2d::Zero();
  rho(0, 0) = 0.5 * (1.0 - d);  // lower
  rho(1, 1) = 0.5 * (1.0 + d);  // upper
  const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  const Eigen::Matrix2d rot = r.transpose() * rho * r;
  return oracle::shannon({rot(0, 0), rot(1, 1)}) - oracle::shannon({rho(0, 0), rho(1, 1)});
}

// 1. Pipeline discord against the region-wise closed form on the full grid.
Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const GridRange g{0.0, 3.0, 0.05};
  const auto updown = scan_grid(20, g, g, PairKind::UpDown, 0);
  const auto pairing = scan_grid(20, g, g, PairKind::Pairing, 0);
  const double elapsed = seconds_since(t0);
  double worst = 0.0;
  if (updown.size() != 61u * 61u || pairing.size() != updown.size()) return {false, "wrong grid size"};
  for (std::size_t k = 0; k < updown.size(); ++k) {
    const double chi = updown[k].chi, sigma0 = updown[k].sigma + chi / 19.0;
    const bool deformed = chi > 1.0 && chi >= sigma0;
    const bool bcs = !deformed && sigma0 > 1.0 && sigma0 > chi;
    worst = std::max(worst, std::abs(updown[k].discord - (deformed ? h_ref(chi) : 0.0)));
    worst = std::max(worst, std::abs(pairing[k].discord - (bcs ? h_ref(sigma0) : 0.0)));
  }
  o.pass = worst <= 1e-10 && elapsed < 5.0;
  o.detail = "max |pipeline - closed form| = " + fmt("%.2e", worst) + ", " + fmt("%.2f", elapsed) + " s";
  return o;
}

// 2. I = 2 delta wherever the discord is nonzero.
Outcome criterion2() {
  const GridRange g{0.0, 3.0, 0.05};
  double worst = 0.0;
  int nonzero = 0;
  for (PairKind kind : {PairKind::UpDown, PairKind::Pairing})
    for (const auto& r : scan_grid(20, g, g, kind, 0)) {
      if (r.discord == 0.0) continue;
      ++nonzero;
      worst = std::max(worst, std::abs(r.mutual_info - 2.0 * r.discord));
    }
  return {worst <= 1e-10 && nonzero > 0,
          std::to_string(nonzero) + " nonzero points, max |I - 2 delta| = " + fmt("%.2e", worst)};
}

// 3. Continuous onset at chi = 1, jump h(2) across chi = Sigma0 = 2.
Outcome criterion3() {
  const auto [a, b] = representative_pair(PairKind::UpDown);
  const double at_one = discord_pair(agassi(20, 1.0, 0.0), a, b);
  bool decreasing = true;
  double previous = INFINITY;
  for (int k = 1; k <= 10; ++k) {
    const double d = discord_pair(agassi(20, 1.0 + std::pow(10.0, -k), 0.0), a, b);
    decreasing = decreasing && d < previous && d > 0.0;
    previous = d;
  }
  const double line = 2.0 - 2.0 / 19.0;  // Sigma0 = 2 at chi = 2
  const double deformed = discord_pair(agassi(20, 2.0, line - 1e-9), a, b);
  const double bcs = discord_pair(agassi(20, 2.0, line + 1e-9), a, b);
  const double jump = deformed - bcs;
  const bool pass = at_one == 0.0 && decreasing && previous < 1e-8 &&
                    std::abs(jump - 0.562335144618808) <= 1e-10;
  return {pass, "delta(1 + 1e-10) = " + fmt("%.2e", previous) + ", jump = " + fmt("%.12f", jump)};
}

// 4. HF ground state, Hamiltonian pair: h(chi), ln 2 at large chi, no N dependence.
Outcome criterion4() {
  double worst = 0.0;
  for (double chi = 0.0; chi <= 10.0; chi += 0.25)
    worst = std::max(worst, std::abs(discord_hf_gs_hamiltonian_pair(chi) - h_ref(chi)));
  // The same quantity through mean-field densities at several sizes.
  const auto [a, b] = representative_pair(PairKind::UpDown);
  double spread = 0.0;
  for (double chi : {1.5, 3.0, 7.0}) {
    for (int omega : {4, 8, 20, 60})
      spread = std::max(spread, std::abs(discord_pair(agassi(omega, chi, 0.0), a, b) - h_ref(chi)));
  }
  const double far = discord_hf_gs_hamiltonian_pair(100.0);
  const bool pass = worst <= 1e-12 && spread <= 1e-10 && std::abs(far - kLn2) < 0.01;
  return {pass, "max |delta - h| = " + fmt("%.2e", std::max(worst, spread)) + ", delta(100) = " +
                    fmt("%.6f", far)};
}

// 5. Exact LMG curve family.
Outcome criterion5() {
  std::vector<int> ns;
  for (int n = 3; n <= 20; ++n) ns.push_back(n);
  const std::vector<double> chis = GridRange{0.0, 6.0, 0.02}.values();
  const auto t0 = std::chrono::steady_clock::now();
  const auto points = exact_curve(ns, chis, 0);
  const double elapsed = seconds_since(t0);
  bool flat = true, unimodal = true;
  double at5_n3 = -1.0, at5_n20 = -1.0;
  for (std::size_t q = 0; q < ns.size(); ++q) {
    std::vector<double> above;
    for (std::size_t k = 0; k < chis.size(); ++k) {
      const auto& p = points[q * chis.size() + k];
      if (p.chi <= 1.0) flat = flat && p.discord <= 1e-12;
      else above.push_back(p.discord);
      if (std::abs(p.chi - 5.0) < 1e-9 && p.n == 3) at5_n3 = p.discord;
      if (std::abs(p.chi - 5.0) < 1e-9 && p.n == 20) at5_n20 = p.discord;
    }
    // Strict rise to one peak, strict fall after, peak not at the edge.
    const auto peak = std::max_element(above.begin(), above.end()) - above.begin();
    if (peak == 0 || peak + 1 == static_cast<long>(above.size())) unimodal = false;
    for (long k = 1; k < static_cast<long>(above.size()); ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      if (k <= peak && !(above[i] > above[i - 1])) unimodal = false;
      if (k > peak && !(above[i] < above[i - 1])) unimodal = false;
    }
  }
  const bool pass = flat && unimodal && at5_n20 >= 0.0 && at5_n20 < at5_n3 && elapsed < 10.0;
  return {pass, std::string(flat ? "" : "nonzero below chi = 1; ") + (unimodal ? "" : "not unimodal; ") +
                    "delta(5; N=20) = " + fmt("%.6f", at5_n20) + " < delta(5; N=3) = " +
                    fmt("%.6f", at5_n3) + ", " + fmt("%.2f", elapsed) + " s"};
}

// 6. Fock-space LMG against the quasispin solution.
Outcome criterion6() {
  double worst = 0.0;
  bool all = true;
  for (int n : {2, 4, 6})
    for (double chi : {0.5, 1.5, 2.0, 3.0}) {
      const auto r = verify_lmg(n, chi);
      all = all && r.pass;
      worst = std::max({worst, std::abs(r.energy - r.quasispin_energy),
                        std::abs(r.hf_discord_fock - r.hf_discord_quasispin)});
    }
  const auto two = verify_lmg(2, 2.0);
  const auto gs = ground_state(2, 2.0);
  const double hand = lmg_hf_pair_discord_ref(d_parameter(gs), std::acos(0.5));
  const bool pass = all && worst <= 1e-10 && std::abs(two.energy + std::sqrt(5.0)) <= 1e-10 &&
                    std::abs(two.hf_discord_fock - hand) <= 1e-10 &&
                    std::abs(two.hf_discord_fock - 0.0784) < 5e-5;
  return {pass, "max deviation = " + fmt("%.2e", worst) + ", N=2 chi=2: E = " + fmt("%.10f", two.energy) +
                    ", delta = " + fmt("%.10f", two.hf_discord_fock)};
}

// 7. Exact Agassi ground state at Omega = 4.
Outcome criterion7() {
  double worst = 0.0;
  bool all = true;
  for (auto [chi, sigma] : {std::pair{2.0, 0.5}, std::pair{0.5, 2.0}, std::pair{2.0, 2.0}}) {
    const auto r = verify_agassi(agassi(4, chi, sigma));
    all = all && r.pass;
    worst = std::max({worst, r.max_updown_gamma, r.max_pairing_gamma, r.max_pair_discord});
  }
  return {all && worst <= 1e-10, "max element / discord = " + fmt("%.2e", worst)};
}

// 8. Natural orbitals of number-conserving pure states carry no pair discord.
Outcome criterion8() {
  const std::uint64_t seed = 8;
  oracle::Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int n = rng.integer(2, 6);
    const int particles = rng.integer(1, n - 1);
    auto space = make_fock_space(n, Sector::number(particles));
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(space->dimension()));
    for (auto& z : amps) z = rng.cnormal();
    const FockVector v = make_fock_vector(space, amps);
    const auto no = natural_orbitals(extract_densities(v).gamma);
    const DensitySet d = densities_in_basis(v, no.basis);
    worst = std::max(worst, all_pairs_discord(d, 1).maxCoeff());
  }
  return {worst <= 1e-8, "seed " + std::to_string(seed) + ", max pair discord = " + fmt("%.2e", worst)};
}

// 9. Uniform occupations survive any canonical transform unchanged.
Outcome criterion9() {
  const std::uint64_t seed = 9;
  oracle::Rng rng(seed);
  double worst_offdiag = 0.0, worst_discord = 0.0;
  auto check = [&](const OneBodyDensities& t) {
    Eigen::MatrixXcd off = t.gamma;
    off.diagonal().setZero();
    worst_offdiag = std::max({worst_offdiag, off.cwiseAbs().maxCoeff(), t.kappa.cwiseAbs().maxCoeff()});
    const Eigen::Index n = t.gamma.rows();
    Eigen::MatrixXd two = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j)
          two(i, j) = (t.gamma(i, i) * t.gamma(j, j)).real() - std::norm(t.gamma(i, j)) + std::norm(t.kappa(i, j));
    DensitySet d;
    d.omega = static_cast<int>(n);
    d.gamma = 0.5 * (t.gamma + t.gamma.adjoint());
    d.kappa = 0.5 * (t.kappa - t.kappa.transpose());
    d.two_body_diag = 0.5 * (two + two.transpose());
    worst_discord = std::max(worst_discord, all_pairs_discord(d, 1).maxCoeff());
  };
  for (int k = 0; k < 20; ++k) {
    const int n = rng.integer(2, 8);
    const auto t = oracle::random_bogoliubov(rng, n, true);
    check(transform_densities({t.u, t.v}, Eigen::VectorXd::Constant(n, 0.5)));
    const auto w = oracle::random_bogoliubov(rng, n, false);
    const int particles = rng.integer(0, n);
    check(transform_densities({w.u, w.v}, Eigen::VectorXd::Constant(n, static_cast<double>(particles) / n)));
  }
  return {worst_offdiag <= 1e-10 && worst_discord <= 1e-10,
          "seed " + std::to_string(seed) + ", max off-diagonal = " + fmt("%.2e", worst_offdiag) +
              ", max discord = " + fmt("%.2e", worst_discord)};
}

// 10. Four-orbital cat state and product states.
Outcome criterion10() {
  auto space = make_fock_space(4, Sector::number(2));
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(6);
  amps(static_cast<Eigen::Index>(*space->index_of(0b0011))) = 1.0;
  amps(static_cast<Eigen::Index>(*space->index_of(0b1100))) = 1.0;
  const FockVector cat = make_fock_vector(space, amps);
  const DensitySet d = extract_densities(cat);
  const double pairwise = all_pairs_discord(d, 1).maxCoeff();
  const double s_ov = overall_entropy(d.gamma);
  const double multi = multipartite_discord(cat).discord;

  const FockVector product = basis_vector(space, 0b0101);
  const double product_pairs = all_pairs_discord(extract_densities(product), 1).maxCoeff();
  const double product_multi = multipartite_discord(product).discord;

  const bool pass = pairwise == 0.0 && std::abs(s_ov - 4.0 * kLn2) <= 1e-12 && multi > 1e-3 &&
                    product_pairs == 0.0 && std::abs(product_multi) <= 1e-12;
  return {pass, "pairwise = " + fmt("%.1e", pairwise) + ", S_ov = " + fmt("%.12f", s_ov) +
                    ", multipartite = " + fmt("%.6f", multi) + ", product = " + fmt("%.1e", product_multi)};
}

// 11. Core invariants of the two-orbital closed form.
Outcome criterion11() {
  const std::uint64_t seed = 11;
  oracle::Rng rng(seed);
  double worst = 0.0, min_discord = INFINITY, min_coherent = INFINITY, max_tiny = 0.0;
  bool zero_exact = true;
  for (int k = 0; k < 1000; ++k) {
    const auto p = oracle::random_rdm(rng);
    const TwoOrbitalRDM r(p.r[0], p.r[1], p.r[2], p.r[3], p.alpha, p.gam);
    const double d = discord(r);
    min_discord = std::min(min_discord, d);
    worst = std::max(worst, std::abs(d - oracle::numeric_discord(oracle::rdm_matrix(p.r[0], p.r[1], p.r[2],
                                                                                     p.r[3], p.alpha, p.gam))));
    // Zero coherence gives exactly zero.
    zero_exact = zero_exact && discord(TwoOrbitalRDM(p.r[0], p.r[1], p.r[2], p.r[3])) == 0.0;
    // Generic coherence above 1e-10 gives a visible discord.
    if (std::max(std::abs(p.alpha), std::abs(p.gam)) > 1e-6) min_coherent = std::min(min_coherent, d);
    // Coherences at 1e-10 with populations bounded away from 0 stay below 1e-12.
    const double pops[4] = {0.001 + 0.996 * p.r[0], 0.001 + 0.996 * p.r[1], 0.001 + 0.996 * p.r[2],
                            0.001 + 0.996 * p.r[3]};
    const TwoOrbitalRDM tiny(pops[0], pops[1], pops[2], pops[3], 1e-10 * rng.phase(), 1e-10 * rng.phase());
    max_tiny = std::max(max_tiny, discord(tiny));
  }
  const bool pass = min_discord >= 0.0 && worst <= 1e-12 && zero_exact && min_coherent > 1e-12 &&
                    max_tiny <= 1e-12;
  return {pass, "seed " + std::to_string(seed) + ", max |closed - numeric| = " + fmt("%.2e", worst) +
                    ", min discord = " + fmt("%.2e", min_discord) + ", coherent min = " +
                    fmt("%.2e", min_coherent) + ", 1e-10 coherence max = " + fmt("%.2e", max_tiny)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form discord on the 61x61 Agassi grid", criterion1},
      {"purity relation I = 2 delta", criterion2},
      {"phase-boundary behaviour", criterion3},
      {"HF Hamiltonian-pair discord h(chi)", criterion4},
      {"exact LMG curve family", criterion5},
      {"LMG Fock oracle equivalence", criterion6},
      {"exact Agassi ground state structure", criterion7},
      {"natural-basis theorem", criterion8},
      {"half-filling invariance", criterion9},
      {"cat state and product states", criterion10},
      {"two-orbital invariants", criterion11},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  [%2zu] %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
