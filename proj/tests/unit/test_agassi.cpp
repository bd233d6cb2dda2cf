#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fermidiscord/agassi.hpp"
#include "fermidiscord/errors.hpp"
#include "support/oracles.hpp"

using namespace fermidiscord;

namespace {

AgassiModelSpec spec(double chi, double sigma, int omega = 20) {
  AgassiModelSpec s;
  s.omega = omega;
  s.chi = chi;
  s.sigma = sigma;
  return s;
}

// Reference h(x) evaluated from its definition.
double h_ref(double x) { return oracle::binary(0.5 * (1.0 - 1.0 / x)); }

const OrbitalLabel kUp{1, 1}, kDown{-1, 1}, kUpPartner{1, -1};

}  // namespace

TEST(AgassiSpec, Validation) {
  EXPECT_THROW(spec(1, 1, 5).validate(), InvalidInput);
  EXPECT_THROW(spec(1, 1, 2).validate(), InvalidInput);
  EXPECT_THROW(spec(-1, 1).validate(), InvalidInput);
  auto s = spec(1, 1);
  s.epsilon = 0.0;
  EXPECT_THROW(s.validate(), InvalidInput);
  EXPECT_NEAR(spec(1.9, 0.5).sigma0(), 0.5 + 0.1, 1e-15);
}

TEST(OrbitalIndex, RoundTripsAndKeepsMBlocksContiguous) {
  const int omega = 8;
  std::vector<bool> seen(2 * omega, false);
  for (int am = 1; am <= omega / 2; ++am)
    for (int m : {am, -am})
      for (int s : {-1, 1}) {
        const int idx = orbital_index({s, m}, omega);
        ASSERT_GE(idx, 0);
        ASSERT_LT(idx, 2 * omega);
        EXPECT_FALSE(seen[static_cast<std::size_t>(idx)]);
        seen[static_cast<std::size_t>(idx)] = true;
        EXPECT_EQ(orbital_label(idx, omega), (OrbitalLabel{s, m}));
        EXPECT_EQ(orbital_index({-s, m}, omega) / 2, idx / 2);
      }
  EXPECT_EQ(orbital_index({-1, 1}, omega), 0);
  EXPECT_EQ(orbital_index({1, 1}, omega), 1);
  EXPECT_EQ(orbital_index({-1, -1}, omega), 2);
  EXPECT_THROW(orbital_index({1, 5}, omega), InvalidInput);
}

TEST(ClassifyPhase, Examples) {
  const auto sph = classify_phase(spec(0.5, 0.3));
  EXPECT_EQ(sph.phase, Phase::SphericalHF);
  EXPECT_EQ(sph.phi, 0.0);
  EXPECT_EQ(sph.alpha, 0.0);

  const auto def = classify_phase(spec(2.0, 0.0));
  EXPECT_EQ(def.phase, Phase::DeformedHF);
  EXPECT_NEAR(std::cos(def.phi), 0.5, 1e-15);
  EXPECT_EQ(def.alpha, 0.0);

  const auto bcs = classify_phase(spec(0.0, 2.0));
  EXPECT_EQ(bcs.phase, Phase::BCS);
  EXPECT_NEAR(std::cos(bcs.alpha), 0.5, 1e-15);
  EXPECT_EQ(bcs.phi, 0.0);
}

TEST(ClassifyPhase, BoundaryTies) {
  // chi == sigma0 > 1 resolves to deformed; chi = 1 exactly is spherical.
  const double omega = 20, chi = 2.0, sigma = chi - chi / (omega - 1);
  EXPECT_EQ(classify_phase(spec(chi, sigma)).phase, Phase::DeformedHF);
  EXPECT_EQ(classify_phase(spec(1.0, 0.0)).phase, Phase::SphericalHF);
  EXPECT_EQ(classify_phase(spec(0.0, 1.0)).phase, Phase::SphericalHF);
}

TEST(HfbDensities, Examples) {
  const int omega = 4;
  const DensitySet sph = hfb_densities(spec(0.5, 0.2, omega));
  for (int i = 0; i < 2 * omega; ++i) {
    const double expected = orbital_label(i, omega).sigma == -1 ? 1.0 : 0.0;
    EXPECT_EQ(sph.gamma(i, i).real(), expected);
  }
  EXPECT_EQ(sph.kappa.cwiseAbs().maxCoeff(), 0.0);

  const DensitySet def = hfb_densities(spec(2.0, 0.0, omega));
  const int up = orbital_index(kUp, omega), down = orbital_index(kDown, omega);
  EXPECT_NEAR(def.gamma(up, up).real(), 0.25, 1e-15);
  EXPECT_NEAR(def.gamma(down, down).real(), 0.75, 1e-15);
  EXPECT_NEAR(def.gamma(up, down).real(), -std::sqrt(3.0) / 4, 1e-15);
  EXPECT_EQ(def.kappa.cwiseAbs().maxCoeff(), 0.0);

  // sigma chosen so that sigma0 = 2 exactly.
  const DensitySet bcs = hfb_densities(spec(0.0, 2.0, omega));
  const int partner = orbital_index(kUpPartner, omega);
  EXPECT_NEAR(bcs.gamma(up, up).real(), 0.25, 1e-15);
  EXPECT_NEAR(bcs.gamma(down, down).real(), 0.75, 1e-15);
  EXPECT_EQ(bcs.gamma(up, down), Complex{});
  EXPECT_NEAR(std::abs(bcs.kappa(up, partner)), std::sqrt(3.0) / 4, 1e-15);
  EXPECT_NEAR(bcs.kappa(up, partner).real(), -bcs.kappa(partner, up).real(), 1e-15);
}

TEST(DiscordH, Examples) {
  EXPECT_EQ(discord_h(1.0), 0.0);
  EXPECT_NEAR(discord_h(2.0), 0.562335144618808, 1e-12);
  EXPECT_NEAR(discord_h(1e9), std::numbers::ln2, 1e-12);
  EXPECT_EQ(discord_h(INFINITY), std::numbers::ln2);
  EXPECT_THROW(discord_h(0.99), InvalidInput);
  double previous = 0.0;
  for (double x = 1.05; x < 50; x *= 1.1) {
    EXPECT_GT(discord_h(x), previous);
    EXPECT_NEAR(discord_h(x), h_ref(x), 1e-14);
    previous = discord_h(x);
  }
}

TEST(DiscordPair, Examples) {
  EXPECT_EQ(discord_pair(spec(0.5, 0.5), kUp, kDown), 0.0);
  EXPECT_EQ(discord_pair(spec(0.5, 0.5), kUp, kUpPartner), 0.0);
  EXPECT_NEAR(discord_pair(spec(2.0, 0.0), kUp, kDown), 0.562335144618808, 1e-12);
  EXPECT_NEAR(discord_pair(spec(0.0, 2.0), kUp, kUpPartner), 0.562335144618808, 1e-12);
  EXPECT_THROW(discord_pair(spec(2.0, 0.0), kUp, kUp), InvalidInput);
}

TEST(DiscordPair, PipelineMatchesClosedFormForEveryPair) {
  const int omega = 8;
  for (const auto& s : {spec(2.0, 0.3, omega), spec(0.4, 2.5, omega), spec(0.6, 0.2, omega)}) {
    for (int i = 0; i < 2 * omega; ++i)
      for (int j = 0; j < 2 * omega; ++j) {
        if (i == j) continue;
        const auto a = orbital_label(i, omega), b = orbital_label(j, omega);
        EXPECT_NEAR(discord_pair(s, a, b), discord_pair_closed_form(s, a, b), 1e-10);
      }
  }
}

TEST(DiscordPair, IdenticalForAllM) {
  const auto s = spec(2.7, 0.4);
  const double ref = discord_pair(s, kUp, kDown);
  for (int am = 1; am <= 10; ++am)
    for (int m : {am, -am}) EXPECT_EQ(discord_pair(s, {1, m}, {-1, m}), ref);
  const auto b = spec(0.3, 2.2);
  const double refb = discord_pair(b, kUp, kUpPartner);
  for (int am = 1; am <= 10; ++am)
    for (int s2 : {-1, 1}) EXPECT_EQ(discord_pair(b, {s2, am}, {s2, -am}), refb);
}

TEST(DiscordPair, CorrelatedPairIsPure) {
  for (const auto& [s, b] : {std::pair{spec(2.5, 0.0), kDown}, std::pair{spec(0.0, 2.5), kUpPartner}}) {
    const CorrelationReport r = pair_report(s, kUp, b);
    EXPECT_NEAR(r.entropy_ab, 0.0, 1e-10);
    EXPECT_NEAR(r.mutual_info, 2.0 * r.discord, 1e-10);
  }
}

TEST(OrderParameters, Examples) {
  const auto sph = order_parameters(spec(0.5, 0.5));
  EXPECT_EQ(sph.rho, 0.0);
  EXPECT_EQ(sph.kappa, 0.0);
  const auto def = order_parameters(spec(2.0, 0.0));
  EXPECT_NEAR(def.rho, -std::sqrt(3.0) / 4, 1e-15);
  EXPECT_NEAR(def.kappa, 0.0, 1e-15);
  const auto bcs = order_parameters(spec(0.0, 2.0));
  EXPECT_NEAR(bcs.rho, 0.0, 1e-15);
  EXPECT_NEAR(bcs.kappa, std::sqrt(3.0) / 4, 1e-15);
}

TEST(ScanGrid, NonzeroExactlyInTheMatchingPhase) {
  const auto up = scan_grid(20, GridRange::parse("0:3:0.1"), GridRange::parse("0:3:0.1"),
                            PairKind::UpDown, 2);
  const auto pair = scan_grid(20, GridRange::parse("0:3:0.1"), GridRange::parse("0:3:0.1"),
                              PairKind::Pairing, 2);
  ASSERT_EQ(up.size(), 31u * 31u);
  for (std::size_t k = 0; k < up.size(); ++k) {
    EXPECT_EQ(up[k].discord > 0.0, up[k].phase == Phase::DeformedHF) << up[k].chi << "," << up[k].sigma;
    EXPECT_EQ(pair[k].discord > 0.0, pair[k].phase == Phase::BCS);
  }
  EXPECT_EQ(up[1].chi, 0.0);
  EXPECT_NEAR(up[1].sigma, 0.1, 1e-15);
  EXPECT_NEAR(up[31].chi, 0.1, 1e-15);
}

TEST(ScanGrid, SinglePointMatchesDiscordPair) {
  const auto rows = scan_grid(20, GridRange::single(2.0), GridRange::single(0.0), PairKind::UpDown, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].discord, discord_pair(spec(2.0, 0.0), kUp, kDown));
  EXPECT_THROW(scan_grid(20, GridRange{1.0, 0.0, 0.1}, GridRange::single(0.0), PairKind::UpDown, 1),
               InvalidInput);
  EXPECT_THROW(parse_pair_kind("sideways"), InvalidInput);
}
