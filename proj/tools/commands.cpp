#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "fermidiscord/agassi.hpp"
#include "fermidiscord/density_io.hpp"
#include "fermidiscord/errors.hpp"
#include "fermidiscord/fock.hpp"
#include "fermidiscord/grid.hpp"
#include "fermidiscord/lmg.hpp"

namespace fermidiscord::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string out_path;
  std::string format;
  int threads = 0;
  bool bits = false;
  std::uint64_t seed = 0;

  double scale() const { return bits ? 1.0 / std::numbers::ln2 : 1.0; }
};

std::string num(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string resolve_format(const std::string& requested, const std::string& fallback,
                           bool csv_allowed) {
  const std::string f = requested.empty() ? fallback : requested;
  if (f == "csv" && !csv_allowed) throw InvalidInput("--format csv is not available here");
  return f;
}

// "3", "3:20", "3:20:2" or comma-separated lists of those.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream items(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidInput("--n: bad integer '" + s + "'");
    return v;
  };
  while (std::getline(items, item, ',')) {
    if (item.empty()) continue;
    std::vector<std::string> parts;
    std::stringstream ps(item);
    std::string p;
    while (std::getline(ps, p, ':')) parts.push_back(p);
    if (parts.empty() || parts.size() > 3) throw InvalidInput("--n: bad range '" + item + "'");
    const int a = to_int(parts[0]);
    const int b = parts.size() > 1 ? to_int(parts[1]) : a;
    const int s = parts.size() > 2 ? to_int(parts[2]) : 1;
    if (s <= 0 || b < a) throw InvalidInput("--n: empty or invalid range '" + item + "'");
    for (int v = a; v <= b; v += s) out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("--n: empty particle-number list");
  return out;
}

Json complex_matrix(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

std::string agassi_scan(const Common& common, const std::string& pair, int omega,
                        const std::string& chi, const std::string& sigma) {
  const PairKind kind = parse_pair_kind(pair);
  const GridRange chis = GridRange::parse(chi), sigmas = GridRange::parse(sigma);
  const std::string format = resolve_format(common.format, "csv", true);
  const auto rows = scan_grid(omega, chis, sigmas, kind, common.threads);
  const double k = common.scale();
  std::ostringstream os;
  if (format == "csv") {
    os << "chi,sigma,phase,discord,mutual_info\n";
    for (const auto& r : rows)
      os << num(r.chi) << ',' << num(r.sigma) << ',' << to_string(r.phase) << ','
         << num(k * r.discord) << ',' << num(k * r.mutual_info) << '\n';
  } else {
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back({{"chi", r.chi},
                     {"sigma", r.sigma},
                     {"phase", to_string(r.phase)},
                     {"discord", k * r.discord},
                     {"mutual_info", k * r.mutual_info}});
    os << arr.dump(2) << '\n';
  }
  return os.str();
}

std::string agassi_densities(int omega, double chi, double sigma) {
  AgassiModelSpec spec;
  spec.omega = omega;
  spec.chi = chi;
  spec.sigma = sigma;
  return density_to_json(hfb_densities(spec));
}

std::string lmg_exact_curve(const Common& common, const std::string& ns_text,
                            const std::string& chi) {
  const std::vector<int> ns = parse_int_list(ns_text);
  for (int n : ns)
    if (n < 2 || n > 64) throw InvalidInput("--n: values must lie in [2, 64]");
  const std::vector<double> chis = GridRange::parse(chi).values();
  const std::string format = resolve_format(common.format, "csv", true);
  const auto points = exact_curve(ns, chis, common.threads);
  const double k = common.scale();
  std::ostringstream os;
  if (format == "csv") {
    os << "n,chi,d,discord\n";
    for (const auto& p : points)
      os << p.n << ',' << num(p.chi) << ',' << num(p.d) << ',' << num(k * p.discord) << '\n';
  } else {
    Json arr = Json::array();
    for (const auto& p : points)
      arr.push_back({{"n", p.n}, {"chi", p.chi}, {"d", p.d}, {"discord", k * p.discord}});
    os << arr.dump(2) << '\n';
  }
  return os.str();
}

std::string lmg_hf_curve(const Common& common, const std::string& chi) {
  const std::vector<double> chis = GridRange::parse(chi).values();
  const std::string format = resolve_format(common.format, "csv", true);
  const double k = common.scale();
  std::ostringstream os;
  if (format == "csv") {
    os << "chi,discord\n";
    for (double x : chis) os << num(x) << ',' << num(k * discord_hf_gs_hamiltonian_pair(x)) << '\n';
  } else {
    Json arr = Json::array();
    for (double x : chis)
      arr.push_back({{"chi", x}, {"discord", k * discord_hf_gs_hamiltonian_pair(x)}});
    os << arr.dump(2) << '\n';
  }
  return os.str();
}

std::string discord_from_densities(const Common& common, const std::string& in, int i, int j,
                                   bool all_pairs) {
  const std::string format = resolve_format(common.format, "json", true);
  if (!all_pairs && (i < 0 || j < 0))
    throw InvalidInput("from-densities: give --i and --j, or --all-pairs");
  const DensitySet d = read_density_file(in);
  const double k = common.scale();
  std::ostringstream os;
  if (all_pairs) {
    const Eigen::MatrixXd m = all_pairs_discord(d, common.threads);
    if (format == "csv") {
      os << "i,j,discord\n";
      for (int a = 0; a < d.omega; ++a)
        for (int b = a + 1; b < d.omega; ++b) os << a << ',' << b << ',' << num(k * m(a, b)) << '\n';
    } else {
      Json rows = Json::array();
      for (int a = 0; a < d.omega; ++a) {
        Json row = Json::array();
        for (int b = 0; b < d.omega; ++b) row.push_back(k * m(a, b));
        rows.push_back(row);
      }
      Json out;
      out["omega"] = d.omega;
      out["discord"] = rows;
      os << out.dump(2) << '\n';
    }
    return os.str();
  }
  const TwoOrbitalRDM rdm = assemble_rdm(d, i, j);
  const CorrelationReport r = report(rdm);
  if (format == "csv") {
    os << "i,j,discord,mutual_info,classical\n"
       << i << ',' << j << ',' << num(k * r.discord) << ',' << num(k * r.mutual_info) << ','
       << num(k * r.classical_corr) << '\n';
  } else {
    Json out;
    out["i"] = i;
    out["j"] = j;
    out["discord"] = k * r.discord;
    out["mutual_info"] = k * r.mutual_info;
    out["classical"] = k * r.classical_corr;
    out["rdm"] = complex_matrix(rdm.matrix());
    os << out.dump(2) << '\n';
  }
  return os.str();
}

// Random valid two-orbital states: closed-form discord against a dense 4x4
// diagonalization.
std::string discord_selfcheck(const Common& common, int samples, bool& pass) {
  resolve_format(common.format, "json", false);
  if (samples < 1) throw InvalidInput("--samples must be >= 1");
  std::mt19937_64 rng(common.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  double worst = 0.0, min_discord = INFINITY;
  for (int s = 0; s < samples; ++s) {
    double p[4];
    double total = 0.0;
    for (double& x : p) total += (x = expo(rng));
    for (double& x : p) x /= total;
    const double ra = unit(rng) * std::sqrt(p[0] * p[3]);
    const double rg = unit(rng) * std::sqrt(p[1] * p[2]);
    const Complex alpha = std::polar(ra, 2.0 * std::numbers::pi * unit(rng));
    const Complex gam = std::polar(rg, 2.0 * std::numbers::pi * unit(rng));
    const TwoOrbitalRDM rdm(p[0], p[1], p[2], p[3], alpha, gam);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rdm.matrix(), Eigen::EigenvaluesOnly);
    double s_num = 0.0;
    for (double l : es.eigenvalues())
      if (l > 0.0) s_num -= l * std::log(l);
    const double numeric = shannon_entropy(std::span<const double>(p, 4)) - s_num;
    const double closed = discord(rdm);
    worst = std::max(worst, std::abs(closed - numeric));
    min_discord = std::min(min_discord, closed);
  }
  pass = worst <= kStructuralTol && min_discord >= 0.0;
  Json out;
  out["samples"] = samples;
  out["seed"] = common.seed;
  out["max_closed_vs_numeric"] = worst;
  out["min_discord"] = min_discord * common.scale();
  out["pass"] = pass;
  return out.dump(2) + "\n";
}

std::string oracle_verify(const Common& common, const std::string& model, int omega,
                          double chi, double sigma, bool& pass) {
  resolve_format(common.format, "json", false);
  if (omega > kMaxOracleOmega) {
    std::ostringstream msg;
    msg << "oracle size guard: omega " << omega << " exceeds " << kMaxOracleOmega;
    throw InvalidInput(msg.str());
  }
  OracleReport r;
  if (model == "agassi") {
    AgassiModelSpec spec;
    spec.omega = omega;
    spec.chi = chi;
    spec.sigma = sigma;
    r = verify_agassi(spec);
  } else {
    r = verify_lmg(omega, chi);
  }
  pass = r.pass;
  r.max_pair_discord *= common.scale();
  return to_json(r);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fermionic quantum discord toolkit", "fermidiscord"};
  app.fallthrough();
  app.require_subcommand(1);

  Common common;
  app.add_option("--out", common.out_path, "Output file (default: standard output)");
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", common.threads, "Worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--bits", common.bits, "Report entropic quantities in bits");
  app.add_option("--seed", common.seed, "Seed for randomized checks");

  std::string pair = "updown", chi_range, sigma_range, n_list, in_path, model = "agassi";
  int omega = 20, oracle_omega = 4, pair_i = -1, pair_j = -1, samples = 1000;
  double chi = 0.0, sigma = 0.0;
  bool all_pairs = false;

  auto* agassi = app.add_subcommand("agassi", "Agassi model mean-field discord");
  agassi->require_subcommand(1);
  auto* scan = agassi->add_subcommand("scan", "Pair discord on a (chi, sigma) grid");
  scan->add_option("--pair", pair, "Orbital pair")->check(CLI::IsMember({"updown", "pairing"}));
  scan->add_option("--omega", omega, "Level degeneracy (even, >= 4)");
  scan->add_option("--chi", chi_range, "chi range start:stop:step")->required();
  scan->add_option("--sigma", sigma_range, "sigma range start:stop:step")->required();
  auto* dens = agassi->add_subcommand("densities", "Export HFB densities as JSON");
  dens->add_option("--omega", omega, "Level degeneracy (even, >= 4)");
  dens->add_option("--chi", chi, "Monopole strength")->required();
  dens->add_option("--sigma", sigma, "Pairing strength")->required();

  auto* lmg = app.add_subcommand("lmg", "Lipkin-Meshkov-Glick model");
  lmg->require_subcommand(1);
  auto* exact = lmg->add_subcommand("exact-curve", "Exact ground state, HF-orbital pair discord");
  exact->add_option("--n", n_list, "Particle numbers, e.g. 3:20 or 2,4,6")->required();
  exact->add_option("--chi", chi_range, "chi range start:stop:step")->required();
  auto* hf = lmg->add_subcommand("hf-curve", "HF ground state, Hamiltonian pair discord");
  hf->add_option("--chi", chi_range, "chi range start:stop:step")->required();

  auto* disc = app.add_subcommand("discord", "Discord from density files");
  disc->require_subcommand(1);
  auto* from = disc->add_subcommand("from-densities", "Pair discord from a density JSON file");
  from->add_option("--in", in_path, "Density JSON file")->required();
  from->add_option("--i", pair_i, "First orbital");
  from->add_option("--j", pair_j, "Second orbital");
  from->add_flag("--all-pairs", all_pairs, "Discord for every pair");
  auto* check = disc->add_subcommand("selfcheck", "Closed form against dense diagonalization");
  check->add_option("--samples", samples, "Number of random states");

  auto* oracle = app.add_subcommand("oracle", "Exact-diagonalization cross-checks");
  oracle->require_subcommand(1);
  auto* verify = oracle->add_subcommand("verify", "Verify one model point");
  verify->add_option("--model", model, "Model")->check(CLI::IsMember({"agassi", "lmg"}));
  verify->add_option("--omega", oracle_omega, "Omega (<= 8)");
  verify->add_option("--chi", chi, "chi")->required();
  verify->add_option("--sigma", sigma, "sigma (Agassi only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ofstream file;
    if (!common.out_path.empty()) {
      file.open(common.out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw InvalidInput("cannot open output file '" + common.out_path + "'");
    }
    std::string text;
    bool pass = true;
    if (*scan) {
      text = agassi_scan(common, pair, omega, chi_range, sigma_range);
    } else if (*dens) {
      text = agassi_densities(omega, chi, sigma);
    } else if (*exact) {
      text = lmg_exact_curve(common, n_list, chi_range);
    } else if (*hf) {
      text = lmg_hf_curve(common, chi_range);
    } else if (*from) {
      text = discord_from_densities(common, in_path, pair_i, pair_j, all_pairs);
    } else if (*check) {
      text = discord_selfcheck(common, samples, pass);
    } else if (*verify) {
      text = oracle_verify(common, model, oracle_omega, chi, sigma, pass);
    }
    std::ostream& sink = common.out_path.empty() ? out : file;
    sink << text;
    sink.flush();
    if (!sink) throw NumericalFailure("failed writing output");
    return pass ? kExitOk : kExitNumerical;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace fermidiscord::cli
