#include "fermidiscord/agassi.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fermidiscord/errors.hpp"

namespace fermidiscord {

namespace {

void check_label(OrbitalLabel l, int omega) {
  if ((l.sigma != 1 && l.sigma != -1) || l.m == 0 || std::abs(l.m) > omega / 2) {
    std::ostringstream msg;
    msg << "invalid orbital label (sigma " << l.sigma << ", m " << l.m
        << ") for omega " << omega;
    throw InvalidInput(msg.str());
  }
}

}  // namespace

void AgassiModelSpec::validate() const {
  if (omega < 4 || omega % 2 != 0)
    throw InvalidInput("Agassi model: omega must be even and >= 4");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidInput("Agassi model: epsilon must be positive");
  if (!(chi >= 0.0) || !std::isfinite(chi) || !(sigma >= 0.0) || !std::isfinite(sigma))
    throw InvalidInput("Agassi model: chi and sigma must be finite and >= 0");
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::SphericalHF: return "spherical";
    case Phase::DeformedHF: return "deformed";
    case Phase::BCS: return "bcs";
  }
  return "unknown";
}

int m_slot(int m) { return 2 * (std::abs(m) - 1) + (m < 0 ? 1 : 0); }

int slot_m(int slot) {
  const int mag = slot / 2 + 1;
  return slot % 2 == 0 ? mag : -mag;
}

int orbital_index(OrbitalLabel label, int omega) {
  check_label(label, omega);
  return 2 * m_slot(label.m) + (label.sigma == 1 ? 1 : 0);
}

OrbitalLabel orbital_label(int index, int omega) {
  if (index < 0 || index >= 2 * omega)
    throw InvalidInput("orbital index out of range");
  return {index % 2 == 1 ? 1 : -1, slot_m(index / 2)};
}

PhaseSolution classify_phase(const AgassiModelSpec& spec) {
  spec.validate();
  const double chi = spec.chi;
  const double s0 = spec.sigma0();
  if (chi > 1.0 && chi >= s0) return {Phase::DeformedHF, std::acos(1.0 / chi), 0.0};
  if (s0 > 1.0 && s0 > chi) return {Phase::BCS, 0.0, std::acos(1.0 / s0)};
  return {Phase::SphericalHF, 0.0, 0.0};
}

DensitySet hfb_densities(const AgassiModelSpec& spec) {
  const PhaseSolution sol = classify_phase(spec);
  const int n = 2 * spec.omega;
  const double cp = std::cos(sol.phi), sp = std::sin(sol.phi);
  const double ca = std::cos(sol.alpha), sa = std::sin(sol.alpha);

  DensitySet d;
  d.omega = n;
  d.gamma = Eigen::MatrixXcd::Zero(n, n);
  d.kappa = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const OrbitalLabel li = orbital_label(i, spec.omega);
    for (int j = 0; j < n; ++j) {
      const OrbitalLabel lj = orbital_label(j, spec.omega);
      if (li.m == lj.m) {
        d.gamma(i, j) = li.sigma == lj.sigma ? 0.5 * (1.0 - li.sigma * cp * ca)
                                             : -0.5 * sp * ca;
      }
      if (li.sigma == lj.sigma && li.m == -lj.m)
        d.kappa(i, j) = (li.m > 0 ? 0.5 : -0.5) * sa;
    }
  }
  d.two_body_diag = qp_vacuum_two_body(d.gamma, d.kappa);
  return d;
}

double discord_h(double x) {
  if (!(x >= 1.0)) {
    std::ostringstream msg;
    msg << "discord_h: argument " << x << " must be >= 1";
    throw InvalidInput(msg.str());
  }
  if (std::isinf(x)) return std::log(2.0);
  return binary_entropy(0.5 * (1.0 - 1.0 / x));
}

CorrelationReport pair_report(const AgassiModelSpec& spec, OrbitalLabel a,
                              OrbitalLabel b) {
  const int i = orbital_index(a, spec.omega);
  const int j = orbital_index(b, spec.omega);
  if (i == j) throw InvalidInput("discord_pair: orbitals must differ");
  return report(assemble_rdm(hfb_densities(spec), i, j));
}

double discord_pair(const AgassiModelSpec& spec, OrbitalLabel a, OrbitalLabel b) {
  return pair_report(spec, a, b).discord;
}

double discord_pair_closed_form(const AgassiModelSpec& spec, OrbitalLabel a,
                                OrbitalLabel b) {
  check_label(a, spec.omega);
  check_label(b, spec.omega);
  if (a == b) throw InvalidInput("discord_pair: orbitals must differ");
  const PhaseSolution sol = classify_phase(spec);
  if (sol.phase == Phase::DeformedHF && a.m == b.m && a.sigma == -b.sigma)
    return discord_h(spec.chi);
  if (sol.phase == Phase::BCS && a.sigma == b.sigma && a.m == -b.m)
    return discord_h(spec.sigma0());
  return 0.0;
}

OrderParameters order_parameters(const AgassiModelSpec& spec) {
  const PhaseSolution sol = classify_phase(spec);
  return {-0.5 * std::sin(sol.phi) * std::cos(sol.alpha), 0.5 * std::sin(sol.alpha)};
}

PairKind parse_pair_kind(const std::string& text) {
  if (text == "updown") return PairKind::UpDown;
  if (text == "pairing") return PairKind::Pairing;
  throw InvalidInput("pair kind must be 'updown' or 'pairing', got '" + text + "'");
}

std::string to_string(PairKind k) {
  return k == PairKind::UpDown ? "updown" : "pairing";
}

std::pair<OrbitalLabel, OrbitalLabel> representative_pair(PairKind kind) {
  if (kind == PairKind::UpDown) return {{1, 1}, {-1, 1}};
  return {{1, 1}, {1, -1}};
}

std::vector<ScanRow> scan_grid(int omega, const GridRange& chi,
                               const GridRange& sigma, PairKind kind, int threads) {
  const std::vector<double> chis = chi.values();
  const std::vector<double> sigmas = sigma.values();
  AgassiModelSpec probe{omega, 1.0, chis.front(), sigmas.front()};
  probe.validate();
  const auto [a, b] = representative_pair(kind);

  std::vector<ScanRow> rows(chis.size() * sigmas.size());
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    const std::size_t ci = k / sigmas.size();
    const std::size_t si = k % sigmas.size();
    const AgassiModelSpec spec{omega, 1.0, chis[ci], sigmas[si]};
    const CorrelationReport r = pair_report(spec, a, b);
    rows[k] = {chis[ci], sigmas[si], classify_phase(spec).phase, r.discord,
               r.mutual_info};
  });
  return rows;
}

}  // namespace fermidiscord
