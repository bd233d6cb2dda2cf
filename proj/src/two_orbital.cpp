#include "fermidiscord/two_orbital.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fermidiscord/errors.hpp"

namespace fermidiscord {

namespace {

constexpr double kClampTol = 1e-12;

double clamp_probability(double p) {
  if (p < 0.0 && p >= -kClampTol) return 0.0;
  if (p > 1.0 && p <= 1.0 + kClampTol) return 1.0;
  return p;
}

// Descending eigenvalues of [[a, c], [c*, b]].
std::array<double, 2> block_eigenvalues(double a, double b, Complex c) {
  const double c2 = std::norm(c);
  if (c2 == 0.0) return {std::max(a, b), std::min(a, b)};
  const double mean = 0.5 * (a + b);
  const double half_gap = 0.5 * (a - b);
  const double radius = std::sqrt(half_gap * half_gap + c2);
  const double upper = mean + radius;
  // Product form for the smaller root keeps relative accuracy near purity.
  const double lower = upper > 0.0 ? (a * b - c2) / upper : mean - radius;
  return {clamp_probability(upper), clamp_probability(lower)};
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Entropy gained by dephasing one coherent block; nonnegative because the
// diagonal is majorized by the spectrum.
double block_discord(double a, double b, Complex c) {
  if (c == Complex{}) return 0.0;
  const auto lambda = block_eigenvalues(a, b, c);
  const double d = xlogx(lambda[0]) + xlogx(lambda[1]) - xlogx(a) - xlogx(b);
  return std::max(d, 0.0);
}

}  // namespace

double shannon_entropy(std::span<const double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -1e-9) {
      std::ostringstream msg;
      msg << "shannon_entropy: negative probability " << x;
      throw InvalidInput(msg.str());
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "shannon_entropy: probabilities sum to " << sum;
    throw InvalidInput(msg.str());
  }
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

double binary_entropy(double p) {
  const std::array<double, 2> dist{p, 1.0 - p};
  return shannon_entropy(dist);
}

TwoOrbitalRDM::TwoOrbitalRDM(double rho1, double rho2, double rho3,
                             double rho4, Complex alpha, Complex gamma_off)
    : rho_{rho1, rho2, rho3, rho4}, alpha_(alpha), gamma_off_(gamma_off) {
  const double sum = rho1 + rho2 + rho3 + rho4;
  if (!std::isfinite(sum) || std::abs(sum - 1.0) > kClampTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "TwoOrbitalRDM: populations sum to " << sum;
    throw InvalidInput(msg.str());
  }
  for (double& r : rho_) {
    if (r < -kClampTol) {
      std::ostringstream msg;
      msg << "TwoOrbitalRDM: negative population " << r;
      throw InvalidInput(msg.str());
    }
    r = clamp_probability(r);
  }
  if (!std::isfinite(std::abs(alpha)) || !std::isfinite(std::abs(gamma_off)))
    throw InvalidInput("TwoOrbitalRDM: non-finite coherence");
  if (std::norm(alpha_) > rho_[0] * rho_[3] + kClampTol)
    throw InvalidInput("TwoOrbitalRDM: |alpha|^2 exceeds rho1*rho4");
  if (std::norm(gamma_off_) > rho_[1] * rho_[2] + kClampTol)
    throw InvalidInput("TwoOrbitalRDM: |gamma|^2 exceeds rho2*rho3");
}

Eigen::Matrix4cd TwoOrbitalRDM::matrix() const {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) m(k, k) = rho_[k];
  m(0, 3) = alpha_;
  m(3, 0) = std::conj(alpha_);
  m(1, 2) = gamma_off_;
  m(2, 1) = std::conj(gamma_off_);
  return m;
}

std::array<double, 2> TwoOrbitalRDM::marginal_i() const {
  return {rho_[0] + rho_[1], rho_[2] + rho_[3]};
}

std::array<double, 2> TwoOrbitalRDM::marginal_j() const {
  return {rho_[0] + rho_[2], rho_[1] + rho_[3]};
}

std::array<double, 4> eigenvalues(const TwoOrbitalRDM& rdm) {
  const auto outer = block_eigenvalues(rdm.rho1(), rdm.rho4(), rdm.alpha());
  const auto inner = block_eigenvalues(rdm.rho2(), rdm.rho3(), rdm.gamma_off());
  return {outer[0], outer[1], inner[0], inner[1]};
}

TwoOrbitalRDM dephase(const TwoOrbitalRDM& rdm) {
  return TwoOrbitalRDM(rdm.rho1(), rdm.rho2(), rdm.rho3(), rdm.rho4());
}

Eigen::Matrix4cd occupation_measurement(const Eigen::Matrix4cd& rho) {
  // Single-orbital projectors |0><0| and |1><1|; tensor order (i, j).
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int ki = 0; ki < 2; ++ki) {
    for (int kj = 0; kj < 2; ++kj) {
      Eigen::Matrix4cd proj = Eigen::Matrix4cd::Zero();
      proj(2 * ki + kj, 2 * ki + kj) = 1.0;
      out += proj * rho * proj;
    }
  }
  return out;
}

double entropy(const TwoOrbitalRDM& rdm) {
  const auto lambda = eigenvalues(rdm);
  return shannon_entropy(lambda);
}

double dephased_entropy(const TwoOrbitalRDM& rdm) {
  return shannon_entropy(rdm.populations());
}

double discord(const TwoOrbitalRDM& rdm) {
  return block_discord(rdm.rho1(), rdm.rho4(), rdm.alpha()) +
         block_discord(rdm.rho2(), rdm.rho3(), rdm.gamma_off());
}

double mutual_information(const TwoOrbitalRDM& rdm) {
  return shannon_entropy(rdm.marginal_i()) + shannon_entropy(rdm.marginal_j()) -
         entropy(rdm);
}

double classical_correlation(const TwoOrbitalRDM& rdm) {
  return shannon_entropy(rdm.marginal_i()) + shannon_entropy(rdm.marginal_j()) -
         dephased_entropy(rdm);
}

CorrelationReport report(const TwoOrbitalRDM& rdm) {
  CorrelationReport r;
  r.entropy_ab = entropy(rdm);
  r.entropy_dephased = dephased_entropy(rdm);
  r.entropy_a = shannon_entropy(rdm.marginal_i());
  r.entropy_b = shannon_entropy(rdm.marginal_j());
  r.discord = discord(rdm);
  r.mutual_info = r.entropy_a + r.entropy_b - r.entropy_ab;
  r.classical_corr = r.entropy_a + r.entropy_b - r.entropy_dephased;
  return r;
}

}  // namespace fermidiscord
