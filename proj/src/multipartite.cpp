#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fermidiscord/errors.hpp"
#include "fermidiscord/fock.hpp"

namespace fermidiscord {

namespace {

void check_size(int mode_count) {
  if (mode_count < 1 || mode_count > kMaxMultipartiteModes) {
    std::ostringstream msg;
    msg << "multipartite discord: " << mode_count << " orbitals outside the size guard [1, "
        << kMaxMultipartiteModes << "]";
    throw InvalidInput(msg.str());
  }
}

double von_neumann(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("multipartite discord: eigensolver failed");
  double s = 0.0;
  for (double p : es.eigenvalues())
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

// Trace out the lowest `drop` bits.
Eigen::MatrixXcd trace_low_bits(const Eigen::MatrixXcd& rho, int drop) {
  const Eigen::Index low = Eigen::Index{1} << drop;
  const Eigen::Index keep = rho.rows() / low;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep, keep);
  for (Eigen::Index a = 0; a < keep; ++a)
    for (Eigen::Index b = 0; b < keep; ++b)
      for (Eigen::Index l = 0; l < low; ++l) out(a, b) += rho(a * low + l, b * low + l);
  return out;
}

// Marginal of bit 0 after tracing everything above it.
Eigen::Matrix2cd first_bit(const Eigen::MatrixXcd& rho) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (Eigen::Index t = 0; t < rho.rows() / 2; ++t)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out(a, b) += rho(2 * t + a, 2 * t + b);
  return out;
}

// S(bit 0 | occupation measurement of the remaining bits).
double conditional_entropy(const Eigen::MatrixXcd& rho) {
  double s = 0.0;
  for (Eigen::Index t = 0; t < rho.rows() / 2; ++t) {
    Eigen::Matrix2cd block;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) block(a, b) = rho(2 * t + a, 2 * t + b);
    const double p = block.trace().real();
    if (p <= 0.0) continue;
    s += p * von_neumann(block / p);
  }
  return s;
}

}  // namespace

Eigen::MatrixXcd full_density_matrix(const FockVector& v) {
  const int n = v.space->mode_count();
  check_size(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  const auto& basis = v.space->basis();
  for (std::size_t k = 0; k < basis.size(); ++k)
    psi(static_cast<Eigen::Index>(basis[k])) = v.amplitudes(static_cast<Eigen::Index>(k));
  return psi * psi.adjoint();
}

Eigen::MatrixXcd reorder_modes(const Eigen::MatrixXcd& rho, int mode_count,
                               std::span<const int> ordering) {
  check_size(mode_count);
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  if (rho.rows() != dim || rho.cols() != dim)
    throw InvalidInput("reorder_modes: density matrix shape does not match the mode count");
  if (static_cast<int>(ordering.size()) != mode_count)
    throw InvalidInput("reorder_modes: ordering length does not match the mode count");
  std::vector<int> position(static_cast<std::size_t>(mode_count), -1);
  for (int p = 0; p < mode_count; ++p) {
    const int old = ordering[static_cast<std::size_t>(p)];
    if (old < 0 || old >= mode_count || position[static_cast<std::size_t>(old)] != -1)
      throw InvalidInput("reorder_modes: ordering is not a permutation");
    position[static_cast<std::size_t>(old)] = p;
  }

  std::vector<Eigen::Index> target(static_cast<std::size_t>(dim));
  std::vector<double> sign(static_cast<std::size_t>(dim));
  for (Eigen::Index s = 0; s < dim; ++s) {
    Eigen::Index t = 0;
    std::vector<int> seq;
    for (int old = 0; old < mode_count; ++old) {
      if (((s >> old) & 1) == 0) continue;
      const int p = position[static_cast<std::size_t>(old)];
      t |= Eigen::Index{1} << p;
      seq.push_back(p);
    }
    int inversions = 0;
    for (std::size_t a = 0; a < seq.size(); ++a)
      for (std::size_t b = a + 1; b < seq.size(); ++b)
        if (seq[a] > seq[b]) ++inversions;
    target[static_cast<std::size_t>(s)] = t;
    sign[static_cast<std::size_t>(s)] = inversions % 2 == 0 ? 1.0 : -1.0;
  }

  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      out(target[static_cast<std::size_t>(a)], target[static_cast<std::size_t>(b)]) =
          sign[static_cast<std::size_t>(a)] * sign[static_cast<std::size_t>(b)] * rho(a, b);
  return out;
}

MultipartiteResult multipartite_discord(const Eigen::MatrixXcd& rho, int mode_count,
                                        std::span<const int> ordering) {
  check_size(mode_count);
  const Eigen::Index dim = Eigen::Index{1} << mode_count;
  if (rho.rows() != dim || rho.cols() != dim)
    throw InvalidInput("multipartite discord: density matrix shape does not match");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kCrossCheckTol)
    throw InvalidInput("multipartite discord: density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-8)
    throw InvalidInput("multipartite discord: density matrix trace differs from 1");

  const Eigen::MatrixXcd chain = ordering.empty() ? rho : reorder_modes(rho, mode_count, ordering);

  MultipartiteResult r;
  r.entropy = von_neumann(chain);
  // tail[k]: reduced state of modes k, ..., n-1 (bit 0 is mode k).
  std::vector<Eigen::MatrixXcd> tail(static_cast<std::size_t>(mode_count));
  tail[0] = chain;
  for (int k = 1; k < mode_count; ++k) tail[static_cast<std::size_t>(k)] = trace_low_bits(tail[static_cast<std::size_t>(k - 1)], 1);

  r.total_correlation = r.entropy;
  r.classical_correlation = r.entropy;
  for (int k = 0; k + 1 < mode_count; ++k) {
    const auto& here = tail[static_cast<std::size_t>(k)];
    const double s_k = von_neumann(first_bit(here));
    const double mutual =
        s_k + von_neumann(tail[static_cast<std::size_t>(k + 1)]) - von_neumann(here);
    const double classical = s_k - conditional_entropy(here);
    r.mutual_terms.push_back(mutual);
    r.classical_terms.push_back(classical);
    r.total_correlation += mutual;
    r.classical_correlation += classical;
  }
  r.discord = r.total_correlation - r.classical_correlation;
  return r;
}

MultipartiteResult multipartite_discord(const FockVector& v, std::span<const int> ordering) {
  return multipartite_discord(full_density_matrix(v), v.space->mode_count(), ordering);
}

}  // namespace fermidiscord
