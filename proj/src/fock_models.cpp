#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fermidiscord/errors.hpp"
#include "fermidiscord/fock.hpp"

namespace fermidiscord {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr int kKrylovSize = 120;
constexpr int kMaxRestarts = 50;

void fix_phase(Eigen::VectorXcd& v) {
  Eigen::Index pivot = 0;
  for (Eigen::Index k = 1; k < v.size(); ++k) {
    if (std::abs(v(k)) > std::abs(v(pivot)) + 1e-12) pivot = k;
  }
  v *= std::conj(v(pivot)) / std::abs(v(pivot));
  v(pivot) = v(pivot).real();
}

struct Ritz {
  double value;
  Eigen::VectorXcd vector;
};

Ritz dense_lowest(const Eigen::SparseMatrix<Complex>& h) {
  const Eigen::MatrixXcd dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("exact_ground_state: dense eigensolver failed");
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

// Restarted Lanczos with full reorthogonalization for the lowest eigenpair.
Ritz lanczos_lowest(const Eigen::SparseMatrix<Complex>& h) {
  const Eigen::Index dim = h.rows();
  Eigen::VectorXcd start = Eigen::VectorXcd::Ones(dim) / std::sqrt(static_cast<double>(dim));
  Ritz best{0.0, start};
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    const int m = static_cast<int>(std::min<Eigen::Index>(dim, kKrylovSize));
    Eigen::MatrixXcd q(dim, m);
    Eigen::VectorXd alpha(m), beta(m);
    q.col(0) = start.normalized();
    int used = m;
    for (int k = 0; k < m; ++k) {
      Eigen::VectorXcd w = h * q.col(k);
      alpha(k) = q.col(k).dot(w).real();
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass)
        w -= q.leftCols(k + 1) * (q.leftCols(k + 1).adjoint() * w);
      beta(k) = w.norm();
      if (k + 1 == m) break;
      if (beta(k) < 1e-12) {
        used = k + 1;
        break;
      }
      q.col(k + 1) = w / beta(k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    if (used == 1) {
      best = {alpha(0), q.col(0)};
    } else {
      tri.computeFromTridiagonal(alpha.head(used), beta.head(used - 1),
                                 Eigen::ComputeEigenvectors);
      if (tri.info() != Eigen::Success)
        throw NumericalFailure("exact_ground_state: Lanczos tridiagonal solve failed");
      const Eigen::VectorXcd y = tri.eigenvectors().col(0).cast<Complex>();
      best = {tri.eigenvalues()(0), (q.leftCols(used) * y).normalized()};
    }
    const double res = (h * best.vector - best.value * best.vector).norm();
    if (res <= 0.1 * kResidualTol) break;
    start = best.vector;
  }
  return best;
}

}  // namespace

std::vector<OperatorTerm> two_level_terms(const TwoLevelCouplings& k) {
  std::vector<OperatorTerm> terms;
  const int n = k.omega;
  for (int s = 0; s < n; ++s) {
    for (int sigma : {-1, 1}) {
      const int mode = two_level_mode(s, sigma);
      terms.push_back({0.5 * k.epsilon * sigma, {cdag(mode), c(mode)}});
    }
  }
  if (k.monopole != 0.0) {
    const Complex coef = -0.5 * k.monopole;
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        const int us = two_level_mode(s, 1), ls = two_level_mode(s, -1);
        const int ut = two_level_mode(t, 1), lt = two_level_mode(t, -1);
        terms.push_back({coef, {cdag(us), c(ls), cdag(ut), c(lt)}});
        terms.push_back({coef, {cdag(ls), c(us), cdag(lt), c(ut)}});
      }
    }
  }
  if (k.pairing != 0.0) {
    // A_s = sum_{m>0} c_{s,-m} c_{s,m}; slot 2p holds m = p+1, slot 2p+1 holds -m.
    const Complex coef = -k.pairing;
    for (int sa : {-1, 1}) {
      for (int sb : {-1, 1}) {
        for (int p = 0; p < n / 2; ++p) {
          for (int q = 0; q < n / 2; ++q) {
            terms.push_back({coef,
                             {cdag(two_level_mode(2 * p, sa)),
                              cdag(two_level_mode(2 * p + 1, sa)),
                              c(two_level_mode(2 * q + 1, sb)),
                              c(two_level_mode(2 * q, sb))}});
          }
        }
      }
    }
  }
  return terms;
}

SparseHermitianOperator build_two_level(const TwoLevelCouplings& k) {
  if (k.omega < 1 || 2 * k.omega > kMaxFockModes) {
    std::ostringstream msg;
    msg << "two-level model: 2 * omega must lie in [2, " << kMaxFockModes << "]";
    throw InvalidInput(msg.str());
  }
  if (k.pairing != 0.0 && k.omega % 2 != 0)
    throw InvalidInput("two-level model: pairing requires even omega");
  const auto terms = two_level_terms(k);
  return build_operator(make_fock_space(2 * k.omega, Sector::number(k.omega)), terms);
}

SparseHermitianOperator build_agassi(const AgassiModelSpec& spec) {
  spec.validate();
  return build_two_level({spec.omega, spec.epsilon, spec.monopole_strength(),
                          spec.pairing_strength()});
}

SparseHermitianOperator build_lmg(int n, double chi) {
  if (n < 2) throw InvalidInput("LMG: particle number must be >= 2");
  if (!(chi >= 0.0) || !std::isfinite(chi))
    throw InvalidInput("LMG: chi must be finite and >= 0");
  return build_two_level({n, 1.0, chi / (n - 1), 0.0});
}

EigenPair exact_ground_state(const SparseHermitianOperator& op) {
  const auto dim = op.space->dimension();
  if (dim == 0) throw InvalidInput("exact_ground_state: empty sector");
  Ritz r = dim <= kDenseEigenLimit ? dense_lowest(op.matrix) : lanczos_lowest(op.matrix);
  fix_phase(r.vector);
  const double res = (op.matrix * r.vector - r.value * r.vector).norm();
  if (res > kResidualTol) {
    std::ostringstream msg;
    msg << "exact_ground_state: residual " << res << " above tolerance";
    throw NumericalFailure(msg.str());
  }
  return {r.value, FockVector{op.space, std::move(r.vector)}, res};
}

}  // namespace fermidiscord
