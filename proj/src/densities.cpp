#include "fermidiscord/densities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fermidiscord/errors.hpp"
#include "fermidiscord/grid.hpp"

namespace fermidiscord {

namespace {

constexpr double kIngestTol = 1e-8;
constexpr double kRangeTol = 1e-10;

void require_square(const Eigen::MatrixXcd& m, int n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream msg;
    msg << name << " must be " << n << "x" << n << ", got " << m.rows() << "x"
        << m.cols();
    throw InvalidInput(msg.str());
  }
}

double clamp_unit(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

SymmetryResiduals symmetrize(DensitySet& d) {
  const int n = d.omega;
  if (n < 1) throw InvalidInput("omega must be positive");
  require_square(d.gamma, n, "gamma");
  require_square(d.kappa, n, "kappa");
  if (d.two_body_diag.rows() != n || d.two_body_diag.cols() != n)
    throw InvalidInput("two_body_diag must be omega x omega");

  SymmetryResiduals r;
  const Eigen::MatrixXcd herm = 0.5 * (d.gamma + d.gamma.adjoint());
  r.gamma_hermiticity = (d.gamma - herm).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd anti = 0.5 * (d.kappa - d.kappa.transpose());
  r.kappa_antisymmetry = (d.kappa - anti).cwiseAbs().maxCoeff();
  // The two-body diagonal is zero on i == j whatever was supplied.
  Eigen::MatrixXd off_input = d.two_body_diag;
  off_input.diagonal().setZero();
  const Eigen::MatrixXd sym = 0.5 * (off_input + off_input.transpose());
  r.two_body_symmetry = (off_input - sym).cwiseAbs().maxCoeff();

  if (r.gamma_hermiticity > kIngestTol || r.kappa_antisymmetry > kIngestTol ||
      r.two_body_symmetry > kIngestTol) {
    std::ostringstream msg;
    msg << "density symmetry residual too large (gamma " << r.gamma_hermiticity
        << ", kappa " << r.kappa_antisymmetry << ", two-body "
        << r.two_body_symmetry << ")";
    throw InvalidInput(msg.str());
  }
  d.gamma = herm;
  d.kappa = anti;
  d.two_body_diag = sym;
  return r;
}

void validate(const DensitySet& d) {
  const int n = d.omega;
  if (n < 1) throw InvalidInput("omega must be positive");
  require_square(d.gamma, n, "gamma");
  require_square(d.kappa, n, "kappa");
  if (d.two_body_diag.rows() != n || d.two_body_diag.cols() != n)
    throw InvalidInput("two_body_diag must be omega x omega");

  if ((d.gamma - d.gamma.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol)
    throw InvalidInput("gamma is not Hermitian");
  if ((d.kappa + d.kappa.transpose()).cwiseAbs().maxCoeff() > kStructuralTol)
    throw InvalidInput("kappa is not antisymmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d.gamma,
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -kRangeTol || ev.maxCoeff() > 1.0 + kRangeTol) {
    std::ostringstream msg;
    msg << "gamma eigenvalues outside [0, 1]: [" << ev.minCoeff() << ", "
        << ev.maxCoeff() << "]";
    throw InvalidInput(msg.str());
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double g = d.two_body_diag(i, j);
      const double bound =
          std::min(d.gamma(i, i).real(), d.gamma(j, j).real()) + kRangeTol;
      if (g < -kRangeTol || g > bound) {
        std::ostringstream msg;
        msg << "two_body_diag(" << i << ", " << j << ") = " << g
            << " outside [0, min(gamma_ii, gamma_jj)]";
        throw InvalidInput(msg.str());
      }
      if (std::abs(g - d.two_body_diag(j, i)) > kStructuralTol)
        throw InvalidInput("two_body_diag is not symmetric");
    }
  }
}

DensitySet make_density_set(Eigen::MatrixXcd gamma, Eigen::MatrixXcd kappa,
                            Eigen::MatrixXd two_body_diag) {
  DensitySet d{static_cast<int>(gamma.rows()), std::move(gamma),
               std::move(kappa), std::move(two_body_diag)};
  symmetrize(d);
  validate(d);
  return d;
}

TwoOrbitalRDM assemble_rdm(const DensitySet& d, int i, int j) {
  if (i == j) throw InvalidInput("assemble_rdm: orbitals must differ");
  if (i < 0 || j < 0 || i >= d.omega || j >= d.omega) {
    std::ostringstream msg;
    msg << "assemble_rdm: orbital index out of range (" << i << ", " << j
        << ") for omega " << d.omega;
    throw InvalidInput(msg.str());
  }
  const double gii = d.gamma(i, i).real();
  const double gjj = d.gamma(j, j).real();
  const double gij = d.two_body_diag(i, j);
  try {
    return TwoOrbitalRDM(1.0 - gii - gjj + gij, gjj - gij, gii - gij, gij,
                         std::conj(d.kappa(j, i)), d.gamma(j, i));
  } catch (const InvalidInput& e) {
    std::ostringstream msg;
    msg << "inconsistent densities for pair (" << i << ", " << j
        << "): " << e.what();
    throw NumericalFailure(msg.str());
  }
}

Eigen::MatrixXd qp_vacuum_two_body(const Eigen::MatrixXcd& gamma,
                                   const Eigen::MatrixXcd& kappa) {
  const auto n = gamma.rows();
  if (gamma.cols() != n || kappa.rows() != n || kappa.cols() != n)
    throw InvalidInput("qp_vacuum_two_body: shape mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double value = gamma(i, i).real() * gamma(j, j).real() +
                           std::norm(kappa(i, j)) - std::norm(gamma(i, j));
      if (value < -kRangeTol || value > 1.0 + kRangeTol) {
        std::ostringstream msg;
        msg << "qp_vacuum_two_body: Gamma(" << i << ", " << j << ") = "
            << value << " is not a quasiparticle-vacuum value";
        throw InvalidInput(msg.str());
      }
      out(i, j) = value;
    }
  }
  return out;
}

NaturalOccupations natural_orbitals(const Eigen::MatrixXcd& gamma) {
  if (gamma.rows() != gamma.cols())
    throw InvalidInput("natural_orbitals: gamma must be square");
  if ((gamma - gamma.adjoint()).cwiseAbs().maxCoeff() > kIngestTol)
    throw InvalidInput("natural_orbitals: gamma is not Hermitian");
  const Eigen::MatrixXcd herm = 0.5 * (gamma + gamma.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("natural_orbitals: eigensolver failed");

  const auto n = gamma.rows();
  struct Column {
    double p;
    Eigen::Index pivot;
    Eigen::VectorXcd v;
  };
  std::vector<Column> cols;
  cols.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    Eigen::VectorXcd v = es.eigenvectors().col(k);
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double mag = std::abs(v(r));
      if (mag > best + kStructuralTol) {
        best = mag;
        pivot = r;
      }
    }
    v *= std::conj(v(pivot)) / std::abs(v(pivot));
    v(pivot) = v(pivot).real();
    cols.push_back({es.eigenvalues()(k), pivot, std::move(v)});
  }
  // Degenerate groups: order by pivot row.
  std::size_t begin = 0;
  while (begin < cols.size()) {
    std::size_t end = begin + 1;
    while (end < cols.size() && cols[end - 1].p - cols[end].p <= kRangeTol) ++end;
    std::stable_sort(cols.begin() + static_cast<std::ptrdiff_t>(begin),
                     cols.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const Column& a, const Column& b) { return a.pivot < b.pivot; });
    begin = end;
  }

  NaturalOccupations out{Eigen::VectorXd(n), Eigen::MatrixXcd(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.p(k) = cols[static_cast<std::size_t>(k)].p;
    out.basis.col(k) = cols[static_cast<std::size_t>(k)].v;
  }
  return out;
}

OneBodyDensities rotate_one_body(const Eigen::MatrixXcd& gamma,
                                 const Eigen::MatrixXcd& kappa,
                                 const Eigen::MatrixXcd& w) {
  if (w.rows() != gamma.rows() || kappa.rows() != gamma.rows())
    throw InvalidInput("rotate_one_body: shape mismatch");
  return {w.adjoint() * gamma * w, w.adjoint() * kappa * w.conjugate()};
}

double check_canonical(const BogoliubovTransform& t) {
  const auto n = t.u.rows();
  if (t.u.cols() != n || t.v.rows() != n || t.v.cols() != n)
    throw InvalidInput("check_canonical: U and V must be square of equal size");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const double r1 =
      (t.u.adjoint() * t.u + t.v.adjoint() * t.v - id).cwiseAbs().maxCoeff();
  const double r2 = (t.u * t.u.adjoint() + t.v.conjugate() * t.v.transpose() - id)
                        .cwiseAbs()
                        .maxCoeff();
  const double r3 =
      (t.u.transpose() * t.v + t.v.transpose() * t.u).cwiseAbs().maxCoeff();
  const double r4 = (t.u * t.v.adjoint() + t.v.conjugate() * t.u.transpose())
                        .cwiseAbs()
                        .maxCoeff();
  return std::max({r1, r2, r3, r4});
}

BogoliubovTransform compose(const BogoliubovTransform& a,
                            const BogoliubovTransform& b) {
  return {a.u * b.u + a.v.conjugate() * b.v, a.v * b.u + a.u.conjugate() * b.v};
}

OneBodyDensities transform_densities(const BogoliubovTransform& t,
                                     const Eigen::VectorXd& p) {
  const double violation = check_canonical(t);
  if (violation > kIngestTol) {
    std::ostringstream msg;
    msg << "transform_densities: transform is not canonical (violation "
        << violation << ")";
    throw InvalidInput(msg.str());
  }
  if (p.size() != t.u.rows())
    throw InvalidInput("transform_densities: occupation vector size mismatch");
  for (Eigen::Index l = 0; l < p.size(); ++l) {
    if (p(l) < -kStructuralTol || p(l) > 1.0 + kStructuralTol)
      throw InvalidInput("transform_densities: occupations must lie in [0, 1]");
  }
  const Eigen::MatrixXcd occ = p.cast<Complex>().asDiagonal();
  const Eigen::MatrixXcd& u = t.u;
  const Eigen::MatrixXcd& v = t.v;
  OneBodyDensities out;
  out.gamma = v.adjoint() * v + u.adjoint() * occ * u - v.adjoint() * occ * v;
  out.kappa = v.adjoint() * u.conjugate() + u.adjoint() * occ * v.conjugate() -
              v.adjoint() * occ * u.conjugate();
  return out;
}

double overall_entropy(const Eigen::MatrixXcd& gamma) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
    const double p = gamma(i, i).real();
    if (p < -kRangeTol || p > 1.0 + kRangeTol) {
      std::ostringstream msg;
      msg << "overall_entropy: occupation " << p << " outside [0, 1]";
      throw InvalidInput(msg.str());
    }
    s += binary_entropy(clamp_unit(p));
  }
  return s;
}

double one_body_entropy(const Eigen::MatrixXcd& gamma) {
  const NaturalOccupations nat = natural_orbitals(gamma);
  double s = 0.0;
  for (Eigen::Index l = 0; l < nat.p.size(); ++l) {
    const double p = nat.p(l);
    if (p < -kIngestTol || p > 1.0 + kIngestTol)
      throw InvalidInput("one_body_entropy: natural occupation outside [0, 1]");
    const double c = clamp_unit(p);
    if (c > 0.0) s -= c * std::log(c);
  }
  return s;
}

Eigen::MatrixXd all_pairs_discord(const DensitySet& d, int threads) {
  const int n = d.omega;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const double value = discord(assemble_rdm(d, i, j));
    out(i, j) = value;
    out(j, i) = value;
  });
  return out;
}

}  // namespace fermidiscord
