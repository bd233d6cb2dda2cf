#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "fermidiscord/errors.hpp"
#include "fermidiscord/fock.hpp"

namespace fermidiscord {

std::optional<SignedState> apply_mode_operator(ModeOp op, int mode, Bitstring state) {
  const Bitstring bit = Bitstring{1} << mode;
  const bool occupied = (state & bit) != 0;
  if (op == ModeOp::Create ? occupied : !occupied) return std::nullopt;
  const int below = std::popcount(state & (bit - 1));
  return SignedState{below % 2 == 0 ? 1 : -1, state ^ bit};
}

std::optional<SignedState> apply_string(std::span<const ModeOperator> ops,
                                        Bitstring state) {
  SignedState acc{1, state};
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const auto next = apply_mode_operator(it->op, it->mode, acc.state);
    if (!next) return std::nullopt;
    acc.sign *= next->sign;
    acc.state = next->state;
  }
  return acc;
}

bool Sector::contains(Bitstring s) const {
  const int n = std::popcount(s);
  if (particles && n != *particles) return false;
  if (parity && n % 2 != *parity) return false;
  return true;
}

FockSpace::FockSpace(int mode_count, Sector sector)
    : mode_count_(mode_count), sector_(sector) {
  if (mode_count < 1 || mode_count > kMaxFockModes) {
    std::ostringstream msg;
    msg << "Fock space: mode count " << mode_count << " outside [1, "
        << kMaxFockModes << "]";
    throw InvalidInput(msg.str());
  }
  if (sector.particles && (*sector.particles < 0 || *sector.particles > mode_count))
    throw InvalidInput("Fock space: particle number out of range");
  if (sector.particles && sector.parity && *sector.particles % 2 != *sector.parity)
    throw InvalidInput("Fock space: particle number and parity disagree");

  const Bitstring end = Bitstring{1} << mode_count;
  if (sector.particles) {
    // Gosper's hack over all combinations with the given popcount.
    const int k = *sector.particles;
    if (k == 0) {
      basis_.push_back(0);
    } else {
      for (Bitstring s = (Bitstring{1} << k) - 1; s < end;) {
        basis_.push_back(s);
        if (basis_.size() > kMaxSectorDimension) break;
        const Bitstring low = s & (~s + 1);
        const Bitstring ripple = s + low;
        s = (((ripple ^ s) >> 2) / low) | ripple;
      }
    }
  } else {
    for (Bitstring s = 0; s < end; ++s) {
      if (sector.contains(s)) basis_.push_back(s);
      if (basis_.size() > kMaxSectorDimension) break;
    }
  }
  if (basis_.size() > kMaxSectorDimension) {
    std::ostringstream msg;
    msg << "Fock space: sector dimension exceeds " << kMaxSectorDimension;
    throw InvalidInput(msg.str());
  }
}

std::optional<std::size_t> FockSpace::index_of(Bitstring s) const {
  const auto it = std::lower_bound(basis_.begin(), basis_.end(), s);
  if (it == basis_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

FockSpacePtr make_fock_space(int mode_count, Sector sector) {
  return std::make_shared<const FockSpace>(mode_count, sector);
}

FockVector make_fock_vector(FockSpacePtr space, Eigen::VectorXcd amplitudes) {
  if (!space) throw InvalidInput("Fock vector: null space");
  if (static_cast<std::size_t>(amplitudes.size()) != space->dimension())
    throw InvalidInput("Fock vector: amplitude count does not match the space");
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw InvalidInput("Fock vector: zero or non-finite norm");
  amplitudes /= norm;
  return {std::move(space), std::move(amplitudes)};
}

FockVector basis_vector(FockSpacePtr space, Bitstring state) {
  const auto idx = space->index_of(state);
  if (!idx) throw InvalidInput("basis_vector: state not in the sector");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space->dimension()));
  amps(static_cast<Eigen::Index>(*idx)) = 1.0;
  return {std::move(space), std::move(amps)};
}

Complex expectation(const FockVector& v, std::span<const ModeOperator> ops) {
  const auto& basis = v.space->basis();
  Complex acc = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Complex a = v.amplitudes(static_cast<Eigen::Index>(k));
    if (a == Complex{}) continue;
    const auto out = apply_string(ops, basis[k]);
    if (!out) continue;
    const auto idx = v.space->index_of(out->state);
    if (!idx) continue;
    acc += std::conj(v.amplitudes(static_cast<Eigen::Index>(*idx))) *
           static_cast<double>(out->sign) * a;
  }
  return acc;
}

Eigen::VectorXcd apply_terms(std::span<const OperatorTerm> terms,
                             const FockVector& v, const FockSpace& target) {
  Eigen::VectorXcd out =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(target.dimension()));
  const auto& basis = v.space->basis();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Complex a = v.amplitudes(static_cast<Eigen::Index>(k));
    if (a == Complex{}) continue;
    for (const auto& term : terms) {
      const auto res = apply_string(term.ops, basis[k]);
      if (!res) continue;
      const auto idx = target.index_of(res->state);
      if (!idx) throw NumericalFailure("apply_terms: result leaves the target space");
      out(static_cast<Eigen::Index>(*idx)) +=
          term.coefficient * static_cast<double>(res->sign) * a;
    }
  }
  return out;
}

SparseHermitianOperator build_operator(FockSpacePtr space,
                                       std::span<const OperatorTerm> terms) {
  const auto& basis = space->basis();
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (const auto& term : terms) {
      const auto res = apply_string(term.ops, basis[col]);
      if (!res) continue;
      const auto row = space->index_of(res->state);
      if (!row) throw NumericalFailure("build_operator: term leaves the sector");
      triplets.emplace_back(static_cast<int>(*row), static_cast<int>(col),
                            term.coefficient * static_cast<double>(res->sign));
    }
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::SparseMatrix<Complex> m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune([](Eigen::Index, Eigen::Index, const Complex& x) { return x != Complex{}; });
  m.makeCompressed();

  const Eigen::SparseMatrix<Complex> diff =
      m - Eigen::SparseMatrix<Complex>(m.adjoint());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k)
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  if (worst > kStructuralTol) {
    std::ostringstream msg;
    msg << "build_operator: operator is not Hermitian (residual " << worst << ")";
    throw NumericalFailure(msg.str());
  }
  return {std::move(space), std::move(m)};
}

}  // namespace fermidiscord
