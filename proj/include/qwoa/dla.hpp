#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwoa/problems.hpp"
#include "qwoa/spectrum.hpp"

namespace qwoa {

/// A skew-Hermitian operator of the form alpha * iH_C + expand(B).
///
/// `block` is m x m; expand(B) is the N x N matrix whose (i, j) block, of
/// shape d_i x d_j, is filled with the constant B(i, j). Skew-Hermitian
/// means B(j, i) = -conj(B(i, j)), so the diagonal is purely imaginary.
struct BlockElement {
  double alpha = 0.0;
  Eigen::MatrixXcd block;

  static BlockElement zero(std::size_t m);
};

/// i H_C as a block element.
BlockElement cost_generator(const CostSpectrum& spec);
/// i J (all-ones mixer) as a block element.
BlockElement mixer_generator(const CostSpectrum& spec);

/// Re Tr[A^dagger E] of the expanded N x N matrices, computed from blocks.
double inner(const CostSpectrum& spec, const BlockElement& a, const BlockElement& e);
double norm(const CostSpectrum& spec, const BlockElement& a);

/// [A, E] in compressed form. The result always has alpha = 0.
BlockElement bracket(const CostSpectrum& spec, const BlockElement& a, const BlockElement& e);

/// Re Tr[iI^dagger X] = Im Tr X, the component along the identity direction.
double identity_component(const CostSpectrum& spec, const BlockElement& x);

/// Dense N x N matrix represented by `x`. Intended for small spectra.
Eigen::MatrixXcd expand(const CostSpectrum& spec, const BlockElement& x);

struct LieBasis {
  std::vector<BlockElement> elements;
  std::size_t dim() const { return elements.size(); }
};

inline constexpr double kDefaultClosureTolerance = 1e-9;
inline constexpr double kResidualFloor = 1e-12;

/// Real Lie closure of {iH_C, iJ}. Worklist over newly accepted elements,
/// each bracketed against the whole current basis in FIFO order; residuals
/// are orthogonalized twice and kept if their norm exceeds
/// max(tol * |candidate|, 1e-12).
LieBasis lie_closure(const CostSpectrum& spec, double tol = kDefaultClosureTolerance);

/// Dimension after quotienting out the identity direction.
std::size_t traceless_dimension(const CostSpectrum& spec, const LieBasis& basis);

/// Sum over basis elements of <E_j, H>^2. Throws DomainError when the basis
/// is not orthonormal to 1e-9.
double g_purity(const CostSpectrum& spec, const LieBasis& basis, const BlockElement& h);

/// Largest deviation of the basis Gram matrix from the identity.
double orthonormality_error(const CostSpectrum& spec, const LieBasis& basis);

/// JSON array of {"alpha": a, "B": [[re, im], ...]} with B row-major.
std::string basis_to_json(const LieBasis& basis);

inline constexpr std::uint64_t kDenseClosureBudget = 64;

struct DenseClosure {
  std::size_t dim = 0;
  std::size_t traceless_dim = 0;
};

/// Oracle: Lie closure of {iH_C, iJ} with explicit |S'| x |S'| matrices,
/// in exact modular arithmetic (costs must be integers). `tol` is validated
/// for interface symmetry with lie_closure but no rounding occurs.
DenseClosure dense_lie_closure(const ProblemInstance& inst, double tol = kDefaultClosureTolerance,
                               std::uint64_t budget = kDenseClosureBudget);

/// Same oracle over an explicit per-solution cost list.
DenseClosure dense_lie_closure(const std::vector<double>& costs,
                               double tol = kDefaultClosureTolerance,
                               std::uint64_t budget = kDenseClosureBudget);

}  // namespace qwoa
