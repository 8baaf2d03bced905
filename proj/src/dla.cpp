#include "qwoa/dla.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

#include "qwoa/errors.hpp"
#include "qwoa/sim.hpp"

namespace qwoa {

namespace {

using Eigen::Index;

constexpr Complex kI(0.0, 1.0);

Eigen::VectorXd weights(const CostSpectrum& spec) {
  Eigen::VectorXd d(static_cast<Index>(spec.size()));
  for (std::size_t i = 0; i < spec.size(); ++i) d(static_cast<Index>(i)) = static_cast<double>(spec.multiplicity(i));
  return d;
}

Eigen::VectorXd cost_vector(const CostSpectrum& spec) {
  return Eigen::Map<const Eigen::VectorXd>(spec.costs().data(), static_cast<Index>(spec.size()));
}

void check_dims(const CostSpectrum& spec, const BlockElement& x) {
  const auto m = static_cast<Index>(spec.size());
  if (x.block.rows() != m || x.block.cols() != m)
    throw DomainError("block element is " + std::to_string(x.block.rows()) + "x" +
                      std::to_string(x.block.cols()) + ", spectrum has m=" + std::to_string(m));
}

void axpy(double a, const BlockElement& x, BlockElement& y) {
  y.alpha += a * x.alpha;
  y.block += a * x.block;
}

void scale(BlockElement& x, double a) {
  x.alpha *= a;
  x.block *= a;
}

}  // namespace

BlockElement BlockElement::zero(std::size_t m) {
  const auto n = static_cast<Index>(m);
  return BlockElement{0.0, Eigen::MatrixXcd::Zero(n, n)};
}

BlockElement cost_generator(const CostSpectrum& spec) {
  auto x = BlockElement::zero(spec.size());
  x.alpha = 1.0;
  return x;
}

BlockElement mixer_generator(const CostSpectrum& spec) {
  const auto m = static_cast<Index>(spec.size());
  return BlockElement{0.0, Eigen::MatrixXcd::Constant(m, m, kI)};
}

double inner(const CostSpectrum& spec, const BlockElement& a, const BlockElement& e) {
  check_dims(spec, a);
  check_dims(spec, e);
  const Eigen::VectorXd d = weights(spec);
  const Eigen::VectorXd x = cost_vector(spec);

  // Lambda x Lambda: each (i, j) block holds d_i d_j identical entries.
  const double block_term =
      (d.asDiagonal() * (a.block.conjugate().cwiseProduct(e.block)) * d.asDiagonal()).real().sum();
  // i a H_C against a block diagonal: Re(conj(i a x_k) E_kk) = a x_k Im E_kk.
  const Eigen::VectorXd a_diag = a.block.diagonal().imag();
  const Eigen::VectorXd e_diag = e.block.diagonal().imag();
  const double cross = a.alpha * (d.cwiseProduct(x).dot(e_diag)) + e.alpha * (d.cwiseProduct(x).dot(a_diag));
  const double cost_term = a.alpha * e.alpha * d.dot(x.cwiseProduct(x));
  return block_term + cross + cost_term;
}

double norm(const CostSpectrum& spec, const BlockElement& a) {
  return std::sqrt(std::max(0.0, inner(spec, a, a)));
}

BlockElement bracket(const CostSpectrum& spec, const BlockElement& a, const BlockElement& e) {
  check_dims(spec, a);
  check_dims(spec, e);
  const auto m = static_cast<Index>(spec.size());
  const Eigen::VectorXd d = weights(spec);
  const Eigen::VectorXd x = cost_vector(spec);

  BlockElement out = BlockElement::zero(spec.size());
  out.block = a.block * d.asDiagonal() * e.block - e.block * d.asDiagonal() * a.block;
  // [i H_C, E]_{ij} = i (x_i - x_j) E_{ij}; [A, i H_C] = -[i H_C, A].
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      const Complex gap = kI * (x(i) - x(j));
      out.block(i, j) += gap * (a.alpha * e.block(i, j) - e.alpha * a.block(i, j));
    }
  return out;
}

double identity_component(const CostSpectrum& spec, const BlockElement& x) {
  check_dims(spec, x);
  const Eigen::VectorXd d = weights(spec);
  return x.alpha * d.dot(cost_vector(spec)) + d.dot(x.block.diagonal().imag());
}

Eigen::MatrixXcd expand(const CostSpectrum& spec, const BlockElement& x) {
  check_dims(spec, x);
  const auto n = static_cast<Index>(spec.total());
  Eigen::MatrixXcd out(n, n);
  Index row = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto di = static_cast<Index>(spec.multiplicity(i));
    Index col = 0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      const auto dj = static_cast<Index>(spec.multiplicity(j));
      out.block(row, col, di, dj).setConstant(x.block(static_cast<Index>(i), static_cast<Index>(j)));
      col += dj;
    }
    out.block(row, row, di, di).diagonal().array() += kI * x.alpha * spec.cost(i);
    row += di;
  }
  return out;
}

namespace {

// Labels each block entry (i, j) by its cost gap |x_i - x_j|: 0 for gap zero,
// k >= 1 for the k-th distinct positive gap. ad(iH_C) acts on entry (i, j) as
// multiplication by i (x_i - x_j), so these masks are its eigenspaces.
struct GapClasses {
  Eigen::MatrixXi label;
  int count = 1;
};

GapClasses gap_classes(const CostSpectrum& spec) {
  const auto m = static_cast<Index>(spec.size());
  double scale = 0.0;
  for (double x : spec.costs()) scale = std::max(scale, std::abs(x));
  const double eps = 1e-12 * std::max(1.0, scale);

  std::vector<double> gaps;
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) gaps.push_back(std::abs(spec.cost(static_cast<std::size_t>(i)) - spec.cost(static_cast<std::size_t>(j))));
  std::sort(gaps.begin(), gaps.end());
  std::vector<double> distinct;
  for (double g : gaps)
    if (distinct.empty() || g - distinct.back() > eps) distinct.push_back(g);

  GapClasses out;
  out.label = Eigen::MatrixXi::Zero(m, m);
  out.count = static_cast<int>(distinct.size()) + 1;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      if (i == j) continue;
      const double g = std::abs(spec.cost(static_cast<std::size_t>(i)) - spec.cost(static_cast<std::size_t>(j)));
      const auto it = std::lower_bound(distinct.begin(), distinct.end(), g - eps);
      out.label(i, j) = static_cast<int>(it - distinct.begin()) + 1;
    }
  return out;
}

}  // namespace

LieBasis lie_closure(const CostSpectrum& spec, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("closure tolerance must be positive");

  const GapClasses gaps = gap_classes(spec);
  LieBasis basis;
  std::vector<int> component;  // gap class of each basis element
  std::deque<std::size_t> worklist;

  // Everything lies in span{iH_C} + skew-Hermitian Lambda (real dim m^2);
  // iH_C is outside Lambda unless every class is a singleton or has cost 0.
  const std::size_t m = spec.size();
  bool cost_in_lambda = true;
  for (std::size_t i = 0; i < m; ++i)
    cost_in_lambda = cost_in_lambda && (spec.multiplicity(i) == 1 || spec.cost(i) == 0.0);
  const std::size_t ambient = m * m + (cost_in_lambda ? 0 : 1);

  // Distinct gap classes are orthogonal, so each part is reduced against its
  // own class only.
  auto orthogonalize_and_append = [&](BlockElement candidate, int c) {
    const double before = norm(spec, candidate);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t e = 0; e < basis.elements.size(); ++e)
        if (component[e] == c)
          axpy(-inner(spec, basis.elements[e], candidate), basis.elements[e], candidate);
    const double residual = norm(spec, candidate);
    if (residual > std::max(tol * before, kResidualFloor)) {
      scale(candidate, 1.0 / residual);
      basis.elements.push_back(std::move(candidate));
      component.push_back(c);
      worklist.push_back(basis.elements.size() - 1);
    }
  };

  // Every element of the algebra splits into ad(iH_C)-eigenspace components,
  // each again in the algebra. Appending the components separately keeps
  // Gram-Schmidt away from the Vandermonde-like conditioning of repeated
  // ad(iH_C) applications.
  auto try_append = [&](BlockElement candidate) {
    candidate.block = 0.5 * (candidate.block - candidate.block.adjoint()).eval();
    for (int c = 0; c < gaps.count; ++c) {
      BlockElement part = BlockElement::zero(m);
      if (c == 0) part.alpha = candidate.alpha;
      bool any = c == 0;
      for (Index i = 0; i < part.block.rows(); ++i)
        for (Index j = 0; j < part.block.cols(); ++j)
          if (gaps.label(i, j) == c) {
            part.block(i, j) = candidate.block(i, j);
            any = true;
          }
      if (any) orthogonalize_and_append(std::move(part), c);
    }
  };

  try_append(cost_generator(spec));
  try_append(mixer_generator(spec));

  // seen[j]: basis size when j was popped; pairs with older elements are done.
  std::vector<std::size_t> seen;
  while (!worklist.empty() && basis.dim() < ambient) {
    const std::size_t k = worklist.front();
    worklist.pop_front();
    seen.resize(basis.dim(), 0);
    seen[k] = basis.dim();
    for (std::size_t j = 0; j < basis.elements.size() && basis.dim() < ambient; ++j) {
      if (j == k || (seen[j] != 0 && k < seen[j])) continue;
      try_append(bracket(spec, basis.elements[k], basis.elements[j]));
    }
  }
  return basis;
}

std::size_t traceless_dimension(const CostSpectrum& spec, const LieBasis& basis) {
  // Projections of an orthonormal basis onto the traceless subspace have Gram
  // matrix I - t t^T / N; it loses rank exactly when iI lies in the span.
  double captured = 0.0;
  for (const auto& e : basis.elements) {
    const double t = identity_component(spec, e);
    captured += t * t;
  }
  const double n = static_cast<double>(spec.total());
  const bool contains_identity = std::abs(captured - n) <= 1e-8 * n;
  return basis.dim() - (contains_identity ? 1 : 0);
}

double orthonormality_error(const CostSpectrum& spec, const LieBasis& basis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.dim(); ++i)
    for (std::size_t j = i; j < basis.dim(); ++j) {
      const double g = inner(spec, basis.elements[i], basis.elements[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

double g_purity(const CostSpectrum& spec, const LieBasis& basis, const BlockElement& h) {
  if (orthonormality_error(spec, basis) > 1e-9)
    throw DomainError("g-purity needs an orthonormal basis");
  double s = 0.0;
  for (const auto& e : basis.elements) {
    const double c = inner(spec, e, h);
    s += c * c;
  }
  return s;
}

std::string basis_to_json(const LieBasis& basis) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : basis.elements) {
    nlohmann::ordered_json entry;
    entry["alpha"] = e.alpha;
    nlohmann::ordered_json b = nlohmann::ordered_json::array();
    for (Index i = 0; i < e.block.rows(); ++i)
      for (Index j = 0; j < e.block.cols(); ++j) b.push_back({e.block(i, j).real(), e.block(i, j).imag()});
    entry["B"] = std::move(b);
    out.push_back(std::move(entry));
  }
  return out.dump();
}

namespace {

// Exact Lie closure over F_p. Generators are i * integer matrices, so every
// nested commutator has Gaussian-integer entries and the real span of the
// algebra equals the rational span of the (Re, Im) integer vectors. Ranks are
// computed modulo a prime; a rank mod p never exceeds the rational rank, and
// the maximum over the primes 2^61 - 1 and 2^31 - 1 matches it barring a
// coincidence.
class ModField {
 public:
  // Arithmetic modulo the Mersenne prime 2^bits - 1; reduction is a fold.
  explicit ModField(int bits) : bits_(bits), p_((std::uint64_t{1} << bits) - 1) {}
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    const std::uint64_t s = (static_cast<std::uint64_t>(z) & p_) + static_cast<std::uint64_t>(z >> bits_);
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p_ - 2;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t from_int(long long v) const {
    const long long m = v % static_cast<long long>(p_);
    return static_cast<std::uint64_t>(m < 0 ? m + static_cast<long long>(p_) : m);
  }

 private:
  int bits_;
  std::uint64_t p_;
};

// N x N complex matrix over F_p: re and im row-major.
struct ModMatrix {
  std::vector<std::uint64_t> re, im;
};

bool all_zero(const std::vector<std::uint64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
}

// out += sign * (x y - y x) for real matrices over F_p.
void add_real_commutator(const ModField& f, std::size_t n, const std::vector<std::uint64_t>& x,
                         const std::vector<std::uint64_t>& y, bool negate,
                         std::vector<std::uint64_t>& out) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t xik = x[i * n + k], yik = y[i * n + k];
      if ((xik | yik) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t t = f.sub(f.mul(xik, y[k * n + j]), f.mul(yik, x[k * n + j]));
        out[i * n + j] = negate ? f.sub(out[i * n + j], t) : f.add(out[i * n + j], t);
      }
    }
}

// [a, b] with a = ar + i ai, b = br + i bi. Nested commutators of the
// generators are purely real or purely imaginary, so most terms vanish.
ModMatrix mod_commutator(const ModField& f, std::size_t n, const ModMatrix& a, const ModMatrix& b) {
  ModMatrix out{std::vector<std::uint64_t>(n * n, 0), std::vector<std::uint64_t>(n * n, 0)};
  const bool ar = !all_zero(a.re), ai = !all_zero(a.im), br = !all_zero(b.re), bi = !all_zero(b.im);
  if (ar && br) add_real_commutator(f, n, a.re, b.re, false, out.re);
  if (ai && bi) add_real_commutator(f, n, a.im, b.im, true, out.re);
  if (ar && bi) add_real_commutator(f, n, a.re, b.im, false, out.im);
  if (ai && br) add_real_commutator(f, n, a.im, b.re, false, out.im);
  return out;
}

// Fully reduced row-echelon basis of a subspace of F_p^len.
class ModSpan {
 public:
  explicit ModSpan(const ModField& f) : f_(f) {}

  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::uint64_t c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t t = 0; t < v.size(); ++t)
        if (rows_[r][t] != 0) v[t] = f_.sub(v[t], f_.mul(c, rows_[r][t]));
    }
    return v;
  }

  bool insert(const std::vector<std::uint64_t>& v) {
    auto w = reduce(v);
    std::size_t pivot = 0;
    while (pivot < w.size() && w[pivot] == 0) ++pivot;
    if (pivot == w.size()) return false;
    const std::uint64_t s = f_.inv(w[pivot]);
    for (auto& x : w) x = f_.mul(x, s);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::uint64_t c = rows_[r][pivot];
      if (c == 0) continue;
      for (std::size_t t = 0; t < w.size(); ++t)
        if (w[t] != 0) rows_[r][t] = f_.sub(rows_[r][t], f_.mul(c, w[t]));
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(pivot);
    return true;
  }

  std::size_t dim() const { return rows_.size(); }

 private:
  const ModField& f_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<std::uint64_t> flatten(const ModMatrix& x) {
  std::vector<std::uint64_t> v(x.re);
  v.insert(v.end(), x.im.begin(), x.im.end());
  return v;
}

DenseClosure modular_closure(const std::vector<long long>& costs, int prime_bits) {
  const ModField f(prime_bits);
  const std::size_t n = costs.size();
  ModSpan span(f);
  std::vector<ModMatrix> elements;
  std::deque<std::size_t> pending;

  auto try_append = [&](ModMatrix x) {
    if (span.insert(flatten(x))) {
      elements.push_back(std::move(x));
      pending.push_back(elements.size() - 1);
    }
  };

  ModMatrix hc{std::vector<std::uint64_t>(n * n, 0), std::vector<std::uint64_t>(n * n, 0)};
  for (std::size_t z = 0; z < n; ++z) hc.im[z * n + z] = f.from_int(costs[z]);
  try_append(hc);
  try_append(ModMatrix{std::vector<std::uint64_t>(n * n, 0), std::vector<std::uint64_t>(n * n, 1)});

  while (!pending.empty()) {
    const std::size_t k = pending.front();
    pending.pop_front();
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (j == k) continue;
      try_append(mod_commutator(f, n, elements[k], elements[j]));
    }
  }

  ModMatrix identity{std::vector<std::uint64_t>(n * n, 0), std::vector<std::uint64_t>(n * n, 0)};
  for (std::size_t z = 0; z < n; ++z) identity.im[z * n + z] = 1;
  const auto residual = span.reduce(flatten(identity));
  const bool contains_identity =
      std::all_of(residual.begin(), residual.end(), [](std::uint64_t v) { return v == 0; });

  DenseClosure out;
  out.dim = span.dim();
  out.traceless_dim = out.dim - (contains_identity ? 1 : 0);
  return out;
}

}  // namespace

DenseClosure dense_lie_closure(const std::vector<double>& costs, double tol, std::uint64_t budget) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("closure tolerance must be positive");
  if (costs.empty()) throw DomainError("dense closure needs a non-empty feasible space");
  if (costs.size() > budget)
    throw ResourceError("dense closure on " + std::to_string(costs.size()) +
                        " states exceeds the budget " + std::to_string(budget));
  std::vector<long long> integral;
  for (double c : costs) {
    if (c != std::round(c) || std::abs(c) > 1e9)
      throw DomainError("the dense oracle works in exact arithmetic and needs integer costs");
    integral.push_back(static_cast<long long>(c));
  }
  const DenseClosure a = modular_closure(integral, 61);
  const DenseClosure b = modular_closure(integral, 31);
  return a.dim >= b.dim ? a : b;
}

DenseClosure dense_lie_closure(const ProblemInstance& inst, double tol, std::uint64_t budget) {
  if (inst.feasible_size() > budget)
    throw ResourceError("dense closure on " + std::to_string(inst.feasible_size()) +
                        " states exceeds the budget " + std::to_string(budget));
  return dense_lie_closure(feasible_costs(inst, budget), tol, budget);
}

}  // namespace qwoa
