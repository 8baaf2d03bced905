#include <algorithm>
#include <random>

#include <doctest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "qwoa/dla.hpp"
#include "qwoa/errors.hpp"
#include "qwoa/problems.hpp"

using qwoa::BlockElement;
using oracle::Complex;
using qwoa::CostSpectrum;
using qwoa::GraphFamily;
using qwoa::ProblemInstance;
using qwoa::Sense;

namespace {

BlockElement random_element(std::mt19937_64& rng, std::size_t m, bool with_alpha = true) {
  std::normal_distribution<double> g;
  BlockElement x = BlockElement::zero(m);
  x.alpha = with_alpha ? g(rng) : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    x.block(i, i) = Complex(0, g(rng));
    for (std::size_t j = i + 1; j < m; ++j) {
      x.block(i, j) = Complex(g(rng), g(rng));
      x.block(j, i) = -std::conj(x.block(i, j));
    }
  }
  return x;
}

CostSpectrum random_spectrum(std::mt19937_64& rng, std::size_t m, std::uint64_t max_mult) {
  std::vector<double> pool;
  for (int v = -20; v <= 20; ++v) pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<double> costs(pool.begin(), pool.begin() + static_cast<long>(m));
  std::sort(costs.begin(), costs.end());
  std::vector<std::uint64_t> mult;
  for (std::size_t i = 0; i < m; ++i) mult.push_back(1 + rng() % max_mult);
  return CostSpectrum(costs, mult, Sense::Minimize);
}

Eigen::MatrixXcd dense_of(const CostSpectrum& spec, const BlockElement& x) {
  return oracle::block_matrix(spec.costs(), spec.multiplicities(), x.alpha, x.block);
}

// Norm of what remains of x after projecting onto the (orthonormal) basis.
double residual(const CostSpectrum& spec, const qwoa::LieBasis& basis, BlockElement x) {
  for (const auto& e : basis.elements) {
    const double c = qwoa::inner(spec, e, x);
    x.alpha -= c * e.alpha;
    x.block -= c * e.block;
  }
  return qwoa::norm(spec, x);
}

}  // namespace

TEST_CASE("inner product equals Re Tr of the expanded matrices") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = random_spectrum(rng, 1 + rng() % 4, 4);
    const auto a = random_element(rng, spec.size());
    const auto e = random_element(rng, spec.size());
    const double expected = oracle::re_trace_inner(dense_of(spec, a), dense_of(spec, e));
    CHECK(qwoa::inner(spec, a, e) == doctest::Approx(expected).epsilon(1e-12));
    const double self = oracle::re_trace_inner(dense_of(spec, a), dense_of(spec, a));
    CHECK(qwoa::norm(spec, a) == doctest::Approx(std::sqrt(self)).epsilon(1e-12));
  }
  const CostSpectrum spec({1, 2, 5}, {2, 1, 3}, Sense::Minimize);
  auto zero_diag = random_element(rng, 3, false);
  for (int i = 0; i < 3; ++i) zero_diag.block(i, i) = 0;
  CHECK(std::abs(qwoa::inner(spec, qwoa::cost_generator(spec), zero_diag)) < 1e-14);
  CHECK(qwoa::inner(spec, BlockElement::zero(3), random_element(rng, 3)) == 0.0);
  CHECK_THROWS_AS(qwoa::inner(spec, BlockElement::zero(2), BlockElement::zero(3)), qwoa::DomainError);
}

TEST_CASE("bracket equals the commutator of the expanded matrices") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = random_spectrum(rng, 1 + rng() % 4, 3);
    const auto a = random_element(rng, spec.size());
    const auto e = random_element(rng, spec.size());
    const auto c = qwoa::bracket(spec, a, e);
    CHECK(c.alpha == 0.0);
    const Eigen::MatrixXcd da = dense_of(spec, a), de = dense_of(spec, e);
    const Eigen::MatrixXcd expected = da * de - de * da;
    CHECK((dense_of(spec, c) - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((qwoa::expand(spec, c) - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(qwoa::norm(spec, qwoa::bracket(spec, a, a)) < 1e-12);
  }
  const CostSpectrum spec({0, 1}, {3, 1}, Sense::Minimize);
  CHECK_THROWS_AS(qwoa::bracket(spec, BlockElement::zero(2), BlockElement::zero(1)), qwoa::DomainError);
}

TEST_CASE("search commutator of the generators has the antisymmetric off-diagonal pattern") {
  const CostSpectrum spec({0, 1}, {7, 1}, Sense::Maximize);
  const auto h3 = qwoa::bracket(spec, qwoa::cost_generator(spec), qwoa::mixer_generator(spec));
  const Eigen::MatrixXcd dense = qwoa::expand(spec, h3);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const bool rm = r == 7, cm = c == 7;
      const double expected = (!rm && cm) ? 1.0 : (rm && !cm) ? -1.0 : 0.0;
      CHECK(std::abs(dense(r, c) - Complex(expected, 0)) < 1e-14);
    }
}

TEST_CASE("Jacobi identity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = random_spectrum(rng, 2 + rng() % 4, 5);
    const auto a = random_element(rng, spec.size());
    const auto e = random_element(rng, spec.size());
    const auto f = random_element(rng, spec.size());
    auto sum = qwoa::bracket(spec, a, qwoa::bracket(spec, e, f));
    const auto t2 = qwoa::bracket(spec, e, qwoa::bracket(spec, f, a));
    const auto t3 = qwoa::bracket(spec, f, qwoa::bracket(spec, a, e));
    sum.block += t2.block + t3.block;
    const auto basis = qwoa::lie_closure(spec);
    for (const auto& b : basis.elements) CHECK(std::abs(qwoa::inner(spec, b, sum)) < 1e-8);
  }
}

TEST_CASE("closure of single-class and search spectra") {
  const CostSpectrum clique({3}, {10}, Sense::Maximize);
  const auto basis = qwoa::lie_closure(clique);
  CHECK(basis.dim() == 2);
  CHECK(qwoa::traceless_dimension(clique, basis) == 1);
  CHECK(qwoa::lie_closure(CostSpectrum({3}, {1}, Sense::Maximize)).dim() == 1);

  for (std::uint64_t n : {4u, 8u, 16u, 64u, 1024u}) {
    CHECK(qwoa::lie_closure(CostSpectrum({0, 1}, {n - 1, 1}, Sense::Maximize)).dim() == 4);
    CHECK(qwoa::lie_closure(CostSpectrum({0, 1}, {n - 2, 2}, Sense::Maximize)).dim() == 5);
  }
  CHECK(qwoa::lie_closure(CostSpectrum({0, 1}, {5, 3}, Sense::Maximize)).dim() == 5);
  const CostSpectrum almost_all({0, 1}, {1, 15}, Sense::Maximize);
  CHECK(qwoa::traceless_dimension(almost_all, qwoa::lie_closure(almost_all)) == 4);

  CHECK_THROWS_AS(qwoa::lie_closure(clique, 0.0), qwoa::DomainError);
  CHECK_THROWS_AS(qwoa::lie_closure(clique, -1e-9), qwoa::DomainError);
}

TEST_CASE("closure dimension never exceeds m^2 + 1; basis is orthonormal and closed") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng() % 8;
    const auto spec = random_spectrum(rng, m, 50);
    CAPTURE(spec.to_json());
    const auto basis = qwoa::lie_closure(spec);
    CHECK(basis.dim() <= m * m + 1);
    CHECK(qwoa::orthonormality_error(spec, basis) < 1e-9);
    if (trial % 10 == 0) {
      for (std::size_t i = 0; i < basis.dim(); ++i)
        for (std::size_t j = i + 1; j < basis.dim(); ++j)
          CHECK(residual(spec, basis, qwoa::bracket(spec, basis.elements[i], basis.elements[j])) <
                10 * qwoa::kDefaultClosureTolerance);
    }
  }
}

TEST_CASE("compressed and dense closures agree on problem instances") {
  // Values produced by the exact dense oracle and frozen.
  struct Case {
    GraphFamily family;
    int n;
    std::size_t maxcut_dim;
  };
  const Case cases[] = {
      {GraphFamily::Cycle, 3, 5},    {GraphFamily::Cycle, 4, 10},   {GraphFamily::Cycle, 5, 10},
      {GraphFamily::Cycle, 6, 17},   {GraphFamily::Chain, 3, 10},   {GraphFamily::Chain, 4, 17},
      {GraphFamily::Chain, 5, 26},   {GraphFamily::Chain, 6, 37},   {GraphFamily::Complete, 3, 5},
      {GraphFamily::Complete, 4, 10}, {GraphFamily::Complete, 5, 10}, {GraphFamily::Complete, 6, 17},
  };
  for (const auto& c : cases) {
    CAPTURE(c.n);
    const auto inst = ProblemInstance::max_cut(qwoa::make_graph(c.family, c.n));
    const auto spec = qwoa::spectrum_of(inst);
    const auto basis = qwoa::lie_closure(spec);
    CHECK(basis.dim() == c.maxcut_dim);
    CHECK(basis.dim() <= spec.size() * spec.size() + 1);
    if (c.n <= 5) {
      const auto dense = qwoa::dense_lie_closure(inst);
      CHECK(dense.dim == basis.dim());
      CHECK(dense.traceless_dim == qwoa::traceless_dimension(spec, basis));
    }
  }
  for (int n = 4; n <= 6; ++n)
    for (int k = 2; k <= 3 && k < n; ++k) {
      const auto inst = ProblemInstance::k_densest(qwoa::make_graph(GraphFamily::Chain, n), k);
      const auto spec = qwoa::spectrum_of(inst);
      const auto basis = qwoa::lie_closure(spec);
      const auto dense = qwoa::dense_lie_closure(inst);
      CHECK(dense.dim == basis.dim());
      CHECK(dense.traceless_dim == qwoa::traceless_dimension(spec, basis));
    }
}

TEST_CASE("dense oracle") {
  CHECK(qwoa::dense_lie_closure(ProblemInstance::search(4, 1)).dim == 4);
  CHECK(qwoa::dense_lie_closure(ProblemInstance::search(8, 3)).dim == 5);
  const auto cycle4 = ProblemInstance::max_cut(qwoa::make_graph(GraphFamily::Cycle, 4));
  CHECK(qwoa::dense_lie_closure(cycle4).dim == 10);
  const auto big = ProblemInstance::max_cut(qwoa::make_graph(GraphFamily::Cycle, 7));
  CHECK_THROWS_AS(qwoa::dense_lie_closure(big), qwoa::ResourceError);
  CHECK_THROWS_AS(qwoa::dense_lie_closure(std::vector<double>{0, 0.5, 1}), qwoa::DomainError);
  CHECK_THROWS_AS(qwoa::dense_lie_closure(cycle4, 0.0), qwoa::DomainError);
  const auto shifted = qwoa::dense_lie_closure(std::vector<double>{3, 3, 3, 4});
  CHECK(shifted.dim == 5);
  CHECK(shifted.traceless_dim == 4);
}

TEST_CASE("dimension under affine cost maps") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = random_spectrum(rng, 1 + rng() % 5, 6);
    const auto basis = qwoa::lie_closure(spec);
    const double a = trial % 2 ? -2.5 : 3.0;
    const double b = static_cast<double>(trial % 7) - 3.0;
    std::vector<double> scaled, moved;
    for (double x : spec.costs()) {
      scaled.push_back(a * x);
      moved.push_back(a * x + b);
    }
    if (a < 0) {
      std::reverse(scaled.begin(), scaled.end());
      std::reverse(moved.begin(), moved.end());
    }
    auto mult = spec.multiplicities();
    if (a < 0) std::reverse(mult.begin(), mult.end());
    const CostSpectrum s1(scaled, mult, Sense::Minimize);
    const CostSpectrum s2(moved, mult, Sense::Minimize);
    CHECK(qwoa::lie_closure(s1).dim() == basis.dim());
    const auto b2 = qwoa::lie_closure(s2);
    CHECK(qwoa::traceless_dimension(s2, b2) == qwoa::traceless_dimension(spec, basis));
  }
  // A shift can bring the identity into the span: search with one marked
  // element gains the identity direction once the unmarked cost is nonzero.
  CHECK(qwoa::lie_closure(CostSpectrum({0, 1}, {15, 1}, Sense::Maximize)).dim() == 4);
  CHECK(qwoa::lie_closure(CostSpectrum({1, 2}, {15, 1}, Sense::Maximize)).dim() == 5);
}

TEST_CASE("g-purity") {
  const CostSpectrum spec({0, 2, 4}, {2, 12, 2}, Sense::Maximize);
  const auto basis = qwoa::lie_closure(spec);
  const auto hc = qwoa::cost_generator(spec);
  CHECK(qwoa::g_purity(spec, basis, hc) == doctest::Approx(qwoa::inner(spec, hc, hc)).epsilon(1e-10));
  const auto hm = qwoa::mixer_generator(spec);
  CHECK(qwoa::g_purity(spec, basis, hm) == doctest::Approx(qwoa::inner(spec, hm, hm)).epsilon(1e-10));
  CHECK(qwoa::g_purity(spec, basis, BlockElement::zero(3)) == 0.0);

  BlockElement combo = qwoa::bracket(spec, hc, hm);
  combo.block += 0.3 * hm.block;
  CHECK(qwoa::g_purity(spec, basis, combo) == doctest::Approx(qwoa::inner(spec, combo, combo)).epsilon(1e-10));

  std::mt19937_64 rng(7);
  const CostSpectrum search({0, 1}, {7, 1}, Sense::Maximize);
  const auto small = qwoa::lie_closure(search);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_element(rng, 2);
    const double p = qwoa::g_purity(search, small, x);
    CHECK(p >= 0.0);
    CHECK(p <= qwoa::inner(search, x, x) * (1 + 1e-12));
  }

  auto broken = basis;
  broken.elements[0].alpha *= 2.0;
  broken.elements[0].block *= 2.0;
  CHECK_THROWS_AS(qwoa::g_purity(spec, broken, hc), qwoa::DomainError);
}

TEST_CASE("basis JSON export") {
  const CostSpectrum spec({0, 1}, {3, 1}, Sense::Maximize);
  const auto basis = qwoa::lie_closure(spec);
  const auto parsed = nlohmann::json::parse(qwoa::basis_to_json(basis));
  REQUIRE(parsed.size() == basis.dim());
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    CHECK(parsed[k]["alpha"].get<double>() == basis.elements[k].alpha);
    CHECK(parsed[k]["B"].size() == 4);
    CHECK(parsed[k]["B"][1][0].get<double>() == basis.elements[k].block(0, 1).real());
    CHECK(parsed[k]["B"][2][1].get<double>() == basis.elements[k].block(1, 0).imag());
  }
}
