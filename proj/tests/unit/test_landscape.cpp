#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "qwoa/errors.hpp"
#include "qwoa/landscape.hpp"
#include "qwoa/rng.hpp"
#include "qwoa/sim.hpp"

using qwoa::CostSpectrum;
using qwoa::InstanceFamily;
using qwoa::ParameterRanges;
using qwoa::Sense;
using std::numbers::pi;

TEST_CASE("single-class spectra have exactly zero loss variance") {
  const CostSpectrum clique({6}, {35}, Sense::Maximize);
  for (int p : {1, 2, 5})
    for (std::uint64_t seed : {0u, 9u}) {
      ParameterRanges r;
      r.time = {-0.1, 2.0};
      for (const auto& ranges : {ParameterRanges{}, r}) {
        const auto est = qwoa::estimate_variance(clique, p, 200, ranges, seed);
        CHECK(est.variance == 0.0);
        CHECK(est.mean == 6.0);
      }
    }
}

TEST_CASE("preconditions") {
  const CostSpectrum spec({0, 1}, {3, 1}, Sense::Maximize);
  CHECK_THROWS_AS(qwoa::estimate_variance(spec, 0, 1000, {}, 1), qwoa::DomainError);
  CHECK_THROWS_AS(qwoa::estimate_variance(spec, 1, 99, {}, 1), qwoa::DomainError);
  ParameterRanges bad;
  bad.gamma = {1.0, -1.0};
  CHECK_THROWS_AS(qwoa::estimate_variance(spec, 1, 1000, bad, 1), qwoa::DomainError);
  bad.gamma = {0.0, NAN};
  CHECK_THROWS_AS(qwoa::estimate_variance(spec, 1, 1000, bad, 1), qwoa::DomainError);
}

TEST_CASE("estimates are reproducible and seed dependent") {
  const CostSpectrum spec({0, 2, 4}, {2, 12, 2}, Sense::Maximize);
  const auto a = qwoa::estimate_variance(spec, 2, 5000, {}, 42);
  const auto b = qwoa::estimate_variance(spec, 2, 5000, {}, 42);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.standard_error_of_variance == b.standard_error_of_variance);
  CHECK(a.samples == 5000);
  CHECK(a.depth == 2);
  CHECK(a.seed == 42);
  CHECK(qwoa::estimate_variance(spec, 2, 5000, {}, 43).variance != a.variance);
}

TEST_CASE("estimator matches a two-pass evaluation of the same draws") {
  const CostSpectrum spec({0, 1, 2, 3}, {1, 5, 7, 3}, Sense::Maximize);
  const std::uint64_t seed = 7, samples = 3000;
  const int p = 2;
  const ParameterRanges ranges;
  std::vector<double> losses;
  for (std::uint64_t s = 0; s < samples; ++s) {
    qwoa::StreamRng rng(seed, s);
    qwoa::LayerParams params;
    for (int l = 0; l < p; ++l) {
      params.gammas.push_back(rng.uniform(ranges.gamma.lo, ranges.gamma.hi));
      params.times.push_back(rng.uniform(ranges.time.lo, ranges.time.hi));
    }
    losses.push_back(qwoa::loss(spec, qwoa::evolve(spec, params)));
  }
  const auto ref = oracle::two_pass(losses);
  const auto est = qwoa::estimate_variance(spec, p, samples, ranges, seed);
  CHECK(est.mean == doctest::Approx(ref.mean).epsilon(1e-12));
  CHECK(est.variance == doctest::Approx(ref.variance).epsilon(1e-10));
  CHECK(est.standard_error_of_variance == doctest::Approx(ref.stderr_variance).epsilon(1e-8));
  CHECK(est.variance >= 0.0);
}

TEST_CASE("affine cost maps scale the variance and shift the mean") {
  const CostSpectrum base({0, 1}, {12, 4}, Sense::Maximize);
  const auto ref = qwoa::estimate_variance(base, 2, 4000, {}, 5);

  const CostSpectrum shifted({2.5, 3.5}, {12, 4}, Sense::Maximize);
  const auto s = qwoa::estimate_variance(shifted, 2, 4000, {}, 5);
  CHECK(s.mean == doctest::Approx(ref.mean + 2.5).epsilon(1e-12));
  CHECK(s.variance == doctest::Approx(ref.variance).epsilon(1e-9));

  // Rescaling costs by a and the phase range by 1/a keeps every draw's
  // phases, so the identity holds sample by sample.
  const double a = 3.0, b = -1.0;
  const CostSpectrum affine({b, a + b}, {12, 4}, Sense::Maximize);
  ParameterRanges ranges;
  ranges.gamma = {-pi / a, pi / a};
  const auto t = qwoa::estimate_variance(affine, 2, 4000, ranges, 5);
  CHECK(t.mean == doctest::Approx(a * ref.mean + b).epsilon(1e-10));
  CHECK(t.variance == doctest::Approx(a * a * ref.variance).epsilon(1e-9));
}

TEST_CASE("reversing layer order leaves the loss distribution unchanged") {
  const CostSpectrum spec({0, 1, 3}, {6, 3, 1}, Sense::Minimize);
  const std::uint64_t samples = 20000;
  const auto est = qwoa::estimate_variance(spec, 2, samples, {}, 3);
  std::vector<double> reversed;
  for (std::uint64_t s = 0; s < samples; ++s) {
    qwoa::StreamRng rng(1000003, s);
    qwoa::LayerParams params;
    for (int l = 0; l < 2; ++l) {
      params.gammas.insert(params.gammas.begin(), rng.uniform(-pi, pi));
      params.times.insert(params.times.begin(), rng.uniform(-pi, pi));
    }
    reversed.push_back(qwoa::loss(spec, qwoa::evolve(spec, params)));
  }
  const auto other = oracle::two_pass(reversed);
  const double se = std::hypot(est.standard_error_of_variance, other.stderr_variance);
  CHECK(std::abs(est.variance - other.variance) < 4 * se);
}

TEST_CASE("moment accumulator") {
  std::mt19937_64 rng(1);
  std::gamma_distribution<double> g(2.0, 1.5);
  std::vector<double> xs;
  qwoa::MomentAccumulator acc;
  for (int i = 0; i < 10000; ++i) {
    xs.push_back(1e6 + g(rng));
    acc.add(xs.back());
  }
  const auto ref = oracle::two_pass(xs);
  CHECK(acc.count() == 10000);
  CHECK(acc.mean() == doctest::Approx(ref.mean).epsilon(1e-14));
  CHECK(acc.variance() == doctest::Approx(ref.variance).epsilon(1e-8));
  CHECK(acc.variance_standard_error() == doctest::Approx(ref.stderr_variance).epsilon(1e-6));
}

TEST_CASE("line fit") {
  const auto fit = qwoa::fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.slope_standard_error == doctest::Approx(0.0));
  const auto noisy = qwoa::fit_line({0, 1, 2, 3}, {0, 1, 1, 3});
  CHECK(noisy.slope == doctest::Approx(0.9));
  CHECK(noisy.slope_standard_error > 0.0);
}

TEST_CASE("instance families") {
  InstanceFamily search;
  const auto spec = qwoa::spectrum_of(search.instance(4));
  CHECK(spec.total() == 16);
  CHECK(spec.optimal_class().count == 4);
  search.marked_count = 1;
  CHECK(qwoa::spectrum_of(search.instance(5)).optimal_class().count == 1);
  CHECK_THROWS_AS(search.instance(0), qwoa::DomainError);

  InstanceFamily cut{InstanceFamily::Kind::MaxCut, qwoa::GraphFamily::Cycle};
  CHECK(qwoa::spectrum_of(cut.instance(6)).total() == 64);
  InstanceFamily dense{InstanceFamily::Kind::KDensest, qwoa::GraphFamily::Chain};
  dense.k = 3;
  CHECK(qwoa::spectrum_of(dense.instance(6)).total() == 20);
}

TEST_CASE("scaling reports") {
  InstanceFamily search;
  const auto report = qwoa::scaling_report(search, {4, 5, 6, 7, 8}, 2, 5000, 11);
  REQUIRE(report.rows.size() == 5);
  CHECK(report.rows[2].n == 64);
  CHECK(report.rows[2].m == 2);
  CHECK(report.rows[2].estimate.seed == qwoa::derive_seed(11, 6));
  CHECK(std::abs(report.slope) < 2 * report.slope_standard_error);

  InstanceFamily cut{InstanceFamily::Kind::MaxCut, qwoa::GraphFamily::Cycle};
  const auto cycles = qwoa::scaling_report(cut, {4, 5, 6, 7, 8}, 1, 2000, 11);
  for (const auto& row : cycles.rows) CHECK(row.estimate.variance > 0.0);
  CHECK(cycles.slope > -0.3);

  CHECK_THROWS_AS(qwoa::scaling_report(search, {4, 5}, 0, 1000, 1), qwoa::DomainError);
  InstanceFamily clique{InstanceFamily::Kind::KDensest, qwoa::GraphFamily::Complete};
  CHECK(std::isnan(qwoa::scaling_report(clique, {4, 5}, 1, 200, 1).slope));
}
