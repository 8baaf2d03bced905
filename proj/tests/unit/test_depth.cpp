#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "qwoa/depth.hpp"
#include "qwoa/errors.hpp"
#include "qwoa/nelder_mead.hpp"
#include "qwoa/problems.hpp"

using qwoa::CostSpectrum;
using qwoa::DepthOptions;
using qwoa::Sense;
using std::numbers::pi;

namespace {

CostSpectrum search(std::uint64_t n, std::uint64_t marked) {
  return CostSpectrum({0, 1}, {n - marked, marked}, Sense::Maximize);
}

DepthOptions seeded(std::uint64_t seed, int restarts = 20) {
  DepthOptions o;
  o.seed = seed;
  o.restarts = restarts;
  return o;
}

}  // namespace

TEST_CASE("Nelder-Mead on a convex quadratic") {
  const std::vector<double> c{1.5, -2.0, 0.25};
  const auto res = qwoa::nelder_mead(
      [&](std::span<const double> v) {
        double s = 0;
        for (std::size_t i = 0; i < v.size(); ++i) s += (v[i] - c[i]) * (v[i] - c[i]);
        return s;
      },
      {0, 0, 0});
  CHECK(res.converged);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(res.x[i] - c[i]) < 1e-6);
}

TEST_CASE("Nelder-Mead finds a maximizer of sin") {
  const auto res = qwoa::nelder_mead([](std::span<const double> v) { return -std::sin(v[0]); }, {0.3});
  CHECK(std::abs(res.x[0] - pi / 2) < 1e-6);
  const auto sq = qwoa::nelder_mead(
      [](std::span<const double> v) { return -std::pow(std::sin(v[0]), 2); }, {1.0});
  CHECK(std::abs(std::cos(sq.x[0])) < 1e-6);
}

TEST_CASE("Nelder-Mead contract") {
  CHECK_THROWS_AS(qwoa::nelder_mead([](std::span<const double>) { return NAN; }, {0.0}),
                  qwoa::DomainError);
  CHECK_THROWS_AS(qwoa::nelder_mead([](std::span<const double>) { return 0.0; }, {}),
                  qwoa::DomainError);
  qwoa::NelderMeadOptions capped;
  capped.max_evaluations = 50;
  const auto res = qwoa::nelder_mead(
      [](std::span<const double> v) {
        return 100 * std::pow(v[1] - v[0] * v[0], 2) + std::pow(1 - v[0], 2);
      },
      {-1.2, 1.0}, capped);
  CHECK_FALSE(res.converged);
  CHECK(res.evaluations <= 50);
}

TEST_CASE("best success at fixed depth") {
  const auto n4 = qwoa::best_success_at_depth(search(4, 1), 1, seeded(1));
  CHECK(n4.best_success >= 0.99);
  CHECK(oracle::grover_success(4, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));

  const auto n16 = qwoa::best_success_at_depth(search(16, 1), 3, seeded(2));
  CHECK(n16.best_success >= 0.96);
  CHECK(n16.best_params.depth() == 3);
  CHECK(n16.restarts_used == 20);
  CHECK(n16.best_success ==
        doctest::Approx(qwoa::success_for(search(16, 1), n16.best_params)).epsilon(1e-12));

  const CostSpectrum clique({3}, {20}, Sense::Maximize);
  for (int p : {1, 4}) CHECK(qwoa::best_success_at_depth(clique, p, seeded(3, 2)).best_success == 1.0);

  CHECK_THROWS_AS(qwoa::best_success_at_depth(search(16, 1), 0, seeded(1)), qwoa::DomainError);
  CHECK_THROWS_AS(qwoa::best_success_at_depth(search(16, 1), 1, seeded(1, 0)), qwoa::DomainError);
}

TEST_CASE("more restarts never hurt and results are reproducible") {
  const auto spec = search(64, 1);
  const auto few = qwoa::best_success_at_depth(spec, 2, seeded(9, 3));
  const auto many = qwoa::best_success_at_depth(spec, 2, seeded(9, 12));
  CHECK(many.best_success >= few.best_success);
  const auto again = qwoa::best_success_at_depth(spec, 2, seeded(9, 12));
  CHECK(again.best_success == many.best_success);
  CHECK(again.best_params.gammas == many.best_params.gammas);
  CHECK(again.best_params.times == many.best_params.times);
  CHECK(again.evaluations == many.evaluations);
}

TEST_CASE("best success is non-decreasing in depth") {
  const auto spec = search(64, 1);
  double previous = 0;
  for (int p = 1; p <= 4; ++p) {
    const double s = qwoa::best_success_at_depth(spec, p, seeded(4)).best_success;
    CHECK(s >= previous - 1e-3);
    previous = s;
  }
}

TEST_CASE("target cost success") {
  const CostSpectrum cut({0, 2, 4}, {2, 12, 2}, Sense::Maximize);
  DepthOptions o = seeded(5, 4);
  o.target_cost = 2.0;
  CHECK(qwoa::best_success_at_depth(cut, 1, o).best_success >= 14.0 / 16 - 1e-12);
  CHECK(qwoa::success_for(cut, {}, 2.0) == doctest::Approx(14.0 / 16));
}

TEST_CASE("minimal depth") {
  const auto grover = qwoa::minimal_depth(search(16, 1), 0.95, 6, seeded(1));
  REQUIRE(grover.depth.has_value());
  CHECK(*grover.depth == 3);
  CHECK(grover.scanned.size() == 3);
  CHECK(grover.scanned[1].best_success == doctest::Approx(oracle::grover_success(16, 1, 2)).epsilon(1e-6));

  const CostSpectrum clique({1}, {5}, Sense::Minimize);
  CHECK(qwoa::minimal_depth(clique, 0.5, 3, seeded(1, 2)).depth == 1);

  const auto unreachable = qwoa::minimal_depth(search(256, 1), 0.999, 1, seeded(1, 4));
  CHECK_FALSE(unreachable.depth.has_value());
  CHECK(unreachable.scanned.size() == 1);

  CHECK_THROWS_AS(qwoa::minimal_depth(clique, 1.0, 3), qwoa::DomainError);
  CHECK_THROWS_AS(qwoa::minimal_depth(clique, 0.0, 3), qwoa::DomainError);
}

TEST_CASE("lower bound on depth") {
  CHECK(qwoa::lower_bound_depth(search(16, 1)) == 4.0);
  CHECK(qwoa::lower_bound_depth(CostSpectrum({2}, {9}, Sense::Maximize)) == 1.0);
  for (int n = 4; n <= 12; n += 2) {
    const auto spec = qwoa::spectrum_of(
        qwoa::ProblemInstance::max_cut(qwoa::make_graph(qwoa::GraphFamily::Complete, n)));
    const double expected = std::sqrt(std::ldexp(1.0, n) / static_cast<double>(qwoa::binomial(n, n / 2)));
    CHECK(qwoa::lower_bound_depth(spec) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("random sampling baseline") {
  const auto spec = search(16, 1);
  const auto sixteen = qwoa::random_sampling_trials(spec, 16, 20000, 1);
  CHECK(sixteen.closed_form == doctest::Approx(1 - std::pow(15.0 / 16, 16)).epsilon(1e-14));
  CHECK(sixteen.closed_form == doctest::Approx(0.644).epsilon(1e-3));
  CHECK(std::abs(sixteen.frequency - sixteen.closed_form) <= 3 * sixteen.sigma);

  const auto one = qwoa::random_sampling_trials(spec, 1, 20000, 2);
  CHECK(one.closed_form == doctest::Approx(1.0 / 16));
  CHECK(std::abs(one.frequency - one.closed_form) <= 3 * one.sigma);

  const auto budget = static_cast<std::uint64_t>(std::ceil(16 * std::log(20.0)));
  CHECK(qwoa::random_sampling_trials(spec, budget, 100, 3).closed_form >= 0.95);

  const auto a = qwoa::random_sampling_trials(spec, 5, 1000, 8);
  const auto b = qwoa::random_sampling_trials(spec, 5, 1000, 8);
  CHECK(a.frequency == b.frequency);
  CHECK_THROWS_AS(qwoa::random_sampling_trials(spec, 0, 10, 1), qwoa::DomainError);
  CHECK_THROWS_AS(qwoa::random_sampling_trials(spec, 1, 0, 1), qwoa::DomainError);
}
