#include <algorithm>
#include <random>

#include <doctest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "qwoa/errors.hpp"
#include "qwoa/spectrum.hpp"

using qwoa::CostSpectrum;
using qwoa::Sense;

TEST_CASE("from_cost_list counts classes") {
  const std::vector<double> values{0, 1, 0, 0};
  const auto spec = CostSpectrum::from_cost_list(values, Sense::Minimize);
  CHECK(spec.costs() == std::vector<double>{0, 1});
  CHECK(spec.multiplicities() == std::vector<std::uint64_t>{3, 1});
  CHECK(spec.total() == 4);
  CHECK(spec.size() == 2);
}

TEST_CASE("constant costs give a single class") {
  const std::vector<double> values{5, 5, 5};
  const auto spec = CostSpectrum::from_cost_list(values, Sense::Minimize);
  CHECK(spec.size() == 1);
  CHECK(spec.multiplicity(0) == 3);
  CHECK(spec.cost(0) == 5);
}

TEST_CASE("4-cycle cut values group into [0,2,4] with [2,12,2]") {
  const auto costs = oracle::maxcut_costs(4, oracle::cycle_edges(4));
  const auto spec = CostSpectrum::from_cost_list(costs, Sense::Maximize);
  CHECK(spec.costs() == std::vector<double>{0, 2, 4});
  CHECK(spec.multiplicities() == std::vector<std::uint64_t>{2, 12, 2});
  CHECK(spec.total() == 16);
}

TEST_CASE("empty cost list is a domain error") {
  const std::vector<double> none;
  CHECK_THROWS_AS(CostSpectrum::from_cost_list(none, Sense::Minimize), qwoa::DomainError);
}

TEST_CASE("merge tolerance") {
  const std::vector<double> noisy{1.0, 1.0 + 1e-12, 2.0};
  CHECK(CostSpectrum::from_cost_list(noisy, Sense::Minimize).size() == 2);
  const std::vector<double> spread{1.0, 1.5, 3.0};
  CHECK(CostSpectrum::from_cost_list(spread, Sense::Minimize).size() == 3);
  CHECK(CostSpectrum::from_cost_list(spread, Sense::Minimize, 0.6).size() == 2);
  CHECK_THROWS_AS(CostSpectrum::from_cost_list(spread, Sense::Minimize, -1.0), qwoa::DomainError);
  const std::vector<double> bad{1.0, std::nan("")};
  CHECK_THROWS_AS(CostSpectrum::from_cost_list(bad, Sense::Minimize), qwoa::DomainError);
}

TEST_CASE("constructor validates invariants") {
  using V = std::vector<double>;
  using D = std::vector<std::uint64_t>;
  CHECK_THROWS_AS(CostSpectrum(V{}, D{}, Sense::Minimize), qwoa::DomainError);
  CHECK_THROWS_AS(CostSpectrum(V{1, 1}, D{1, 1}, Sense::Minimize), qwoa::DomainError);
  CHECK_THROWS_AS(CostSpectrum(V{2, 1}, D{1, 1}, Sense::Minimize), qwoa::DomainError);
  CHECK_THROWS_AS(CostSpectrum(V{1, 2}, D{1, 0}, Sense::Minimize), qwoa::DomainError);
  CHECK_THROWS_AS(CostSpectrum(V{1, 2}, D{1}, Sense::Minimize), qwoa::DomainError);
  CHECK_THROWS_AS(CostSpectrum(V{1, INFINITY}, D{1, 1}, Sense::Minimize), qwoa::DomainError);
  const CostSpectrum ok(V{-1, 2.5}, D{4, 3}, Sense::Maximize);
  CHECK(ok.total() == 7);
}

TEST_CASE("optimal class follows the sense") {
  const CostSpectrum cut({0, 2, 4}, {2, 12, 2}, Sense::Maximize);
  CHECK(cut.optimal_class().index == 2);
  CHECK(cut.optimal_class().count == 2);

  const CostSpectrum single({5}, {3}, Sense::Minimize);
  CHECK(qwoa::optimal_class(single).index == 0);
  CHECK(qwoa::optimal_class(single).count == 3);

  for (std::uint64_t marked : {1u, 3u, 7u}) {
    const CostSpectrum search({0, 1}, {16 - marked, marked}, Sense::Maximize);
    CHECK(search.optimal_class().index == 1);
    CHECK(search.optimal_class().count == marked);
  }

  const CostSpectrum minimize({-3, 0, 9}, {5, 1, 2}, Sense::Minimize);
  CHECK(minimize.optimal_class().index == 0);
  CHECK(minimize.optimal_class().count == 5);
  CHECK(minimize.oriented_cost(2) == 9);
  CHECK(cut.oriented_cost(2) == -4);
}

TEST_CASE("from_cost_list is permutation invariant and round-trips") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(1 + rng() % 40);
    for (auto& v : values) v = static_cast<double>(static_cast<int>(rng() % 7) - 3);
    const auto spec = CostSpectrum::from_cost_list(values, Sense::Minimize);
    auto shuffled = values;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(CostSpectrum::from_cost_list(shuffled, Sense::Minimize) == spec);
    std::sort(values.begin(), values.end());
    CHECK(spec.expand() == values);
    CHECK(spec.total() == values.size());
  }
}

TEST_CASE("JSON serialization") {
  const CostSpectrum spec({0, 2, 4}, {2, 12, 2}, Sense::Maximize);
  const auto text = spec.to_json();
  const auto parsed = nlohmann::json::parse(text);
  CHECK(parsed["sense"] == "max");
  CHECK(parsed["multiplicities"] == nlohmann::json::array({2, 12, 2}));
  CHECK(CostSpectrum::from_json(text) == spec);

  const auto defaulted = CostSpectrum::from_json(R"({"costs":[1,2],"multiplicities":[1,1]})");
  CHECK(defaulted.sense() == Sense::Minimize);

  CHECK_THROWS_AS(CostSpectrum::from_json(R"({"costs":[1],"multiplicities":[1],"extra":0})"),
                  qwoa::DomainError);
  CHECK_THROWS_AS(CostSpectrum::from_json(R"({"costs":[1],"multiplicities":[1],"sense":"up"})"),
                  qwoa::DomainError);
  CHECK_THROWS_AS(CostSpectrum::from_json("not json"), qwoa::DomainError);
  CHECK_THROWS_AS(CostSpectrum::from_json(R"({"costs":[1]})"), qwoa::DomainError);
}

TEST_CASE("sense names") {
  CHECK(qwoa::to_string(Sense::Minimize) == "min");
  CHECK(qwoa::sense_from_string("max") == Sense::Maximize);
  CHECK_THROWS_AS(qwoa::sense_from_string("sideways"), qwoa::DomainError);
}
