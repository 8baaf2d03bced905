#include "qwoa/depth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "qwoa/errors.hpp"
#include "qwoa/rng.hpp"

namespace qwoa {

double success_for(const CostSpectrum& spec, const LayerParams& params,
                   const std::optional<double>& target_cost) {
  const ClassState st = evolve(spec, params);
  return target_cost ? success_probability_at_target(spec, st, *target_cost)
                     : success_probability(spec, st);
}

namespace {

LayerParams to_layers(std::span<const double> x, double n) {
  const std::size_t p = x.size() / 2;
  LayerParams params;
  params.gammas.resize(p);
  params.times.resize(p);
  for (std::size_t l = 0; l < p; ++l) {
    params.gammas[l] = x[2 * l];
    params.times[l] = x[2 * l + 1] / n;
  }
  return params;
}

bool better(const DepthResult& a, const DepthResult& b) {
  if (a.best_success != b.best_success) return a.best_success > b.best_success;
  std::vector<double> ka, kb;
  for (std::size_t l = 0; l < a.best_params.depth(); ++l) {
    ka.push_back(a.best_params.gammas[l]);
    ka.push_back(a.best_params.times[l]);
    kb.push_back(b.best_params.gammas[l]);
    kb.push_back(b.best_params.times[l]);
  }
  return ka < kb;
}

}  // namespace

DepthResult best_success_at_depth(const CostSpectrum& spec, int p, const DepthOptions& options) {
  if (p < 1) throw DomainError("depth must be at least 1");
  if (options.restarts < 1) throw DomainError("need at least one restart");
  const double n = static_cast<double>(spec.total());
  const auto dim = static_cast<std::size_t>(2 * p);

  const Objective objective = [&](std::span<const double> x) {
    return -success_for(spec, to_layers(x, n), options.target_cost);
  };

  std::vector<DepthResult> runs(static_cast<std::size_t>(options.restarts));
  auto run = [&](std::size_t r) {
    StreamRng rng(options.seed, r);
    std::vector<double> start(dim);
    for (double& v : start) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const auto res = nelder_mead(objective, std::move(start), options.optimizer);
    DepthResult& out = runs[r];
    out.p = p;
    out.best_params = to_layers(res.x, n);
    // Re-evaluate so the reported value is exactly what the parameters give.
    out.best_success = success_for(spec, out.best_params, options.target_cost);
    out.evaluations = res.evaluations;
  };

  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, runs.size());
  if (workers == 1) {
    for (std::size_t r = 0; r < runs.size(); ++r) run(r);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < runs.size(); r += workers) run(r);
      });
  }

  DepthResult best = runs.front();
  std::uint64_t total_evals = 0;
  for (const auto& r : runs) {
    total_evals += r.evaluations;
    if (better(r, best)) best = r;
  }
  best.evaluations = total_evals;
  best.restarts_used = options.restarts;
  return best;
}

MinimalDepth minimal_depth(const CostSpectrum& spec, double threshold, int p_max,
                           const DepthOptions& options) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("threshold must lie in (0, 1)");
  if (p_max < 1) throw DomainError("p_max must be at least 1");
  MinimalDepth out;
  for (int p = 1; p <= p_max; ++p) {
    out.scanned.push_back(best_success_at_depth(spec, p, options));
    if (out.scanned.back().best_success >= threshold) {
      out.depth = p;
      break;
    }
  }
  return out;
}

double lower_bound_depth(const CostSpectrum& spec) {
  return std::sqrt(static_cast<double>(spec.total()) /
                   static_cast<double>(spec.optimal_class().count));
}

SamplingTrials random_sampling_trials(const CostSpectrum& spec, std::uint64_t budget,
                                      std::uint64_t trials, std::uint64_t seed) {
  if (budget < 1 || trials < 1) throw DomainError("budget and trials must be at least 1");
  const std::uint64_t n = spec.total();
  const std::uint64_t optimal = spec.optimal_class().count;
  // Label the optimal solutions 0 .. d_opt - 1.
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    StreamRng rng(seed, t);
    for (std::uint64_t b = 0; b < budget; ++b) {
      const auto draw = static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(n));
      if (draw < optimal) {
        ++hits;
        break;
      }
    }
  }
  SamplingTrials out;
  out.trials = trials;
  out.frequency = static_cast<double>(hits) / static_cast<double>(trials);
  const double q = static_cast<double>(optimal) / static_cast<double>(n);
  out.closed_form = -std::expm1(static_cast<double>(budget) * std::log1p(-q));
  if (q >= 1.0) out.closed_form = 1.0;
  out.sigma = std::sqrt(out.closed_form * (1.0 - out.closed_form) / static_cast<double>(trials));
  return out;
}

}  // namespace qwoa
