#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qwoa/nelder_mead.hpp"
#include "qwoa/sim.hpp"
#include "qwoa/spectrum.hpp"

namespace qwoa {

struct DepthOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  /// When set, success means landing on a class at least as good as this
  /// cost instead of the optimal class.
  std::optional<double> target_cost;
  NelderMeadOptions optimizer{.initial_step = 0.5, .diameter_tolerance = 1e-8,
                              .max_evaluations = 4000};
};

struct DepthResult {
  int p = 0;
  double best_success = 0.0;
  LayerParams best_params;
  int restarts_used = 0;
  std::uint64_t evaluations = 0;
};

/// Success probability of the QWOA state at `params` (optimal class, or the
/// target-cost set when given).
double success_for(const CostSpectrum& spec, const LayerParams& params,
                   const std::optional<double>& target_cost = std::nullopt);

/// Multistart Nelder-Mead over the 2p layer angles. Restart r starts from
/// gamma ~ U[-pi, pi] and mixer phase tN ~ U[-pi, pi] drawn from
/// StreamRng(seed, r); the optimizer works in (gamma, tN) coordinates.
/// Ties are broken by the lexicographically smallest parameters.
DepthResult best_success_at_depth(const CostSpectrum& spec, int p, const DepthOptions& options = {});

struct MinimalDepth {
  std::optional<int> depth;  ///< nullopt: threshold not reached within p_max
  std::vector<DepthResult> scanned;
};

/// Linear scan p = 1, 2, ... until best_success_at_depth reaches `threshold`.
MinimalDepth minimal_depth(const CostSpectrum& spec, double threshold, int p_max,
                           const DepthOptions& options = {});

/// sqrt(|S'| / |S_opt|), the argument of the order lower bound on depth.
double lower_bound_depth(const CostSpectrum& spec);

struct SamplingTrials {
  double frequency = 0.0;
  double closed_form = 0.0;
  /// Binomial standard deviation of the frequency at the closed-form rate.
  double sigma = 0.0;
  std::uint64_t trials = 0;
};

/// Fraction of trials in which `budget` uniform draws from the feasible set
/// hit an optimal solution, and the exact value 1 - (1 - d_opt/N)^budget.
SamplingTrials random_sampling_trials(const CostSpectrum& spec, std::uint64_t budget,
                                      std::uint64_t trials, std::uint64_t seed);

}  // namespace qwoa
