#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qwoa/problems.hpp"
#include "qwoa/spectrum.hpp"

namespace qwoa {

struct Interval {
  double lo = -std::numbers::pi;
  double hi = std::numbers::pi;
};

/// Sampling ranges for the layer angles. Walk times are in raw units; the
/// default [-pi, pi] covers N full periods of e^{-itJ}, whose period is 2pi/N.
struct ParameterRanges {
  Interval gamma;
  Interval time;

  /// Walk times uniform on [-pi * scale / N, pi * scale / N].
  static ParameterRanges scaled(std::uint64_t n, double scale);
  void validate() const;
};

struct VarianceEstimate {
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t samples = 0;
  double standard_error_of_variance = 0.0;
  ParameterRanges ranges;
  int depth = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kMinVarianceSamples = 100;

/// Monte-Carlo loss variance over i.i.d. uniform layer angles. Sample s
/// draws gamma_1, t_1, ..., gamma_p, t_p from StreamRng(seed, s).
VarianceEstimate estimate_variance(const CostSpectrum& spec, int p, std::uint64_t samples,
                                   const ParameterRanges& ranges, std::uint64_t seed);

/// One-pass accumulator for mean, variance and the fourth central moment.
class MomentAccumulator {
 public:
  void add(double x);
  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance.
  double variance() const;
  /// Standard error of the sample variance from the fourth central moment.
  double variance_standard_error() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0, m2_ = 0.0, m3_ = 0.0, m4_ = 0.0;
};

/// Instances indexed by a size parameter.
struct InstanceFamily {
  enum class Kind { Search, MaxCut, KDensest };
  Kind kind = Kind::Search;
  GraphFamily graph = GraphFamily::Cycle;
  /// Search: |M| = max(1, round(marked_fraction * N)) unless marked_count > 0.
  double marked_fraction = 0.25;
  std::uint64_t marked_count = 0;
  /// KDensest subgraph size.
  int k = 2;

  /// Search: N = 2^size. Graph problems: n = size.
  ProblemInstance instance(int size) const;
  std::string name() const;
};

struct ScalingRow {
  int size = 0;
  std::size_t m = 0;
  std::uint64_t n = 0;
  VarianceEstimate estimate;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  /// Least-squares slope of log(variance) against size, with its standard
  /// error. NaN when a variance is zero or fewer than two sizes are given.
  double slope = 0.0;
  double slope_standard_error = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_standard_error = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Variance estimate per size; the estimate at sizes[i] uses seed
/// derive_seed(seed, sizes[i]).
ScalingReport scaling_report(const InstanceFamily& family, const std::vector<int>& sizes, int p,
                             std::uint64_t samples, std::uint64_t seed,
                             const ParameterRanges& ranges = {});

}  // namespace qwoa
