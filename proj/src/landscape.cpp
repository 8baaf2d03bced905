#include "qwoa/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "qwoa/errors.hpp"
#include "qwoa/rng.hpp"
#include "qwoa/sim.hpp"

namespace qwoa {

ParameterRanges ParameterRanges::scaled(std::uint64_t n, double scale) {
  ParameterRanges r;
  const double half = std::numbers::pi * scale / static_cast<double>(n);
  r.time = Interval{-half, half};
  return r;
}

void ParameterRanges::validate() const {
  for (const Interval& iv : {gamma, time})
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi))
      throw DomainError("parameter range must be a finite interval with lo < hi");
}

void MomentAccumulator::add(double x) {
  const double n1 = static_cast<double>(n_);
  ++n_;
  const double n = static_cast<double>(n_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2_ - 4 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2) - 3 * delta_n * m2_;
  m2_ += term1;
}

double MomentAccumulator::variance() const {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double MomentAccumulator::variance_standard_error() const {
  if (n_ < 4) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(n_);
  const double s2 = variance();
  const double mu4 = m4_ / n;
  const double v = (mu4 - s2 * s2 * (n - 3) / (n - 1)) / n;
  return std::sqrt(std::max(0.0, v));
}

VarianceEstimate estimate_variance(const CostSpectrum& spec, int p, std::uint64_t samples,
                                   const ParameterRanges& ranges, std::uint64_t seed) {
  if (p < 1) throw DomainError("variance estimation needs depth p >= 1");
  if (samples < kMinVarianceSamples)
    throw DomainError("variance estimation needs at least " + std::to_string(kMinVarianceSamples) +
                      " samples");
  ranges.validate();

  std::vector<double> losses(samples);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    LayerParams params;
    params.gammas.resize(static_cast<std::size_t>(p));
    params.times.resize(static_cast<std::size_t>(p));
    for (std::uint64_t s = begin; s < end; ++s) {
      StreamRng rng(seed, s);
      for (int l = 0; l < p; ++l) {
        params.gammas[static_cast<std::size_t>(l)] = rng.uniform(ranges.gamma.lo, ranges.gamma.hi);
        params.times[static_cast<std::size_t>(l)] = rng.uniform(ranges.time.lo, ranges.time.hi);
      }
      losses[s] = loss(spec, evolve(spec, params));
    }
  };

  const std::uint64_t workers =
      std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(1, samples / 1000));
  if (workers == 1) {
    work(0, samples);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (samples + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w)
      pool.emplace_back(work, w * chunk, std::min(samples, (w + 1) * chunk));
  }

  // Serial reduction in sample order keeps the result thread-count independent.
  MomentAccumulator acc;
  for (double x : losses) acc.add(x);

  VarianceEstimate est;
  est.mean = acc.mean();
  est.variance = acc.variance();
  est.samples = samples;
  est.standard_error_of_variance = acc.variance_standard_error();
  est.ranges = ranges;
  est.depth = p;
  est.seed = seed;
  return est;
}

ProblemInstance InstanceFamily::instance(int size) const {
  switch (kind) {
    case Kind::Search: {
      if (size < 1 || size > 62) throw DomainError("search family size must be in [1, 62]");
      const std::uint64_t n = std::uint64_t{1} << size;
      std::uint64_t marked = marked_count;
      if (marked == 0)
        marked = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(marked_fraction * static_cast<double>(n))));
      return ProblemInstance::search(n, marked);
    }
    case Kind::MaxCut:
      return ProblemInstance::max_cut(make_graph(graph, size));
    case Kind::KDensest:
      return ProblemInstance::k_densest(make_graph(graph, size), k);
  }
  throw DomainError("unknown instance family");
}

std::string InstanceFamily::name() const {
  switch (kind) {
    case Kind::Search:
      return marked_count > 0 ? "search-marked" + std::to_string(marked_count)
                              : "search-fraction" + std::to_string(marked_fraction);
    case Kind::MaxCut:
      return "maxcut-" + to_string(graph);
    case Kind::KDensest:
      return "kdensest-" + to_string(graph) + "-k" + std::to_string(k);
  }
  return "?";
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (xs.size() != ys.size() || xs.size() < 2) return {nan, nan, nan};
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return {nan, nan, nan};
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (xs.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      rss += r * r;
    }
    fit.slope_standard_error = std::sqrt(rss / (n - 2) / sxx);
  } else {
    fit.slope_standard_error = nan;
  }
  return fit;
}

ScalingReport scaling_report(const InstanceFamily& family, const std::vector<int>& sizes, int p,
                             std::uint64_t samples, std::uint64_t seed,
                             const ParameterRanges& ranges) {
  ScalingReport report;
  std::vector<double> xs, ys;
  bool loggable = true;
  for (int size : sizes) {
    const auto spec = spectrum_of(family.instance(size));
    ScalingRow row;
    row.size = size;
    row.m = spec.size();
    row.n = spec.total();
    row.estimate = estimate_variance(spec, p, samples, ranges,
                                     derive_seed(seed, static_cast<std::uint64_t>(size)));
    if (row.estimate.variance > 0.0) {
      xs.push_back(size);
      ys.push_back(std::log(row.estimate.variance));
    } else {
      loggable = false;
    }
    report.rows.push_back(row);
  }
  const LineFit fit = loggable ? fit_line(xs, ys) : fit_line({}, {});
  report.slope = fit.slope;
  report.slope_standard_error = fit.slope_standard_error;
  return report;
}

}  // namespace qwoa
