#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qwoa {

struct NelderMeadOptions {
  double initial_step = 0.5;
  /// Stop once the largest vertex distance from the best vertex drops below this.
  double diameter_tolerance = 1e-8;
  std::size_t max_evaluations = 20000;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `objective` with the downhill simplex method, starting from the
/// simplex {start, start + step * e_i}. Throws DomainError on a non-finite
/// objective value.
NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> start,
                             const NelderMeadOptions& options = {});

}  // namespace qwoa
