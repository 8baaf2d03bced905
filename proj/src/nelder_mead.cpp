#include "qwoa/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qwoa/errors.hpp"

namespace qwoa {

NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> start,
                             const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0) throw DomainError("Nelder-Mead needs at least one dimension");

  std::size_t evaluations = 0;
  auto f = [&](const std::vector<double>& x) {
    const double v = objective(x);
    ++evaluations;
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "objective returned a non-finite value at evaluation " << evaluations << ", x = [";
      for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
      msg << "]";
      throw DomainError(msg.str());
    }
    return v;
  };

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  auto point_along = [&](double coeff, const std::vector<double>& from, std::vector<double>& out) {
    // centroid + coeff * (from - centroid)
    for (std::size_t i = 0; i < dim; ++i) out[i] = centroid[i] + coeff * (from[i] - centroid[i]);
  };

  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    double diameter = 0.0;
    for (std::size_t v = 0; v <= dim; ++v) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const double d = simplex[v][i] - simplex[best][i];
        d2 += d * d;
      }
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < options.diameter_tolerance) {
      converged = true;
      break;
    }
    if (evaluations >= options.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    point_along(-options.reflection, simplex[worst], trial);
    const double reflected = f(trial);

    if (reflected < values[best]) {
      point_along(-options.reflection * options.expansion, simplex[worst], trial2);
      const double expanded = f(trial2);
      if (expanded < reflected) {
        simplex[worst] = trial2;
        values[worst] = expanded;
      } else {
        simplex[worst] = trial;
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = reflected;
      continue;
    }

    const bool outside = reflected < values[worst];
    if (outside) {
      point_along(options.contraction, trial, trial2);
    } else {
      point_along(options.contraction, simplex[worst], trial2);
    }
    const double contracted = f(trial2);
    if (contracted < (outside ? reflected : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = contracted;
      continue;
    }

    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == best) continue;
      for (std::size_t i = 0; i < dim; ++i)
        simplex[v][i] = simplex[best][i] + options.shrink * (simplex[v][i] - simplex[best][i]);
      values[v] = f(simplex[v]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], evaluations, converged};
}

}  // namespace qwoa
