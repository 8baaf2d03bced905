#include "qwoa/sim.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qwoa/errors.hpp"

namespace qwoa {

void LayerParams::validate() const {
  if (gammas.size() != times.size())
    throw DomainError("gammas and times must have the same length");
  for (std::size_t l = 0; l < gammas.size(); ++l)
    if (!std::isfinite(gammas[l]) || !std::isfinite(times[l]))
      throw DomainError("layer angles must be finite");
}

namespace {

void check_shape(const CostSpectrum& spec, const ClassState& st) {
  if (st.amps.size() != spec.size())
    throw DomainError("state has " + std::to_string(st.amps.size()) + " classes, spectrum has " +
                      std::to_string(spec.size()));
}

}  // namespace

double norm_squared(const CostSpectrum& spec, const ClassState& st) {
  check_shape(spec, st);
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    s += static_cast<double>(spec.multiplicity(i)) * std::norm(st.amps[i]);
  return s;
}

ClassState init_state(const CostSpectrum& spec) {
  const double a = 1.0 / std::sqrt(static_cast<double>(spec.total()));
  return ClassState{std::vector<Complex>(spec.size(), Complex(a, 0.0))};
}

ClassState apply_phase(const CostSpectrum& spec, ClassState st, double gamma) {
  check_shape(spec, st);
  for (std::size_t i = 0; i < spec.size(); ++i) st.amps[i] *= std::polar(1.0, -gamma * spec.cost(i));
  return st;
}

ClassState apply_mixer(const CostSpectrum& spec, ClassState st, double t) {
  check_shape(spec, st);
  const double n = static_cast<double>(spec.total());
  Complex sum(0.0, 0.0);
  for (std::size_t j = 0; j < spec.size(); ++j)
    sum += static_cast<double>(spec.multiplicity(j)) * st.amps[j];
  const Complex shift = (std::polar(1.0, -t * n) - 1.0) / n * sum;
  for (auto& a : st.amps) a += shift;
  return st;
}

ClassState evolve(const CostSpectrum& spec, const LayerParams& params) {
  params.validate();
  ClassState st = init_state(spec);
  for (std::size_t l = 0; l < params.depth(); ++l) {
    st = apply_phase(spec, std::move(st), params.gammas[l]);
    st = apply_mixer(spec, std::move(st), params.times[l]);
  }
  return st;
}

namespace {

std::vector<double> class_weights(const CostSpectrum& spec, const ClassState& st, double& total) {
  std::vector<double> w(spec.size());
  total = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    w[i] = static_cast<double>(spec.multiplicity(i)) * std::norm(st.amps[i]);
    total += w[i];
  }
  if (!(total > 0.0)) throw DomainError("state has zero norm");
  return w;
}

}  // namespace

double loss(const CostSpectrum& spec, const ClassState& st) {
  check_shape(spec, st);
  // Offset from x_1 so a single-class spectrum returns x_1 exactly.
  double total = 0.0;
  const auto w = class_weights(spec, st, total);
  double shifted = 0.0;
  for (std::size_t i = 1; i < spec.size(); ++i) shifted += w[i] * (spec.cost(i) - spec.cost(0));
  return spec.cost(0) + shifted / total;
}

double success_probability(const CostSpectrum& spec, const ClassState& st) {
  check_shape(spec, st);
  double total = 0.0;
  const auto w = class_weights(spec, st, total);
  return w[spec.optimal_class().index] / total;
}

double success_probability_at_target(const CostSpectrum& spec, const ClassState& st,
                                     double target_cost) {
  check_shape(spec, st);
  const double oriented_target = spec.sense() == Sense::Maximize ? -target_cost : target_cost;
  double total = 0.0;
  const auto w = class_weights(spec, st, total);
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (spec.oriented_cost(i) <= oriented_target + 1e-12) s += w[i];
  return s / total;
}

DenseState dense_evolve(std::vector<double> costs, const LayerParams& params,
                        std::uint64_t budget) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(costs.size());
  if (costs.empty()) throw DomainError("dense simulation needs a non-empty feasible space");
  if (costs.size() > budget)
    throw ResourceError("dense simulation of " + std::to_string(costs.size()) +
                        " states exceeds the budget " + std::to_string(budget));

  // J = N |s><s| with |s> uniform: e^{-itJ} = (I - |s><s|) + e^{-itN} |s><s|.
  const Eigen::VectorXcd s = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  // Explicit matrices up to 1024 states; beyond that the same spectral form
  // is applied as a full-space rank-one update to stay within memory.
  const bool explicit_matrix = n <= 1024;
  Eigen::MatrixXcd projector;
  if (explicit_matrix) projector = s * s.adjoint();

  Eigen::VectorXcd psi = s;
  for (std::size_t l = 0; l < params.depth(); ++l) {
    for (Eigen::Index z = 0; z < n; ++z)
      psi(z) *= std::polar(1.0, -params.gammas[l] * costs[static_cast<std::size_t>(z)]);
    const Complex phase = std::polar(1.0, -params.times[l] * static_cast<double>(n));
    if (explicit_matrix) {
      Eigen::MatrixXcd mixer = (phase - 1.0) * projector;
      mixer.diagonal().array() += 1.0;
      psi = mixer * psi;
    } else {
      const Complex overlap = s.dot(psi);
      psi += (phase - 1.0) * overlap * s;
    }
  }
  DenseState out{std::move(costs), {}};
  out.amps.assign(psi.data(), psi.data() + n);
  return out;
}

DenseState dense_evolve(const ProblemInstance& inst, const LayerParams& params,
                        std::uint64_t budget) {
  if (inst.feasible_size() > budget)
    throw ResourceError("dense simulation of " + std::to_string(inst.feasible_size()) +
                        " states exceeds the budget " + std::to_string(budget));
  return dense_evolve(feasible_costs(inst, budget), params, budget);
}

double dense_loss(const DenseState& st) {
  double s = 0.0;
  for (std::size_t z = 0; z < st.amps.size(); ++z) s += std::norm(st.amps[z]) * st.costs[z];
  return s;
}

}  // namespace qwoa
