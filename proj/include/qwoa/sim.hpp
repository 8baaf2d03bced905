#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qwoa/problems.hpp"
#include "qwoa/spectrum.hpp"

namespace qwoa {

using Complex = std::complex<double>;

/// Phase angles and walk times, one pair per layer.
struct LayerParams {
  std::vector<double> gammas;
  std::vector<double> times;

  std::size_t depth() const { return gammas.size(); }
  void validate() const;
};

/// QWOA state compressed to one amplitude per cost class. Every solution in
/// class i carries amplitude amps[i], so the norm is sum_i d_i |a_i|^2.
struct ClassState {
  std::vector<Complex> amps;
};

double norm_squared(const CostSpectrum& spec, const ClassState& st);

ClassState init_state(const CostSpectrum& spec);

/// e^{-i gamma H_C}: multiplies class i by e^{-i gamma x_i}.
ClassState apply_phase(const CostSpectrum& spec, ClassState st, double gamma);

/// e^{-i t J} with J the all-ones matrix on the feasible space. J^2 = N J
/// gives e^{-itJ} = I + (e^{-itN} - 1)/N J, applied through the class sum.
ClassState apply_mixer(const CostSpectrum& spec, ClassState st, double t);

ClassState evolve(const CostSpectrum& spec, const LayerParams& params);

/// <psi|H_C|psi> in the spectrum's cost units, for the normalized state.
double loss(const CostSpectrum& spec, const ClassState& st);

/// Probability mass on the optimal class (normalized).
double success_probability(const CostSpectrum& spec, const ClassState& st);

/// Probability mass on classes at least as good as `target_cost`.
double success_probability_at_target(const CostSpectrum& spec, const ClassState& st,
                                     double target_cost);

inline constexpr std::uint64_t kDenseEvolveBudget = 4096;

/// Explicit |S'|-dimensional state and the cost of each basis state.
struct DenseState {
  std::vector<double> costs;
  std::vector<Complex> amps;
};

/// Oracle simulator over the explicit feasible basis. Builds the mixer as
/// an explicit |S'| x |S'| unitary from the spectral decomposition of J.
DenseState dense_evolve(const ProblemInstance& inst, const LayerParams& params,
                        std::uint64_t budget = kDenseEvolveBudget);

/// Same oracle over an explicit per-solution cost list.
DenseState dense_evolve(std::vector<double> costs, const LayerParams& params,
                        std::uint64_t budget = kDenseEvolveBudget);

double dense_loss(const DenseState& st);

}  // namespace qwoa
