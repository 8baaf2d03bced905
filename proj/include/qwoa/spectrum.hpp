#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qwoa {

enum class Sense { Minimize, Maximize };

std::string to_string(Sense sense);
Sense sense_from_string(const std::string& text);

/// Index and multiplicity of the best cost class.
struct OptimalClass {
  std::size_t index = 0;
  std::uint64_t count = 0;
};

/// Distinct feasible costs x_1 < ... < x_m with their multiplicities.
///
/// This is everything QWOA can see of a problem instance: the circuit is
/// invariant under permutations of basis states, so states sharing a cost
/// behave identically. Immutable once constructed.
class CostSpectrum {
 public:
  /// Default merge tolerance for grouping real-valued costs.
  static constexpr double kDefaultMergeTolerance = 1e-9;

  /// Validating constructor. Costs must be finite and strictly increasing,
  /// every multiplicity at least one.
  CostSpectrum(std::vector<double> costs, std::vector<std::uint64_t> multiplicities,
               Sense sense);

  /// Groups a list of per-solution costs into classes. Values within
  /// `merge_tolerance` of a class's smallest member join that class.
  static CostSpectrum from_cost_list(std::span<const double> values, Sense sense,
                                     double merge_tolerance = kDefaultMergeTolerance);

  static CostSpectrum from_json(const std::string& text);
  std::string to_json() const;

  std::size_t size() const { return costs_.size(); }
  std::uint64_t total() const { return total_; }
  Sense sense() const { return sense_; }

  const std::vector<double>& costs() const { return costs_; }
  const std::vector<std::uint64_t>& multiplicities() const { return multiplicities_; }

  double cost(std::size_t i) const { return costs_.at(i); }
  std::uint64_t multiplicity(std::size_t i) const { return multiplicities_.at(i); }

  /// Cost in minimization orientation: x for Minimize, -x for Maximize.
  double oriented_cost(std::size_t i) const;

  OptimalClass optimal_class() const;

  /// Expands back to the sorted multiset of per-solution costs.
  std::vector<double> expand() const;

  bool operator==(const CostSpectrum&) const = default;

 private:
  std::vector<double> costs_;
  std::vector<std::uint64_t> multiplicities_;
  std::uint64_t total_ = 0;
  Sense sense_ = Sense::Minimize;
};

/// Free-function spelling of CostSpectrum::optimal_class.
inline OptimalClass optimal_class(const CostSpectrum& spec) { return spec.optimal_class(); }

}  // namespace qwoa
