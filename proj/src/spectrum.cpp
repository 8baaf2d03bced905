#include "qwoa/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qwoa/errors.hpp"

namespace qwoa {

std::string to_string(Sense sense) { return sense == Sense::Minimize ? "min" : "max"; }

Sense sense_from_string(const std::string& text) {
  if (text == "min" || text == "minimize") return Sense::Minimize;
  if (text == "max" || text == "maximize") return Sense::Maximize;
  throw DomainError("unknown optimization sense '" + text + "' (expected min or max)");
}

CostSpectrum::CostSpectrum(std::vector<double> costs, std::vector<std::uint64_t> multiplicities,
                           Sense sense)
    : costs_(std::move(costs)), multiplicities_(std::move(multiplicities)), sense_(sense) {
  if (costs_.empty()) throw DomainError("cost spectrum needs at least one class");
  if (costs_.size() != multiplicities_.size())
    throw DomainError("costs and multiplicities differ in length");
  for (std::size_t i = 0; i < costs_.size(); ++i) {
    if (!std::isfinite(costs_[i])) throw DomainError("cost values must be finite");
    if (i > 0 && !(costs_[i - 1] < costs_[i]))
      throw DomainError("costs must be strictly increasing");
    if (multiplicities_[i] == 0) throw DomainError("multiplicities must be positive");
    total_ += multiplicities_[i];
  }
}

CostSpectrum CostSpectrum::from_cost_list(std::span<const double> values, Sense sense,
                                          double merge_tolerance) {
  if (values.empty()) throw DomainError("cannot build a spectrum from an empty cost list");
  if (!(merge_tolerance >= 0.0)) throw DomainError("merge tolerance must be non-negative");
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted)
    if (!std::isfinite(v)) throw DomainError("cost values must be finite");
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> costs;
  std::vector<std::uint64_t> counts;
  for (double v : sorted) {
    if (!costs.empty() && v - costs.back() <= merge_tolerance) {
      ++counts.back();
    } else {
      costs.push_back(v);
      counts.push_back(1);
    }
  }
  return CostSpectrum(std::move(costs), std::move(counts), sense);
}

double CostSpectrum::oriented_cost(std::size_t i) const {
  return sense_ == Sense::Maximize ? -costs_.at(i) : costs_.at(i);
}

OptimalClass CostSpectrum::optimal_class() const {
  const std::size_t index = sense_ == Sense::Minimize ? 0 : costs_.size() - 1;
  return {index, multiplicities_[index]};
}

std::vector<double> CostSpectrum::expand() const {
  std::vector<double> out;
  out.reserve(total_);
  for (std::size_t i = 0; i < costs_.size(); ++i) out.insert(out.end(), multiplicities_[i], costs_[i]);
  return out;
}

std::string CostSpectrum::to_json() const {
  nlohmann::ordered_json j;
  j["costs"] = costs_;
  j["multiplicities"] = multiplicities_;
  j["sense"] = to_string(sense_);
  return j.dump();
}

CostSpectrum CostSpectrum::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed spectrum JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("spectrum JSON must be an object");
  for (const auto& item : j.items()) {
    const auto& key = item.key();
    if (key != "costs" && key != "multiplicities" && key != "sense")
      throw DomainError("unknown key '" + key + "' in spectrum JSON");
  }
  if (!j.contains("costs") || !j.contains("multiplicities"))
    throw DomainError("spectrum JSON needs 'costs' and 'multiplicities'");
  try {
    auto costs = j.at("costs").get<std::vector<double>>();
    std::vector<std::uint64_t> counts;
    for (const auto& c : j.at("multiplicities")) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 1)
        throw DomainError("multiplicities must be positive integers");
      counts.push_back(c.get<std::uint64_t>());
    }
    const Sense sense = j.contains("sense") ? sense_from_string(j.at("sense").get<std::string>())
                                            : Sense::Minimize;
    return CostSpectrum(std::move(costs), std::move(counts), sense);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed spectrum JSON: ") + e.what());
  }
}

}  // namespace qwoa
