#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emit.hpp"
#include "qwoa/qwoa.h"

namespace qwoa::cli {
namespace {

using nlohmann::json;

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using SpectrumPtr = std::unique_ptr<qwoa_spectrum, HandleDeleter<qwoa_spectrum, qwoa_spectrum_free>>;
using GraphPtr = std::unique_ptr<qwoa_graph, HandleDeleter<qwoa_graph, qwoa_graph_free>>;
using InstancePtr = std::unique_ptr<qwoa_instance, HandleDeleter<qwoa_instance, qwoa_instance_free>>;
using BasisPtr = std::unique_ptr<qwoa_lie_basis, HandleDeleter<qwoa_lie_basis, qwoa_lie_basis_free>>;

int exit_code_for(qwoa_status s) {
  switch (s) {
    case QWOA_OK: return kExitOk;
    case QWOA_ERR_INVALID_ARGUMENT: return kExitUsage;
    case QWOA_ERR_DOMAIN: return kExitDomain;
    case QWOA_ERR_RESOURCE: return kExitResource;
    default: return kExitInternal;
  }
}

void check(qwoa_status s) {
  if (s != QWOA_OK) throw CliError(exit_code_for(s), qwoa_last_error());
}

std::string take_string(char* s) {
  std::string out(s ? s : "");
  qwoa_string_free(s);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitResource, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every field is addressable as a flag (--key-name) and a config key
// (key_name). `given` records keys set by either route.
struct Settings {
  std::vector<std::uint64_t> search;
  std::string family;
  int n = 0;
  std::string graph;
  std::string problem = "maxcut";
  int k = 0;
  std::string spectrum_json;
  std::uint64_t enum_budget = 0;

  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 0;
  std::string config;

  double tolerance = 1e-9;
  bool traceless = false;
  bool dense = false;
  std::string basis_out;

  int depth = 0;
  bool grover_angles = false;
  std::vector<double> gammas;
  std::vector<double> times;
  double target_cost = 0.0;

  std::vector<int> sizes;
  std::uint64_t samples = 10000;
  int p = 1;
  double marked_fraction = 0.25;
  std::uint64_t marked_count = 0;
  std::vector<double> gamma_range;
  std::vector<double> time_range;

  double threshold = 0.5;
  int p_max = 10;
  int restarts = 20;
  std::uint64_t max_evals = 4000;

  std::uint64_t budget = 0;
  std::uint64_t trials = 10000;

  int min_n = 3;
  int max_n = 12;

  std::set<std::string> given;
  bool has(const std::string& key) const { return given.count(key) != 0; }
};

std::string flag_name(const std::string& key) {
  std::string s = "--" + key;
  for (auto& c : s)
    if (c == '_') c = '-';
  return s;
}

class Binder {
 public:
  explicit Binder(Settings& s) : settings_(s) {}

  template <class T>
  CLI::Option* option(CLI::App* sub, const std::string& key, T& field, const std::string& help) {
    CLI::Option* opt = sub->add_option(flag_name(key), field, help);
    if constexpr (!std::is_same_v<T, std::string> && requires { field.begin(); })
      opt->delimiter(',');
    remember(sub, key, opt, field);
    return opt;
  }

  CLI::Option* flag(CLI::App* sub, const std::string& key, bool& field, const std::string& help) {
    CLI::Option* opt = sub->add_flag(flag_name(key), field, help);
    remember(sub, key, opt, field);
    return opt;
  }

  // Applies config values for keys not set on the command line of `active`.
  void apply_config(const CLI::App* active, const json& config) {
    if (!config.is_object()) throw CliError(kExitUsage, "config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
      auto setter = setters_.find(key);
      if (setter == setters_.end() || key == "config")
        throw CliError(kExitUsage, "unknown config key '" + key + "'");
      auto opts = options_.find(active);
      if (opts != options_.end()) {
        auto o = opts->second.find(key);
        if (o != opts->second.end() && o->second->count() > 0) continue;
      }
      try {
        setter->second(value);
      } catch (const json::exception& e) {
        throw CliError(kExitUsage, "config key '" + key + "': " + e.what());
      }
      settings_.given.insert(key);
    }
  }

  void record_flags(const CLI::App* active) {
    auto opts = options_.find(active);
    if (opts == options_.end()) return;
    for (const auto& [key, opt] : opts->second)
      if (opt->count() > 0) settings_.given.insert(key);
  }

 private:
  template <class T>
  void remember(CLI::App* sub, const std::string& key, CLI::Option* opt, T& field) {
    options_[sub][key] = opt;
    setters_[key] = [&field](const json& j) { field = j.get<T>(); };
  }

  Settings& settings_;
  std::map<const CLI::App*, std::map<std::string, CLI::Option*>> options_;
  std::map<std::string, std::function<void(const json&)>> setters_;
};

void add_instance_options(Binder& b, CLI::App* sub, Settings& s) {
  b.option(sub, "search", s.search, "Unstructured search: space size N and marked count |M|")
      ->expected(2);
  b.option(sub, "family", s.family, "Graph family: cycle, chain or complete");
  b.option(sub, "n", s.n, "Vertex count for --family");
  b.option(sub, "graph", s.graph, "Graph file: 'n m' header then 'u v' edge lines");
  b.option(sub, "problem", s.problem, "Graph problem: maxcut or kdensest (search for variance families)");
  b.option(sub, "k", s.k, "Subgraph size for kdensest");
  b.option(sub, "spectrum_json", s.spectrum_json, "Cost spectrum JSON file");
  b.option(sub, "enum_budget", s.enum_budget, "Maximum feasible-space size to enumerate (0: default)");
}

void add_output_options(Binder& b, CLI::App* sub, Settings& s) {
  b.option(sub, "format", s.format, "Output format: csv or json");
  b.option(sub, "out", s.out, "Output file (default stdout)");
}

qwoa_graph_family graph_family_from(const std::string& name) {
  if (name == "cycle") return QWOA_GRAPH_CYCLE;
  if (name == "chain") return QWOA_GRAPH_CHAIN;
  if (name == "complete") return QWOA_GRAPH_COMPLETE;
  throw CliError(kExitUsage, "unknown graph family '" + name + "' (expected cycle, chain or complete)");
}

struct Resolved {
  InstancePtr instance;  // null for a spectrum read from JSON
  SpectrumPtr spectrum;
  std::string label;
  int vertices = 0;
};

GraphPtr resolve_graph(const Settings& s) {
  qwoa_graph* g = nullptr;
  if (!s.graph.empty()) {
    check(qwoa_graph_read_file(s.graph.c_str(), &g));
  } else {
    if (!s.has("n")) throw CliError(kExitUsage, "--family needs --n");
    check(qwoa_graph_family_create(graph_family_from(s.family), s.n, &g));
  }
  return GraphPtr(g);
}

Resolved resolve_instance(const Settings& s) {
  const bool graph_source = !s.graph.empty() || !s.family.empty();
  const int sources = int(!s.search.empty()) + int(!s.spectrum_json.empty()) + int(graph_source);
  if (sources == 0)
    throw CliError(kExitUsage, "no instance: give --search, --family/--n, --graph or --spectrum-json");
  if (sources > 1 || (!s.graph.empty() && !s.family.empty()))
    throw CliError(kExitUsage, "give exactly one instance source");

  Resolved r;
  if (!s.spectrum_json.empty()) {
    qwoa_spectrum* spec = nullptr;
    check(qwoa_spectrum_from_json(read_text_file(s.spectrum_json).c_str(), &spec));
    r.spectrum.reset(spec);
    r.label = "spectrum:m=" + std::to_string(qwoa_spectrum_size(spec)) +
              ":N=" + std::to_string(qwoa_spectrum_total(spec));
    return r;
  }

  qwoa_instance* inst = nullptr;
  if (!s.search.empty()) {
    if (s.search.size() != 2) throw CliError(kExitUsage, "--search takes N and |M|");
    check(qwoa_instance_search(s.search[0], s.search[1], &inst));
  } else {
    GraphPtr g = resolve_graph(s);
    r.vertices = qwoa_graph_vertex_count(g.get());
    if (s.problem == "maxcut") {
      check(qwoa_instance_maxcut(g.get(), &inst));
    } else if (s.problem == "kdensest") {
      if (!s.has("k")) throw CliError(kExitUsage, "kdensest needs --k");
      check(qwoa_instance_kdensest(g.get(), s.k, &inst));
    } else {
      throw CliError(kExitUsage, "unknown graph problem '" + s.problem + "' (expected maxcut or kdensest)");
    }
  }
  r.instance.reset(inst);
  char* label = nullptr;
  check(qwoa_instance_describe(inst, &label));
  r.label = take_string(label);
  qwoa_spectrum* spec = nullptr;
  check(qwoa_instance_spectrum(inst, s.enum_budget, &spec));
  r.spectrum.reset(spec);
  return r;
}

struct Classes {
  std::vector<double> costs;
  std::vector<std::uint64_t> multiplicities;
  std::size_t optimal_index = 0;
  std::uint64_t optimal_count = 0;
  std::uint64_t total = 0;
};

Classes classes_of(const qwoa_spectrum* spec) {
  Classes c;
  const std::size_t m = qwoa_spectrum_size(spec);
  c.costs.resize(m);
  c.multiplicities.resize(m);
  check(qwoa_spectrum_classes(spec, c.costs.data(), c.multiplicities.data(), m));
  check(qwoa_spectrum_optimal_class(spec, &c.optimal_index, &c.optimal_count));
  c.total = qwoa_spectrum_total(spec);
  return c;
}

Table run_spectrum(const Settings& s) {
  const Resolved r = resolve_instance(s);
  const Classes c = classes_of(r.spectrum.get());
  const char* sense = qwoa_spectrum_sense(r.spectrum.get()) == QWOA_MAXIMIZE ? "max" : "min";
  Table t{{"instance", "sense", "class", "cost", "multiplicity", "optimal"}, {}};
  for (std::size_t i = 0; i < c.costs.size(); ++i)
    t.add({r.label, std::string(sense), std::uint64_t{i}, c.costs[i], c.multiplicities[i],
           i == c.optimal_index});
  return t;
}

Table run_dla(const Settings& s) {
  const Resolved r = resolve_instance(s);
  qwoa_lie_basis* raw = nullptr;
  check(qwoa_lie_closure(r.spectrum.get(), s.tolerance, &raw));
  BasisPtr basis(raw);
  const std::uint64_t m = qwoa_spectrum_size(r.spectrum.get());

  double cost_purity = 0, cost_norm = 0, mixer_purity = 0, mixer_norm = 0;
  check(qwoa_g_purity_generators(basis.get(), &cost_purity, &cost_norm, &mixer_purity, &mixer_norm));

  Table t{{"instance", "m", "N", "dim", "bound"}, {}};
  std::vector<Cell> row{r.label, m, qwoa_spectrum_total(r.spectrum.get()),
                        std::uint64_t{qwoa_lie_basis_dim(basis.get())}, m * m + 1};
  if (s.traceless) {
    t.columns.push_back("traceless_dim");
    row.push_back(std::uint64_t{qwoa_lie_basis_traceless_dim(basis.get())});
  }
  if (s.dense) {
    if (!r.instance) throw CliError(kExitUsage, "--dense needs a problem instance, not a bare spectrum");
    std::size_t dim = 0, traceless = 0;
    check(qwoa_dense_lie_closure(r.instance.get(), s.tolerance, &dim, &traceless));
    t.columns.push_back("dense_dim");
    row.push_back(std::uint64_t{dim});
    if (s.traceless) {
      t.columns.push_back("dense_traceless_dim");
      row.push_back(std::uint64_t{traceless});
    }
  }
  t.columns.insert(t.columns.end(), {"cost_purity", "mixer_purity"});
  row.push_back(cost_norm > 0 ? cost_purity / cost_norm : 1.0);
  row.push_back(mixer_purity / mixer_norm);
  t.add(std::move(row));

  if (!s.basis_out.empty()) {
    char* text = nullptr;
    check(qwoa_lie_basis_to_json(basis.get(), &text));
    const std::string body = take_string(text) + "\n";
    std::ofstream file(s.basis_out, std::ios::binary | std::ios::trunc);
    if (!file || !(file << body) || !file.flush())
      throw CliError(kExitResource, "failed writing '" + s.basis_out + "'");
  }
  return t;
}

Table run_simulate(const Settings& s) {
  const Resolved r = resolve_instance(s);
  const Classes c = classes_of(r.spectrum.get());
  std::vector<double> gammas = s.gammas, times = s.times;
  if (s.grover_angles) {
    if (!gammas.empty() || !times.empty())
      throw CliError(kExitUsage, "--grover-angles excludes --gammas/--times");
    gammas.assign(s.depth, std::numbers::pi);
    times.assign(s.depth, std::numbers::pi / static_cast<double>(c.total));
  }
  if (gammas.size() != times.size())
    throw CliError(kExitUsage, "--gammas and --times need equal lengths");
  if (s.has("depth") && gammas.size() != static_cast<std::size_t>(s.depth))
    throw CliError(kExitUsage, "--depth disagrees with the number of angles given");

  const std::size_t m = c.costs.size();
  std::vector<double> amps(2 * m);
  qwoa_sim_result res{};
  check(qwoa_simulate(r.spectrum.get(), gammas.data(), times.data(), gammas.size(),
                      s.has("target_cost"), s.target_cost, &res, amps.data(), amps.size()));

  Table t{{"instance", "m", "N", "p", "loss", "success"}, {}};
  std::vector<Cell> row{r.label, std::uint64_t{m}, c.total, std::uint64_t{gammas.size()}, res.loss,
                        res.success};
  if (s.dense) {
    if (!r.instance) throw CliError(kExitUsage, "--dense needs a problem instance, not a bare spectrum");
    const std::size_t n = c.total;
    std::vector<double> dense_amps(2 * n), dense_costs(n);
    double dense_loss = 0;
    check(qwoa_dense_simulate(r.instance.get(), gammas.data(), times.data(), gammas.size(),
                              dense_amps.data(), dense_costs.data(), n, &dense_loss));
    double deviation = 0;
    for (std::size_t z = 0; z < n; ++z) {
      auto cls = std::lower_bound(c.costs.begin(), c.costs.end(), dense_costs[z]) - c.costs.begin();
      deviation = std::max(deviation, std::hypot(dense_amps[2 * z] - amps[2 * cls],
                                                 dense_amps[2 * z + 1] - amps[2 * cls + 1]));
    }
    t.columns.insert(t.columns.end(), {"dense_loss", "max_amplitude_deviation"});
    row.push_back(dense_loss);
    row.push_back(deviation);
  }
  t.add(std::move(row));
  return t;
}

qwoa_ranges ranges_from(const Settings& s) {
  qwoa_ranges r = qwoa_default_ranges();
  if (!s.gamma_range.empty()) {
    if (s.gamma_range.size() != 2) throw CliError(kExitUsage, "--gamma-range takes lo,hi");
    r.gamma_lo = s.gamma_range[0];
    r.gamma_hi = s.gamma_range[1];
  }
  if (!s.time_range.empty()) {
    if (s.time_range.size() != 2) throw CliError(kExitUsage, "--time-range takes lo,hi");
    r.time_lo = s.time_range[0];
    r.time_hi = s.time_range[1];
  }
  return r;
}

Table run_variance(const Settings& s, std::ostream& err) {
  const qwoa_ranges ranges = ranges_from(s);
  Table t{{"family", "size", "m", "N", "p", "samples", "mean", "variance", "stderr", "seed"}, {}};

  if (s.sizes.empty()) {
    const Resolved r = resolve_instance(s);
    qwoa_variance_estimate e{};
    check(qwoa_estimate_variance(r.spectrum.get(), s.p, s.samples, &ranges, s.seed, &e));
    const std::uint64_t total = qwoa_spectrum_total(r.spectrum.get());
    t.add({r.label, std::int64_t{r.vertices ? r.vertices : static_cast<std::int64_t>(total)},
           std::uint64_t{qwoa_spectrum_size(r.spectrum.get())}, total, std::int64_t{e.p}, e.samples,
           e.mean, e.variance, e.stderr_variance, s.seed});
    return t;
  }

  qwoa_family fam{};
  std::string name;
  if (s.problem == "search") {
    fam.kind = QWOA_FAMILY_SEARCH;
    fam.marked_fraction = s.marked_fraction;
    fam.marked_count = s.marked_count;
    name = s.marked_count ? "search:M=" + std::to_string(s.marked_count)
                          : "search:fraction=" + format_double(s.marked_fraction);
  } else if (s.problem == "maxcut" || s.problem == "kdensest") {
    fam.kind = s.problem == "maxcut" ? QWOA_FAMILY_MAXCUT : QWOA_FAMILY_KDENSEST;
    const std::string graph = s.family.empty() ? "cycle" : s.family;
    fam.graph = graph_family_from(graph);
    fam.k = s.has("k") ? s.k : 2;
    name = s.problem + ":" + graph;
    if (fam.kind == QWOA_FAMILY_KDENSEST) name += ":k=" + std::to_string(fam.k);
  } else {
    throw CliError(kExitUsage, "unknown family problem '" + s.problem + "'");
  }

  std::vector<qwoa_scaling_row> rows(s.sizes.size());
  double slope = 0, slope_err = 0;
  check(qwoa_scaling_report(&fam, s.sizes.data(), s.sizes.size(), s.p, s.samples, s.seed, &ranges,
                            rows.data(), &slope, &slope_err));
  for (const auto& row : rows)
    t.add({name, std::int64_t{row.size}, std::uint64_t{row.m}, row.n, std::int64_t{row.estimate.p},
           row.estimate.samples, row.estimate.mean, row.estimate.variance,
           row.estimate.stderr_variance, s.seed});
  err << "log-variance slope per size step: " << format_double(slope) << " (stderr "
      << format_double(slope_err) << ")\n";
  return t;
}

qwoa_depth_options depth_options_from(const Settings& s) {
  qwoa_depth_options o = qwoa_default_depth_options();
  o.restarts = s.restarts;
  o.seed = s.seed;
  o.max_evaluations = s.max_evals;
  o.has_target = s.has("target_cost");
  o.target_cost = s.target_cost;
  return o;
}

Table run_depth(const Settings& s, std::ostream& err) {
  const Resolved r = resolve_instance(s);
  const Classes c = classes_of(r.spectrum.get());
  const qwoa_depth_options options = depth_options_from(s);
  const double bound = qwoa_lower_bound_depth(r.spectrum.get());

  std::vector<qwoa_depth_result> results;
  if (s.has("p")) {
    qwoa_depth_result res{};
    check(qwoa_best_success_at_depth(r.spectrum.get(), s.p, &options, &res, nullptr, nullptr));
    results.push_back(res);
  } else {
    if (s.p_max < 1) throw CliError(kExitDomain, "--p-max must be at least 1");
    results.resize(static_cast<std::size_t>(s.p_max));
    int depth = 0;
    std::size_t scanned = 0;
    check(qwoa_minimal_depth(r.spectrum.get(), s.threshold, s.p_max, &options, &depth,
                             results.data(), &scanned));
    results.resize(scanned);
    err << "threshold " << format_double(s.threshold) << ": ";
    if (depth > 0)
      err << "minimal depth " << depth << "\n";
    else
      err << "not reached within p_max " << s.p_max << "\n";
  }

  Table t{{"instance", "N", "d_opt", "p", "best_success", "evals", "lower_bound", "seed"}, {}};
  for (const auto& res : results)
    t.add({r.label, c.total, c.optimal_count, std::int64_t{res.p}, res.best_success,
           res.evaluations, bound, s.seed});
  return t;
}

Table run_baseline(const Settings& s) {
  const Resolved r = resolve_instance(s);
  const Classes c = classes_of(r.spectrum.get());
  const std::uint64_t budget =
      s.has("budget") ? s.budget : (c.total + c.optimal_count - 1) / c.optimal_count;
  qwoa_sampling_trials res{};
  check(qwoa_random_sampling_trials(r.spectrum.get(), budget, s.trials, s.seed, &res));
  Table t{{"instance", "N", "d_opt", "budget", "trials", "frequency", "closed_form", "sigma", "seed"},
          {}};
  t.add({r.label, c.total, c.optimal_count, budget, res.trials, res.frequency, res.closed_form,
         res.sigma, s.seed});
  return t;
}

struct CountCase {
  std::string check;
  std::string problem;
  qwoa_graph_family family;
  int k;
  std::uint64_t expected;
};

std::vector<CountCase> count_cases(int n) {
  std::vector<CountCase> cases;
  cases.push_back({"cut-sparse", "maxcut", QWOA_GRAPH_CYCLE, 0, n % 2 == 0 ? 2 : 2 * std::uint64_t(n)});
  cases.push_back({"cut-sparse", "maxcut", QWOA_GRAPH_CHAIN, 0, 2});
  cases.push_back({"cut-complete", "maxcut", QWOA_GRAPH_COMPLETE, 0,
                   n % 2 == 0 ? qwoa_binomial(n, n / 2)
                              : qwoa_binomial(n, (n - 1) / 2) + qwoa_binomial(n, (n + 1) / 2)});
  for (int k = 2; k < n; ++k) {
    cases.push_back({"densest", "kdensest", QWOA_GRAPH_CYCLE, k, std::uint64_t(n)});
    cases.push_back({"densest", "kdensest", QWOA_GRAPH_CHAIN, k, std::uint64_t(n + 1 - k)});
  }
  return cases;
}

const char* family_name(qwoa_graph_family f) {
  switch (f) {
    case QWOA_GRAPH_CYCLE: return "cycle";
    case QWOA_GRAPH_CHAIN: return "chain";
    default: return "complete";
  }
}

Table run_verify_claims(const Settings& s, std::ostream& err, bool& all_passed) {
  if (s.min_n < 3) throw CliError(kExitDomain, "optimal counts are checked for n >= 3 only");
  if (s.max_n < s.min_n) throw CliError(kExitDomain, "--max-n must be at least --min-n");
  Table t{{"check", "problem", "graph", "n", "k", "expected", "observed", "pass"}, {}};
  all_passed = true;
  for (int n = s.min_n; n <= s.max_n; ++n) {
    for (const auto& cc : count_cases(n)) {
      qwoa_graph* g = nullptr;
      check(qwoa_graph_family_create(cc.family, n, &g));
      GraphPtr graph(g);
      qwoa_instance* inst = nullptr;
      if (cc.problem == "maxcut")
        check(qwoa_instance_maxcut(graph.get(), &inst));
      else
        check(qwoa_instance_kdensest(graph.get(), cc.k, &inst));
      InstancePtr instance(inst);
      std::uint64_t observed = 0;
      check(qwoa_instance_count_optimal(instance.get(), s.enum_budget, &observed));
      const bool pass = observed == cc.expected;
      if (!pass) {
        all_passed = false;
        err << "optimal count mismatch (" << cc.check << "): " << cc.problem << " " << family_name(cc.family)
            << " n=" << n << " k=" << cc.k << " expected " << cc.expected << " observed "
            << observed << "\n";
      }
      t.add({cc.check, cc.problem, std::string(family_name(cc.family)), std::int64_t{n},
             std::int64_t{cc.k}, cc.expected, observed, pass});
    }
  }
  return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  Binder b(s);
  CLI::App app{"Dynamical Lie algebra, simulation and depth experiments for QWOA", "qwoa-dla"};
  app.set_version_flag("--version", std::string(qwoa_version()));
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub) {
    add_output_options(b, sub, s);
    b.option(sub, "config", s.config, "JSON config; command-line flags take precedence");
  };
  auto seeded = [&](CLI::App* sub) { b.option(sub, "seed", s.seed, "Random seed"); };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Cost classes and multiplicities");
  add_instance_options(b, spectrum, s);
  common(spectrum);

  CLI::App* dla = app.add_subcommand("dla", "Lie closure dimension and basis");
  add_instance_options(b, dla, s);
  common(dla);
  b.option(dla, "tolerance", s.tolerance, "Relative residual threshold for new basis elements");
  b.flag(dla, "traceless", s.traceless, "Also report the dimension modulo the identity");
  b.flag(dla, "dense", s.dense, "Cross-check with the explicit-matrix closure");
  b.option(dla, "basis_out", s.basis_out, "Write the orthonormal basis as JSON");

  CLI::App* simulate = app.add_subcommand("simulate", "Evolve the class-space state");
  add_instance_options(b, simulate, s);
  common(simulate);
  b.option(simulate, "depth", s.depth, "Layer count for --grover-angles");
  b.flag(simulate, "grover_angles", s.grover_angles, "Use gamma = pi, t = pi/N in every layer");
  b.option(simulate, "gammas", s.gammas, "Comma-separated phase angles");
  b.option(simulate, "times", s.times, "Comma-separated walk times");
  b.option(simulate, "target_cost", s.target_cost, "Count success on classes at least this good");
  b.flag(simulate, "dense", s.dense, "Cross-check against the explicit-basis simulator");

  CLI::App* variance = app.add_subcommand("variance", "Monte-Carlo loss variance");
  add_instance_options(b, variance, s);
  common(variance);
  seeded(variance);
  b.option(variance, "sizes", s.sizes, "Family sizes: log2 N for search, n for graphs");
  b.option(variance, "samples", s.samples, "Monte-Carlo samples per estimate");
  b.option(variance, "p", s.p, "Layer count");
  b.option(variance, "marked_fraction", s.marked_fraction, "Search family: |M| / N");
  b.option(variance, "marked_count", s.marked_count, "Search family: fixed |M| (overrides fraction)");
  b.option(variance, "gamma_range", s.gamma_range, "Phase-angle range lo,hi");
  b.option(variance, "time_range", s.time_range, "Walk-time range lo,hi");

  CLI::App* depth = app.add_subcommand("depth", "Optimized success probability per depth");
  add_instance_options(b, depth, s);
  common(depth);
  seeded(depth);
  b.option(depth, "p", s.p, "Evaluate this depth only instead of scanning");
  b.option(depth, "threshold", s.threshold, "Success probability that counts as solved");
  b.option(depth, "p_max", s.p_max, "Largest depth scanned");
  b.option(depth, "restarts", s.restarts, "Optimizer restarts per depth");
  b.option(depth, "max_evals", s.max_evals, "Objective evaluations per restart");
  b.option(depth, "target_cost", s.target_cost, "Count success on classes at least this good");

  CLI::App* baseline = app.add_subcommand("baseline", "Uniform random sampling baseline");
  add_instance_options(b, baseline, s);
  common(baseline);
  seeded(baseline);
  b.option(baseline, "budget", s.budget, "Draws per trial (default ceil(N / d_opt))");
  b.option(baseline, "trials", s.trials, "Monte-Carlo trials");

  CLI::App* claims = app.add_subcommand("verify-claims", "Brute-force optimal-solution counts");
  common(claims);
  b.option(claims, "min_n", s.min_n, "Smallest vertex count");
  b.option(claims, "max_n", s.max_n, "Largest vertex count");
  b.option(claims, "enum_budget", s.enum_budget, "Maximum feasible-space size (0: default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    b.record_flags(active);
    if (!s.config.empty()) {
      json config;
      try {
        config = json::parse(read_text_file(s.config));
      } catch (const json::parse_error& e) {
        throw CliError(kExitUsage, "config '" + s.config + "': " + e.what());
      }
      b.apply_config(active, config);
    }
    const Format format = format_from_string(s.format);

    Table table;
    bool claims_passed = true;
    const std::string name = active->get_name();
    if (name == "spectrum")
      table = run_spectrum(s);
    else if (name == "dla")
      table = run_dla(s);
    else if (name == "simulate")
      table = run_simulate(s);
    else if (name == "variance")
      table = run_variance(s, err);
    else if (name == "depth")
      table = run_depth(s, err);
    else if (name == "baseline")
      table = run_baseline(s);
    else
      table = run_verify_claims(s, err, claims_passed);

    emit(table, format, s.out, out);
    return claims_passed ? kExitOk : kExitCountMismatch;
  } catch (const CliError& e) {
    err << "qwoa-dla: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    err << "qwoa-dla: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace qwoa::cli
