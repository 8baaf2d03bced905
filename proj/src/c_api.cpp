#include "qwoa/qwoa.h"

#include <cstring>
#include <new>
#include <string>

#include "qwoa/depth.hpp"
#include "qwoa/dla.hpp"
#include "qwoa/errors.hpp"
#include "qwoa/landscape.hpp"
#include "qwoa/problems.hpp"
#include "qwoa/sim.hpp"
#include "qwoa/spectrum.hpp"

struct qwoa_spectrum {
  qwoa::CostSpectrum value;
};
struct qwoa_graph {
  qwoa::Graph value;
};
struct qwoa_instance {
  qwoa::ProblemInstance value;
};
struct qwoa_lie_basis {
  qwoa::CostSpectrum spec;
  qwoa::LieBasis value;
};

namespace {

thread_local std::string last_error;

qwoa_status fail(qwoa_status code, const std::string& message) {
  last_error = message;
  return code;
}

template <class F>
qwoa_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return QWOA_OK;
  } catch (const qwoa::DomainError& e) {
    return fail(QWOA_ERR_DOMAIN, e.what());
  } catch (const qwoa::ResourceError& e) {
    return fail(QWOA_ERR_RESOURCE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QWOA_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(QWOA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QWOA_ERR_INTERNAL, "unknown error");
  }
}

#define QWOA_REQUIRE(cond)                                                      \
  do {                                                                          \
    if (!(cond)) return fail(QWOA_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qwoa::Sense to_sense(qwoa_sense s) {
  return s == QWOA_MAXIMIZE ? qwoa::Sense::Maximize : qwoa::Sense::Minimize;
}

qwoa::GraphFamily to_family(qwoa_graph_family f) {
  switch (f) {
    case QWOA_GRAPH_CYCLE: return qwoa::GraphFamily::Cycle;
    case QWOA_GRAPH_CHAIN: return qwoa::GraphFamily::Chain;
    case QWOA_GRAPH_COMPLETE: return qwoa::GraphFamily::Complete;
  }
  throw qwoa::DomainError("unknown graph family");
}

qwoa::ParameterRanges to_ranges(const qwoa_ranges* r) {
  qwoa::ParameterRanges out;
  if (r != nullptr) {
    out.gamma = {r->gamma_lo, r->gamma_hi};
    out.time = {r->time_lo, r->time_hi};
  }
  return out;
}

qwoa_variance_estimate to_c(const qwoa::VarianceEstimate& e) {
  return {e.mean, e.variance, e.standard_error_of_variance, e.samples, e.depth, e.seed};
}

qwoa::InstanceFamily to_family(const qwoa_family& f) {
  qwoa::InstanceFamily out;
  switch (f.kind) {
    case QWOA_FAMILY_SEARCH: out.kind = qwoa::InstanceFamily::Kind::Search; break;
    case QWOA_FAMILY_MAXCUT: out.kind = qwoa::InstanceFamily::Kind::MaxCut; break;
    case QWOA_FAMILY_KDENSEST: out.kind = qwoa::InstanceFamily::Kind::KDensest; break;
    default: throw qwoa::DomainError("unknown instance family kind");
  }
  if (f.kind != QWOA_FAMILY_SEARCH) out.graph = to_family(f.graph);
  out.marked_fraction = f.marked_fraction;
  out.marked_count = f.marked_count;
  out.k = f.k;
  return out;
}

qwoa::DepthOptions to_options(const qwoa_depth_options* o) {
  qwoa::DepthOptions out;
  if (o != nullptr) {
    out.restarts = o->restarts;
    out.seed = o->seed;
    if (o->has_target) out.target_cost = o->target_cost;
    if (o->max_evaluations > 0) out.optimizer.max_evaluations = o->max_evaluations;
  }
  return out;
}

qwoa_depth_result to_c(const qwoa::DepthResult& r) {
  return {r.p, r.best_success, r.restarts_used, r.evaluations};
}

}  // namespace

extern "C" {

const char* qwoa_last_error(void) { return last_error.c_str(); }
const char* qwoa_version(void) { return "1.0.0"; }
void qwoa_string_free(char* s) { delete[] s; }

qwoa_status qwoa_spectrum_from_costs(const double* values, size_t count, qwoa_sense sense,
                                     double merge_tolerance, qwoa_spectrum** out) {
  QWOA_REQUIRE(out != nullptr);
  QWOA_REQUIRE(values != nullptr || count == 0);
  return guarded([&] {
    *out = new qwoa_spectrum{qwoa::CostSpectrum::from_cost_list(
        std::span<const double>(values, count), to_sense(sense), merge_tolerance)};
  });
}

qwoa_status qwoa_spectrum_from_classes(const double* costs, const uint64_t* multiplicities,
                                       size_t m, qwoa_sense sense, qwoa_spectrum** out) {
  QWOA_REQUIRE(out != nullptr);
  QWOA_REQUIRE((costs != nullptr && multiplicities != nullptr) || m == 0);
  return guarded([&] {
    *out = new qwoa_spectrum{qwoa::CostSpectrum(std::vector<double>(costs, costs + m),
                                                std::vector<std::uint64_t>(multiplicities, multiplicities + m),
                                                to_sense(sense))};
  });
}

qwoa_status qwoa_spectrum_from_json(const char* json, qwoa_spectrum** out) {
  QWOA_REQUIRE(json != nullptr && out != nullptr);
  return guarded([&] { *out = new qwoa_spectrum{qwoa::CostSpectrum::from_json(json)}; });
}

qwoa_status qwoa_spectrum_to_json(const qwoa_spectrum* spec, char** out) {
  QWOA_REQUIRE(spec != nullptr && out != nullptr);
  return guarded([&] { *out = copy_string(spec->value.to_json()); });
}

void qwoa_spectrum_free(qwoa_spectrum* spec) { delete spec; }

size_t qwoa_spectrum_size(const qwoa_spectrum* spec) { return spec ? spec->value.size() : 0; }
uint64_t qwoa_spectrum_total(const qwoa_spectrum* spec) { return spec ? spec->value.total() : 0; }
qwoa_sense qwoa_spectrum_sense(const qwoa_spectrum* spec) {
  return spec && spec->value.sense() == qwoa::Sense::Maximize ? QWOA_MAXIMIZE : QWOA_MINIMIZE;
}

qwoa_status qwoa_spectrum_classes(const qwoa_spectrum* spec, double* costs,
                                  uint64_t* multiplicities, size_t capacity) {
  QWOA_REQUIRE(spec != nullptr && capacity >= spec->value.size());
  for (size_t i = 0; i < spec->value.size(); ++i) {
    if (costs) costs[i] = spec->value.cost(i);
    if (multiplicities) multiplicities[i] = spec->value.multiplicity(i);
  }
  return QWOA_OK;
}

qwoa_status qwoa_spectrum_optimal_class(const qwoa_spectrum* spec, size_t* index,
                                        uint64_t* count) {
  QWOA_REQUIRE(spec != nullptr);
  const auto best = spec->value.optimal_class();
  if (index) *index = best.index;
  if (count) *count = best.count;
  return QWOA_OK;
}

qwoa_status qwoa_graph_create(int n, const int* edges, size_t edge_count, qwoa_graph** out) {
  QWOA_REQUIRE(out != nullptr);
  QWOA_REQUIRE(edges != nullptr || edge_count == 0);
  return guarded([&] {
    std::vector<qwoa::Graph::Edge> list;
    for (size_t e = 0; e < edge_count; ++e) list.emplace_back(edges[2 * e], edges[2 * e + 1]);
    *out = new qwoa_graph{qwoa::Graph(n, std::move(list))};
  });
}

qwoa_status qwoa_graph_family_create(qwoa_graph_family family, int n, qwoa_graph** out) {
  QWOA_REQUIRE(out != nullptr);
  return guarded([&] { *out = new qwoa_graph{qwoa::make_graph(to_family(family), n)}; });
}

qwoa_status qwoa_graph_read_file(const char* path, qwoa_graph** out) {
  QWOA_REQUIRE(path != nullptr && out != nullptr);
  return guarded([&] { *out = new qwoa_graph{qwoa::read_graph_file(path)}; });
}

void qwoa_graph_free(qwoa_graph* graph) { delete graph; }
int qwoa_graph_vertex_count(const qwoa_graph* graph) { return graph ? graph->value.vertex_count() : 0; }
size_t qwoa_graph_edge_count(const qwoa_graph* graph) { return graph ? graph->value.edge_count() : 0; }

qwoa_status qwoa_instance_search(uint64_t space_size, uint64_t marked, qwoa_instance** out) {
  QWOA_REQUIRE(out != nullptr);
  return guarded([&] { *out = new qwoa_instance{qwoa::ProblemInstance::search(space_size, marked)}; });
}

qwoa_status qwoa_instance_maxcut(const qwoa_graph* graph, qwoa_instance** out) {
  QWOA_REQUIRE(graph != nullptr && out != nullptr);
  return guarded([&] { *out = new qwoa_instance{qwoa::ProblemInstance::max_cut(graph->value)}; });
}

qwoa_status qwoa_instance_kdensest(const qwoa_graph* graph, int k, qwoa_instance** out) {
  QWOA_REQUIRE(graph != nullptr && out != nullptr);
  return guarded([&] { *out = new qwoa_instance{qwoa::ProblemInstance::k_densest(graph->value, k)}; });
}

void qwoa_instance_free(qwoa_instance* inst) { delete inst; }

uint64_t qwoa_instance_feasible_size(const qwoa_instance* inst) {
  return inst ? inst->value.feasible_size() : 0;
}

qwoa_status qwoa_instance_describe(const qwoa_instance* inst, char** out) {
  QWOA_REQUIRE(inst != nullptr && out != nullptr);
  return guarded([&] { *out = copy_string(inst->value.describe()); });
}

qwoa_status qwoa_instance_spectrum(const qwoa_instance* inst, uint64_t budget, qwoa_spectrum** out) {
  QWOA_REQUIRE(inst != nullptr && out != nullptr);
  return guarded([&] {
    *out = new qwoa_spectrum{
        qwoa::spectrum_of(inst->value, budget == 0 ? qwoa::kDefaultEnumerationBudget : budget)};
  });
}

qwoa_status qwoa_instance_count_optimal(const qwoa_instance* inst, uint64_t budget, uint64_t* out) {
  QWOA_REQUIRE(inst != nullptr && out != nullptr);
  return guarded([&] {
    *out = qwoa::count_optimal(inst->value, budget == 0 ? qwoa::kDefaultEnumerationBudget : budget);
  });
}

uint64_t qwoa_binomial(int n, int k) { return qwoa::binomial(n, k); }

qwoa_status qwoa_simulate(const qwoa_spectrum* spec, const double* gammas, const double* times,
                          size_t p, int has_target, double target_cost, qwoa_sim_result* result,
                          double* amps, size_t amps_capacity) {
  QWOA_REQUIRE(spec != nullptr && result != nullptr);
  QWOA_REQUIRE(p == 0 || (gammas != nullptr && times != nullptr));
  QWOA_REQUIRE(amps == nullptr || amps_capacity >= 2 * spec->value.size());
  return guarded([&] {
    const qwoa::LayerParams params{std::vector<double>(gammas, gammas + p),
                                   std::vector<double>(times, times + p)};
    const auto st = qwoa::evolve(spec->value, params);
    result->loss = qwoa::loss(spec->value, st);
    result->success = has_target ? qwoa::success_probability_at_target(spec->value, st, target_cost)
                                 : qwoa::success_probability(spec->value, st);
    result->norm_squared = qwoa::norm_squared(spec->value, st);
    if (amps != nullptr)
      for (size_t i = 0; i < st.amps.size(); ++i) {
        amps[2 * i] = st.amps[i].real();
        amps[2 * i + 1] = st.amps[i].imag();
      }
  });
}

qwoa_status qwoa_dense_simulate(const qwoa_instance* inst, const double* gammas,
                                const double* times, size_t p, double* amps, double* costs,
                                size_t capacity, double* loss) {
  QWOA_REQUIRE(inst != nullptr);
  QWOA_REQUIRE(p == 0 || (gammas != nullptr && times != nullptr));
  QWOA_REQUIRE((amps == nullptr && costs == nullptr) || capacity >= inst->value.feasible_size());
  return guarded([&] {
    const qwoa::LayerParams params{std::vector<double>(gammas, gammas + p),
                                   std::vector<double>(times, times + p)};
    const auto st = qwoa::dense_evolve(inst->value, params);
    for (size_t z = 0; z < st.amps.size(); ++z) {
      if (amps) {
        amps[2 * z] = st.amps[z].real();
        amps[2 * z + 1] = st.amps[z].imag();
      }
      if (costs) costs[z] = st.costs[z];
    }
    if (loss) *loss = qwoa::dense_loss(st);
  });
}

qwoa_status qwoa_lie_closure(const qwoa_spectrum* spec, double tol, qwoa_lie_basis** out) {
  QWOA_REQUIRE(spec != nullptr && out != nullptr);
  return guarded([&] {
    *out = new qwoa_lie_basis{spec->value, qwoa::lie_closure(spec->value, tol)};
  });
}

void qwoa_lie_basis_free(qwoa_lie_basis* basis) { delete basis; }
size_t qwoa_lie_basis_dim(const qwoa_lie_basis* basis) { return basis ? basis->value.dim() : 0; }
size_t qwoa_lie_basis_traceless_dim(const qwoa_lie_basis* basis) {
  return basis ? qwoa::traceless_dimension(basis->spec, basis->value) : 0;
}
double qwoa_lie_basis_orthonormality_error(const qwoa_lie_basis* basis) {
  return basis ? qwoa::orthonormality_error(basis->spec, basis->value) : 0.0;
}

qwoa_status qwoa_lie_basis_to_json(const qwoa_lie_basis* basis, char** out) {
  QWOA_REQUIRE(basis != nullptr && out != nullptr);
  return guarded([&] { *out = copy_string(qwoa::basis_to_json(basis->value)); });
}

qwoa_status qwoa_g_purity(const qwoa_lie_basis* basis, double alpha, const double* block, size_t m,
                          double* out) {
  QWOA_REQUIRE(basis != nullptr && out != nullptr);
  QWOA_REQUIRE(block != nullptr || m == 0);
  return guarded([&] {
    if (m != basis->spec.size()) throw qwoa::DomainError("block size does not match the spectrum");
    auto h = qwoa::BlockElement::zero(m);
    h.alpha = alpha;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        const size_t k = 2 * (i * m + j);
        h.block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {block[k], block[k + 1]};
      }
    *out = qwoa::g_purity(basis->spec, basis->value, h);
  });
}

qwoa_status qwoa_g_purity_generators(const qwoa_lie_basis* basis, double* cost_purity,
                                     double* cost_norm_sq, double* mixer_purity,
                                     double* mixer_norm_sq) {
  QWOA_REQUIRE(basis != nullptr);
  return guarded([&] {
    const auto hc = qwoa::cost_generator(basis->spec);
    const auto hm = qwoa::mixer_generator(basis->spec);
    if (cost_purity) *cost_purity = qwoa::g_purity(basis->spec, basis->value, hc);
    if (cost_norm_sq) *cost_norm_sq = qwoa::inner(basis->spec, hc, hc);
    if (mixer_purity) *mixer_purity = qwoa::g_purity(basis->spec, basis->value, hm);
    if (mixer_norm_sq) *mixer_norm_sq = qwoa::inner(basis->spec, hm, hm);
  });
}

qwoa_status qwoa_dense_lie_closure(const qwoa_instance* inst, double tol, size_t* dim,
                                   size_t* traceless_dim) {
  QWOA_REQUIRE(inst != nullptr);
  return guarded([&] {
    const auto r = qwoa::dense_lie_closure(inst->value, tol);
    if (dim) *dim = r.dim;
    if (traceless_dim) *traceless_dim = r.traceless_dim;
  });
}

qwoa_ranges qwoa_default_ranges(void) {
  const qwoa::ParameterRanges r;
  return {r.gamma.lo, r.gamma.hi, r.time.lo, r.time.hi};
}

qwoa_status qwoa_estimate_variance(const qwoa_spectrum* spec, int p, uint64_t samples,
                                   const qwoa_ranges* ranges, uint64_t seed,
                                   qwoa_variance_estimate* out) {
  QWOA_REQUIRE(spec != nullptr && out != nullptr);
  return guarded([&] {
    *out = to_c(qwoa::estimate_variance(spec->value, p, samples, to_ranges(ranges), seed));
  });
}

qwoa_status qwoa_scaling_report(const qwoa_family* family, const int* sizes, size_t size_count,
                                int p, uint64_t samples, uint64_t seed, const qwoa_ranges* ranges,
                                qwoa_scaling_row* rows, double* slope, double* slope_stderr) {
  QWOA_REQUIRE(family != nullptr && (sizes != nullptr || size_count == 0));
  QWOA_REQUIRE(rows != nullptr || size_count == 0);
  return guarded([&] {
    const auto report = qwoa::scaling_report(to_family(*family),
                                             std::vector<int>(sizes, sizes + size_count), p,
                                             samples, seed, to_ranges(ranges));
    for (size_t i = 0; i < report.rows.size(); ++i) {
      const auto& r = report.rows[i];
      rows[i] = {r.size, r.m, r.n, to_c(r.estimate)};
    }
    if (slope) *slope = report.slope;
    if (slope_stderr) *slope_stderr = report.slope_standard_error;
  });
}

qwoa_status qwoa_family_instance(const qwoa_family* family, int size, qwoa_instance** out) {
  QWOA_REQUIRE(family != nullptr && out != nullptr);
  return guarded([&] { *out = new qwoa_instance{to_family(*family).instance(size)}; });
}

qwoa_depth_options qwoa_default_depth_options(void) {
  const qwoa::DepthOptions o;
  return {o.restarts, o.seed, 0, 0.0, o.optimizer.max_evaluations};
}

qwoa_status qwoa_best_success_at_depth(const qwoa_spectrum* spec, int p,
                                       const qwoa_depth_options* options, qwoa_depth_result* out,
                                       double* gammas, double* times) {
  QWOA_REQUIRE(spec != nullptr && out != nullptr);
  return guarded([&] {
    const auto r = qwoa::best_success_at_depth(spec->value, p, to_options(options));
    *out = to_c(r);
    for (size_t l = 0; l < r.best_params.depth(); ++l) {
      if (gammas) gammas[l] = r.best_params.gammas[l];
      if (times) times[l] = r.best_params.times[l];
    }
  });
}

qwoa_status qwoa_minimal_depth(const qwoa_spectrum* spec, double threshold, int p_max,
                               const qwoa_depth_options* options, int* depth,
                               qwoa_depth_result* scanned, size_t* scanned_count) {
  QWOA_REQUIRE(spec != nullptr && depth != nullptr);
  return guarded([&] {
    const auto r = qwoa::minimal_depth(spec->value, threshold, p_max, to_options(options));
    *depth = r.depth.value_or(0);
    if (scanned)
      for (size_t i = 0; i < r.scanned.size(); ++i) scanned[i] = to_c(r.scanned[i]);
    if (scanned_count) *scanned_count = r.scanned.size();
  });
}

double qwoa_lower_bound_depth(const qwoa_spectrum* spec) {
  return spec ? qwoa::lower_bound_depth(spec->value) : 0.0;
}

qwoa_status qwoa_random_sampling_trials(const qwoa_spectrum* spec, uint64_t budget,
                                        uint64_t trials, uint64_t seed,
                                        qwoa_sampling_trials* out) {
  QWOA_REQUIRE(spec != nullptr && out != nullptr);
  return guarded([&] {
    const auto r = qwoa::random_sampling_trials(spec->value, budget, trials, seed);
    *out = {r.frequency, r.closed_form, r.sigma, r.trials};
  });
}

}  // extern "C"
