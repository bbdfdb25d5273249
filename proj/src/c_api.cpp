#include "gibbs_spectra.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gibbs/acceptance.hpp"
#include "gibbs/collapsing.hpp"
#include "gibbs/fixtures.hpp"
#include "gibbs/hier.hpp"
#include "gibbs/operators.hpp"
#include "gibbs/reports.hpp"
#include "gibbs/spectral.hpp"

using nlohmann::json;

struct gs_target {
  gibbs::TargetPtr target;
};

struct gs_operator {
  gibbs::ProjectorMatrix op;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
gs_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return GS_ERR_INVALID_INPUT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return GS_ERR_INVALID_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GS_ERR_INTERNAL;
  }
}

// 1-based C coordinates -> internal 0-based subset
gibbs::CoordinateSubset make_subset(const int* coords, int n) {
  if (n <= 0) throw std::invalid_argument("empty coordinate subset");
  std::vector<int> idx;
  for (int i = 0; i < n; ++i) {
    if (coords[i] < 1) throw std::invalid_argument("coordinates are 1-based");
    idx.push_back(coords[i] - 1);
  }
  return gibbs::CoordinateSubset(std::move(idx));
}

std::vector<gibbs::CoordinateSubset> make_family(const int* subsets,
                                                 const int* lens, int g) {
  std::vector<gibbs::CoordinateSubset> out;
  int offset = 0;
  for (int d = 0; d < g; ++d) {
    out.push_back(make_subset(subsets + offset, lens[d]));
    offset += lens[d];
  }
  return out;
}

}  // namespace

extern "C" {

const char* gs_last_error(void) { return g_last_error.c_str(); }

void gs_string_free(char* s) { delete[] s; }

gs_status gs_target_from_json(const char* json_text, gs_target** out) {
  return guarded([&]() {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON target");
    if (!j.contains("sizes") || !j["sizes"].is_array()) {
      throw std::invalid_argument("target JSON missing array field \"sizes\"");
    }
    if (!j.contains("weights") || !j["weights"].is_array()) {
      throw std::invalid_argument("target JSON missing array field \"weights\"");
    }
    std::vector<int> sizes = j["sizes"].get<std::vector<int>>();
    std::vector<double> w = j["weights"].get<std::vector<double>>();
    Eigen::VectorXd weights =
        Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<long>(w.size()));
    *out = new gs_target{gibbs::build_target(sizes, weights)};
    return GS_OK;
  });
}

gs_status gs_target_random(const int* sizes, int k, uint64_t seed,
                           gs_target** out) {
  return guarded([&]() {
    std::vector<int> s(sizes, sizes + k);
    *out = new gs_target{gibbs::random_target(s, seed)};
    return GS_OK;
  });
}

void gs_target_free(gs_target* t) { delete t; }

long gs_target_dim(const gs_target* t) { return t->target->space.dim(); }

gs_status gs_target_to_json(const gs_target* t, char** json_out) {
  return guarded([&]() {
    *json_out = dup_string(gibbs::reports::target_json(*t->target));
    return GS_OK;
  });
}

gs_status gs_op_gibbs_step(const gs_target* t, const int* coords, int n,
                           gs_operator** out) {
  return guarded([&]() {
    *out = new gs_operator{gibbs::gibbs_step(t->target, make_subset(coords, n))};
    return GS_OK;
  });
}

gs_status gs_op_cycle(const gs_target* t, const int* subsets, const int* lens,
                      int g, gs_operator** out) {
  return guarded([&]() {
    std::vector<gibbs::ProjectorMatrix> steps;
    for (const auto& s : make_family(subsets, lens, g)) {
      steps.push_back(gibbs::gibbs_step(t->target, s));
    }
    *out = new gs_operator{gibbs::cycle(steps)};
    return GS_OK;
  });
}

gs_status gs_op_mixture(const gs_target* t, const int* subsets, const int* lens,
                        int g, const double* weights, gs_operator** out) {
  return guarded([&]() {
    std::vector<gibbs::ProjectorMatrix> steps;
    for (const auto& s : make_family(subsets, lens, g)) {
      steps.push_back(gibbs::gibbs_step(t->target, s));
    }
    gibbs::WeightVector w{std::vector<double>(weights, weights + g)};
    *out = new gs_operator{gibbs::mixture(steps, w)};
    return GS_OK;
  });
}

void gs_op_free(gs_operator* op) { delete op; }

gs_status gs_op_to_csv(const gs_operator* op, char** csv_out) {
  return guarded([&]() {
    *csv_out = dup_string(gibbs::reports::matrix_csv(op->op.matrix));
    return GS_OK;
  });
}

gs_status gs_spectra_json(const gs_operator* op, char** json_out) {
  return guarded([&]() {
    *json_out = dup_string(gibbs::reports::spectral_json(gibbs::spectral_report(op->op)));
    return GS_OK;
  });
}

gs_status gs_solidarity(const gs_target* t, const int* subsets, const int* lens,
                        int g, int weight_samples, uint64_t seed,
                        char** json_out, char** csv_out) {
  return guarded([&]() {
    gibbs::StepFamily family{make_family(subsets, lens, g)};
    auto verdict = gibbs::solidarity_suite(t->target, family, weight_samples, seed);
    if (json_out) *json_out = dup_string(gibbs::reports::solidarity_json(verdict, seed));
    if (csv_out) *csv_out = dup_string(gibbs::reports::solidarity_csv(verdict));
    return verdict.consistent && verdict.lemma_equivalences_hold
               ? GS_OK
               : GS_ERR_CHECK_FAILED;
  });
}

gs_status gs_collapse_check(const gs_target* t, const int* keep, int n_keep,
                            const int* subsets, const int* lens, int g,
                            int use_mixture, const double* weights,
                            char** json_out) {
  return guarded([&]() {
    auto keep_set = make_subset(keep, n_keep);
    auto inner = make_family(subsets, lens, g);
    gibbs::CollapsedPair pair;
    if (use_mixture) {
      if (!weights) throw std::invalid_argument("mixture requires weights");
      gibbs::WeightVector w{std::vector<double>(weights, weights + g)};
      pair = gibbs::collapsed_spectral_check(t->target, keep_set, inner,
                                             gibbs::CombineMode::Mixture, &w);
    } else {
      pair = gibbs::collapsed_spectral_check(t->target, keep_set, inner,
                                             gibbs::CombineMode::Cycle);
    }
    if (json_out) *json_out = dup_string(gibbs::reports::collapsed_json(pair));
    return pair.spectra_match ? GS_OK : GS_ERR_CHECK_FAILED;
  });
}

gs_status gs_two_component(const gs_target* t, const int* y_coords, int n_y,
                           char** json_out) {
  return guarded([&]() {
    auto rep = gibbs::two_component_spectral_check(t->target,
                                                   make_subset(y_coords, n_y));
    if (json_out) *json_out = dup_string(gibbs::reports::two_component_json(rep));
    return rep.all_match && rep.all_real ? GS_OK : GS_ERR_CHECK_FAILED;
  });
}

gs_status gs_example_trace(double y, const char* sampler, long steps,
                           uint64_t seed, double u0, double v0, double w0,
                           char** csv_out) {
  return guarded([&]() {
    gibbs::hier::HierModel m{y};
    auto trace = gibbs::hier::run_chain(m, sampler, {u0, v0, w0}, steps, seed);
    *csv_out = dup_string(gibbs::reports::trace_csv(trace));
    return GS_OK;
  });
}

gs_status gs_verify_drift(double y, int grid_points, double half_width,
                          char** json_out) {
  return guarded([&]() {
    if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
    std::vector<double> grid;
    for (int i = 0; i < grid_points; ++i) {
      grid.push_back(y - half_width + 2.0 * half_width * i / (grid_points - 1));
    }
    auto rep = gibbs::hier::verify_drift(y, grid);
    if (json_out) *json_out = dup_string(gibbs::reports::drift_json(rep, y));
    return rep.holds ? GS_OK : GS_ERR_CHECK_FAILED;
  });
}

gs_status gs_verify_minorization(double y, double d_scale, int grid_points,
                                 double half_width, char** json_out) {
  return guarded([&]() {
    if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
    double lambda = gibbs::hier::t2_abs_moment(0.5);
    double d = d_scale * std::pow(2.0, 0.75) * lambda /
               (1.0 - lambda / std::pow(2.0, 0.25));
    std::vector<double> grid;
    for (int i = 0; i < grid_points; ++i) {
      grid.push_back(y - half_width + 2.0 * half_width * i / (grid_points - 1));
    }
    auto rep = gibbs::hier::verify_minorization(y, d, grid, grid);
    if (json_out) *json_out = dup_string(gibbs::reports::minorization_json(rep, y));
    return rep.holds ? GS_OK : GS_ERR_CHECK_FAILED;
  });
}

gs_status gs_ergodicity_contrast(double y, long steps, uint64_t seed,
                                 char** json_out) {
  return guarded([&]() {
    auto rep = gibbs::hier::ergodicity_contrast(y, steps, seed);
    if (json_out) *json_out = dup_string(gibbs::reports::contrast_json(rep, y));
    return rep.block_a_geometric && rep.block_b_subgeometric
               ? GS_OK
               : GS_ERR_CHECK_FAILED;
  });
}

gs_status gs_all_checks(long sim_steps, uint64_t seed, char** json_out) {
  return guarded([&]() {
    auto results = gibbs::run_acceptance(sim_steps, seed);
    bool all = true;
    std::string out = "{\"schema\":\"1\",\"seed\":" + std::to_string(seed) +
                      ",\"checks\":[";
    for (size_t i = 0; i < results.size(); ++i) {
      if (i) out += ",";
      out += "{\"id\":" + std::to_string(results[i].id) + ",\"name\":\"" +
             results[i].name + "\",\"passed\":" +
             (results[i].passed ? "true" : "false") + ",\"detail\":\"" +
             results[i].detail + "\"}";
      all = all && results[i].passed;
    }
    out += "],\"all_passed\":";
    out += all ? "true" : "false";
    out += "}";
    if (json_out) *json_out = dup_string(out);
    if (!all) g_last_error = "one or more checks failed";
    return all ? GS_OK : GS_ERR_CHECK_FAILED;
  });
}

}  // extern "C"
