// Command-line front end; talks to the library exclusively through the C API.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gibbs_spectra.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

int status_to_exit(gs_status st) {
  switch (st) {
    case GS_OK:
      return kExitPass;
    case GS_ERR_CHECK_FAILED:
      return kExitCheckFailed;
    default:
      return kExitInputError;
  }
}

void print_error(gs_status st) {
  std::cerr << "error: " << gs_last_error() << "\n";
  (void)st;
}

// "1,2|2,3" -> flattened subsets + lengths (1-based coordinates)
bool parse_family(const std::string& spec, std::vector<int>& flat,
                  std::vector<int>& lens) {
  std::stringstream outer(spec);
  std::string part;
  while (std::getline(outer, part, '|')) {
    std::stringstream inner(part);
    std::string tok;
    int count = 0;
    while (std::getline(inner, tok, ',')) {
      try {
        flat.push_back(std::stoi(tok));
      } catch (...) {
        return false;
      }
      ++count;
    }
    if (count == 0) return false;
    lens.push_back(count);
  }
  return !lens.empty();
}

// Target source: either a JSON file path or "random:K,[s1,...,sK],seed".
gs_status load_target(const std::string& spec, gs_target** out) {
  if (spec.rfind("random:", 0) == 0) {
    std::string rest = spec.substr(7);
    auto lb = rest.find('[');
    auto rb = rest.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
      std::cerr << "error: malformed random target spec (want random:K,[sizes],seed)\n";
      return GS_ERR_INVALID_INPUT;
    }
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<int> sizes;
    try {
      k = std::stoi(rest.substr(0, lb));
      std::stringstream ss(rest.substr(lb + 1, rb - lb - 1));
      std::string tok;
      while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
      seed = std::stoull(rest.substr(rest.find(',', rb) + 1));
    } catch (...) {
      std::cerr << "error: malformed random target spec\n";
      return GS_ERR_INVALID_INPUT;
    }
    if (static_cast<int>(sizes.size()) != k) {
      std::cerr << "error: random target spec: K does not match the size list\n";
      return GS_ERR_INVALID_INPUT;
    }
    return gs_target_random(sizes.data(), k, seed, out);
  }
  std::ifstream in(spec);
  if (!in) {
    std::cerr << "error: cannot read target file " << spec << "\n";
    return GS_ERR_INVALID_INPUT;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return gs_target_from_json(buf.str().c_str(), out);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    out << text;
  }
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { gs_string_free(s); }
};

struct OwnedTarget {
  gs_target* t = nullptr;
  ~OwnedTarget() { gs_target_free(t); }
};

struct OwnedOp {
  gs_operator* op = nullptr;
  ~OwnedOp() { gs_op_free(op); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of Gibbs samplers on finite product spaces"};
  app.require_subcommand(1);

  std::string target_spec, family_spec, weights_spec, out_path, op_kind = "cycle";
  std::string keep_spec, split_spec;
  std::uint64_t seed = 42;
  int weight_samples = 8;

  // spectra
  auto* spectra = app.add_subcommand("spectra", "Spectral report of a cycle or mixture");
  spectra->add_option("--target", target_spec, "target JSON file or random:K,[sizes],seed")->required();
  spectra->add_option("--family", family_spec, "subsets, e.g. \"1|2|3\" or \"1,2|2,3\"")->required();
  spectra->add_option("--op", op_kind, "cycle or mixture")->check(CLI::IsMember({"cycle", "mixture"}));
  spectra->add_option("--weights", weights_spec, "comma-separated mixture weights");
  spectra->add_option("--out", out_path, "output file (default stdout)");
  spectra->add_option("--matrix-csv", keep_spec, "also dump the operator matrix as CSV to this path");

  // solidarity
  auto* solidarity = app.add_subcommand("solidarity", "Gap solidarity across orderings and weights");
  std::string sol_csv;
  solidarity->add_option("--target", target_spec)->required();
  solidarity->add_option("--family", family_spec)->required();
  solidarity->add_option("--weight-samples", weight_samples);
  solidarity->add_option("--seed", seed);
  solidarity->add_option("--out", out_path, "JSON verdict output");
  solidarity->add_option("--csv", sol_csv, "per-ordering/per-weight gap table");

  // collapse-check
  auto* collapse = app.add_subcommand("collapse-check", "Joint vs collapsed spectra");
  collapse->add_option("--target", target_spec)->required();
  collapse->add_option("--keep", keep_spec, "marginal coordinates, e.g. \"1,2\"")->required();
  collapse->add_option("--family", family_spec, "inner family over the kept coordinates")->required();
  collapse->add_option("--op", op_kind)->check(CLI::IsMember({"cycle", "mixture"}));
  collapse->add_option("--weights", weights_spec);
  collapse->add_option("--out", out_path);

  // two-component
  auto* twocomp = app.add_subcommand("two-component", "Four-way two-component spectral equality");
  twocomp->add_option("--target", target_spec)->required();
  twocomp->add_option("--split", split_spec, "coordinates of the Y block, e.g. \"1\"")->required();
  twocomp->add_option("--out", out_path);

  // example + nested verifications
  auto* example = app.add_subcommand("example", "Continuous hierarchical example");
  double y = 0.0, u0 = 1.0, v0 = 0.0, w0 = 0.0, d_scale = 1.05, half_width = 100.0;
  long steps = 100000;
  int grid_points = 1000;
  std::string sampler = "blockA";
  example->add_option("--y", y, "observed value");
  example->add_option("--sampler", sampler)->check(CLI::IsMember({"blockA", "blockB", "both"}));
  example->add_option("--steps", steps);
  example->add_option("--seed", seed);
  example->add_option("--out", out_path, "trace CSV path (stem when --sampler both)");
  example->add_option("--u0", u0);
  example->add_option("--v0", v0);
  example->add_option("--w0", w0);

  auto* drift = example->add_subcommand("verify-drift", "Drift condition by quadrature");
  drift->add_option("--grid-points", grid_points);
  drift->add_option("--half-width", half_width);

  auto* minor = example->add_subcommand("verify-minorization", "Minorization on the small set");
  minor->add_option("--grid-points", grid_points);
  minor->add_option("--half-width", half_width);
  minor->add_option("--d-scale", d_scale, "multiple of the admissible small-set radius");

  auto* contrast = example->add_subcommand("contrast", "Seeded ergodicity-contrast diagnostic");

  // all-checks
  auto* all = app.add_subcommand("all-checks", "Run the full regression battery");
  long sim_steps = 1000000;
  all->add_option("--sim-steps", sim_steps, "Monte Carlo steps for the simulation checks");
  all->add_option("--seed", seed);
  all->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  if (*spectra) {
    OwnedTarget t;
    gs_status st = load_target(target_spec, &t.t);
    if (st != GS_OK) return status_to_exit(st);
    std::vector<int> flat, lens;
    if (!parse_family(family_spec, flat, lens)) {
      std::cerr << "error: malformed family spec\n";
      return kExitInputError;
    }
    OwnedOp op;
    if (op_kind == "mixture") {
      std::vector<double> w;
      std::stringstream ss(weights_spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) w.push_back(std::stod(tok));
      st = gs_op_mixture(t.t, flat.data(), lens.data(),
                         static_cast<int>(lens.size()), w.data(), &op.op);
    } else {
      st = gs_op_cycle(t.t, flat.data(), lens.data(),
                       static_cast<int>(lens.size()), &op.op);
    }
    if (st != GS_OK) {
      print_error(st);
      return status_to_exit(st);
    }
    OwnedString json;
    st = gs_spectra_json(op.op, &json.s);
    if (st != GS_OK) {
      print_error(st);
      return status_to_exit(st);
    }
    emit(json.s, out_path);
    if (!keep_spec.empty()) {
      OwnedString csv;
      if (gs_op_to_csv(op.op, &csv.s) == GS_OK) emit(csv.s, keep_spec);
    }
    return kExitPass;
  }

  if (*solidarity) {
    OwnedTarget t;
    gs_status st = load_target(target_spec, &t.t);
    if (st != GS_OK) return status_to_exit(st);
    std::vector<int> flat, lens;
    if (!parse_family(family_spec, flat, lens)) {
      std::cerr << "error: malformed family spec\n";
      return kExitInputError;
    }
    OwnedString json, csv;
    st = gs_solidarity(t.t, flat.data(), lens.data(), static_cast<int>(lens.size()),
                       weight_samples, seed, &json.s, &csv.s);
    if (st == GS_ERR_INVALID_INPUT || st == GS_ERR_INTERNAL) {
      print_error(st);
      return status_to_exit(st);
    }
    emit(json.s, out_path);
    if (!sol_csv.empty()) emit(csv.s, sol_csv);
    return status_to_exit(st);
  }

  if (*collapse) {
    OwnedTarget t;
    gs_status st = load_target(target_spec, &t.t);
    if (st != GS_OK) return status_to_exit(st);
    std::vector<int> keep, keep_lens, flat, lens;
    if (!parse_family(keep_spec, keep, keep_lens) || keep_lens.size() != 1 ||
        !parse_family(family_spec, flat, lens)) {
      std::cerr << "error: malformed subset spec\n";
      return kExitInputError;
    }
    std::vector<double> w;
    if (op_kind == "mixture") {
      std::stringstream ss(weights_spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) w.push_back(std::stod(tok));
    }
    OwnedString json;
    st = gs_collapse_check(t.t, keep.data(), keep_lens[0], flat.data(), lens.data(),
                           static_cast<int>(lens.size()), op_kind == "mixture",
                           w.empty() ? nullptr : w.data(), &json.s);
    if (st == GS_ERR_INVALID_INPUT || st == GS_ERR_INTERNAL) {
      print_error(st);
      return status_to_exit(st);
    }
    emit(json.s, out_path);
    return status_to_exit(st);
  }

  if (*twocomp) {
    OwnedTarget t;
    gs_status st = load_target(target_spec, &t.t);
    if (st != GS_OK) return status_to_exit(st);
    std::vector<int> yc, yl;
    if (!parse_family(split_spec, yc, yl) || yl.size() != 1) {
      std::cerr << "error: malformed split spec\n";
      return kExitInputError;
    }
    OwnedString json;
    st = gs_two_component(t.t, yc.data(), yl[0], &json.s);
    if (st == GS_ERR_INVALID_INPUT || st == GS_ERR_INTERNAL) {
      print_error(st);
      return status_to_exit(st);
    }
    emit(json.s, out_path);
    return status_to_exit(st);
  }

  if (*example) {
    if (*drift) {
      OwnedString json;
      gs_status st = gs_verify_drift(y, grid_points, half_width, &json.s);
      if (st == GS_ERR_INVALID_INPUT || st == GS_ERR_INTERNAL) {
        print_error(st);
        return status_to_exit(st);
      }
      emit(json.s, out_path);
      return status_to_exit(st);
    }
    if (*minor) {
      OwnedString json;
      gs_status st = gs_verify_minorization(y, d_scale, grid_points, half_width, &json.s);
      if (st == GS_ERR_INVALID_INPUT || st == GS_ERR_INTERNAL) {
        print_error(st);
        return status_to_exit(st);
      }
      emit(json.s, out_path);
      return status_to_exit(st);
    }
    if (*contrast) {
      OwnedString json;
      gs_status st = gs_ergodicity_contrast(y, steps, seed, &json.s);
      if (st == GS_ERR_INVALID_INPUT || st == GS_ERR_INTERNAL) {
        print_error(st);
        return status_to_exit(st);
      }
      emit(json.s, out_path);
      return status_to_exit(st);
    }
    std::vector<std::string> samplers =
        sampler == "both" ? std::vector<std::string>{"blockA", "blockB"}
                          : std::vector<std::string>{sampler};
    for (const auto& id : samplers) {
      OwnedString csv;
      gs_status st = gs_example_trace(y, id.c_str(), steps, seed, u0, v0, w0, &csv.s);
      if (st != GS_OK) {
        print_error(st);
        return status_to_exit(st);
      }
      std::string path = out_path;
      if (sampler == "both" && !out_path.empty()) path = out_path + "." + id + ".csv";
      emit(csv.s, path);
    }
    return kExitPass;
  }

  if (*all) {
    OwnedString json;
    gs_status st = gs_all_checks(sim_steps, seed, &json.s);
    if (st == GS_ERR_INVALID_INPUT || st == GS_ERR_INTERNAL) {
      print_error(st);
      return status_to_exit(st);
    }
    emit(json.s, out_path);
    return status_to_exit(st);
  }

  return kExitInputError;
}
