#include "gibbs/reports.hpp"

#include <cstdio>
#include <sstream>

namespace gibbs::reports {

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string complex_pair(const std::complex<double>& z) {
  return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

std::string complex_list(const std::vector<std::complex<double>>& zs) {
  std::string out = "[";
  for (size_t i = 0; i < zs.size(); ++i) {
    if (i) out += ",";
    out += complex_pair(zs[i]);
  }
  return out + "]";
}

std::string double_list(const std::vector<double>& xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_double(xs[i]);
  }
  return out + "]";
}

std::string int_list(const std::vector<int>& xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string spectral_json(const SpectralReport& rep) {
  std::string out = "{\"schema\":\"1\",";
  out += "\"eigenvalues\":" + complex_list(rep.eigenvalues) + ",";
  out += "\"spectral_radius\":" + format_double(rep.spectral_radius) + ",";
  out += "\"gap\":" + format_double(rep.gap) + ",";
  out += "\"pi_operator_norm\":" + format_double(rep.pi_operator_norm) + ",";
  out += "\"is_self_adjoint\":" + bool_str(rep.is_self_adjoint) + "}";
  return out;
}

std::string solidarity_json(const SolidarityVerdict& v, std::uint64_t seed) {
  std::string out = "{\"schema\":\"1\",\"seed\":" + std::to_string(seed) + ",";
  out += "\"family\":[";
  for (size_t i = 0; i < v.family.subsets.size(); ++i) {
    if (i) out += ",";
    std::vector<int> one_based;
    for (int c : v.family.subsets[i].indices()) one_based.push_back(c + 1);
    out += int_list(one_based);
  }
  out += "],\"ordering_gaps\":[";
  for (size_t i = 0; i < v.per_ordering_gaps.size(); ++i) {
    if (i) out += ",";
    out += "{\"order\":" + int_list(v.per_ordering_gaps[i].first) +
           ",\"gap\":" + format_double(v.per_ordering_gaps[i].second) + "}";
  }
  out += "],\"weight_gaps\":[";
  for (size_t i = 0; i < v.per_weight_gaps.size(); ++i) {
    if (i) out += ",";
    out += "{\"weights\":" + double_list(v.per_weight_gaps[i].first) +
           ",\"gap\":" + format_double(v.per_weight_gaps[i].second) + "}";
  }
  out += "],\"all_have_gap\":" + bool_str(v.all_have_gap) + ",";
  out += "\"consistent\":" + bool_str(v.consistent) + ",";
  out += "\"lemma_equivalences_hold\":" + bool_str(v.lemma_equivalences_hold) + "}";
  return out;
}

std::string solidarity_csv(const SolidarityVerdict& v) {
  std::string out = "kind,spec,gap\n";
  for (const auto& [order, gap] : v.per_ordering_gaps) {
    out += "cycle,";
    for (size_t i = 0; i < order.size(); ++i) {
      if (i) out += ";";
      out += std::to_string(order[i]);
    }
    out += "," + format_double(gap) + "\n";
  }
  for (const auto& [w, gap] : v.per_weight_gaps) {
    out += "mixture,";
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) out += ";";
      out += format_double(w[i]);
    }
    out += "," + format_double(gap) + "\n";
  }
  return out;
}

std::string collapsed_json(const CollapsedPair& pair) {
  std::string out = "{\"schema\":\"1\",";
  out += "\"joint_nonzero_spectrum\":" + complex_list(pair.joint_nonzero_spectrum) + ",";
  out += "\"marginal_nonzero_spectrum\":" + complex_list(pair.marginal_nonzero_spectrum) + ",";
  out += "\"spectra_match\":" + bool_str(pair.spectra_match) + "}";
  return out;
}

std::string blocked_vs_collapsed_json(const BlockedVsCollapsedReport& rep) {
  std::string out = "{\"schema\":\"1\",";
  out += "\"applicable\":" + bool_str(rep.applicable) + ",";
  out += "\"conditional_independence_gap\":" + format_double(rep.ci_gap) + ",";
  out += "\"uv_equality\":" + bool_str(rep.uv_equality) + ",";
  out += "\"vu_equality\":" + bool_str(rep.vu_equality) + "}";
  return out;
}

std::string two_component_json(const TwoComponentReport& rep) {
  std::string out = "{\"schema\":\"1\",";
  out += "\"spectrum_yz\":" + complex_list(rep.spectrum_yz) + ",";
  out += "\"spectrum_zy\":" + complex_list(rep.spectrum_zy) + ",";
  out += "\"spectrum_qy\":" + complex_list(rep.spectrum_qy) + ",";
  out += "\"spectrum_qz\":" + complex_list(rep.spectrum_qz) + ",";
  out += "\"all_match\":" + bool_str(rep.all_match) + ",";
  out += "\"all_real\":" + bool_str(rep.all_real) + "}";
  return out;
}

std::string drift_json(const hier::DriftReport& rep, double y) {
  std::string out = "{\"schema\":\"1\",\"y\":" + format_double(y) + ",";
  out += "\"lambda\":" + format_double(rep.lambda) + ",";
  out += "\"lambda_bound\":" + format_double(rep.lambda_bound) + ",";
  out += "\"e_abs_t2\":" + format_double(rep.e_abs_t2) + ",";
  out += "\"lambda_below_bound\":" + bool_str(rep.lambda_below_bound) + ",";
  out += "\"grid_points\":" + std::to_string(rep.grid_points) + ",";
  out += "\"worst_slack\":" + format_double(rep.worst_slack) + ",";
  out += "\"holds\":" + bool_str(rep.holds) + "}";
  return out;
}

std::string minorization_json(const hier::MinorizationReport& rep, double y) {
  std::string out = "{\"schema\":\"1\",\"y\":" + format_double(y) + ",";
  out += "\"d\":" + format_double(rep.d) + ",";
  out += "\"d_lower_bound\":" + format_double(rep.d_lower_bound) + ",";
  out += "\"epsilon\":" + format_double(rep.epsilon) + ",";
  out += "\"worst_slack\":" + format_double(rep.worst_slack) + ",";
  out += "\"holds\":" + bool_str(rep.holds) + "}";
  return out;
}

std::string contrast_json(const hier::ContrastReport& rep, double y) {
  std::string out = "{\"schema\":\"1\",\"y\":" + format_double(y) + ",";
  out += "\"steps\":" + std::to_string(rep.steps) + ",";
  out += "\"seed\":" + std::to_string(rep.seed) + ",";
  out += "\"block_a_r2\":" + format_double(rep.block_a_r2) + ",";
  out += "\"block_b_r2\":" + format_double(rep.block_b_r2) + ",";
  out += "\"block_a_max_excursion\":" + format_double(rep.block_a_max_excursion) + ",";
  out += "\"block_b_max_excursion\":" + format_double(rep.block_b_max_excursion) + ",";
  out += "\"block_a_geometric\":" + bool_str(rep.block_a_geometric) + ",";
  out += "\"block_b_subgeometric\":" + bool_str(rep.block_b_subgeometric) + ",";
  out += "\"note\":\"seeded diagnostic, not a proof\"}";
  return out;
}

std::string trace_csv(const hier::ChainTrace& trace) {
  std::string out = "step,u,v,w\n";
  for (size_t i = 0; i < trace.states.size(); ++i) {
    out += std::to_string(i) + "," + format_double(trace.states[i].u) + "," +
           format_double(trace.states[i].v) + "," +
           format_double(trace.states[i].w) + "\n";
  }
  return out;
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += format_double(m(r, c));
    }
    out += "\n";
  }
  return out;
}

std::string target_json(const JointTarget& t) {
  std::string out = "{\"sizes\":" ;
  std::string sizes = "[";
  for (size_t i = 0; i < t.space.sizes().size(); ++i) {
    if (i) sizes += ",";
    sizes += std::to_string(t.space.sizes()[i]);
  }
  out += sizes + "],\"weights\":[";
  for (long i = 0; i < t.probs.size(); ++i) {
    if (i) out += ",";
    out += format_double(t.probs[i]);
  }
  return out + "]}";
}

}  // namespace gibbs::reports
