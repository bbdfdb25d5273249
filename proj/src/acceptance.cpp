#include "gibbs/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gibbs/collapsing.hpp"
#include "gibbs/fixtures.hpp"
#include "gibbs/hier.hpp"
#include "gibbs/operators.hpp"
#include "gibbs/spectral.hpp"

namespace gibbs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// All nonempty proper subsets of {0,...,k-1}.
std::vector<CoordinateSubset> proper_subsets(int k) {
  std::vector<CoordinateSubset> out;
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<int> idx;
    for (int c = 0; c < k; ++c)
      if (mask & (1u << c)) idx.push_back(c);
    out.emplace_back(std::move(idx));
  }
  return out;
}

StepFamily random_covering_family(int k, std::mt19937_64& rng) {
  auto all = proper_subsets(k);
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  for (;;) {
    StepFamily family;
    int g = 2 + static_cast<int>(rng() % 2);
    for (int d = 0; d < g; ++d) family.subsets.push_back(all[pick(rng)]);
    std::vector<bool> covered(k, false);
    for (const auto& s : family.subsets)
      for (int c : s.indices()) covered[c] = true;
    if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
      return family;
    }
  }
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// --- criterion implementations -------------------------------------------

CriterionResult projection_axioms() {
  CriterionResult res{1, "projection axioms", true, ""};
  double worst = 0.0;
  for (const auto& fx : regression_fixtures()) {
    if (fx.name.rfind("random_", 0) != 0) continue;
    const auto& pi = *fx.target;
    const long n = pi.space.dim();
    Eigen::VectorXd p = pi.probs;
    for (const auto& sub : proper_subsets(pi.space.num_components())) {
      auto step = gibbs_step(fx.target, sub);
      const Eigen::MatrixXd& q = step.matrix;
      double idem = (q * q - q).cwiseAbs().maxCoeff();
      Eigen::MatrixXd dq = p.asDiagonal() * q;
      double selfadj = (dq - dq.transpose()).cwiseAbs().maxCoeff();
      double stat = ((p.transpose() * q).transpose() - p).cwiseAbs().maxCoeff();
      double rows = (q.rowwise().sum() - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
      worst = std::max({worst, idem, selfadj, stat, rows});
    }
  }
  res.passed = worst < 1e-10;
  res.detail = "worst residual " + fmt(worst);
  return res;
}

CriterionResult solidarity(std::uint64_t seed) {
  CriterionResult res{2, "solidarity across orderings and weights", true, ""};
  std::vector<StepFamily> families = {
      StepFamily{{CoordinateSubset({0}), CoordinateSubset({1}), CoordinateSubset({2})}},
      StepFamily{{CoordinateSubset({0, 1}), CoordinateSubset({1, 2})}},
      StepFamily{{CoordinateSubset({0}), CoordinateSubset({0, 1}), CoordinateSubset({2})}}};
  int checked = 0;
  for (const auto& fx : regression_fixtures()) {
    if (fx.target->space.num_components() != 3) continue;
    for (const auto& family : families) {
      auto verdict = solidarity_suite(fx.target, family, 8, seed);
      ++checked;
      if (!verdict.consistent || !verdict.lemma_equivalences_hold) {
        res.passed = false;
        res.detail = "failure on fixture " + fx.name;
      }
    }
  }
  if (res.passed) res.detail = std::to_string(checked) + " (fixture, family) pairs consistent";
  return res;
}

CriterionResult inheritance(std::uint64_t seed) {
  CriterionResult res{3, "gap inheritance + norm lemma", true, ""};
  std::mt19937_64 rng(seed);
  for (const auto& fx : regression_fixtures()) {
    const int k = fx.target->space.num_components();
    // blocked pair covering everything, overlapping when k >= 3
    std::vector<int> left, right;
    for (int c = 0; c <= k / 2 && c < k - 1; ++c) left.push_back(c);
    for (int c = std::min(k / 2, k - 2) + (k == 2 ? 1 : 0); c < k; ++c) right.push_back(c);
    StepFamily family{{CoordinateSubset(left), CoordinateSubset(right)}};
    auto rep = inheritance_check(fx.target, family, 4, seed);
    if (!rep.all_positive || rep.full_gibbs_gap <= 1e-8) {
      res.passed = false;
      res.detail = "gap failure on fixture " + fx.name;
    }
  }
  // Lemma ||P_M T|| <= ||P_{M_1}...P_{M_N} T|| on 50 random T = Q - Pi
  auto fixtures = regression_fixtures();
  for (int i = 0; i < 50; ++i) {
    const auto& fx = fixtures[rng() % fixtures.size()];
    const int k = fx.target->space.num_components();
    auto family = random_covering_family(k, rng);
    auto t_family = random_covering_family(k, rng);
    std::vector<ProjectorMatrix> steps;
    for (const auto& s : t_family.subsets) steps.push_back(gibbs_step(fx.target, s));
    Eigen::MatrixXd t = cycle(steps).matrix - pi_projector(fx.target).matrix;
    if (!norm_contraction_check(fx.target, family, t)) {
      res.passed = false;
      res.detail = "norm lemma failure on fixture " + fx.name;
    }
  }
  if (res.passed) res.detail = "all fixtures + 50 random norm-lemma instances";
  return res;
}

CriterionResult mixture_ordering(std::uint64_t seed) {
  CriterionResult res{4, "mixture ordering under blocking", true, ""};
  int count = 0;
  for (int i = 0; i < 50; ++i) {
    // paper's K=4 pattern: (1/4, 1/2, 1/4) with the middle block {2,3},
    // written with the blocked step duplicated so weights match per step
    auto t4 = random_target({2, 2, 2, 2}, seed * 131 + i);
    StepFamily fine{{CoordinateSubset({0}), CoordinateSubset({1}),
                     CoordinateSubset({2}), CoordinateSubset({3})}};
    StepFamily blocked{{CoordinateSubset({0}), CoordinateSubset({1, 2}),
                        CoordinateSubset({1, 2}), CoordinateSubset({3})}};
    WeightVector w{{0.25, 0.25, 0.25, 0.25}};
    if (!mixture_ordering_check(t4, fine, blocked, w)) {
      res.passed = false;
      res.detail = "K=4 instance failed at i=" + std::to_string(i);
    }
    ++count;

    auto t3 = random_target({2, 2, 2}, seed * 257 + i);
    StepFamily fine3{{CoordinateSubset({0}), CoordinateSubset({1}), CoordinateSubset({2})}};
    StepFamily blocked3{{CoordinateSubset({0}), CoordinateSubset({1, 2}),
                         CoordinateSubset({1, 2})}};
    WeightVector w3{{0.5, 0.25, 0.25}};
    if (!mixture_ordering_check(t3, fine3, blocked3, w3)) {
      res.passed = false;
      res.detail = "K=3 instance failed at i=" + std::to_string(i);
    }
    ++count;
  }
  if (res.passed) res.detail = std::to_string(count) + " random targets ordered correctly";
  return res;
}

CriterionResult collapsing_spectra(std::uint64_t seed) {
  CriterionResult res{5, "collapsed + two-component spectral equalities", true, ""};
  std::mt19937_64 rng(seed);
  const std::vector<std::vector<int>> shapes = {{2, 2, 2}, {2, 2, 3}, {2, 3, 3},
                                                {2, 2, 2, 2}, {2, 2, 2, 3}};
  for (int i = 0; i < 100; ++i) {
    auto sizes = shapes[i % shapes.size()];
    auto pi = random_target(sizes, seed * 977 + i);
    const int k = static_cast<int>(sizes.size());

    // collapse onto the first k-1 coordinates, inner family = singletons
    std::vector<int> keep_idx;
    for (int c = 0; c + 1 < k; ++c) keep_idx.push_back(c);
    CoordinateSubset keep(keep_idx);
    std::vector<CoordinateSubset> inner;
    for (int c = 0; c + 1 < k; ++c) inner.push_back(CoordinateSubset({c}));

    auto pair_c = collapsed_spectral_check(pi, keep, inner, CombineMode::Cycle);
    WeightVector w{std::vector<double>(inner.size(), 1.0 / inner.size())};
    auto pair_m = collapsed_spectral_check(pi, keep, inner, CombineMode::Mixture, &w);
    if (!pair_c.spectra_match || !pair_m.spectra_match) {
      res.passed = false;
      res.detail = "collapsed mismatch at i=" + std::to_string(i);
    }

    // two-component split: a random nonempty proper subset
    auto subsets = proper_subsets(k);
    auto split = subsets[rng() % subsets.size()];
    auto two = two_component_spectral_check(pi, split);
    if (!two.all_match || !two.all_real) {
      res.passed = false;
      res.detail = "two-component mismatch at i=" + std::to_string(i);
    }
  }
  if (res.passed) res.detail = "100 random targets, cycles + mixtures + two-component";
  return res;
}

CriterionResult commuting_criterion(std::uint64_t seed) {
  CriterionResult res{6, "commuting criterion vs conditional independence", true, ""};
  CoordinateSubset u({0}), v({1}), w({2});

  // constructed conditionally independent targets
  std::vector<TargetPtr> ci_targets = {markov_uvw()};
  for (int i = 0; i < 10; ++i) ci_targets.push_back(random_markov_uvw(seed * 41 + i));
  for (const auto& pi : ci_targets) {
    auto pu = gibbs_step(pi, u);
    auto pv = gibbs_step(pi, v);
    double comm = commutator_norm(pu, pv);
    Eigen::MatrixXd block = gibbs_step(pi, u.unioned(v)).matrix;
    double prod_diff = (pu.matrix * pv.matrix - block).cwiseAbs().maxCoeff();
    if (comm >= 1e-10 || prod_diff >= 1e-10) {
      res.passed = false;
      res.detail = "CI target: comm=" + fmt(comm) + " prod_diff=" + fmt(prod_diff);
    }
  }

  // dependent targets: both detectors must fire together
  for (int i = 0; i < 50; ++i) {
    auto pi = random_target({2, 2, 2}, seed * 613 + i);
    double comm = commutator_norm(gibbs_step(pi, u), gibbs_step(pi, v));
    double gap = conditional_independence_gap(*pi, u, v, w);
    if (comm <= 1e-6 || gap <= 1e-6) {
      res.passed = false;
      res.detail = "dependent target i=" + std::to_string(i) + ": comm=" +
                   fmt(comm) + " ci_gap=" + fmt(gap);
    }
  }
  if (res.passed) res.detail = "11 CI targets commute exactly; 50 dependent targets detected";
  return res;
}

CriterionResult correlated_pair_radius() {
  CriterionResult res{7, "two-component correlated pair r = rho^2", true, ""};
  for (double rho : {0.25, 0.5, 0.9}) {
    auto pi = correlated_pair(rho);
    auto py = gibbs_step(pi, CoordinateSubset({0}));
    auto pz = gibbs_step(pi, CoordinateSubset({1}));
    ProjectorMatrix cyc = cycle({py, pz});
    double r = spectral_report(cyc).spectral_radius;
    if (!near(r, rho * rho, 1e-8)) {
      res.passed = false;
      res.detail = "rho=" + fmt(rho) + " gave r=" + fmt(r);
    }
  }
  if (res.passed) res.detail = "r = rho^2 within 1e-8 for rho in {0.25, 0.5, 0.9}";
  return res;
}

CriterionResult spectral_radius_formula() {
  CriterionResult res{8, "spectral radius formula at n=50", true, ""};
  double worst = 0.0;
  for (const auto& fx : regression_fixtures()) {
    const int k = fx.target->space.num_components();
    std::vector<ProjectorMatrix> steps;
    for (int c = 0; c < k; ++c) steps.push_back(gibbs_step(fx.target, CoordinateSubset({c})));
    WeightVector w{std::vector<double>(k, 1.0 / k)};
    for (const auto& q : {cycle(steps), mixture(steps, w)}) {
      auto norms = power_norm_rate(q, 50);
      double root = std::pow(norms.back(), 1.0 / 50.0);
      double r = spectral_report(q).spectral_radius;
      worst = std::max(worst, std::abs(root - r));
    }
  }
  res.passed = worst <= 0.05;
  res.detail = "worst |root - r| = " + fmt(worst);
  return res;
}

CriterionResult aperiodicity() {
  CriterionResult res{9, "aperiodicity of fixture operators", true, ""};
  for (const auto& fx : regression_fixtures()) {
    const int k = fx.target->space.num_components();
    std::vector<ProjectorMatrix> steps;
    for (int c = 0; c < k; ++c) steps.push_back(gibbs_step(fx.target, CoordinateSubset({c})));
    WeightVector w{std::vector<double>(k, 1.0 / k)};
    for (const auto& q : {cycle(steps), mixture(steps, w)}) {
      auto ap = aperiodicity_check(q);
      if (!ap.irreducible || !ap.aperiodic) {
        res.passed = false;
        res.detail = "fixture " + fx.name;
      }
    }
  }
  if (res.passed) res.detail = "all fixture cycles/mixtures irreducible + aperiodic";
  return res;
}

CriterionResult closed_forms() {
  CriterionResult res{10, "closed forms of k, E|t2|, lambda", true, ""};
  double worst_form = 0.0;
  for (double y : {-3.0, 0.0, 7.0}) {
    for (int i = 0; i < 100; ++i) {
      double w = y - 5.0 + 10.0 * i / 99.0;
      for (int j = 0; j < 100; ++j) {
        double wp = y - 5.0 + 10.0 * j / 99.0;
        worst_form = std::max(worst_form,
                              std::abs(hier::marginal_density_k(w, wp, y) -
                                       hier::marginal_density_k_raw(w, wp, y)));
      }
    }
    for (int i = -10; i <= 10; ++i) {
      double w = y + i;
      double tw = hier::tau(w, y);
      double mass =
          hier::integrate(
              [&](double s) {
                double r = tw * s / (1.0 - s);
                double jac = tw / ((1.0 - s) * (1.0 - s));
                return (hier::marginal_density_k(w, y + r, y) +
                        hier::marginal_density_k(w, y - r, y)) * jac;
              },
              0.0, 1.0, 1e-12);
      if (!near(mass, 1.0, 1e-6)) {
        res.passed = false;
        res.detail = "k(w,.) mass " + fmt(mass) + " at w-y=" + std::to_string(i);
      }
    }
  }
  if (worst_form > 1e-12) {
    res.passed = false;
    res.detail = "k forms disagree by " + fmt(worst_form);
  }
  double e1 = hier::t2_abs_moment(1.0);
  if (!near(e1, std::sqrt(2.0), 1e-8)) {
    res.passed = false;
    res.detail = "E|t2| = " + fmt(e1);
  }
  double lambda = hier::t2_abs_moment(0.5);
  if (!(lambda < std::pow(2.0, 0.25))) {
    res.passed = false;
    res.detail = "lambda = " + fmt(lambda);
  }
  if (res.passed) {
    res.detail = "forms agree; E|t2|=" + fmt(e1) + "; lambda=" + fmt(lambda);
  }
  return res;
}

CriterionResult drift_minorization() {
  CriterionResult res{11, "drift + minorization certificate", true, ""};
  for (double y : {-3.0, 0.0, 7.0}) {
    std::vector<double> w_grid;
    for (int i = 0; i < 1000; ++i) w_grid.push_back(y - 100.0 + 200.0 * i / 999.0);
    auto drift = hier::verify_drift(y, w_grid);
    if (!drift.holds) {
      res.passed = false;
      res.detail = "drift slack " + fmt(drift.worst_slack) + " at y=" + fmt(y);
      continue;
    }
    double d = 1.05 * drift.lambda * std::pow(2.0, 0.75) /
               (1.0 - drift.lambda / std::pow(2.0, 0.25));
    std::vector<double> wp_grid;
    for (int i = 0; i < 401; ++i) wp_grid.push_back(y - 100.0 + 200.0 * i / 400.0);
    auto minor = hier::verify_minorization(y, d, w_grid, wp_grid);
    if (!minor.holds) {
      res.passed = false;
      res.detail = "minorization slack " + fmt(minor.worst_slack) + " at y=" + fmt(y);
    }
  }
  if (res.passed) res.detail = "certificate holds for y in {-3, 0, 7}";
  return res;
}

CriterionResult simulation_exactness(long steps, std::uint64_t seed) {
  CriterionResult res{12, "simulation exactness (KS + acceptance curve)", true, ""};
  const double y = 0.0;
  const double w0 = y + 1.0;
  hier::HierModel m{y};
  hier::Rng rng(seed);

  // one-step blockA W-draws from fixed w0 are exact t2(y, tau) draws
  std::vector<double> draws;
  draws.reserve(steps);
  hier::HierState s{1.0, 0.0, w0};
  for (long i = 0; i < steps; ++i) {
    draws.push_back(hier::step_block_a(m, s, rng).w);
  }
  std::sort(draws.begin(), draws.end());
  double tw = hier::tau(w0, y);
  double ks = 0.0;
  for (long i = 0; i < steps; ++i) {
    double f = hier::t2_cdf((draws[i] - y) / tw);
    ks = std::max(ks, std::abs(f - (i + 1.0) / steps));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / steps));
  }
  double critical = std::sqrt(std::log(2.0 / 0.001) / 2.0) / std::sqrt(static_cast<double>(steps));
  if (ks >= critical) {
    res.passed = false;
    res.detail = "KS " + fmt(ks) + " >= critical " + fmt(critical);
  }

  // rejection-sampler acceptance curve: bin proposals from N(v0, 1) and
  // compare acceptance rate per bin with 1/(1+(y-w)^2) within 3 MC SE
  const double v0 = y;
  const int nbins = 24;
  std::vector<long> bin_total(nbins, 0), bin_accept(nbins, 0);
  std::vector<double> bin_prob(nbins, 0.0);
  for (long i = 0; i < steps; ++i) {
    double w = rng.normal(v0, 1.0);
    if (w < y - 3.0 || w >= y + 3.0) continue;
    int b = static_cast<int>((w - (y - 3.0)) / 0.25);
    double p = 1.0 / (1.0 + (y - w) * (y - w));
    bin_total[b]++;
    bin_prob[b] += p;
    if (rng.uniform() < p) bin_accept[b]++;
  }
  for (int b = 0; b < nbins; ++b) {
    if (bin_total[b] < 100) continue;
    double rate = static_cast<double>(bin_accept[b]) / bin_total[b];
    double pbar = bin_prob[b] / bin_total[b];
    double se = std::sqrt(pbar * (1.0 - pbar) / bin_total[b]);
    if (std::abs(rate - pbar) > 3.0 * se) {
      res.passed = false;
      res.detail = "acceptance bin " + std::to_string(b) + " off by " +
                   fmt(std::abs(rate - pbar) / se) + " SE";
    }
  }
  if (res.passed) res.detail = "KS " + fmt(ks) + " < " + fmt(critical) + "; all bins within 3 SE";
  return res;
}

CriterionResult ergodicity_contrast_criterion(long steps, std::uint64_t seed) {
  CriterionResult res{13, "ergodicity contrast diagnostic", true, ""};
  auto rep = hier::ergodicity_contrast(0.0, steps, seed);
  res.passed = rep.block_a_geometric && rep.block_b_subgeometric;
  res.detail = "blockA R2=" + fmt(rep.block_a_r2) + " blockB R2=" + fmt(rep.block_b_r2) +
               " (diagnostic, not a proof)";
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(long sim_steps, std::uint64_t seed) {
  std::vector<CriterionResult> results;
  results.push_back(projection_axioms());
  results.push_back(solidarity(seed));
  results.push_back(inheritance(seed));
  results.push_back(mixture_ordering(seed));
  results.push_back(collapsing_spectra(seed));
  results.push_back(commuting_criterion(seed));
  results.push_back(correlated_pair_radius());
  results.push_back(spectral_radius_formula());
  results.push_back(aperiodicity());
  results.push_back(closed_forms());
  results.push_back(drift_minorization());
  results.push_back(simulation_exactness(sim_steps, seed));
  results.push_back(ergodicity_contrast_criterion(sim_steps, seed));
  return results;
}

}  // namespace gibbs
