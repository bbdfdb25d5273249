#include "gibbs/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

namespace gibbs {

namespace {

constexpr double kSelfAdjointTol = 1e-10;
constexpr double kGapTol = 1e-8;

Eigen::MatrixXd similarity(const Eigen::MatrixXd& t, const JointTarget& pi) {
  Eigen::VectorXd sqrt_p = pi.probs.cwiseSqrt();
  return sqrt_p.asDiagonal() * t * sqrt_p.cwiseInverse().asDiagonal();
}

bool nearly_symmetric(const Eigen::MatrixXd& s) {
  return (s - s.transpose()).cwiseAbs().maxCoeff() < kSelfAdjointTol;
}

std::vector<std::complex<double>> sorted_eigs(const Eigen::MatrixXd& s) {
  std::vector<std::complex<double>> eigs;
  if (nearly_symmetric(s)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (s + s.transpose()));
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    for (long i = 0; i < s.rows(); ++i) eigs.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    for (long i = 0; i < s.rows(); ++i) eigs.push_back(es.eigenvalues()(i));
  }
  std::sort(eigs.begin(), eigs.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return eigs;
}

double spectral_radius_of(const std::vector<std::complex<double>>& eigs) {
  double r = 0.0;
  for (auto e : eigs) r = std::max(r, std::abs(e));
  return r;
}

double gap_of_cycle_ordering(TargetPtr pi,
                             const std::vector<ProjectorMatrix>& steps,
                             const std::vector<int>& order) {
  std::vector<ProjectorMatrix> ordered;
  ordered.reserve(order.size());
  for (int i : order) ordered.push_back(steps[i]);
  return spectral_report(cycle(ordered)).gap;
}

}  // namespace

std::vector<std::complex<double>> operator_spectrum(const Eigen::MatrixXd& t,
                                                    const JointTarget& pi) {
  return sorted_eigs(similarity(t, pi));
}

SpectralReport spectral_report(const ProjectorMatrix& q) {
  const JointTarget& pi = *q.target;
  Eigen::MatrixXd diff = q.matrix - pi_projector(q.target).matrix;
  Eigen::MatrixXd s = similarity(diff, pi);
  SpectralReport rep;
  rep.is_self_adjoint = nearly_symmetric(s);
  rep.eigenvalues = sorted_eigs(s);
  rep.spectral_radius = spectral_radius_of(rep.eigenvalues);
  rep.gap = 1.0 - rep.spectral_radius;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
  rep.pi_operator_norm = svd.singularValues()(0);
  return rep;
}

std::vector<double> power_norm_rate(const ProjectorMatrix& q, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const JointTarget& pi = *q.target;
  // Power the deviation Q - Pi directly: (Q - Pi)^n = Q^n - Pi since Pi is
  // stationary for Q, and forming Q^n first would lose Q^n - Pi to
  // cancellation once its norm falls below machine precision times ||Pi||.
  Eigen::MatrixXd dev = q.matrix - pi_projector(q.target).matrix;
  Eigen::MatrixXd power = dev;
  std::vector<double> norms;
  norms.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    norms.push_back(pi_norm(power, pi));
    if (n < n_max) power = power * dev;
  }
  return norms;
}

std::vector<WeightVector> sample_weights(size_t g, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<WeightVector> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> w(g);
    double total = 0.0;
    for (double& x : w) {
      x = expo(rng);
      total += x;
    }
    for (double& x : w) x /= total;
    // renormalize exactly against accumulated rounding
    double s = std::accumulate(w.begin(), w.end(), 0.0);
    w.back() += 1.0 - s;
    out.push_back(WeightVector{std::move(w)});
  }
  return out;
}

SolidarityVerdict solidarity_suite(TargetPtr pi, const StepFamily& family,
                                   int weight_samples, std::uint64_t seed) {
  const int k = pi->space.num_components();
  family.validate(k);
  const size_t g = family.subsets.size();
  if (g > 6) throw std::invalid_argument("family too large to enumerate orderings");
  if (weight_samples < 1) throw std::invalid_argument("weight_samples must be >= 1");

  std::vector<ProjectorMatrix> steps;
  for (const auto& s : family.subsets) steps.push_back(gibbs_step(pi, s));

  SolidarityVerdict verdict;
  verdict.family = family;

  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  do {
    double gap = gap_of_cycle_ordering(pi, steps, order);
    verdict.per_ordering_gaps.emplace_back(order, gap);
  } while (std::next_permutation(order.begin(), order.end()));

  auto weights = sample_weights(g, weight_samples, seed);
  weights.push_back(WeightVector{std::vector<double>(g, 1.0 / static_cast<double>(g))});
  for (const auto& w : weights) {
    double gap = spectral_report(mixture(steps, w)).gap;
    verdict.per_weight_gaps.emplace_back(w.weights, gap);
  }

  bool any_gap = false, all_gap = true;
  auto tally = [&](double gap) {
    if (gap > kGapTol) any_gap = true;
    else all_gap = false;
  };
  for (const auto& [o, gap] : verdict.per_ordering_gaps) tally(gap);
  for (const auto& [w, gap] : verdict.per_weight_gaps) tally(gap);
  verdict.all_have_gap = all_gap;
  verdict.consistent = (all_gap || !any_gap);

  // Lemma equivalence on the identity-ordered cycle vs the uniform mixture:
  // 1 not in sigma(cycle - Pi) <=> ||cycle - Pi|| < 1 <=> ||unif mixture - Pi|| < 1.
  {
    std::iota(order.begin(), order.end(), 0);
    std::vector<ProjectorMatrix> ordered = steps;
    auto cyc_rep = spectral_report(cycle(ordered));
    bool one_not_eig = true;
    for (auto e : cyc_rep.eigenvalues) {
      if (std::abs(e - std::complex<double>(1.0, 0.0)) < kGapTol) one_not_eig = false;
    }
    bool cyc_norm_lt1 = cyc_rep.pi_operator_norm < 1.0 - kGapTol;
    WeightVector unif{std::vector<double>(g, 1.0 / static_cast<double>(g))};
    bool mix_norm_lt1 =
        spectral_report(mixture(steps, unif)).pi_operator_norm < 1.0 - kGapTol;
    verdict.lemma_equivalences_hold =
        (one_not_eig == cyc_norm_lt1) && (cyc_norm_lt1 == mix_norm_lt1);
  }
  return verdict;
}

InheritanceReport inheritance_check(TargetPtr pi, const StepFamily& family,
                                    int weight_samples, std::uint64_t seed) {
  const int k = pi->space.num_components();
  family.validate(k);

  InheritanceReport rep;
  {
    std::vector<ProjectorMatrix> full;
    for (int c = 0; c < k; ++c) full.push_back(gibbs_step(pi, CoordinateSubset({c})));
    rep.full_gibbs_gap = spectral_report(cycle(full)).gap;
  }
  if (rep.full_gibbs_gap <= kGapTol) {
    throw std::domain_error("full Gibbs sampler has no spectral gap");
  }

  std::vector<ProjectorMatrix> steps;
  for (const auto& s : family.subsets) steps.push_back(gibbs_step(pi, s));
  const size_t g = steps.size();

  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  do {
    rep.cycle_gaps.emplace_back(order, gap_of_cycle_ordering(pi, steps, order));
  } while (std::next_permutation(order.begin(), order.end()));

  auto weights = sample_weights(g, weight_samples, seed);
  for (const auto& w : weights) {
    rep.mixture_gaps.emplace_back(w.weights, spectral_report(mixture(steps, w)).gap);
  }

  rep.all_positive = true;
  for (const auto& [o, gap] : rep.cycle_gaps)
    if (gap <= kGapTol) rep.all_positive = false;
  for (const auto& [w, gap] : rep.mixture_gaps)
    if (gap <= kGapTol) rep.all_positive = false;
  return rep;
}

bool norm_contraction_check(TargetPtr pi, const StepFamily& family,
                            const Eigen::MatrixXd& t, double tol) {
  const int k = pi->space.num_components();
  std::vector<bool> covered(k, false);
  Eigen::MatrixXd product = Eigen::MatrixXd::Identity(pi->space.dim(), pi->space.dim());
  for (const auto& s : family.subsets) {
    s.validate(k);
    for (int c : s.indices()) covered[c] = true;
    product = product * gibbs_step(pi, s).matrix;
  }
  std::vector<int> union_idx;
  for (int c = 0; c < k; ++c)
    if (covered[c]) union_idx.push_back(c);

  Eigen::MatrixXd pm;
  if (static_cast<int>(union_idx.size()) == k) {
    pm = pi_projector(pi).matrix;
  } else {
    pm = gibbs_step(pi, CoordinateSubset(union_idx)).matrix;
  }
  double lhs = pi_norm(pm * t, *pi);
  double rhs = pi_norm(product * t, *pi);
  return lhs <= rhs + tol;
}

bool mixture_ordering_check(TargetPtr pi, const StepFamily& family,
                            const StepFamily& blocked, const WeightVector& w,
                            double tol) {
  const int k = pi->space.num_components();
  family.validate(k);
  blocked.validate(k);
  if (family.subsets.size() != blocked.subsets.size()) {
    throw std::invalid_argument("families must have the same number of steps");
  }
  for (size_t d = 0; d < family.subsets.size(); ++d) {
    for (int c : family.subsets[d].indices()) {
      if (!blocked.subsets[d].contains(c)) {
        throw std::invalid_argument("blocked subset must contain the unblocked one");
      }
    }
  }
  w.validate(family.subsets.size());

  auto build = [&](const StepFamily& fam) {
    std::vector<ProjectorMatrix> steps;
    for (const auto& s : fam.subsets) steps.push_back(gibbs_step(pi, s));
    return spectral_report(mixture(steps, w)).spectral_radius;
  };
  return build(blocked) <= build(family) + tol;
}

AperiodicityResult aperiodicity_check(const ProjectorMatrix& q) {
  const long n = q.matrix.rows();
  constexpr double kSupportTol = 1e-14;

  // strong connectivity: forward and backward reachability from state 0
  auto reach = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::queue<long> bfs;
    bfs.push(0);
    seen[0] = true;
    while (!bfs.empty()) {
      long x = bfs.front();
      bfs.pop();
      for (long y = 0; y < n; ++y) {
        double p = forward ? q.matrix(x, y) : q.matrix(y, x);
        if (p > kSupportTol && !seen[y]) {
          seen[y] = true;
          bfs.push(y);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };

  AperiodicityResult res;
  res.irreducible = reach(true) && reach(false);
  if (!res.irreducible) return res;

  auto eigs = operator_spectrum(q.matrix, *q.target);
  int near_unit = 0;
  for (auto e : eigs) {
    if (std::abs(e) >= 1.0 - kGapTol) ++near_unit;
  }
  // exactly the simple eigenvalue 1
  res.aperiodic = (near_unit == 1);
  return res;
}

}  // namespace gibbs
