#ifndef GIBBS_HIER_HPP
#define GIBBS_HIER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gibbs::hier {

// Bayesian hierarchical model with observation y: the posterior density of
// (u, v, w) is proportional to exp[-(1 + (y-w)^2) u / 2] exp[-(w-v)^2 / 2]
// on (0, inf) x R^2.
struct HierModel {
  double y = 0.0;
};

struct HierState {
  double u = 1.0;
  double v = 0.0;
  double w = 0.0;
};

// Deterministic stream: normals via Box-Muller (no cached spare),
// exponentials via inversion, so traces are reproducible from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform();               // [0, 1)
  double normal(double mean, double sd);
  double exponential(double rate);
  double cauchy(double location, double scale);

 private:
  std::uint64_t next_raw();
  std::uint64_t state_;
};

// Exact conditional laws of the posterior.
double u_rate(const HierModel& m, double w);          // U|w,y ~ Exp(rate)
// W|u,y ~ N(y, 1/u);  V|w ~ N(w, 1)

// One sweep of the sampler with operator "update u, then (v, w) jointly".
HierState step_block_a(const HierModel& m, const HierState& s, Rng& rng);

// One sweep of the sampler with operator "update v, then (u, w) jointly";
// the w-draw uses exact rejection sampling with acceptance 1/(1+(y-w)^2).
// Accumulates the number of rejected proposals into *rejections. If the loop
// exhausts its guard (10^6 proposals, possible only from states deep in the
// Cauchy tail), w is kept unchanged and *guard_trips is incremented.
HierState step_block_b(const HierModel& m, const HierState& s, Rng& rng,
                       long long* rejections, long long* guard_trips = nullptr);

struct ChainTrace {
  std::string sampler_id;  // "blockA" or "blockB"
  std::vector<HierState> states;
  std::uint64_t seed = 0;
  long long rejection_count = 0;  // blockB only
  long long guard_trips = 0;      // blockB rejection-guard exhaustions
};

ChainTrace run_chain(const HierModel& m, const std::string& sampler_id,
                     const HierState& init, long steps, std::uint64_t seed);

// Exact draw from the posterior: w ~ Cauchy(y, 1) (the posterior w-marginal),
// then v ~ N(w, 1), u ~ Exp((1 + (y-w)^2)/2).
HierState exact_posterior_draw(const HierModel& m, Rng& rng);

// Transition density of the W-marginal chain of the "update u then (v, w)"
// sampler, in its two equivalent closed forms.
double marginal_density_k(double w, double w_prime, double y);
double marginal_density_k_raw(double w, double w_prime, double y);

double tau(double w, double y);  // sqrt((1 + (y-w)^2)/2)

// Student-t with 2 degrees of freedom: density, CDF, and absolute moments.
double t2_pdf(double t);
double t2_cdf(double t);
double t2_abs_moment(double power);  // E|t_2|^p by quadrature, p < 2

struct DriftReport {
  double lambda = 0.0;      // E[sqrt|t_2|]
  double lambda_bound = 0.0;  // 2^{1/4}
  double e_abs_t2 = 0.0;    // E|t_2|, should be sqrt(2)
  bool lambda_below_bound = false;
  long grid_points = 0;
  double worst_slack = 0.0;  // min over grid of RHS - LHS of the drift bound
  bool holds = false;
};

// Drift condition: int sqrt|y-w'| k(w,w') dw' <= lambda/2^{1/4} (1 + V(w))
// checked by quadrature on a grid of w values.
DriftReport verify_drift(double y, const std::vector<double>& w_grid);

struct MinorizationReport {
  double d = 0.0;
  double d_lower_bound = 0.0;  // (2^{3/4} lambda)/(1 - lambda/2^{1/4})
  double epsilon = 0.0;        // (1 + d^4)^{-1/2}, uniform over the small set
  double worst_slack = 0.0;    // min over the grid of k(w,w') - eps * g(w')
  bool holds = false;
};

// Minorization k(w,w') >= (1+d^4)^{-1/2} g(w') on {V(w) <= d} x wprime_grid,
// with g the location-scale t_2 density centered at y with scale sqrt(1/2).
MinorizationReport verify_minorization(double y, double d,
                                       const std::vector<double>& w_grid,
                                       const std::vector<double>& wprime_grid);

struct ContrastReport {
  long steps = 0;
  std::uint64_t seed = 0;
  double block_a_r2 = 0.0;  // log-linear fit of the arctan|W-y| autocorrelation
  double block_b_r2 = 0.0;
  double block_a_max_excursion = 0.0;
  double block_b_max_excursion = 0.0;
  bool block_a_geometric = false;   // r2 > 0.95
  bool block_b_subgeometric = false;  // r2 < 0.8
};

// Seeded diagnostic contrasting the two samplers; consistent with, not a
// proof of, the geometric/non-geometric dichotomy.
ContrastReport ergodicity_contrast(double y, long n_steps, std::uint64_t seed,
                                   int max_lag = 50);

// Adaptive Gauss-Kronrod on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

// R^2 of the least-squares line through (x_i, y_i).
double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gibbs::hier

#endif  // GIBBS_HIER_HPP
