#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "gibbs/fixtures.hpp"
#include "gibbs/spectral.hpp"

using namespace gibbs;

TEST_CASE("spectral report of Pi itself") {
  auto pi = random_target({2, 2}, 3);
  auto rep = spectral_report(pi_projector(pi));
  CHECK(rep.spectral_radius < 1e-12);
  CHECK(rep.gap == doctest::Approx(1.0));
  CHECK(rep.pi_operator_norm < 1e-12);
  CHECK(rep.is_self_adjoint);
}

TEST_CASE("correlated-pair cycle has spectral radius rho^2") {
  // independent brute-force oracle: plain eigendecomposition of the 4x4
  // kernel difference without the similarity transform
  auto pi = correlated_pair(0.5);
  auto cyc = cycle({gibbs_step(pi, CoordinateSubset({0})),
                    gibbs_step(pi, CoordinateSubset({1}))});
  Eigen::MatrixXd diff = cyc.matrix - pi_projector(pi).matrix;
  Eigen::EigenSolver<Eigen::MatrixXd> es(diff);
  double oracle = 0.0;
  for (int i = 0; i < 4; ++i) oracle = std::max(oracle, std::abs(es.eigenvalues()(i)));
  CHECK(oracle == doctest::Approx(0.25).epsilon(1e-10));

  auto rep = spectral_report(cyc);
  CHECK(rep.spectral_radius == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(rep.gap == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("independent-pair mixture has spectral radius max(w1, w2)") {
  Eigen::VectorXd w(4);
  double mu[2] = {0.3, 0.7}, nu[2] = {0.4, 0.6};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) w[i * 2 + j] = mu[i] * nu[j];
  auto pi = build_target({2, 2}, w);
  auto steps = std::vector<ProjectorMatrix>{gibbs_step(pi, CoordinateSubset({0})),
                                            gibbs_step(pi, CoordinateSubset({1}))};
  auto rep = spectral_report(mixture(steps, WeightVector{{0.3, 0.7}}));
  CHECK(rep.spectral_radius == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(rep.is_self_adjoint);
}

TEST_CASE("spectral report invariants") {
  auto pi = random_target({2, 3, 2}, 71);
  std::vector<ProjectorMatrix> steps;
  for (int c = 0; c < 3; ++c) steps.push_back(gibbs_step(pi, CoordinateSubset({c})));
  for (const auto& q : {cycle(steps), mixture(steps, WeightVector{{0.5, 0.3, 0.2}})}) {
    auto rep = spectral_report(q);
    CHECK(rep.spectral_radius <= rep.pi_operator_norm + 1e-8);
    if (rep.is_self_adjoint) {
      CHECK(std::abs(rep.spectral_radius - rep.pi_operator_norm) <= 1e-8);
    }
    CHECK(rep.gap == 1.0 - rep.spectral_radius);
    bool has_zero = false;
    for (auto e : rep.eigenvalues)
      if (std::abs(e) < 1e-8) has_zero = true;
    CHECK(has_zero);  // Q - Pi kills constants
  }
}

TEST_CASE("reversed cycle has the conjugate spectrum") {
  auto pi = random_target({2, 2, 2}, 73);
  auto s0 = gibbs_step(pi, CoordinateSubset({0}));
  auto s1 = gibbs_step(pi, CoordinateSubset({1}));
  auto s2 = gibbs_step(pi, CoordinateSubset({2}));
  auto fwd = spectral_report(cycle({s0, s1, s2}));
  auto rev = spectral_report(cycle({s2, s1, s0}));
  REQUIRE(fwd.eigenvalues.size() == rev.eigenvalues.size());
  // sorted by (re, im); the conjugate multiset sorts to conjugates pairwise
  // only after re-sorting, so compare multisets of (re, |im|)
  auto key = [](std::complex<double> z) { return std::make_pair(z.real(), std::abs(z.imag())); };
  std::vector<std::pair<double, double>> a, b;
  for (auto e : fwd.eigenvalues) a.push_back(key(e));
  for (auto e : rev.eigenvalues) b.push_back(key(e));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i].first - b[i].first) < 1e-8);
    CHECK(std::abs(a[i].second - b[i].second) < 1e-8);
  }
}

TEST_CASE("power norm rate") {
  auto pi = random_target({2, 2}, 79);
  auto steps = std::vector<ProjectorMatrix>{gibbs_step(pi, CoordinateSubset({0})),
                                            gibbs_step(pi, CoordinateSubset({1}))};

  SUBCASE("self-adjoint power identity") {
    auto mix = mixture(steps, WeightVector{{0.5, 0.5}});
    auto norms = power_norm_rate(mix, 10);
    double base = norms[0];
    for (int n = 2; n <= 10; ++n) {
      CHECK(norms[n - 1] == doctest::Approx(std::pow(base, n)).epsilon(1e-8));
    }
  }
  SUBCASE("Pi gives all zeros") {
    auto norms = power_norm_rate(pi_projector(pi), 5);
    for (double v : norms) CHECK(v < 1e-12);
  }
  SUBCASE("n-th root decreases toward the spectral radius") {
    auto pi3 = random_target({2, 2, 2}, 83);
    std::vector<ProjectorMatrix> s3;
    for (int c = 0; c < 3; ++c) s3.push_back(gibbs_step(pi3, CoordinateSubset({c})));
    auto cyc = cycle(s3);
    auto norms = power_norm_rate(cyc, 50);
    double r = spectral_report(cyc).spectral_radius;
    double root50 = std::pow(norms[49], 1.0 / 50.0);
    CHECK(root50 >= r - 1e-10);  // the norm root bounds the radius from above
    CHECK(std::abs(root50 - r) <= 0.05);
  }
}

TEST_CASE("solidarity suite") {
  StepFamily singles{{CoordinateSubset({0}), CoordinateSubset({1}), CoordinateSubset({2})}};
  StepFamily overlap{{CoordinateSubset({0, 1}), CoordinateSubset({1, 2})}};

  SUBCASE("random strictly positive target: everything has a gap") {
    auto pi = random_target({2, 2, 2}, 89);
    auto v = solidarity_suite(pi, singles, 8, 7);
    CHECK(v.consistent);
    CHECK(v.all_have_gap);
    CHECK(v.lemma_equivalences_hold);
    CHECK(v.per_ordering_gaps.size() == 6);
    CHECK(v.per_weight_gaps.size() == 9);  // 8 sampled + uniform
  }
  SUBCASE("overlapping family") {
    auto pi = random_target({2, 2, 2}, 97);
    auto v = solidarity_suite(pi, overlap, 4, 7);
    CHECK(v.consistent);
    CHECK(v.all_have_gap);
    CHECK(v.lemma_equivalences_hold);
  }
  SUBCASE("independent product target: cycles have gap exactly 1") {
    auto pi = build_target({2, 2, 2}, Eigen::VectorXd::Ones(8));
    auto v = solidarity_suite(pi, singles, 4, 7);
    CHECK(v.consistent);
    for (const auto& [o, gap] : v.per_ordering_gaps) CHECK(gap == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("g too large rejected") {
    StepFamily big;
    for (int i = 0; i < 7; ++i) big.subsets.push_back(CoordinateSubset({i % 3}));
    auto pi = random_target({2, 2, 2}, 89);
    CHECK_THROWS_AS(solidarity_suite(pi, big, 1, 7), std::invalid_argument);
  }
}

TEST_CASE("inheritance check") {
  auto pi = random_target({2, 2, 2}, 101);
  StepFamily blocked{{CoordinateSubset({0, 1}), CoordinateSubset({1, 2})}};
  auto rep = inheritance_check(pi, blocked);
  CHECK(rep.full_gibbs_gap > 1e-8);
  CHECK(rep.all_positive);
  // the blocked gap may be on either side of the full gap; only positivity
  // is asserted
}

TEST_CASE("norm contraction lemma") {
  auto pi = random_target({2, 2, 2}, 103);
  StepFamily family{{CoordinateSubset({0}), CoordinateSubset({1})}};

  SUBCASE("T = identity") {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(8, 8);
    CHECK(norm_contraction_check(pi, family, id));
  }
  SUBCASE("T = Q - Pi for a random cycle") {
    std::vector<ProjectorMatrix> steps;
    for (int c = 0; c < 3; ++c) steps.push_back(gibbs_step(pi, CoordinateSubset({c})));
    Eigen::MatrixXd t = cycle(steps).matrix - pi_projector(pi).matrix;
    CHECK(norm_contraction_check(pi, family, t));
  }
  SUBCASE("T = Pi") {
    CHECK(norm_contraction_check(pi, family, pi_projector(pi).matrix));
  }
  SUBCASE("covering family reduces P_M to Pi") {
    StepFamily covering{{CoordinateSubset({0, 1}), CoordinateSubset({1, 2})}};
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(8, 8);
    CHECK(norm_contraction_check(pi, covering, id));
  }
}

TEST_CASE("mixture ordering") {
  SUBCASE("blocked equals unblocked when families coincide") {
    auto pi = random_target({2, 2, 2}, 107);
    StepFamily f{{CoordinateSubset({0}), CoordinateSubset({1}), CoordinateSubset({2})}};
    CHECK(mixture_ordering_check(pi, f, f, WeightVector{{0.3, 0.3, 0.4}}));
  }
  SUBCASE("full blocking into one pair") {
    for (int i = 0; i < 20; ++i) {
      auto pi = random_target({2, 2, 2}, 5000 + i);
      StepFamily fine{{CoordinateSubset({0}), CoordinateSubset({1}), CoordinateSubset({2})}};
      StepFamily blocked{{CoordinateSubset({0, 1}), CoordinateSubset({1, 2}),
                          CoordinateSubset({0, 2})}};
      CHECK(mixture_ordering_check(pi, fine, blocked, WeightVector{{0.25, 0.5, 0.25}}));
    }
  }
  SUBCASE("containment precondition enforced") {
    auto pi = random_target({2, 2, 2}, 109);
    StepFamily fine{{CoordinateSubset({0}), CoordinateSubset({1}), CoordinateSubset({2})}};
    StepFamily wrong{{CoordinateSubset({1}), CoordinateSubset({1, 2}), CoordinateSubset({0, 2})}};
    CHECK_THROWS_AS(mixture_ordering_check(pi, fine, wrong, WeightVector{{0.25, 0.5, 0.25}}),
                    std::invalid_argument);
  }
}

TEST_CASE("aperiodicity") {
  SUBCASE("cycles and mixtures on strictly positive targets are aperiodic") {
    auto pi = random_target({2, 2, 2}, 113);
    std::vector<ProjectorMatrix> steps;
    for (int c = 0; c < 3; ++c) steps.push_back(gibbs_step(pi, CoordinateSubset({c})));
    for (const auto& q : {cycle(steps), mixture(steps, WeightVector{{0.2, 0.3, 0.5}})}) {
      auto res = aperiodicity_check(q);
      CHECK(res.irreducible);
      CHECK(res.aperiodic);
    }
  }
  SUBCASE("hand-built periodic permutation kernel is caught") {
    auto pi = build_target({2, 2}, Eigen::VectorXd::Ones(4));
    Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(4, 4);
    perm(0, 1) = perm(1, 2) = perm(2, 3) = perm(3, 0) = 1.0;
    ProjectorMatrix q{perm, pi, OpKind::General, {}};
    auto res = aperiodicity_check(q);
    CHECK(res.irreducible);
    CHECK_FALSE(res.aperiodic);  // eigenvalues on the unit circle
  }
  SUBCASE("Pi is aperiodic") {
    auto pi = random_target({2, 2}, 127);
    auto res = aperiodicity_check(pi_projector(pi));
    CHECK(res.irreducible);
    CHECK(res.aperiodic);
  }
  SUBCASE("reducible kernel reported, not asserted") {
    auto pi = build_target({2, 2}, Eigen::VectorXd::Ones(4));
    ProjectorMatrix q{Eigen::MatrixXd::Identity(4, 4), pi, OpKind::General, {}};
    auto res = aperiodicity_check(q);
    CHECK_FALSE(res.irreducible);
  }
}

TEST_CASE("dirichlet weight samples lie in the simplex") {
  auto ws = sample_weights(4, 16, 99);
  CHECK(ws.size() == 16);
  for (const auto& w : ws) {
    w.validate(4);
    for (double x : w.weights) CHECK(x > 0.0);
  }
  // seeded determinism
  auto again = sample_weights(4, 16, 99);
  for (size_t i = 0; i < ws.size(); ++i)
    for (size_t j = 0; j < 4; ++j) CHECK(ws[i].weights[j] == again[i].weights[j]);
}
