#include <doctest.h>

#include <random>

#include "gibbs/fixtures.hpp"
#include "gibbs/target.hpp"

using namespace gibbs;

TEST_CASE("flat and multi index maps are inverse bijections") {
  ProductSpace space({2, 3, 2});
  REQUIRE(space.dim() == 12);
  for (long x = 0; x < space.dim(); ++x) {
    auto multi = space.multi_index(x);
    CHECK(space.flat_index(multi) == x);
  }
  // coordinate 0 slowest
  CHECK(space.flat_index(std::vector<int>{1, 0, 0}) == 6);
  CHECK(space.flat_index(std::vector<int>{0, 0, 1}) == 1);
}

TEST_CASE("build_target normalizes and flags positivity") {
  auto uniform = build_target({2, 2}, Eigen::VectorXd::Ones(4));
  CHECK(uniform->strictly_positive);
  for (int i = 0; i < 4; ++i) CHECK(uniform->probs[i] == doctest::Approx(0.25));

  Eigen::VectorXd w(4);
  w << 1, 0, 0, 1;
  auto degen = build_target({2, 2}, w);
  CHECK_FALSE(degen->strictly_positive);
  CHECK(degen->probs[0] == doctest::Approx(0.5));
  CHECK(degen->probs[1] == 0.0);

  auto rnd = random_target({2, 3, 2}, 7);
  CHECK(std::abs(rnd->probs.sum() - 1.0) < 1e-12);
}

TEST_CASE("build_target rejects bad input") {
  CHECK_THROWS_AS(build_target({2, 2}, Eigen::VectorXd::Zero(4)), std::invalid_argument);
  Eigen::VectorXd neg(4);
  neg << 1, -1, 1, 1;
  CHECK_THROWS_AS(build_target({2, 2}, neg), std::invalid_argument);
  CHECK_THROWS_AS(build_target({2, 2}, Eigen::VectorXd::Ones(5)), std::invalid_argument);
  CHECK_THROWS_AS(build_target({2}, Eigen::VectorXd::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(build_target({2, 1}, Eigen::VectorXd::Ones(2)), std::invalid_argument);
}

TEST_CASE("marginalize independent product recovers factors") {
  // mu = (0.3, 0.7), nu = (0.2, 0.5, 0.3)
  Eigen::VectorXd w(6);
  double mu[2] = {0.3, 0.7}, nu[3] = {0.2, 0.5, 0.3};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) w[i * 3 + j] = mu[i] * nu[j];
  auto pi = build_target({2, 3}, w);

  auto m1 = marginalize(*pi, CoordinateSubset({0}));
  CHECK(m1.probs[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(m1.probs[1] == doctest::Approx(0.7).epsilon(1e-12));

  auto m2 = marginalize(*pi, CoordinateSubset({1}));
  for (int j = 0; j < 3; ++j) CHECK(m2.probs[j] == doctest::Approx(nu[j]).epsilon(1e-12));
}

TEST_CASE("marginalize matches brute-force column sums on a random target") {
  auto pi = random_target({2, 3}, 11);
  auto m = marginalize(*pi, CoordinateSubset({1}));
  for (int j = 0; j < 3; ++j) {
    double s = pi->probs[0 * 3 + j] + pi->probs[1 * 3 + j];
    CHECK(m.probs[j] == doctest::Approx(s).epsilon(1e-14));
  }
  CHECK(std::abs(m.probs.sum() - 1.0) < 1e-12);
}

TEST_CASE("tower property of nested marginalization") {
  auto pi = random_target({2, 2, 3}, 13);
  auto m12 = marginalize(*pi, CoordinateSubset({0, 1}));
  auto m1_direct = marginalize(*pi, CoordinateSubset({0}));
  auto m1_nested = marginalize(*m12.as_target(), CoordinateSubset({0}));
  for (int i = 0; i < 2; ++i) {
    CHECK(m1_nested.probs[i] == doctest::Approx(m1_direct.probs[i]).epsilon(1e-12));
  }
}

TEST_CASE("conditional of correlated pair") {
  auto pi = correlated_pair(0.5);
  std::vector<int> given{0};  // x2 = 0
  auto cond = conditional(*pi, CoordinateSubset({0}), given);
  CHECK(cond[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(cond[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("conditional of independent product ignores the conditioning point") {
  Eigen::VectorXd w(4);
  double mu[2] = {0.6, 0.4}, nu[2] = {0.1, 0.9};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) w[i * 2 + j] = mu[i] * nu[j];
  auto pi = build_target({2, 2}, w);
  for (int x2 : {0, 1}) {
    std::vector<int> given{x2};
    auto cond = conditional(*pi, CoordinateSubset({0}), given);
    CHECK(cond[0] == doctest::Approx(0.6).epsilon(1e-12));
  }
}

TEST_CASE("zero-mass conditioning slice is a hard error") {
  Eigen::VectorXd w(4);
  w << 1, 0, 1, 0;  // second column has zero mass
  auto pi = build_target({2, 2}, w);
  std::vector<int> given{1};
  CHECK_THROWS_AS(conditional(*pi, CoordinateSubset({0}), given), std::domain_error);
}

TEST_CASE("conditionals reconstruct the joint") {
  auto pi = random_target({2, 3}, 17);
  auto m2 = marginalize(*pi, CoordinateSubset({1}));
  for (int j = 0; j < 3; ++j) {
    std::vector<int> given{j};
    auto cond = conditional(*pi, CoordinateSubset({0}), given);
    for (int i = 0; i < 2; ++i) {
      CHECK(cond[i] * m2.probs[j] == doctest::Approx(pi->probs[i * 3 + j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("conditional independence gap") {
  CoordinateSubset u({0}), v({1}), w({2});

  SUBCASE("Markov-structured target has zero gap") {
    CHECK(conditional_independence_gap(*markov_uvw(), u, v, w) < 1e-12);
  }
  SUBCASE("uniform target has zero gap") {
    auto pi = build_target({2, 2, 2}, Eigen::VectorXd::Ones(8));
    CHECK(conditional_independence_gap(*pi, u, v, w) < 1e-12);
  }
  SUBCASE("random strictly positive target: matches direct enumeration") {
    auto pi = random_target({2, 2, 2}, 23);
    double gap = conditional_independence_gap(*pi, u, v, w);
    CHECK(gap > 0.0);
    // brute force in flat-index arithmetic: index = (u*2 + v)*2 + w
    double worst = 0.0;
    for (int wi = 0; wi < 2; ++wi) {
      double pw = 0;
      for (int ui = 0; ui < 2; ++ui)
        for (int vi = 0; vi < 2; ++vi) pw += pi->probs[(ui * 2 + vi) * 2 + wi];
      double tv = 0;
      for (int ui = 0; ui < 2; ++ui)
        for (int vi = 0; vi < 2; ++vi) {
          double puv = pi->probs[(ui * 2 + vi) * 2 + wi] / pw;
          double pu = (pi->probs[(ui * 2 + 0) * 2 + wi] + pi->probs[(ui * 2 + 1) * 2 + wi]) / pw;
          double pv = (pi->probs[(0 * 2 + vi) * 2 + wi] + pi->probs[(1 * 2 + vi) * 2 + wi]) / pw;
          tv += std::abs(puv - pu * pv);
        }
      worst = std::max(worst, 0.5 * tv);
    }
    CHECK(gap == doctest::Approx(worst).epsilon(1e-12));
  }
  SUBCASE("symmetric in U and V") {
    auto pi = random_target({2, 2, 2}, 29);
    CHECK(conditional_independence_gap(*pi, u, v, w) ==
          doctest::Approx(conditional_independence_gap(*pi, v, u, w)).epsilon(1e-12));
  }
  SUBCASE("non-partition input rejected") {
    CHECK_THROWS_AS(conditional_independence_gap(*markov_uvw(), u, v, CoordinateSubset({1})),
                    std::invalid_argument);
  }
}
