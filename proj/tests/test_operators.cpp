#include <doctest.h>

#include "gibbs/fixtures.hpp"
#include "gibbs/operators.hpp"

using namespace gibbs;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

void check_projector_invariants(const ProjectorMatrix& p) {
  const Eigen::MatrixXd& q = p.matrix;
  const Eigen::VectorXd& pi = p.target->probs;
  const long n = q.rows();
  CHECK(max_abs(q.rowwise().sum() - Eigen::VectorXd::Ones(n)) < 1e-10);
  CHECK(max_abs((pi.transpose() * q).transpose() - pi) < 1e-10);
  Eigen::MatrixXd dq = pi.asDiagonal() * q;
  CHECK(max_abs(dq - dq.transpose()) < 1e-10);  // pi-self-adjoint
  CHECK(max_abs(q * q - q) < 1e-10);            // idempotent
}

}  // namespace

TEST_CASE("gibbs step on the uniform pair") {
  auto pi = build_target({2, 2}, Eigen::VectorXd::Ones(4));
  auto step = gibbs_step(pi, CoordinateSubset({0}));
  // states 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1); resampling coordinate 0 links
  // states sharing coordinate 1
  Eigen::MatrixXd expected(4, 4);
  expected << 0.5, 0, 0.5, 0,
              0, 0.5, 0, 0.5,
              0.5, 0, 0.5, 0,
              0, 0.5, 0, 0.5;
  CHECK(max_abs(step.matrix - expected) < 1e-14);
  check_projector_invariants(step);
}

TEST_CASE("gibbs step rows on the correlated pair match hand-normalized slices") {
  auto pi = correlated_pair(0.5);
  auto step = gibbs_step(pi, CoordinateSubset({0}));
  Eigen::VectorXd row0(4);
  row0 << 0.75, 0, 0.25, 0;
  CHECK(max_abs(step.matrix.row(0).transpose() - row0) < 1e-12);
  Eigen::VectorXd row3(4);
  row3 << 0, 0.25, 0, 0.75;
  CHECK(max_abs(step.matrix.row(3).transpose() - row3) < 1e-12);
  check_projector_invariants(step);
}

TEST_CASE("gibbs step resampling all but the last coordinate has identical rows per slice") {
  auto pi = random_target({2, 2, 3}, 31);
  auto step = gibbs_step(pi, CoordinateSubset({0, 1}));
  // rows sharing the last coordinate are identical
  for (long x = 0; x < 12; ++x)
    for (long z = 0; z < 12; ++z)
      if (x % 3 == z % 3) CHECK(max_abs(step.matrix.row(x) - step.matrix.row(z)) < 1e-14);
}

TEST_CASE("gibbs step invariants hold on random targets") {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto pi = random_target({2, 3, 2}, seed);
    for (auto idx : {std::vector<int>{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}}) {
      check_projector_invariants(gibbs_step(pi, CoordinateSubset(idx)));
    }
  }
}

TEST_CASE("gibbs step requires strict positivity") {
  Eigen::VectorXd w(4);
  w << 1, 0, 0, 1;
  auto pi = build_target({2, 2}, w);
  CHECK_THROWS_AS(gibbs_step(pi, CoordinateSubset({0})), std::invalid_argument);
}

TEST_CASE("pi projector") {
  auto pi = build_target({2, 2}, Eigen::VectorXd::Ones(4));
  auto proj = pi_projector(pi);
  CHECK(max_abs(proj.matrix - Eigen::MatrixXd::Constant(4, 4, 0.25)) < 1e-14);

  auto rnd = random_target({2, 3}, 5);
  auto p = pi_projector(rnd);
  CHECK(max_abs(p.matrix * p.matrix - p.matrix) < 1e-12);
  // Pi P_F = Pi for every Gibbs step
  for (auto idx : {std::vector<int>{0}, {1}}) {
    auto step = gibbs_step(rnd, CoordinateSubset(idx));
    CHECK(max_abs(p.matrix * step.matrix - p.matrix) < 1e-10);
    CHECK(max_abs(step.matrix * p.matrix - p.matrix) < 1e-10);
  }
}

TEST_CASE("cycle of an independent product is the pi projector") {
  Eigen::VectorXd w(6);
  double mu[2] = {0.3, 0.7}, nu[3] = {0.2, 0.5, 0.3};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) w[i * 3 + j] = mu[i] * nu[j];
  auto pi = build_target({2, 3}, w);
  auto cyc = cycle({gibbs_step(pi, CoordinateSubset({0})),
                    gibbs_step(pi, CoordinateSubset({1}))});
  CHECK(max_abs(cyc.matrix - pi_projector(pi).matrix) < 1e-12);
}

TEST_CASE("repeated step collapses by idempotency") {
  auto pi = random_target({2, 2}, 41);
  auto s0 = gibbs_step(pi, CoordinateSubset({0}));
  auto s1 = gibbs_step(pi, CoordinateSubset({1}));
  // {0},{0},{1} covers; the repeated factor collapses
  auto twice = cycle({s0, s0, s1});
  auto once = cycle({s0, s1});
  CHECK(max_abs(twice.matrix - once.matrix) < 1e-12);
}

TEST_CASE("cycle requires covering family and shared target") {
  auto pi = random_target({2, 2}, 43);
  auto s0 = gibbs_step(pi, CoordinateSubset({0}));
  CHECK_THROWS_AS(cycle({s0, s0}), std::invalid_argument);
  auto other = random_target({2, 2}, 44);
  auto s1 = gibbs_step(other, CoordinateSubset({1}));
  CHECK_THROWS_AS(cycle({s0, s1}), std::invalid_argument);
}

TEST_CASE("mixture basics") {
  auto pi = random_target({2, 2}, 47);
  auto s0 = gibbs_step(pi, CoordinateSubset({0}));
  auto s1 = gibbs_step(pi, CoordinateSubset({1}));

  SUBCASE("equal-weight mixture of one step with itself is that step") {
    // {0},{0} does not cover, so pair it with a covering family instead:
    auto mix = mixture({s0, s1, s1}, WeightVector{{0.5, 0.25, 0.25}});
    Eigen::MatrixXd expected = 0.5 * s0.matrix + 0.5 * s1.matrix;
    CHECK(max_abs(mix.matrix - expected) < 1e-14);
  }
  SUBCASE("uniform target mixture is symmetric doubly stochastic") {
    auto unif = build_target({2, 2}, Eigen::VectorXd::Ones(4));
    auto m = mixture({gibbs_step(unif, CoordinateSubset({0})),
                      gibbs_step(unif, CoordinateSubset({1}))},
                     WeightVector{{0.5, 0.5}});
    CHECK(max_abs(m.matrix - m.matrix.transpose()) < 1e-14);
    CHECK(max_abs(m.matrix.colwise().sum() - Eigen::RowVectorXd::Ones(4)) < 1e-12);
  }
  SUBCASE("weight validation") {
    CHECK_THROWS_AS(mixture({s0, s1}, WeightVector{{0.5, 0.4}}), std::invalid_argument);
    CHECK_THROWS_AS(mixture({s0, s1}, WeightVector{{1.2, -0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(mixture({s0, s1}, WeightVector{{1.0}}), std::invalid_argument);
  }
}

TEST_CASE("pi adjoint") {
  auto pi = random_target({2, 2, 2}, 53);
  auto s0 = gibbs_step(pi, CoordinateSubset({0}));
  auto s1 = gibbs_step(pi, CoordinateSubset({1, 2}));

  SUBCASE("gibbs steps are self-adjoint") {
    CHECK(max_abs(pi_adjoint(s0).matrix - s0.matrix) < 1e-10);
  }
  SUBCASE("adjoint of a cycle is the reversed cycle") {
    auto fwd = cycle({s0, s1});
    auto rev = cycle({s1, s0});
    CHECK(max_abs(pi_adjoint(fwd).matrix - rev.matrix) < 1e-10);
  }
  SUBCASE("Pi is self-adjoint") {
    auto p = pi_projector(pi);
    CHECK(max_abs(pi_adjoint(p).matrix - p.matrix) < 1e-10);
  }
}

TEST_CASE("pi norm") {
  auto unif = build_target({2, 2}, Eigen::VectorXd::Ones(4));
  CHECK(pi_norm(pi_projector(unif).matrix, *unif) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pi_norm(Eigen::MatrixXd::Zero(4, 4), *unif) == 0.0);

  // for self-adjoint Q - Pi the norm equals the spectral radius; checked
  // against the explicit eigenvalue of the correlated-pair cycle in
  // test_spectral.cpp
}

TEST_CASE("commutator norm") {
  CoordinateSubset u({0}), v({1}), w({2});

  SUBCASE("Markov-structured target commutes") {
    auto pi = markov_uvw();
    CHECK(commutator_norm(gibbs_step(pi, u), gibbs_step(pi, v)) < 1e-10);
  }
  SUBCASE("independent product commutes") {
    auto pi = build_target({2, 2, 2}, Eigen::VectorXd::Ones(8));
    CHECK(commutator_norm(gibbs_step(pi, u), gibbs_step(pi, v)) < 1e-10);
  }
  SUBCASE("dependent target: positive commutator iff positive CI gap") {
    auto pi = random_target({2, 2, 2}, 59);
    double comm = commutator_norm(gibbs_step(pi, u), gibbs_step(pi, v));
    double gap = conditional_independence_gap(*pi, u, v, w);
    CHECK(comm > 1e-10);
    CHECK(gap > 1e-10);
  }
  SUBCASE("commuting steps compose to the block step") {
    auto pi = markov_uvw();
    auto pu = gibbs_step(pi, u);
    auto pv = gibbs_step(pi, v);
    auto block = gibbs_step(pi, u.unioned(v));
    CHECK(max_abs(pu.matrix * pv.matrix - block.matrix) < 1e-10);
  }
}

TEST_CASE("(Q - Pi)^n = Q^n - Pi for cycles and mixtures") {
  auto pi = random_target({2, 2, 2}, 61);
  std::vector<ProjectorMatrix> steps;
  for (int c = 0; c < 3; ++c) steps.push_back(gibbs_step(pi, CoordinateSubset({c})));
  Eigen::MatrixXd proj = pi_projector(pi).matrix;
  for (const auto& q : {cycle(steps), mixture(steps, WeightVector{{0.2, 0.3, 0.5}})}) {
    Eigen::MatrixXd diff = q.matrix - proj;
    Eigen::MatrixXd diff_pow = diff;
    Eigen::MatrixXd q_pow = q.matrix;
    for (int n = 2; n <= 5; ++n) {
      diff_pow = diff_pow * diff;
      q_pow = q_pow * q.matrix;
      CHECK(max_abs(diff_pow - (q_pow - proj)) < 1e-10);
    }
  }
}
