#include "gibbs/fixtures.hpp"

#include <random>

namespace gibbs {

TargetPtr correlated_pair(double rho) {
  Eigen::VectorXd w(4);
  w << (1.0 + rho) / 4.0, (1.0 - rho) / 4.0, (1.0 - rho) / 4.0, (1.0 + rho) / 4.0;
  return build_target({2, 2}, w);
}

TargetPtr markov_uvw() {
  const double pw[2] = {0.4, 0.6};
  const double pu_w[2][2] = {{0.7, 0.3}, {0.2, 0.8}};
  const double pv_w[2][2] = {{0.6, 0.4}, {0.9, 0.1}};
  Eigen::VectorXd probs(8);
  // coordinate order (u, v, w), w fastest
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v)
      for (int w = 0; w < 2; ++w)
        probs[(u * 2 + v) * 2 + w] = pw[w] * pu_w[w][u] * pv_w[w][v];
  return build_target({2, 2, 2}, probs);
}

TargetPtr random_target(const std::vector<int>& sizes, std::uint64_t seed) {
  long dim = 1;
  for (int s : sizes) dim *= s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Eigen::VectorXd w(dim);
  for (long i = 0; i < dim; ++i) w[i] = unif(rng);
  return build_target(sizes, w);
}

TargetPtr random_markov_uvw(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  double pw = unif(rng);
  double pu[2] = {unif(rng), unif(rng)};
  double pv[2] = {unif(rng), unif(rng)};
  Eigen::VectorXd probs(8);
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v)
      for (int w = 0; w < 2; ++w) {
        double p = (w ? pw : 1.0 - pw);
        p *= (u ? pu[w] : 1.0 - pu[w]);
        p *= (v ? pv[w] : 1.0 - pv[w]);
        probs[(u * 2 + v) * 2 + w] = p;
      }
  return build_target({2, 2, 2}, probs);
}

std::vector<Fixture> regression_fixtures() {
  std::vector<Fixture> fx;
  fx.push_back({"uniform_2x2", build_target({2, 2}, Eigen::VectorXd::Ones(4))});
  for (double rho : {0.25, 0.5, 0.9}) {
    fx.push_back({"corr_" + std::to_string(rho).substr(0, 4), correlated_pair(rho)});
  }
  fx.push_back({"markov_uvw", markov_uvw()});

  const std::vector<std::vector<int>> shapes = {
      {2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 2, 3},
      {2, 3, 3}, {3, 3, 3}, {2, 2, 2, 2}, {2, 2, 2, 3}, {2, 2, 3, 3}};
  for (int i = 0; i < 20; ++i) {
    const auto& sizes = shapes[i % shapes.size()];
    fx.push_back({"random_" + std::to_string(i),
                  random_target(sizes, 1000 + static_cast<std::uint64_t>(i))});
  }
  return fx;
}

}  // namespace gibbs
