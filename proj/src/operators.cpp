#include "gibbs/operators.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace gibbs {

void StepFamily::validate(int k) const {
  if (subsets.size() < 1) throw std::invalid_argument("empty step family");
  std::vector<bool> covered(k, false);
  for (const auto& s : subsets) {
    s.validate(k);
    for (int c : s.indices()) covered[c] = true;
  }
  for (int c = 0; c < k; ++c) {
    if (!covered[c]) throw std::invalid_argument("step family does not cover every coordinate");
  }
}

void WeightVector::validate(size_t g) const {
  if (weights.size() != g) throw std::invalid_argument("weight/step count mismatch");
  double total = 0.0;
  for (double w : weights) {
    if (w <= 0.0) throw std::invalid_argument("mixture weights must be strictly positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
}

ProjectorMatrix gibbs_step(TargetPtr pi, const CoordinateSubset& resampled) {
  const int k = pi->space.num_components();
  resampled.validate(k);
  if (!pi->strictly_positive) {
    throw std::invalid_argument("gibbs_step requires a strictly positive target");
  }
  const long n = pi->space.dim();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);

  // Group states by their complement-coordinate slice; within a slice, every
  // row is the normalized slice itself.
  auto rest = resampled.complement(k);
  std::vector<long> rest_key(n);
  for (long x = 0; x < n; ++x) {
    auto multi = pi->space.multi_index(x);
    long key = 0;
    for (int c : rest.indices()) key = key * pi->space.size(c) + multi[c];
    rest_key[x] = key;
  }
  // slice mass per key
  std::vector<double> mass;
  {
    long nkeys = 1;
    for (int c : rest.indices()) nkeys *= pi->space.size(c);
    mass.assign(nkeys, 0.0);
  }
  for (long x = 0; x < n; ++x) mass[rest_key[x]] += pi->probs[x];
  for (double m : mass) {
    if (m <= 0.0) throw std::domain_error("zero-mass conditioning slice");
  }
  for (long x = 0; x < n; ++x) {
    for (long y = 0; y < n; ++y) {
      if (rest_key[x] == rest_key[y]) {
        q(x, y) = pi->probs[y] / mass[rest_key[x]];
      }
    }
  }
  return ProjectorMatrix{std::move(q), std::move(pi), OpKind::GibbsStep, resampled};
}

ProjectorMatrix pi_projector(TargetPtr pi) {
  const long n = pi->space.dim();
  Eigen::MatrixXd q(n, n);
  for (long x = 0; x < n; ++x) q.row(x) = pi->probs.transpose();
  return ProjectorMatrix{std::move(q), std::move(pi), OpKind::PiProjector, {}};
}

namespace {

void require_shared_target(const std::vector<ProjectorMatrix>& steps) {
  if (steps.empty()) throw std::invalid_argument("no steps given");
  for (const auto& s : steps) {
    if (s.target.get() != steps.front().target.get()) {
      throw std::invalid_argument("steps do not share a target");
    }
  }
}

void require_covering(const std::vector<ProjectorMatrix>& steps) {
  const int k = steps.front().target->space.num_components();
  StepFamily family;
  for (const auto& s : steps) {
    if (!s.subset) throw std::invalid_argument("cycle/mixture steps must be Gibbs steps");
    family.subsets.push_back(*s.subset);
  }
  family.validate(k);
}

}  // namespace

ProjectorMatrix cycle(const std::vector<ProjectorMatrix>& steps) {
  require_shared_target(steps);
  require_covering(steps);
  Eigen::MatrixXd q = steps.front().matrix;
  for (size_t i = 1; i < steps.size(); ++i) q = q * steps[i].matrix;
  return ProjectorMatrix{std::move(q), steps.front().target, OpKind::Cycle, {}};
}

ProjectorMatrix mixture(const std::vector<ProjectorMatrix>& steps,
                        const WeightVector& w) {
  require_shared_target(steps);
  require_covering(steps);
  w.validate(steps.size());
  Eigen::MatrixXd q =
      Eigen::MatrixXd::Zero(steps.front().matrix.rows(), steps.front().matrix.cols());
  for (size_t i = 0; i < steps.size(); ++i) q += w.weights[i] * steps[i].matrix;
  return ProjectorMatrix{std::move(q), steps.front().target, OpKind::Mixture, {}};
}

ProjectorMatrix pi_adjoint(const ProjectorMatrix& q) {
  const Eigen::VectorXd& p = q.target->probs;
  Eigen::MatrixXd adj =
      p.cwiseInverse().asDiagonal() * q.matrix.transpose() * p.asDiagonal();
  return ProjectorMatrix{std::move(adj), q.target, OpKind::General, q.subset};
}

double pi_norm(const Eigen::MatrixXd& t, const JointTarget& pi) {
  if (t.rows() != t.cols() || t.rows() != pi.space.dim()) {
    throw std::invalid_argument("matrix dimension does not match target");
  }
  Eigen::VectorXd sqrt_p = pi.probs.cwiseSqrt();
  Eigen::MatrixXd s =
      sqrt_p.asDiagonal() * t * sqrt_p.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
  return svd.singularValues()(0);
}

double commutator_norm(const ProjectorMatrix& a, const ProjectorMatrix& b) {
  if (a.target.get() != b.target.get()) {
    throw std::invalid_argument("operators do not share a target");
  }
  Eigen::MatrixXd comm = a.matrix * b.matrix - b.matrix * a.matrix;
  return pi_norm(comm, *a.target);
}

}  // namespace gibbs
