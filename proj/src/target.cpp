#include "gibbs/target.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gibbs {

namespace {
constexpr double kNormTol = 1e-12;
}

ProductSpace::ProductSpace(std::vector<int> component_sizes)
    : sizes_(std::move(component_sizes)) {
  // A single component is allowed so that marginal spaces over one coordinate
  // work; joint sampling targets require >= 2 (enforced in build_target).
  if (sizes_.empty()) {
    throw std::invalid_argument("product space needs at least 1 component");
  }
  for (int s : sizes_) {
    if (s < 2) throw std::invalid_argument("every component size must be >= 2");
  }
  strides_.assign(sizes_.size(), 1);
  for (int i = static_cast<int>(sizes_.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * sizes_[i + 1];
  }
  dim_ = strides_[0] * sizes_[0];
}

long ProductSpace::flat_index(std::span<const int> multi) const {
  long flat = 0;
  for (size_t i = 0; i < sizes_.size(); ++i) {
    flat += strides_[i] * multi[i];
  }
  return flat;
}

std::vector<int> ProductSpace::multi_index(long flat) const {
  std::vector<int> multi(sizes_.size());
  for (size_t i = 0; i < sizes_.size(); ++i) {
    multi[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
  return multi;
}

CoordinateSubset::CoordinateSubset(std::vector<int> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (indices_.empty()) throw std::invalid_argument("coordinate subset is empty");
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw std::invalid_argument("coordinate subset has duplicates");
  }
}

bool CoordinateSubset::contains(int coord) const {
  return std::binary_search(indices_.begin(), indices_.end(), coord);
}

CoordinateSubset CoordinateSubset::complement(int k) const {
  std::vector<int> rest;
  for (int i = 0; i < k; ++i) {
    if (!contains(i)) rest.push_back(i);
  }
  return CoordinateSubset(std::move(rest));
}

CoordinateSubset CoordinateSubset::unioned(const CoordinateSubset& other) const {
  std::vector<int> merged;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(merged));
  return CoordinateSubset(std::move(merged));
}

void CoordinateSubset::validate(int k) const {
  if (indices_.front() < 0 || indices_.back() >= k) {
    throw std::invalid_argument("coordinate index out of range");
  }
  if (static_cast<int>(indices_.size()) >= k) {
    throw std::invalid_argument("coordinate subset must be a proper subset");
  }
}

TargetPtr MarginalTarget::as_target() const {
  auto t = std::make_shared<JointTarget>(
      JointTarget{space, probs, strictly_positive});
  return t;
}

TargetPtr build_target(std::vector<int> component_sizes,
                       const Eigen::VectorXd& weights) {
  if (component_sizes.size() < 2) {
    throw std::invalid_argument("sampling target needs at least 2 coordinates");
  }
  ProductSpace space(std::move(component_sizes));
  if (weights.size() != space.dim()) {
    throw std::invalid_argument("weight vector length does not match space dimension");
  }
  double total = 0.0;
  for (long i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw std::invalid_argument("negative weight");
    total += weights[i];
  }
  if (total <= 0.0) throw std::invalid_argument("all-zero weights");
  Eigen::VectorXd probs = weights / total;
  bool positive = (probs.array() > 0.0).all();
  return std::make_shared<JointTarget>(
      JointTarget{std::move(space), std::move(probs), positive});
}

namespace {

// Enumerates the joint space as (index over kept coords, index over the
// complement) pairs; used by marginalization and conditioning.
struct SplitIndexer {
  SplitIndexer(const ProductSpace& space, const CoordinateSubset& keep)
      : keep(keep.indices()), rest(keep.complement(space.num_components()).indices()) {
    std::vector<int> keep_sizes, rest_sizes;
    for (int c : this->keep) keep_sizes.push_back(space.size(c));
    for (int c : this->rest) rest_sizes.push_back(space.size(c));
    keep_dim = 1;
    for (int s : keep_sizes) keep_dim *= s;
    rest_dim = 1;
    for (int s : rest_sizes) rest_dim *= s;
    this->keep_sizes = std::move(keep_sizes);
    this->rest_sizes = std::move(rest_sizes);
  }

  // Row-major flat index within the kept (resp. complement) coordinates.
  std::pair<long, long> split(const std::vector<int>& multi) const {
    long a = 0, b = 0;
    for (size_t i = 0; i < keep.size(); ++i) a = a * keep_sizes[i] + multi[keep[i]];
    for (size_t i = 0; i < rest.size(); ++i) b = b * rest_sizes[i] + multi[rest[i]];
    return {a, b};
  }

  std::vector<int> keep, rest;
  std::vector<int> keep_sizes, rest_sizes;
  long keep_dim = 1, rest_dim = 1;
};

}  // namespace

MarginalTarget marginalize(const JointTarget& pi, const CoordinateSubset& keep) {
  keep.validate(pi.space.num_components());
  SplitIndexer idx(pi.space, keep);
  Eigen::VectorXd marg = Eigen::VectorXd::Zero(idx.keep_dim);
  for (long x = 0; x < pi.space.dim(); ++x) {
    auto multi = pi.space.multi_index(x);
    marg[idx.split(multi).first] += pi.probs[x];
  }
  ProductSpace mspace(idx.keep_sizes);
  bool positive = (marg.array() > 0.0).all();
  return MarginalTarget{keep, std::move(mspace), std::move(marg),
                        pi.space.dim(), positive};
}

Eigen::VectorXd conditional(const JointTarget& pi, const CoordinateSubset& keep,
                            std::span<const int> given) {
  keep.validate(pi.space.num_components());
  SplitIndexer idx(pi.space, keep);
  if (static_cast<long>(given.size()) != static_cast<long>(idx.rest.size())) {
    throw std::invalid_argument("conditioning multi-index has wrong length");
  }
  long rest_flat = 0;
  for (size_t i = 0; i < idx.rest.size(); ++i) {
    rest_flat = rest_flat * idx.rest_sizes[i] + given[i];
  }
  Eigen::VectorXd slice = Eigen::VectorXd::Zero(idx.keep_dim);
  for (long x = 0; x < pi.space.dim(); ++x) {
    auto multi = pi.space.multi_index(x);
    auto [a, b] = idx.split(multi);
    if (b == rest_flat) slice[a] += pi.probs[x];
  }
  double mass = slice.sum();
  if (mass <= 0.0) {
    throw std::domain_error("conditional undefined: zero-mass conditioning slice");
  }
  return slice / mass;
}

double conditional_independence_gap(const JointTarget& pi,
                                    const CoordinateSubset& u,
                                    const CoordinateSubset& v,
                                    const CoordinateSubset& w) {
  const int k = pi.space.num_components();
  auto all = u.unioned(v).unioned(w);
  if (all.count() != k ||
      u.count() + v.count() + w.count() != k) {
    throw std::invalid_argument("subsets must partition the coordinate set");
  }

  SplitIndexer iu(pi.space, u);
  SplitIndexer iv(pi.space, v);
  SplitIndexer iw(pi.space, w);

  // Accumulate p(u,v,w) into a (w, u, v) table.
  const long du = iu.keep_dim, dv = iv.keep_dim, dw = iw.keep_dim;
  std::vector<double> joint(static_cast<size_t>(du * dv * dw), 0.0);
  for (long x = 0; x < pi.space.dim(); ++x) {
    auto multi = pi.space.multi_index(x);
    long a = iu.split(multi).first;
    long b = iv.split(multi).first;
    long c = iw.split(multi).first;
    joint[static_cast<size_t>((c * du + a) * dv + b)] += pi.probs[x];
  }

  double worst = 0.0;
  for (long c = 0; c < dw; ++c) {
    double pw = 0.0;
    for (long a = 0; a < du; ++a)
      for (long b = 0; b < dv; ++b)
        pw += joint[static_cast<size_t>((c * du + a) * dv + b)];
    if (pw <= 0.0) continue;
    std::vector<double> pu(du, 0.0), pv(dv, 0.0);
    for (long a = 0; a < du; ++a)
      for (long b = 0; b < dv; ++b) {
        double p = joint[static_cast<size_t>((c * du + a) * dv + b)] / pw;
        pu[a] += p;
        pv[b] += p;
      }
    double tv = 0.0;
    for (long a = 0; a < du; ++a)
      for (long b = 0; b < dv; ++b) {
        double p = joint[static_cast<size_t>((c * du + a) * dv + b)] / pw;
        tv += std::abs(p - pu[a] * pv[b]);
      }
    worst = std::max(worst, 0.5 * tv);
  }
  return worst;
}

}  // namespace gibbs
