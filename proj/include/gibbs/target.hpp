#ifndef GIBBS_TARGET_HPP
#define GIBBS_TARGET_HPP

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <vector>

namespace gibbs {

// Finite K-fold product space with row-major flat indexing
// (coordinate 0 is the slowest-varying index).
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<int> component_sizes);

  int num_components() const { return static_cast<int>(sizes_.size()); }
  int size(int coord) const { return sizes_[coord]; }
  const std::vector<int>& sizes() const { return sizes_; }
  long dim() const { return dim_; }

  long flat_index(std::span<const int> multi) const;
  std::vector<int> multi_index(long flat) const;

 private:
  std::vector<int> sizes_;
  std::vector<long> strides_;
  long dim_;
};

// Sorted, duplicate-free set of coordinate indices (0-based); must be a
// nonempty proper subset of {0,...,K-1} for the space it is used with.
class CoordinateSubset {
 public:
  explicit CoordinateSubset(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  int count() const { return static_cast<int>(indices_.size()); }
  bool contains(int coord) const;
  CoordinateSubset complement(int k) const;
  CoordinateSubset unioned(const CoordinateSubset& other) const;

  // Throws unless nonempty, proper, and within range for a K-coordinate space.
  void validate(int k) const;

 private:
  std::vector<int> indices_;
};

struct JointTarget {
  ProductSpace space;
  Eigen::VectorXd probs;  // flat-index order, sums to 1
  bool strictly_positive = false;
};

using TargetPtr = std::shared_ptr<const JointTarget>;

struct MarginalTarget {
  CoordinateSubset subset;     // coordinates of the parent space kept
  ProductSpace space;          // product space over the kept coordinates
  Eigen::VectorXd probs;
  long parent_dim = 0;
  bool strictly_positive = false;

  // View of the marginal as a target in its own right, so that operator
  // construction applies verbatim on the marginal space.
  TargetPtr as_target() const;
};

// Normalizes nonnegative weights into a JointTarget. Throws on negative
// entries, all-zero weights, or a length mismatch with the space dimension.
TargetPtr build_target(std::vector<int> component_sizes,
                       const Eigen::VectorXd& weights);

MarginalTarget marginalize(const JointTarget& pi, const CoordinateSubset& keep);

// Conditional distribution of the coordinates in `keep` given the complement
// coordinates fixed at `given` (multi-index over the complement, in ascending
// coordinate order). Throws on a zero-mass conditioning slice.
Eigen::VectorXd conditional(const JointTarget& pi, const CoordinateSubset& keep,
                            std::span<const int> given);

// max_w TV( pi(u,v|w), pi(u|w) x pi(v|w) ) over w of positive mass.
// Zero (within tolerance) iff U and V are conditionally independent given W.
// The three subsets must partition the coordinate set.
double conditional_independence_gap(const JointTarget& pi,
                                    const CoordinateSubset& u,
                                    const CoordinateSubset& v,
                                    const CoordinateSubset& w);

}  // namespace gibbs

#endif  // GIBBS_TARGET_HPP
