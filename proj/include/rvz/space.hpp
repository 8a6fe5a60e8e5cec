#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "rvz/norms.hpp"

namespace rvz {

/// Closed interval with the convention [a,b] = empty when a > b.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;

  Interval() = default;
  Interval(double a, double b) : lo(a), hi(b), empty(a > b) {}

  static Interval point(double v) { return Interval(v, v); }
  static Interval none() { return Interval(); }

  double width() const { return empty ? 0.0 : hi - lo; }
  bool contains(double v, double tol = 0.0) const {
    return !empty && v >= lo - tol && v <= hi + tol;
  }
};

/// Finitely supported probability measure over the points of a space.
/// Atoms are space-level point indices, distinct, with strictly positive
/// weights summing to 1 (zero weights are dropped at construction).
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<int> atoms, Eigen::VectorXd weights);

  /// Rescale arbitrary nonnegative weights to total mass 1, then construct.
  static DiscreteMeasure normalized(std::vector<int> atoms, Eigen::VectorXd weights);
  static DiscreteMeasure dirac(int atom) {
    return DiscreteMeasure({atom}, Eigen::VectorXd::Ones(1));
  }
  static DiscreteMeasure uniform(const std::vector<int>& atoms);

  const std::vector<int>& atoms() const { return atoms_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  int support_size() const { return static_cast<int>(atoms_.size()); }

  /// True when every weight is bit-identical to 1/support_size.
  bool is_equal_weight() const;

 private:
  std::vector<int> atoms_;
  Eigen::VectorXd weights_;
};

/// A finite set of labelled points with a symmetric nonnegative kernel matrix
/// and named index subsets (at minimum "H" and "L"). Immutable after
/// construction; safe to share across threads.
class FiniteKernelSpace {
 public:
  using Subsets = std::map<std::string, std::vector<int>>;

  /// Explicit kernel. Requires a square, exactly symmetric, nonnegative,
  /// finite matrix. Point coordinates are optional labels.
  FiniteKernelSpace(Eigen::MatrixXd kernel, Subsets subsets,
                    std::vector<Eigen::VectorXd> points = {},
                    NormSpec spec = NormSpec::explicit_matrix());

  int size() const { return static_cast<int>(kernel_.rows()); }
  const Eigen::MatrixXd& kernel() const { return kernel_; }
  const NormSpec& norm() const { return norm_; }
  const std::vector<Eigen::VectorXd>& points() const { return points_; }
  const Subsets& subsets() const { return subsets_; }

  bool has_subset(const std::string& name) const { return subsets_.count(name) != 0; }
  /// Throws InputError on unknown name.
  const std::vector<int>& subset(const std::string& name) const;

  double max_kernel_value() const { return kernel_.size() == 0 ? 0.0 : kernel_.maxCoeff(); }

 private:
  Eigen::MatrixXd kernel_;
  Subsets subsets_;
  std::vector<Eigen::VectorXd> points_;
  NormSpec norm_;
};

/// Kernel matrix from a point cloud: kernel[i][j] = eval_kernel(spec, p_i, p_j),
/// computed on the upper triangle and mirrored so symmetry is bit-identical.
/// When `subsets` is empty, "H" and "L" default to all indices.
FiniteKernelSpace build_space(const std::vector<Eigen::VectorXd>& points, const NormSpec& spec,
                              FiniteKernelSpace::Subsets subsets = {});

/// max over i,j in the named subset of kernel[i][j]; 0 for singletons.
double diameter(const FiniteKernelSpace& space, const std::string& subset_name);

/// Convenience: 0..n-1.
std::vector<int> iota_indices(int n);

/// True when the two index lists contain the same index set.
bool same_index_set(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace rvz
