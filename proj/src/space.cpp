#include "rvz/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rvz/errors.hpp"

namespace rvz {

namespace {

void check_subsets(const FiniteKernelSpace::Subsets& subsets, int n) {
  for (const auto& [name, idx] : subsets) {
    for (int i : idx) {
      if (i < 0 || i >= n)
        throw InputError("subset '" + name + "' index " + std::to_string(i) +
                         " out of range [0, " + std::to_string(n) + ")");
    }
  }
}

FiniteKernelSpace::Subsets with_defaults(FiniteKernelSpace::Subsets subsets, int n) {
  if (subsets.find("H") == subsets.end()) subsets["H"] = iota_indices(n);
  if (subsets.find("L") == subsets.end()) subsets["L"] = iota_indices(n);
  return subsets;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<int> atoms, Eigen::VectorXd weights) {
  if (atoms.size() != static_cast<std::size_t>(weights.size()))
    throw InputError("measure: atoms and weights must have the same length");
  if (atoms.empty()) throw InputError("measure: empty support");
  double total = 0.0;
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    const double w = weights[j];
    if (!std::isfinite(w) || w < 0.0)
      throw InputError("measure: weights must be finite and nonnegative");
    if (w > 0.0) {
      atoms_.push_back(atoms[j]);
      total += w;
    }
  }
  if (atoms_.empty()) throw InputError("measure: all weights are zero");
  if (std::abs(total - 1.0) > 1e-12)
    throw InputError("measure: weights sum to " + std::to_string(total) + ", expected 1");
  weights_.resize(static_cast<Eigen::Index>(atoms_.size()));
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < weights.size(); ++j)
    if (weights[j] > 0.0) weights_[k++] = weights[j];
  std::set<int> distinct(atoms_.begin(), atoms_.end());
  if (distinct.size() != atoms_.size()) throw InputError("measure: atoms must be distinct");
}

DiscreteMeasure DiscreteMeasure::normalized(std::vector<int> atoms, Eigen::VectorXd weights) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    if (weights[j] < 0.0 && weights[j] > -1e-12) weights[j] = 0.0;  // solver dust
    total += weights[j];
  }
  if (!(total > 0.0)) throw InputError("measure: cannot normalize zero total mass");
  return DiscreteMeasure(std::move(atoms), weights / total);
}

DiscreteMeasure DiscreteMeasure::uniform(const std::vector<int>& atoms) {
  if (atoms.empty()) throw InputError("measure: empty support");
  const double w = 1.0 / static_cast<double>(atoms.size());
  return normalized(atoms, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(atoms.size()), w));
}

bool DiscreteMeasure::is_equal_weight() const {
  const double w = 1.0 / static_cast<double>(atoms_.size());
  for (Eigen::Index j = 0; j < weights_.size(); ++j)
    if (weights_[j] != w) return false;
  return true;
}

FiniteKernelSpace::FiniteKernelSpace(Eigen::MatrixXd kernel, Subsets subsets,
                                     std::vector<Eigen::VectorXd> points, NormSpec spec)
    : kernel_(std::move(kernel)),
      subsets_(with_defaults(std::move(subsets), static_cast<int>(kernel_.rows()))),
      points_(std::move(points)),
      norm_(spec) {
  const Eigen::Index n = kernel_.rows();
  if (n == 0) throw InputError("space: empty kernel");
  if (kernel_.cols() != n) throw InputError("space: kernel must be square");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernel_(i, j);
      if (!std::isfinite(v))
        throw InputError("space: kernel entries must be finite (no +inf kernels)");
      if (v < 0.0) throw InputError("space: kernel entries must be nonnegative");
      if (kernel_(i, j) != kernel_(j, i))
        throw InputError("space: kernel must be exactly symmetric (entry " + std::to_string(i) +
                         "," + std::to_string(j) + ")");
    }
  }
  if (!points_.empty() && points_.size() != static_cast<std::size_t>(n))
    throw InputError("space: point labels must match kernel size");
  check_subsets(subsets_, static_cast<int>(n));
}

const std::vector<int>& FiniteKernelSpace::subset(const std::string& name) const {
  const auto it = subsets_.find(name);
  if (it == subsets_.end()) throw InputError("unknown subset '" + name + "'");
  return it->second;
}

FiniteKernelSpace build_space(const std::vector<Eigen::VectorXd>& points, const NormSpec& spec,
                              FiniteKernelSpace::Subsets subsets) {
  if (points.empty()) throw InputError("build_space: empty point list");
  if (spec.is_explicit())
    throw InputError("build_space: explicit kernels take a matrix, not points");
  const Eigen::Index dim = points.front().size();
  for (const auto& p : points)
    if (p.size() != dim) throw InputError("build_space: points must share one dimension");
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = eval_kernel(spec, points[i], points[j]);
      k(i, j) = v;
      k(j, i) = v;  // mirror: symmetry holds bit-for-bit
    }
  }
  return FiniteKernelSpace(std::move(k), std::move(subsets), points, spec);
}

double diameter(const FiniteKernelSpace& space, const std::string& subset_name) {
  const auto& idx = space.subset(subset_name);
  if (idx.empty()) throw InputError("diameter: subset '" + subset_name + "' is empty");
  double d = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b)
      d = std::max(d, space.kernel()(idx[a], idx[b]));
  return d;
}

std::vector<int> iota_indices(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

bool same_index_set(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  return sa == sb;
}

}  // namespace rvz
