#pragma once

#include <Eigen/Core>
#include <string>

namespace rvz {

enum class NormKind {
  LpNorm,       // p >= 1:       k(x,y) = (sum_i |x_i-y_i|^p)^(1/p)
  LpQuasiNorm,  // 0 < p < 1:    same formula; not a metric (triangle fails)
  LpMetric,     // 0 < p < 1:    k(x,y) = sum_i |x_i-y_i|^p  (a metric)
  SupNorm,      //               k(x,y) = max_i |x_i-y_i|
  ExplicitMatrix,
};

/// Kernel descriptor. For the Lp family `p` must be finite and positive;
/// the factories enforce the per-variant range.
struct NormSpec {
  NormKind kind = NormKind::LpNorm;
  double p = 2.0;

  /// p >= 1 gives LpNorm, 0 < p < 1 gives LpQuasiNorm.
  static NormSpec lp(double p);
  /// Requires 0 < p < 1.
  static NormSpec lp_metric(double p);
  static NormSpec sup();
  static NormSpec explicit_matrix();

  bool is_explicit() const { return kind == NormKind::ExplicitMatrix; }
  std::string to_string() const;
};

/// Kernel value of the given spec variant. Throws InputError on dimension
/// mismatch and UnsupportedOperation for ExplicitMatrix. Symmetric in (x, y),
/// zero exactly when x == y.
double eval_kernel(const NormSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

/// The normalization functional ||x|| used for unit spheres: eval_kernel(spec, x, 0).
double norm_value(const NormSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Parse "lp:2", "lp:0.5", "lp_metric:0.5", "sup", "explicit".
NormSpec parse_norm(const std::string& text);

}  // namespace rvz
