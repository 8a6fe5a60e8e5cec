#include "rvz/norms.hpp"

#include <cmath>
#include <sstream>

#include "rvz/errors.hpp"

namespace rvz {

NormSpec NormSpec::lp(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw InputError("lp norm requires finite p > 0, got p=" + std::to_string(p));
  NormSpec s;
  s.kind = p >= 1.0 ? NormKind::LpNorm : NormKind::LpQuasiNorm;
  s.p = p;
  return s;
}

NormSpec NormSpec::lp_metric(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw InputError("lp_metric requires 0 < p < 1, got p=" + std::to_string(p));
  NormSpec s;
  s.kind = NormKind::LpMetric;
  s.p = p;
  return s;
}

NormSpec NormSpec::sup() {
  NormSpec s;
  s.kind = NormKind::SupNorm;
  s.p = 0.0;
  return s;
}

NormSpec NormSpec::explicit_matrix() {
  NormSpec s;
  s.kind = NormKind::ExplicitMatrix;
  s.p = 0.0;
  return s;
}

std::string NormSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case NormKind::LpNorm:
    case NormKind::LpQuasiNorm:
      os << "lp:" << p;
      break;
    case NormKind::LpMetric:
      os << "lp_metric:" << p;
      break;
    case NormKind::SupNorm:
      os << "sup";
      break;
    case NormKind::ExplicitMatrix:
      os << "explicit";
      break;
  }
  return os.str();
}

double eval_kernel(const NormSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (spec.is_explicit())
    throw UnsupportedOperation("eval_kernel is undefined for explicit kernel matrices");
  if (x.size() != y.size())
    throw InputError("eval_kernel: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  switch (spec.kind) {
    case NormKind::SupNorm:
      return x.size() == 0 ? 0.0 : (x - y).cwiseAbs().maxCoeff();
    case NormKind::LpMetric:
      return (x - y).cwiseAbs().array().pow(spec.p).sum();
    case NormKind::LpNorm:
    case NormKind::LpQuasiNorm: {
      if (spec.p == 1.0) return (x - y).cwiseAbs().sum();
      if (spec.p == 2.0) return (x - y).norm();
      const double s = (x - y).cwiseAbs().array().pow(spec.p).sum();
      return std::pow(s, 1.0 / spec.p);
    }
    case NormKind::ExplicitMatrix:
      break;
  }
  throw UnsupportedOperation("eval_kernel: unknown norm kind");
}

double norm_value(const NormSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return eval_kernel(spec, x, Eigen::VectorXd::Zero(x.size()));
}

NormSpec parse_norm(const std::string& text) {
  if (text == "sup") return NormSpec::sup();
  if (text == "explicit") return NormSpec::explicit_matrix();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    double p = 0.0;
    try {
      p = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("cannot parse norm parameter in '" + text + "'");
    }
    if (head == "lp") return NormSpec::lp(p);
    if (head == "lp_metric") return NormSpec::lp_metric(p);
  }
  throw InputError("cannot parse norm spec '" + text +
                   "' (expected lp:<p>, lp_metric:<p>, sup, explicit)");
}

}  // namespace rvz
