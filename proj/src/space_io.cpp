#include "rvz/space_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rvz/errors.hpp"

namespace rvz {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json norm_to_json(const NormSpec& spec) {
  switch (spec.kind) {
    case NormKind::LpNorm:
    case NormKind::LpQuasiNorm:
      return json{{"type", "lp"}, {"p", spec.p}};
    case NormKind::LpMetric:
      return json{{"type", "lp_metric"}, {"p", spec.p}};
    case NormKind::SupNorm:
      return json{{"type", "sup"}};
    case NormKind::ExplicitMatrix:
      break;
  }
  return json{{"type", "explicit"}};
}

NormSpec norm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw InputError("norm: expected an object with a 'type' field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "sup") return NormSpec::sup();
  if (type == "explicit") return NormSpec::explicit_matrix();
  if (type == "lp" || type == "lp_metric") {
    if (!j.contains("p")) throw InputError("norm: '" + type + "' requires a 'p' field");
    const double p = j.at("p").get<double>();
    return type == "lp" ? NormSpec::lp(p) : NormSpec::lp_metric(p);
  }
  throw InputError("norm: unknown type '" + type + "'");
}

namespace {

std::vector<Eigen::VectorXd> points_from_json(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw InputError("points: expected a non-empty array");
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(arr.size());
  for (const auto& row : arr) {
    if (!row.is_array()) throw InputError("points: each point must be a coordinate array");
    Eigen::VectorXd v(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) v[static_cast<Eigen::Index>(k)] = row[k].get<double>();
    pts.push_back(std::move(v));
  }
  return pts;
}

FiniteKernelSpace::Subsets subsets_from_json(const json& j) {
  FiniteKernelSpace::Subsets subsets;
  if (!j.contains("subsets")) return subsets;
  const auto& s = j.at("subsets");
  if (!s.is_object()) throw InputError("subsets: expected an object of name -> index array");
  for (auto it = s.begin(); it != s.end(); ++it) {
    std::vector<int> idx;
    for (const auto& v : it.value()) idx.push_back(v.get<int>());
    subsets[it.key()] = std::move(idx);
  }
  return subsets;
}

}  // namespace

FiniteKernelSpace space_from_json(const json& j) {
  if (!j.is_object()) throw InputError("space: expected a JSON object");
  const bool has_points = j.contains("points");
  const bool has_kernel = j.contains("kernel");
  if (has_points == has_kernel)
    throw InputError("space: exactly one of 'points' or 'kernel' must be given");

  auto subsets = subsets_from_json(j);
  if (has_kernel) {
    if (j.contains("norm")) {
      const NormSpec spec = norm_from_json(j.at("norm"));
      if (!spec.is_explicit())
        throw InputError("space: a 'kernel' field requires norm type 'explicit'");
    }
    const auto& rows = j.at("kernel");
    if (!rows.is_array() || rows.empty()) throw InputError("kernel: expected a square array");
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        throw InputError("kernel: row " + std::to_string(i) + " has wrong length");
      for (Eigen::Index c = 0; c < n; ++c) k(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return FiniteKernelSpace(std::move(k), std::move(subsets));
  }

  if (!j.contains("norm")) throw InputError("space: 'points' requires a 'norm' object");
  const NormSpec spec = norm_from_json(j.at("norm"));
  if (spec.is_explicit())
    throw InputError("space: norm type 'explicit' requires a 'kernel', not 'points'");
  return build_space(points_from_json(j.at("points")), spec, std::move(subsets));
}

FiniteKernelSpace load_space_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
  return space_from_json(j);
}

json measure_to_json(const DiscreteMeasure& mu) {
  json atoms = json::array();
  json weights = json::array();
  for (int a : mu.atoms()) atoms.push_back(a);
  for (Eigen::Index i = 0; i < mu.weights().size(); ++i) weights.push_back(mu.weights()[i]);
  return json{{"atoms", atoms}, {"weights", weights}};
}

DiscreteMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("weights"))
    throw InputError("measure: expected {\"atoms\": [...], \"weights\": [...]}");
  std::vector<int> atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back(a.get<int>());
  Eigen::VectorXd w(static_cast<Eigen::Index>(j.at("weights").size()));
  Eigen::Index i = 0;
  for (const auto& v : j.at("weights")) w[i++] = v.get<double>();
  return DiscreteMeasure(std::move(atoms), std::move(w));
}

json interval_to_json(const Interval& iv) {
  if (iv.empty) return json{{"empty", true}};
  return json{{"empty", false}, {"lo", iv.lo}, {"hi", iv.hi}};
}

json game_to_json(const GameSolution& g) {
  return json{{"value_lo", g.value_lo},
              {"value_hi", g.value_hi},
              {"value", g.value()},
              {"gap", g.gap},
              {"diagonal", g.diagonal},
              {"converged", g.converged},
              {"used_refinement", g.used_refinement},
              {"mu_star", measure_to_json(g.mu_star)},
              {"nu_star", measure_to_json(g.nu_star)}};
}

std::vector<Eigen::VectorXd> load_points_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("points"))
    throw InputError("vertices file: expected {\"points\": [[...], ...]}");
  return points_from_json(j.at("points"));
}

}  // namespace rvz
