#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "rvz/energy.hpp"
#include "rvz/space.hpp"

namespace rvz {

/// Space document: exactly one of `points` (array of coordinate arrays) or
/// `kernel` (square array); `norm` object; optional `subsets` (name -> index
/// array, defaulting "H"/"L" to all indices).
FiniteKernelSpace space_from_json(const nlohmann::json& j);
FiniteKernelSpace load_space_file(const std::string& path);

nlohmann::json norm_to_json(const NormSpec& spec);
NormSpec norm_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json interval_to_json(const Interval& iv);
nlohmann::json game_to_json(const GameSolution& g);

/// Vertex list document: {"points": [[...], ...]}.
std::vector<Eigen::VectorXd> load_points_file(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace rvz
