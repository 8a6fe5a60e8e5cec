#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

namespace rvz {

inline constexpr const char* kToolVersion = "rvz 0.1.0";

/// One report document per run. Every numeric result is accompanied by its
/// certificate (witness measures, covers, brackets) in `certificates`;
/// `timings` is excluded from the deterministic byte image.
struct RunReport {
  std::string command;
  std::string input_digest;
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json certificates = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();
  std::string version = kToolVersion;

  nlohmann::json to_json(bool include_timings) const;
  /// Canonical byte image (2-space indent, sorted keys via nlohmann objects).
  std::string to_bytes(bool include_timings) const;
};

/// FNV-1a 64-bit over raw bytes, as fixed-width hex. Deterministic across
/// platforms; used for input digests and cache keys.
std::string fnv1a_hex(const std::string& bytes);

/// RVZ_CACHE_DIR when set, else ".rvzcache".
std::string default_cache_dir();

std::optional<std::string> cache_lookup(const std::string& dir, const std::string& key);
void cache_store(const std::string& dir, const std::string& key, const std::string& payload);

}  // namespace rvz
