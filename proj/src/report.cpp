#include "rvz/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rvz {

nlohmann::json RunReport::to_json(bool include_timings) const {
  nlohmann::json j{{"command", command},
                   {"input_digest", input_digest},
                   {"results", results},
                   {"certificates", certificates},
                   {"version", version}};
  if (include_timings) j["timings"] = timings;
  return j;
}

std::string RunReport::to_bytes(bool include_timings) const {
  return to_json(include_timings).dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("RVZ_CACHE_DIR"); env != nullptr && *env != '\0')
    return std::string(env);
  return ".rvzcache";
}

std::optional<std::string> cache_lookup(const std::string& dir, const std::string& key) {
  const std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void cache_store(const std::string& dir, const std::string& key, const std::string& payload) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;  // cache is advisory: failures never break a run
  const std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << payload;
}

}  // namespace rvz
