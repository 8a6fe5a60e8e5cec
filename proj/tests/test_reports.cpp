#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "rvz/energy.hpp"
#include "rvz/errors.hpp"
#include "rvz/report.hpp"
#include "rvz/space_io.hpp"

using namespace rvz;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "rvz_io_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::trunc);
  out << body;
  return path.string();
}

}  // namespace

TEST_CASE("space files: points with a norm") {
  const auto path = write_temp("tri.json", R"({
    "points": [[0,0],[1,0],[0,1]],
    "norm": {"type":"lp","p":2},
    "subsets": {"H":[0,1],"L":[0,1,2]}
  })");
  const auto sp = load_space_file(path);
  CHECK(sp.size() == 3);
  CHECK(sp.kernel()(0, 1) == doctest::Approx(1.0));
  CHECK(sp.subset("H") == std::vector<int>{0, 1});
  CHECK(sp.subset("L").size() == 3);
}

TEST_CASE("space files: explicit kernels") {
  const auto path = write_temp("kern.json", R"({
    "kernel": [[0,1],[1,0]],
    "norm": {"type":"explicit"}
  })");
  const auto sp = load_space_file(path);
  CHECK(sp.size() == 2);
  CHECK(sp.subset("H") == std::vector<int>{0, 1});  // defaulted
}

TEST_CASE("space files: malformed inputs are reported as input errors") {
  CHECK_THROWS_AS(load_space_file(write_temp("bad1.json", "{ not json")), InputError);
  CHECK_THROWS_AS(load_space_file(write_temp("bad2.json", R"({"norm":{"type":"lp","p":2}})")),
                  InputError);  // neither points nor kernel
  CHECK_THROWS_AS(load_space_file(write_temp(
                      "bad3.json", R"({"points":[[0,0]],"kernel":[[0]],"norm":{"type":"sup"}})")),
                  InputError);  // both
  CHECK_THROWS_AS(
      load_space_file(write_temp("bad4.json", R"({"points":[[0,0],[1,0]]})")),
      InputError);  // points without norm
  CHECK_THROWS_AS(
      load_space_file(write_temp(
          "bad5.json", R"({"kernel":[[0,1],[1,0]],"norm":{"type":"lp","p":2}})")),
      InputError);  // kernel with non-explicit norm
  CHECK_THROWS_AS(
      load_space_file(write_temp("bad6.json", R"({"kernel":[[0,2],[1,0]],"norm":{"type":"explicit"}})")),
      InputError);  // asymmetric
  CHECK_THROWS_AS(load_space_file(write_temp("bad7.json", R"({"points":[[0,0],[1,0]],
      "norm":{"type":"lp","p":2},"subsets":{"H":[5]}})")),
                  InputError);  // subset out of range
}

TEST_CASE("measure serialization round-trip") {
  Eigen::VectorXd w(2);
  w << 0.25, 0.75;
  const DiscreteMeasure mu({3, 9}, w);
  const auto j = measure_to_json(mu);
  const auto back = measure_from_json(j);
  CHECK(back.atoms() == mu.atoms());
  CHECK((back.weights() - mu.weights()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(measure_from_json(json{{"atoms", {0}}}), InputError);
}

TEST_CASE("game solutions serialize with witnesses and both bounds") {
  Eigen::MatrixXd K(2, 2);
  K << 0, 1, 1, 0;
  const FiniteKernelSpace sp(K, {});
  const auto g = game_value(sp, "H", "L");
  const auto j = game_to_json(g);
  CHECK(j.contains("value_lo"));
  CHECK(j.contains("value_hi"));
  CHECK(j.contains("mu_star"));
  CHECK(j.contains("nu_star"));
  CHECK(j["gap"].get<double>() <= 1e-9);
}

TEST_CASE("interval serialization uses the explicit empty representation") {
  CHECK(interval_to_json(Interval(2.0, 1.0))["empty"] == true);
  const auto j = interval_to_json(Interval(1.0, 2.0));
  CHECK(j["empty"] == false);
  CHECK(j["lo"] == 1.0);
}

TEST_CASE("fnv1a digest is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == fnv1a_hex("a"));
  CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}

TEST_CASE("reports are byte-stable without timings") {
  RunReport a;
  a.command = "value --H H --L L";
  a.input_digest = fnv1a_hex("payload");
  a.results["x"] = 0.1 + 0.2;
  a.timings["total_ms"] = 12.5;
  RunReport b = a;
  b.timings["total_ms"] = 99.0;
  CHECK(a.to_bytes(false) == b.to_bytes(false));
  CHECK(a.to_bytes(true) != b.to_bytes(true));
}

TEST_CASE("cache stores and replays payloads") {
  const auto dir =
      (std::filesystem::temp_directory_path() / "rvz_cache_test").string();
  std::filesystem::remove_all(dir);
  CHECK(!cache_lookup(dir, "k").has_value());
  cache_store(dir, "k", "payload-bytes");
  const auto hit = cache_lookup(dir, "k");
  REQUIRE(hit.has_value());
  CHECK(*hit == "payload-bytes");
  std::filesystem::remove_all(dir);
}
