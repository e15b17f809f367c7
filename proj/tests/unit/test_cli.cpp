#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cli/config.hpp"
#include "cli/run.hpp"
#include "discframe/discframe.hpp"

using namespace discframe;
using cli::ConfigError;
using cli::ComputationError;
using cli::ExperimentConfig;
using cli::parse_config;

namespace {

ExperimentConfig parse(std::vector<std::string> args) {
  std::vector<const char*> argv{"discframe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path write_temp_json(const std::string& name,
                                      const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("argument parsing: plain flag sets") {
  const auto cfg = parse({"gen", "--family", "polynomial", "--param", "2",
                          "--count", "5"});
  CHECK(cfg.command == "gen");
  CHECK(cfg.factor_a.family == "polynomial");
  CHECK(cfg.factor_a.param == 2.0);
  CHECK(cfg.factor_a.count == 5);
  CHECK(cfg.format == "csv");
  CHECK(cfg.out_path.empty());

  const auto shorthand = parse({"tensor", "--a", "geometric:0.5:8", "--b",
                                "geometric:0.5:8", "--klist", "2,4,6,8"});
  CHECK(shorthand.factor_a.family == "geometric");
  CHECK(shorthand.factor_a.param == 0.5);
  CHECK(shorthand.factor_b.count == 8);
  REQUIRE(shorthand.k_list.size() == 4);
  CHECK(shorthand.k_list.back() == 8);

  const auto spun = parse({"gen", "--a", "geometric_with_phases:0.5:6:0.7"});
  CHECK(spun.factor_a.family == "geometric_with_phases");
  CHECK(spun.factor_a.phase_step == 0.7);

  const auto listed = parse({"carleson", "--family", "explicit", "--points",
                             "0.1,0;0.2,0.1"});
  CHECK(listed.factor_a.points.size() == 2);
  CHECK(listed.factor_a.count == 2);
}

TEST_CASE("argument parsing: rejections") {
  // Family parameter outside the open unit interval.
  CHECK_THROWS_AS(parse({"gen", "--family", "geometric", "--param", "1.5",
                         "--count", "4"}),
                  ConfigError);
  CHECK_THROWS_AS(parse({"frobnicate", "--family", "geometric", "--param",
                         "0.5", "--count", "4"}),
                  ConfigError);
  CHECK_THROWS_AS(parse({"gen", "--family", "geometric", "--param", "0.5",
                         "--count", "4", "--format", "xml"}),
                  ConfigError);
  // K-list is a truncation-study concept; gen has no use for it.
  CHECK_THROWS_AS(parse({"gen", "--family", "geometric", "--param", "0.5",
                         "--count", "4", "--klist", "2"}),
                  ConfigError);
  CHECK_THROWS_AS(parse({"tensor", "--a", "geometric:0.5:8"}), ConfigError);
  CHECK_THROWS_AS(parse({"bounds", "--a", "geometric:0.5"}), ConfigError);
  CHECK_THROWS_AS(parse({"bounds", "--a", "geometric:abc:4"}), ConfigError);
  CHECK_THROWS_AS(parse({"bounds", "--family", "geometric", "--param", "0.5",
                         "--count", "4", "--klist", "2,9"}),
                  ConfigError);
  // Randomized commands must be reproducible: the seed is mandatory.
  CHECK_THROWS_AS(parse({"interp", "--family", "geometric", "--param", "0.5",
                         "--count", "4"}),
                  ConfigError);
  CHECK_THROWS_AS(parse({"reconstruct", "--family", "geometric", "--param",
                         "0.5", "--count", "4", "--trials", "0", "--seed",
                         "1"}),
                  ConfigError);
}

TEST_CASE("config files merge under explicit flags") {
  const auto path = write_temp_json(
      "discframe_cli_test_config.json",
      R"({"command": "carleson", "family": "geometric", "param": 0.5,
          "count": 12, "format": "json"})");

  const auto from_file = parse({"--config", path.string()});
  CHECK(from_file.command == "carleson");
  CHECK(from_file.factor_a.count == 12);
  CHECK(from_file.format == "json");

  // A flag on the command line overrides the file value.
  const auto overridden =
      parse({"carleson", "--config", path.string(), "--count", "6"});
  CHECK(overridden.factor_a.count == 6);
  CHECK(overridden.factor_a.param == 0.5);

  std::filesystem::remove(path);

  const auto bad = write_temp_json("discframe_cli_test_bad.json",
                                   "{\"command\": \"carleson\", ");
  CHECK_THROWS_AS(parse({"--config", bad.string()}), ConfigError);
  std::filesystem::remove(bad);

  const auto unknown = write_temp_json("discframe_cli_test_unknown.json",
                                       R"({"command": "gen", "frob": 1})");
  CHECK_THROWS_AS(parse({"--config", unknown.string()}), ConfigError);
  std::filesystem::remove(unknown);

  CHECK_THROWS_AS(parse({"gen", "--config", "/nonexistent/none.json"}),
                  ConfigError);
}

TEST_CASE("run: separation table matches the library call") {
  const auto cfg = parse({"carleson", "--family", "geometric", "--param",
                          "0.5", "--count", "12"});
  const ReportTable table = cli::run(cfg);
  REQUIRE(table.columns.size() == 3);
  CHECK(table.columns[0] == "K");
  CHECK(table.columns[1] == "value");
  CHECK(table.columns[2] == "argmin_index");
  REQUIRE(table.rows.size() == 1);

  const auto direct = carleson_infimum(generate(geometric_spec(0.5, 12)));
  CHECK(std::get<double>(table.rows[0][1]) == direct.value);
  CHECK(std::get<std::int64_t>(table.rows[0][2]) ==
        static_cast<std::int64_t>(direct.argmin_index));
}

TEST_CASE("run: emission is deterministic across repeated invocations") {
  const auto cfg = parse({"tensor", "--a", "geometric:0.5:8", "--b",
                          "geometric:0.5:8", "--klist", "2,4,6,8", "--format",
                          "json"});
  const std::string first = to_json(cli::run(cfg));
  const std::string second = to_json(cli::run(cfg));
  CHECK(first == second);

  const nlohmann::json doc = nlohmann::json::parse(first);
  REQUIRE(doc["columns"].size() == 5);
  CHECK(doc["columns"][0] == "K");
  CHECK(doc["columns"][1] == "carleson_trunc");
  CHECK(doc["columns"][2] == "lower_A");
  CHECK(doc["columns"][3] == "upper_B");
  CHECK(doc["columns"][4] == "ratio_c_hat");
  REQUIRE(doc["rows"].size() == 4);
  // Numbers survive the round trip exactly (shortest-decimal formatting).
  const double a2 = doc["rows"][0][2].get<double>();
  CHECK(a2 == doctest::Approx(0.0069697220176639998).epsilon(1e-11));
  // ratio_c_hat for K >= 2 is present; carleson column is non-null here.
  CHECK_FALSE(doc["rows"][3][1].is_null());
  CHECK_FALSE(doc["rows"][3][4].is_null());
}

TEST_CASE("run: provenance echoes the configuration, never the destination") {
  const auto cfg = parse({"tensor", "--a", "geometric:0.5:4", "--b",
                          "geometric:0.3:4", "--klist", "2,4", "--out",
                          "/tmp/discframe-some-output.csv"});
  const ReportTable table = cli::run(cfg);
  bool has_command = false, has_factor = false, has_version = false;
  for (const auto& [key, value] : table.provenance) {
    if (key == "command") has_command = value == "tensor";
    if (key == "factor_a") has_factor = value == "geometric:0.5:4";
    if (key == "version") has_version = value == kVersion;
    CHECK(value.find("discframe-some-output") == std::string::npos);
  }
  CHECK(has_command);
  CHECK(has_factor);
  CHECK(has_version);
}

TEST_CASE("run: numerical refusals surface as computation errors") {
  const auto cfg = parse({"interp", "--family", "polynomial", "--param", "2",
                          "--count", "14", "--seed", "7"});
  CHECK_THROWS_AS(cli::run(cfg), ComputationError);

  // Shorthand factors never carry explicit point lists.
  CHECK_THROWS_AS(parse({"tensor", "--a", "explicit:0:2", "--b",
                         "geometric:0.5:4"}),
                  ConfigError);

  // Collisions inside a product grid are reported per row, not thrown:
  // the first polynomial point is 0, so the zero products coincide.
  const auto collide = parse({"tensor", "--a", "polynomial:2:4", "--b",
                              "geometric:0.5:4", "--klist", "4"});
  const ReportTable table = cli::run(collide);
  REQUIRE(table.rows.size() == 1);
  CHECK(std::holds_alternative<std::monostate>(table.rows[0][1]));
  CHECK(std::get<double>(table.rows[0][2]) > 0.0);
}

TEST_CASE("run: reconstruction rows are reproducible given a seed") {
  const auto cfg = parse({"reconstruct", "--family", "geometric", "--param",
                          "0.5", "--count", "4", "--trials", "3", "--seed",
                          "11", "--tol", "1e-10"});
  const ReportTable table = cli::run(cfg);
  REQUIRE(table.rows.size() == 3);
  for (const auto& row : table.rows) {
    CHECK(std::get<double>(row[3]) <= 1e-8);
  }
  const ReportTable again = cli::run(cfg);
  CHECK(to_csv(table) == to_csv(again));
}
