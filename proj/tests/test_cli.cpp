#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hetsim/config.hpp"
#include "hetsim/experiment.hpp"

using namespace hetsim;
namespace fs = std::filesystem;

namespace {

fs::path write_tmp(const std::string& name, const std::string& contents) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << contents;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("minimal config gets every default made explicit") {
  const fs::path p = write_tmp("hetsim_min.json", R"({"learning": {"learner": "mab"}})");
  std::vector<std::string> warnings;
  const RunConfig cfg = parse_config(p.string(), &warnings);
  CHECK(cfg.learning.learner == LearnerKind::mab);
  CHECK(cfg.scenario.ues_per_sector == 30);
  CHECK(cfg.radio.rb_count == 50);
  CHECK(cfg.handover.ttt_ms == 480);
  CHECK(warnings.empty());

  // effective echo parses back to the identical config
  const auto echo = to_json(cfg);
  const RunConfig back = config_from_json(echo, nullptr);
  CHECK(to_json(back).dump() == echo.dump());
  fs::remove(p);
}

TEST_CASE("non-standard TTT is accepted with a warning") {
  const fs::path p = write_tmp("hetsim_ttt.json", R"({"handover": {"ttt_ms": 100}})");
  std::vector<std::string> warnings;
  const RunConfig cfg = parse_config(p.string(), &warnings);
  CHECK(cfg.handover.ttt_ms == 100);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("ttt_ms") != std::string::npos);
  fs::remove(p);
}

TEST_CASE("malformed JSON reports the parse position") {
  const fs::path p = write_tmp("hetsim_bad.json", "{\n  \"seeds\": [1,\n}");
  CHECK_THROWS_AS(parse_config(p.string(), nullptr), ConfigErrorException);
  try {
    parse_config(p.string(), nullptr);
  } catch (const ConfigErrorException& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
  fs::remove(p);
}

TEST_CASE("unknown keys and type mismatches carry the key path") {
  CHECK_THROWS_WITH_AS(config_from_json({{"radio", {{"rb_cnt", 10}}}}, nullptr),
                       doctest::Contains("radio.rb_cnt"), ConfigErrorException);
  CHECK_THROWS_WITH_AS(config_from_json({{"handover", {{"ttt_ms", "often"}}}}, nullptr),
                       doctest::Contains("handover.ttt_ms"), ConfigErrorException);
  CHECK_THROWS_WITH_AS(config_from_json({{"engine", {{"warmup_ms", 99999}}}}, nullptr),
                       doctest::Contains("warmup_ms"), ConfigErrorException);
}

TEST_CASE("learner accepts the classical synonym 'none'") {
  const RunConfig cfg = config_from_json({{"learning", {{"learner", "none"}}}}, nullptr);
  CHECK(cfg.learning.learner == LearnerKind::classical);
}

TEST_CASE("auto scheduler mode follows the learner") {
  RunConfig cfg;
  cfg.learning.learner = LearnerKind::classical;
  CHECK(cfg.resolved_scheduler_mode() == SchedulerMode::classical_pf);
  cfg.learning.learner = LearnerKind::satisfaction;
  CHECK(cfg.resolved_scheduler_mode() == SchedulerMode::context_aware);
  cfg.scheduler.mode = SchedulerMode::classical_pf;
  CHECK(cfg.resolved_scheduler_mode() == SchedulerMode::classical_pf);
}

TEST_CASE("sweep expansion is a deterministic cross product") {
  RunConfig cfg;
  cfg.seeds = {1, 2, 3};
  cfg.sweep["pico_count"] = nlohmann::json::array({1, 2, 3});
  std::string err;
  const auto points = expand_sweep(cfg, &err);
  REQUIRE(err.empty());
  REQUIRE(points.size() == 9);
  CHECK(points[0].label == "pico_count=1__seed=1");
  CHECK(points[8].label == "pico_count=3__seed=3");
  CHECK(points[4].config.scenario.picos_per_sector == 2);

  SUBCASE("two axes expand in axis-name order") {
    cfg.sweep["learner"] = nlohmann::json::array({"classical", "mab"});
    const auto pts = expand_sweep(cfg, &err);
    REQUIRE(err.empty());
    CHECK(pts.size() == 18);
    CHECK(pts[0].label == "learner=classical__pico_count=1__seed=1");
  }
}

TEST_CASE("unknown sweep axes are rejected") {
  RunConfig cfg;
  cfg.sweep["warp_factor"] = nlohmann::json::array({1});
  std::string err;
  CHECK(expand_sweep(cfg, &err).empty());
  CHECK(err.find("warp_factor") != std::string::npos);
}

TEST_CASE("dotted config paths work as sweep axes") {
  RunConfig cfg;
  cfg.sweep["scenario.hotspot_radius_m"] = nlohmann::json::array({40.0, 60.0});
  std::string err;
  const auto points = expand_sweep(cfg, &err);
  REQUIRE(err.empty());
  REQUIRE(points.size() == 2);
  CHECK(points[0].config.scenario.hotspot_radius_m == 40.0);
  CHECK(points[1].config.scenario.hotspot_radius_m == 60.0);
}

TEST_CASE("summary csv header is stable") {
  CHECK(summary_csv_header() ==
        "point,seed,sum_rate_bps,throughput_p5_bps,throughput_p50_bps,"
        "throughput_p95_bps,hof_probability,pp_probability,triggers,successes,hofs,"
        "pingpongs\n");
}

TEST_CASE("CLI end to end: dry run, tiny sweep, rerun determinism") {
  const fs::path out1 = fs::temp_directory_path() / "hetsim_cli_out1";
  const fs::path out2 = fs::temp_directory_path() / "hetsim_cli_out2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  const fs::path cfg_path = write_tmp("hetsim_cli_cfg.json", R"({
    "scenario": {"ues_per_sector": 2, "picos_per_sector": 1},
    "engine": {"duration_ms": 300, "warmup_ms": 50},
    "seeds": [7, 8],
    "sweep": {"learner": ["classical", "mab"]},
    "learning": {"learning_epoch_ttis": 50}
  })");

  const std::string bin = HETSIM_BIN;
  std::string cmd = bin + " simulate " + cfg_path.string() + " --dry-run";
  CHECK(std::system(cmd.c_str()) == 0);

  cmd = bin + " simulate " + cfg_path.string() + " --out " + out1.string() + " --workers 2";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(out1 / "summary.csv"));
  CHECK(fs::exists(out1 / "effective_config.json"));
  CHECK(fs::exists(out1 / "learner=classical__seed=7.json"));
  CHECK(fs::exists(out1 / "learner=mab__seed=8.log"));
  CHECK(fs::exists(out1 / "learner=mab__seed=8_cdf.csv"));

  cmd = bin + " simulate " + cfg_path.string() + " --out " + out2.string() + " --workers 2";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out1 / "summary.csv") == slurp(out2 / "summary.csv"));
  CHECK(slurp(out1 / "learner=mab__seed=7.json") == slurp(out2 / "learner=mab__seed=7.json"));

  // report <dir> reproduces the aggregation from the logs alone
  const std::string report_json_before = slurp(out1 / "learner=classical__seed=8.json");
  cmd = bin + " report " + out1.string();
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out1 / "learner=classical__seed=8.json") == report_json_before);

  // config error exit code
  const fs::path bad = write_tmp("hetsim_cli_bad.json", R"({"radio": {"rb_count": -4}})");
  cmd = bin + " simulate " + bad.string();
  CHECK(std::system(cmd.c_str()) != 0);

  fs::remove_all(out1);
  fs::remove_all(out2);
  fs::remove(cfg_path);
  fs::remove(bad);
}

TEST_CASE("config echo written by the CLI round-trips") {
  const fs::path out = fs::temp_directory_path() / "hetsim_cli_echo";
  fs::remove_all(out);
  const fs::path cfg_path = write_tmp("hetsim_cli_echo.json", R"({
    "scenario": {"ues_per_sector": 1, "picos_per_sector": 0},
    "engine": {"duration_ms": 100, "warmup_ms": 10},
    "seeds": [3]
  })");
  const std::string cmd =
      std::string(HETSIM_BIN) + " simulate " + cfg_path.string() + " --out " + out.string();
  REQUIRE(std::system(cmd.c_str()) == 0);

  std::vector<std::string> warnings;
  const RunConfig original = parse_config(cfg_path.string(), &warnings);
  const RunConfig echoed = parse_config((out / "effective_config.json").string(), &warnings);
  // the echo carries the output-dir override, everything else is identical
  RunConfig original_with_out = original;
  original_with_out.output_dir = echoed.output_dir;
  CHECK(to_json(echoed).dump() == to_json(original_with_out).dump());

  fs::remove_all(out);
  fs::remove(cfg_path);
}
