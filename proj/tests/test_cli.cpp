#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "optecot/cost_model.hpp"
#include "optecot/csv.hpp"

namespace fs = std::filesystem;
using optecot::read_text_file;

namespace {

std::string cli_path() {
  const char* path = std::getenv("OPTECOT_CLI");
  REQUIRE_MESSAGE(path != nullptr, "OPTECOT_CLI env var not set");
  return path;
}

struct CommandResult {
  int exit_code = 0;
  std::string stderr_text;
};

CommandResult run_cli(const std::string& arguments) {
  const fs::path err_file = fs::temp_directory_path() / "optecot_cli_stderr.txt";
  const std::string command =
      cli_path() + " " + arguments + " > /dev/null 2> " + err_file.string();
  const int status = std::system(command.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.stderr_text = read_text_file(err_file);
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "optecot_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files[fs::relative(entry.path(), root).string()] =
          read_text_file(entry.path());
    }
  }
  return files;
}

}  // namespace

TEST_CASE("calibrate writes the table, a manifest and the effective config") {
  const fs::path out = fresh_dir("calibrate");
  const CommandResult result = run_cli(
      "calibrate --problem mcsphere --seed 5 --out " + out.string());
  REQUIRE(result.exit_code == 0);
  CHECK(fs::exists(out / "calibration.csv"));
  CHECK(fs::exists(out / "manifest.json"));
  CHECK(fs::exists(out / "effective_config.txt"));

  const auto table =
      optecot::CalibrationTable::load(out / "calibration.csv");
  CHECK(table.rows().size() == 10);
  CHECK(table.rows().front().theta == 1.0);
  CHECK(table.rows().back().theta == 1000.0);

  const std::string manifest = read_text_file(out / "manifest.json");
  CHECK(manifest.find("\"config_hash\"") != std::string::npos);
  CHECK(manifest.find("calibration.csv") != std::string::npos);
}

TEST_CASE("unknown problems fail with a machine-readable error line") {
  const fs::path out = fresh_dir("bad_problem");
  const CommandResult result =
      run_cli("calibrate --problem nosuch --out " + out.string());
  CHECK(result.exit_code == 1);
  CHECK(result.stderr_text.rfind("error: ", 0) == 0);
  CHECK(result.stderr_text.find("nosuch") != std::string::npos);
}

TEST_CASE("missing t_max is reported as an error") {
  const fs::path out = fresh_dir("no_tmax");
  const CommandResult result =
      run_cli("run --problem mcsphere --seed 1 --out " + out.string());
  CHECK(result.exit_code == 1);
  CHECK(result.stderr_text.rfind("error: ", 0) == 0);
  CHECK(result.stderr_text.find("t_max") != std::string::npos);
}

TEST_CASE("run emits trace, bisections, curves and sidecar") {
  const fs::path out = fresh_dir("run");
  const CommandResult result = run_cli(
      "run --problem mcsphere --seed 3 --tmax 100000 --out " + out.string());
  REQUIRE(result.exit_code == 0);
  for (const char* name : {"trace.csv", "bisections.csv", "quality_curve.csv",
                           "cost_curve.csv", "run_meta.json", "calibration.csv",
                           "manifest.json"}) {
    CHECK_MESSAGE(fs::exists(out / name), name);
  }
  const std::string trace = read_text_file(out / "trace.csv");
  CHECK(trace.rfind("iteration,elapsed,cost,variance,best_score,readjusted\n", 0) == 0);
  const std::string sidecar = read_text_file(out / "run_meta.json");
  CHECK(sidecar.find("\"bisections\"") != std::string::npos);
  CHECK(sidecar.find("\"alpha\"") != std::string::npos);
}

TEST_CASE("config file keys drive the run and flags override them") {
  const fs::path out = fresh_dir("config_file");
  const fs::path config = out / "exp.cfg";
  {
    std::ofstream cfg(config);
    cfg << "# experiment configuration\n"
        << "problem = mcsphere\n"
        << "dimension = 3\n"
        << "pop_size = 8\n"
        << "t_max = 50000\n"
        << "seed = 11\n"
        << "alpha = 0.9\n";
  }
  const CommandResult result = run_cli("run --config " + config.string() +
                                       " --seed 12 --out " + out.string());
  REQUIRE(result.exit_code == 0);
  const std::string effective = read_text_file(out / "effective_config.txt");
  CHECK(effective.find("seed = 12") != std::string::npos);  // flag wins
  CHECK(effective.find("alpha = 0.9") != std::string::npos);
  const std::string sidecar = read_text_file(out / "run_meta.json");
  CHECK(sidecar.find("\"alpha\": 0.9") != std::string::npos);
  CHECK(sidecar.find("\"seed\": 12") != std::string::npos);
}

TEST_CASE("sweep and compare emit their summaries for every problem surface") {
  const fs::path sweep_out = fresh_dir("sweep");
  const CommandResult sweep = run_cli(
      "sweep --problem mcsphere --seed 4 --seeds 2 --tmax 60000 "
      "--grid 0,0.44,1 --out " + sweep_out.string());
  REQUIRE(sweep.exit_code == 0);
  CHECK(fs::exists(sweep_out / "sweep_summary.csv"));
  CHECK(fs::exists(sweep_out / "mean_curve_cost_0.44.csv"));
  CHECK(fs::exists(sweep_out / "runs/cost_1_seed_5.csv"));

  const fs::path compare_out = fresh_dir("compare");
  const CommandResult compare = run_cli(
      "compare --problem mcsphere --seed 4 --seeds 2 --tmax 60000 --out " +
      compare_out.string());
  REQUIRE(compare.exit_code == 0);
  for (const char* name :
       {"mean_curve_optecot.csv", "mean_curve_original.csv", "qi.csv", "tr.csv",
        "cost_curve.csv", "runs/optecot_seed_4.csv", "runs/original_seed_5.csv",
        "runs/trace_optecot_seed_4.csv"}) {
    CHECK_MESSAGE(fs::exists(compare_out / name), name);
  }
}

TEST_CASE("report recomputes derived artifacts from emitted curves") {
  const fs::path out = fresh_dir("report");
  REQUIRE(run_cli("compare --problem mcsphere --seed 9 --seeds 2 --tmax 60000 "
                  "--out " + out.string())
              .exit_code == 0);
  const CommandResult report = run_cli("report --out " + out.string());
  REQUIRE(report.exit_code == 0);
  CHECK(fs::exists(out / "qi_recomputed.csv"));
  CHECK(fs::exists(out / "tr_recomputed.csv"));
  CHECK(fs::exists(out / "manifest_report.json"));
  CHECK(read_text_file(out / "qi_recomputed.csv") ==
        read_text_file(out / "qi.csv"));
  CHECK(read_text_file(out / "tr_recomputed.csv") ==
        read_text_file(out / "tr.csv"));

  const fs::path empty = fresh_dir("report_empty");
  CHECK(run_cli("report --out " + empty.string()).exit_code == 1);
}

TEST_CASE("identical config and seed reproduce byte-identical outputs") {
  const std::vector<std::string> commands{
      "calibrate --problem sr --seed 8",
      "suitability --problem mcsphere --seed 8 --grid 0,0.5,1",
      "run --problem windfarm --seed 8 --tmax 800000",
      "sweep --problem sr --seed 8 --seeds 2 --tmax 40000 --grid 0,0.5,1",
      "compare --problem mcsphere --seed 8 --seeds 2 --tmax 60000 --plot",
  };
  int index = 0;
  for (const std::string& command : commands) {
    CAPTURE(command);
    const fs::path a = fresh_dir("repro_a_" + std::to_string(index));
    const fs::path b = fresh_dir("repro_b_" + std::to_string(index));
    REQUIRE(run_cli(command + " --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli(command + " --out " + b.string()).exit_code == 0);
    CHECK(read_tree(a) == read_tree(b));
    ++index;
  }
}

TEST_CASE("suitability emits the distance matrix and the times report") {
  const fs::path out = fresh_dir("suitability");
  const CommandResult result = run_cli(
      "suitability --problem sr --seed 2 --out " + out.string());
  REQUIRE(result.exit_code == 0);
  const std::string times = read_text_file(out / "suitability.csv");
  CHECK(times.rfind("cost,theta,mean_time,extra_eval_proportion\n", 0) == 0);
  const std::string matrix = read_text_file(out / "distance_matrix.csv");
  CHECK(matrix.rfind("solution_index,cost,normalized_distance\n", 0) == 0);
}
