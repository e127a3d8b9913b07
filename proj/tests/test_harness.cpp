#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rlab/harness.hpp"

using namespace rlab;
namespace fs = std::filesystem;

namespace {

const char* kResilienceIni = R"(
[experiment]
kind = resilience
seed = 17
samples = 2
workers = 1
restarts = 20

[generator]
model = regular
n = 40
d = 4, 6

[sweep]
eps = 0.5
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("rlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("RLAB_CLI");
  if (!cli) return -1;
  int rc = std::system((std::string(cli) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Config, IniAndJsonAgree) {
  auto a = parse_config_ini(kResilienceIni);
  auto b = parse_config_json(R"({"experiment": {"kind": "resilience", "seed": 17, "samples": 2, "workers": 1,
                                 "restarts": 20},
                                 "generator": {"model": "regular", "n": [40], "d": [4, 6]},
                                 "sweep": {"eps": [0.5]}})");
  EXPECT_EQ(a.n, std::vector<int>{40});
  EXPECT_EQ(a.d, (std::vector<int>{4, 6}));
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NO_THROW(a.validate());
}

TEST(Config, ValidationErrors) {
  auto c = parse_config_ini(kResilienceIni);
  c.d.clear();
  EXPECT_THROW(c.validate(), ValidationError);
  auto no_seed = parse_config_ini("[experiment]\nkind = spectral\n[generator]\nn = 10\nd = 3\n");
  EXPECT_THROW(no_seed.validate(), ValidationError);
  EXPECT_THROW(parse_config_ini("[experiment]\nkind = spectral\nbogus = 1\n"), ValidationError);
  EXPECT_THROW(parse_config_ini("[experiment]\nseed = twelve\n"), ValidationError);
  auto bad_kind = parse_config_ini("[experiment]\nkind = nope\nseed = 1\n[generator]\nn = 10\nd = 3\n");
  EXPECT_THROW(bad_kind.validate(), ValidationError);
  auto bad_breaker = parse_config_ini("[experiment]\nkind = game\nseed = 1\n[generator]\nn = 30\n[game]\nd1 = 8\nd2 = 6\n"
                                      "breakers = random, sneaky\n");
  EXPECT_THROW(bad_breaker.validate(), ValidationError);
  EXPECT_THROW(run_experiment(c), ValidationError);
}

TEST(Run, OneSampleOnePointGivesOneRow) {
  auto c = parse_config_ini("[experiment]\nkind = spectral\nseed = 3\n[generator]\nn = 50\nd = 3\n");
  auto run = run_experiment(c);
  ASSERT_EQ(run.rows.size(), 1u);
  EXPECT_EQ(run.rows[0]["seed"].get<std::uint64_t>(), child_seed(3, 0, 0));
  EXPECT_TRUE(run.failures.empty());
  EXPECT_GT(run.rows[0]["lambda"].get<double>(), 0);
}

TEST(Run, ByteIdenticalAcrossRunsAndWorkerCounts) {
  auto c = parse_config_ini(kResilienceIni);
  auto a = rows_csv(run_experiment(c));
  auto b = rows_csv(run_experiment(c));
  c.workers = 4;
  auto w = rows_csv(run_experiment(c));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, w);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 5);
}

TEST(Run, FailingSampleIsAnErroredRow) {
  // n * d odd at n = 11, d = 3: that sweep point cannot be generated
  auto c = parse_config_ini("[experiment]\nkind = spectral\nseed = 1\nsamples = 2\nworkers = 2\n"
                            "[generator]\nn = 11, 12\nd = 3\n");
  auto run = run_experiment(c);
  ASSERT_EQ(run.rows.size(), 4u);
  EXPECT_FALSE(run.rows[0]["error"].get<std::string>().empty());
  EXPECT_TRUE(run.rows[2]["error"].get<std::string>().empty());
  ASSERT_EQ(run.failures.size(), 2u);
  EXPECT_EQ(run.failures[0].rfind("sweep 0 sample 0: ", 0), 0u);
}

TEST(Report, ResilienceSchemaAndEmptyRun) {
  auto run = run_experiment(parse_config_ini(kResilienceIni));
  auto t = plot_table(run);
  ASSERT_GE(t.columns.size(), 4u);
  EXPECT_EQ(std::vector<std::string>(t.columns.begin(), t.columns.begin() + 4),
            (std::vector<std::string>{"d", "attack_upper_mean", "empirical_lower", "certified_lower"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0].get<double>(), 4);
  EXPECT_LE(t.rows[0][2].get<int>(), t.rows[0][1].get<double>());

  RunRecord empty = run;
  empty.rows.clear();
  auto csv = to_csv(plot_table(empty));
  EXPECT_EQ(csv, "d,attack_upper_mean,empirical_lower,certified_lower,n,eps,samples,errors\n");
  auto rows = rows_csv(empty);
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 1);
}

TEST(Report, GameWinRateMatrix) {
  auto c = parse_config_ini("[experiment]\nkind = game\nseed = 5\nsamples = 2\nworkers = 2\n[generator]\nn = 40\n"
                            "[game]\nd1 = 10\nd2 = 8\nmakers = three-phase, greedy-booster\nbreakers = random, vertex-killer\n");
  auto run = run_experiment(c);
  ASSERT_EQ(run.rows.size(), 8u);
  for (auto& r : run.rows) EXPECT_TRUE(r["error"].get<std::string>().empty()) << r["error"];
  auto t = plot_table(run);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"maker", "random", "vertex-killer"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "three-phase");
  for (auto& row : t.rows)
    for (std::size_t i = 1; i < row.size(); ++i) {
      EXPECT_GE(row[i].get<double>(), 0);
      EXPECT_LE(row[i].get<double>(), 1);
    }
}

TEST(Report, RunRecordRoundTrip) {
  auto run = run_experiment(parse_config_ini(kResilienceIni));
  auto back = run_from_json(nlohmann::ordered_json::parse(run_json(run).dump()));
  EXPECT_EQ(back.config_hash, run.config_hash);
  EXPECT_EQ(rows_csv(back), rows_csv(run));
  EXPECT_EQ(to_csv(summary_table(back)), to_csv(summary_table(run)));
}

TEST(Cli, ExitCodes) {
  if (!std::getenv("RLAB_CLI")) GTEST_SKIP() << "RLAB_CLI not set";
  auto dir = scratch("exit");
  auto g = (dir / "g.txt").string();
  EXPECT_EQ(run_cli("generate --model regular --n 20 --d 3 --seed 1 --out " + g), 0);
  EXPECT_EQ(run_cli("ham --in " + g + " --mode exact"), 0);
  EXPECT_EQ(run_cli("generate --model regular --n 21 --d 3 --seed 1 --out " + g + ".odd"), 2);
  EXPECT_EQ(run_cli("spectral --in " + (dir / "missing.txt").string()), 2);
  EXPECT_EQ(run_cli("nonsense"), 2);
  std::ofstream(dir / "path.txt") << "5 1\n0 1\n";
  EXPECT_EQ(run_cli("attack --kind partition --in " + (dir / "path.txt").string()), 2);
  // an unwritable output is a runtime failure, not a validation error
  EXPECT_EQ(run_cli("spectral --in " + g + " --out /proc/rlab/none.json"), 3);
}

TEST(Cli, GenerateGameAndExperimentPipeline) {
  if (!std::getenv("RLAB_CLI")) GTEST_SKIP() << "RLAB_CLI not set";
  auto dir = scratch("pipeline");
  auto b = (dir / "board.txt").string();
  ASSERT_EQ(run_cli("generate --model strategy --n 40 --d1 10 --d2 8 --seed 2 --out " + b), 0);
  for (int i = 1; i <= 4; ++i) EXPECT_TRUE(fs::exists(b + ".part" + std::to_string(i)));
  auto t = (dir / "t.json").string();
  ASSERT_EQ(run_cli("game --board " + b + " --decomp " + b + ".part1," + b + ".part2," + b + ".part3," + b +
                    ".part4 --maker three-phase --breaker cut-builder --seed 4 --out " + t),
            0);
  auto j = nlohmann::json::parse(slurp(t));
  EXPECT_TRUE(j.contains("moves"));
  EXPECT_TRUE(j.contains("winner"));
  EXPECT_TRUE(j["budgets"]["within_budget"].get<bool>());

  std::ofstream(dir / "cfg.ini") << kResilienceIni;
  auto csv1 = (dir / "a.csv").string(), csv2 = (dir / "b.csv").string(), rec = (dir / "run.json").string();
  ASSERT_EQ(run_cli("experiment --config " + (dir / "cfg.ini").string() + " --csv " + csv1 + " --out " + rec), 0);
  ASSERT_EQ(run_cli("experiment --config " + (dir / "cfg.ini").string() + " --workers 3 --csv " + csv2), 0);
  EXPECT_EQ(slurp(csv1), slurp(csv2));
  ASSERT_EQ(run_cli("report --run " + rec + " --format csv --out " + (dir / "rep").string()), 0);
  auto plot = slurp(dir / "rep" / "resilience.csv");
  EXPECT_EQ(plot.rfind("d,attack_upper_mean,empirical_lower,certified_lower", 0), 0u);
  EXPECT_TRUE(fs::exists(dir / "rep" / "summary.csv"));
  EXPECT_EQ(run_cli("report --run " + csv1 + " --format csv --out " + (dir / "rep2").string()), 2);
}
