#include "diachron/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace diachron::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = DIACHRON_TEST_FIXTURES;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "diachron");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("diachron_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> fixture_args(const std::string& command, const fs::path& out) {
  return {command,
          "--script", (kFixtures / "mini_script.csv").string(),
          "--episodes", (kFixtures / "mini_episodes.csv").string(),
          "--out", out.string(),
          "--min-freq", "1",
          "--sample-every", "5",
          "--min-df", "1",
          "--max-df", "1.0",
          "--topics-k", "2,3",
          "--lda-iterations", "30"};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::set<std::string> manifest_outputs(const fs::path& dir) {
  const report::Json m = report::Json::parse(slurp(dir / "run_manifest.json"));
  std::set<std::string> names;
  for (const auto& n : m["outputs"]) names.insert(n.get<std::string>());
  return names;
}

TEST(Cli, StatsHappyPath) {
  const fs::path out = scratch("stats");
  const Result r = invoke(fixture_args("stats", out));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(out / "frequency.csv"));
  EXPECT_EQ(slurp(out / "frequency.csv").rfind("rank,token,count,probability\n", 0), 0u);
  EXPECT_TRUE(fs::exists(out / "run_manifest.json"));
  EXPECT_TRUE(manifest_outputs(out).contains("frequency.csv"));
  fs::remove_all(out);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"stats", "--script", "/nonexistent.csv", "--episodes", "/nonexistent.csv"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, MissingColumnExitsTwo) {
  const fs::path out = scratch("badcol");
  fs::create_directories(out);
  std::ofstream(out / "script.csv") << "id,episode_id,speaking_line\n1,1,true\n";
  std::vector<std::string> args = fixture_args("ingest", out / "result");
  args[2] = (out / "script.csv").string();
  const Result r = invoke(args);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("raw_text"), std::string::npos);
  fs::remove_all(out);
}

TEST(Cli, AllEqualsUnionOfStages) {
  const fs::path all_dir = scratch("all");
  ASSERT_EQ(invoke(fixture_args("all", all_dir)).code, 0);
  std::set<std::string> all = manifest_outputs(all_dir);

  std::set<std::string> union_of_stages;
  for (const char* stage : {"ingest", "stats", "zipf", "heaps", "sentiment", "keywords", "topics"}) {
    const fs::path dir = scratch(stage);
    const Result r = invoke(fixture_args(stage, dir));
    ASSERT_EQ(r.code, 0) << stage << ": " << r.err;
    const auto names = manifest_outputs(dir);
    union_of_stages.insert(names.begin(), names.end());
    for (const auto& n : names) {
      EXPECT_EQ(slurp(dir / n), slurp(all_dir / n)) << stage << " " << n;
    }
    fs::remove_all(dir);
  }
  EXPECT_EQ(all, union_of_stages);
  for (const auto& n : all) EXPECT_TRUE(fs::exists(all_dir / n)) << n;
  fs::remove_all(all_dir);
}

TEST(Cli, RerunIsByteIdentical) {
  const fs::path out = scratch("rerun");
  ASSERT_EQ(invoke(fixture_args("all", out)).code, 0);
  std::map<std::string, std::string> first;
  for (const auto& entry : fs::directory_iterator(out)) first[entry.path().filename().string()] = slurp(entry.path());
  ASSERT_EQ(invoke(fixture_args("all", out)).code, 0);
  for (const auto& [name, bytes] : first) EXPECT_EQ(slurp(out / name), bytes) << name;
  fs::remove_all(out);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path out = scratch("env");
  std::vector<std::string> args = fixture_args("ingest", out);
  args.erase(args.begin() + 5, args.begin() + 7);
  ::setenv("DIACHRON_OUT", out.string().c_str(), 1);
  const Result r = invoke(args);
  ::unsetenv("DIACHRON_OUT");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(out / "run_manifest.json"));
  fs::remove_all(out);
}

TEST(Cli, IngestSummaryCounts) {
  const fs::path out = scratch("ingest");
  ASSERT_EQ(invoke(fixture_args("ingest", out)).code, 0);
  const report::Json s = report::Json::parse(slurp(out / "ingest_summary.json"));
  EXPECT_EQ(s["lines_read"], 14);
  EXPECT_EQ(s["speaking_lines"], 13);
  EXPECT_EQ(s["dropped_unmatched"], 1);
  EXPECT_EQ(s["dropped_empty"], 1);
  EXPECT_EQ(s["cleaned_lines"], 11);
  fs::remove_all(out);
}

}  // namespace
}  // namespace diachron::cli
