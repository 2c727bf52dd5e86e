#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "app.hpp"
#include "config.hpp"
#include "runner.hpp"

namespace {

namespace fs = std::filesystem;
using hml::cli::RunConfig;
using hml::cli::UsageError;

int invoke(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "hml");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = hml::cli::app_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return status;
}

TEST(Config, DefaultsByDimension) {
  RunConfig c;
  const RunConfig e1 = hml::cli::effective(c);
  EXPECT_EQ(e1.n, 1024u);
  EXPECT_GT(e1.Lambda, 0.0);
  EXPECT_GE(e1.threads, 1u);
  c.dims = 2;
  const RunConfig e2 = hml::cli::effective(c);
  EXPECT_EQ(e2.alpha.size(), 2u);
  EXPECT_EQ(e2.n, 256u);
  c.dims = 3;
  EXPECT_EQ(hml::cli::effective(c).n, 64u);
}

TEST(Config, SetFieldParsesAndRejects) {
  RunConfig c;
  hml::cli::set_field(c, "alpha", "0.5,1.5");
  hml::cli::set_field(c, "dims", "2");
  hml::cli::set_field(c, "jmin", "-3");
  hml::cli::set_field(c, "jmax", "4");
  hml::cli::set_field(c, "suite", "heat,lp");
  EXPECT_EQ(c.alpha, (std::vector<double>{0.5, 1.5}));
  EXPECT_EQ(c.j_range, (std::pair<int, int>{-3, 4}));
  EXPECT_EQ(c.suites, (std::vector<std::string>{"heat", "lp"}));
  EXPECT_THROW(hml::cli::set_field(c, "colour", "red"), UsageError);
  EXPECT_THROW(hml::cli::set_field(c, "R", "big"), UsageError);
  EXPECT_THROW(hml::cli::set_field(c, "n", "-16"), UsageError);
}

TEST(Config, EffectiveRejectsInconsistentRuns) {
  auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(hml::cli::effective(bad([](RunConfig& c) { c.dims = 4; })), UsageError);
  EXPECT_THROW(hml::cli::effective(bad([](RunConfig& c) { c.alpha = {-0.5}; })), UsageError);
  EXPECT_THROW(hml::cli::effective(bad([](RunConfig& c) { c.alpha = {0.5, 0.5}; })), UsageError);
  EXPECT_THROW(hml::cli::effective(bad([](RunConfig& c) { c.n = 100; })), UsageError);
  EXPECT_THROW(hml::cli::effective(bad([](RunConfig& c) { c.Lambda = 1e4; })), UsageError);
  EXPECT_THROW(hml::cli::effective(bad([](RunConfig& c) { c.j_range = {3, 1}; })), UsageError);
  EXPECT_THROW(hml::cli::effective(bad([](RunConfig& c) { c.p = 1.0; })), UsageError);
  EXPECT_THROW(hml::cli::effective(bad([](RunConfig& c) { c.suites = {"bogus"}; })), UsageError);
}

TEST(Config, HashIsStableAndSensitive) {
  const RunConfig a = hml::cli::effective(RunConfig{});
  const std::string h = hml::cli::config_hash(a);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h.find_first_not_of("0123456789abcdef"), std::string::npos);
  EXPECT_EQ(hml::cli::config_hash(hml::cli::effective(a)), h);
  RunConfig b = a;
  b.seed += 1;
  EXPECT_NE(hml::cli::config_hash(b), h);
  EXPECT_NE(hml::cli::to_key_values(a).find("seed="), std::string::npos);
}

TEST(Config, FileReadingAndComments) {
  const fs::path p = fs::path(testing::TempDir()) / "hml_test.cfg";
  {
    std::ofstream out(p);
    out << "# comment\nR = 12\nseed=5  # trailing\n\n";
  }
  const auto kv = hml::cli::read_config_file(p.string());
  EXPECT_EQ(kv.at("R"), "12");
  EXPECT_EQ(kv.at("seed"), "5");
  {
    std::ofstream out(p);
    out << "no equals sign\n";
  }
  EXPECT_THROW(hml::cli::read_config_file(p.string()), UsageError);
  fs::remove(p);
  EXPECT_THROW(hml::cli::read_config_file(p.string()), UsageError);
}

TEST(Config, MemoryEstimateGrowsWithN) {
  RunConfig c = hml::cli::effective(RunConfig{});
  const double small = hml::cli::estimated_memory_mb(c);
  c.n *= 2;
  c = hml::cli::effective(c);
  EXPECT_GT(hml::cli::estimated_memory_mb(c), small);
}

TEST(App, ExitCodes) {
  std::string out, err;
  EXPECT_EQ(invoke({"--help"}, &out), 0);
  EXPECT_NE(out.find("transform-selftest"), std::string::npos);
  EXPECT_EQ(invoke({"--version"}, &out), 0);
  EXPECT_EQ(invoke({"transform-selftest", "--bogus"}, nullptr, &err), 64);
  EXPECT_EQ(invoke({"transform-selftest", "--alpha", "-1"}, nullptr, &err), 64);
  EXPECT_NE(err.find("alpha"), std::string::npos);
  EXPECT_EQ(invoke({}), 64);
  const std::string dir = (fs::path(testing::TempDir()) / "hml_refuse").string();
  EXPECT_EQ(invoke({"transform-selftest", "--memory-limit-mb", "0.001", "--output", dir}, nullptr, &err), 1);
}

TEST(Runner, ExitStatusIsWorstVerdict) {
  using hml::cli::SuiteOutcome;
  SuiteOutcome p{"a", {}, hml::Verdict::pass, 0.0};
  SuiteOutcome i{"b", {}, hml::Verdict::inconclusive, 0.0};
  SuiteOutcome f{"c", {}, hml::Verdict::fail, 0.0};
  EXPECT_EQ(hml::cli::exit_status({p, p}), hml::cli::kExitPass);
  EXPECT_EQ(hml::cli::exit_status({p, i}), hml::cli::kExitInconclusive);
  EXPECT_EQ(hml::cli::exit_status({i, f}), hml::cli::kExitFail);
}

TEST(Runner, HeatSelftestWritesItsOutputs) {
  const fs::path dir = fs::path(testing::TempDir()) / "hml_heat_run";
  fs::remove_all(dir);
  std::string out;
  const int status = invoke({"heat-selftest", "--output", dir.string()}, &out);
  EXPECT_EQ(status, 0) << out;
  EXPECT_TRUE(fs::exists(dir / "summary.txt"));
  ASSERT_TRUE(fs::exists(dir / "report-heat.json"));
  EXPECT_TRUE(fs::exists(dir / "data-heat.csv"));
  std::ifstream in(dir / "report-heat.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_FALSE(j.empty());
  fs::remove_all(dir);
}

}  // namespace
