#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cli.hpp"

using namespace tbhfk;
using nlohmann::json;

namespace {

cli::RunRequest pq(int p, int q) {
  cli::RunRequest r;
  r.p = p;
  r.q = q;
  return r;
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("tbhfk_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

int shell(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Cli, JsonSchema) {
  const auto out = cli::run(pq(3, 1));
  ASSERT_EQ(out.code, cli::kOk) << out.error;
  const auto j = json::parse(out.output);
  for (const char* key : {"params", "diagnostics", "sectors", "alexander_polynomial"}) EXPECT_TRUE(j.contains(key));
  EXPECT_EQ(j.size(), 4U);
  EXPECT_EQ(j["diagnostics"]["generators"], 18);
  EXPECT_EQ(j["diagnostics"]["sectors"], 3);
  const auto& s0 = j["sectors"][0];
  EXPECT_EQ(s0["label"], 0);
  EXPECT_EQ(s0["d"], "-1/2");
  EXPECT_EQ(s0["tau"], 1);
  ASSERT_EQ(s0["hfk"].size(), 4U);
  EXPECT_EQ(s0["hfk"][0]["A"], -2);
  EXPECT_EQ(s0["hfk"][0]["M"], "-7/2");
  EXPECT_EQ(s0["hfk"][1]["rank"], 2);
  EXPECT_EQ(s0["hfk_knot"].size(), 3U);
  EXPECT_EQ(j["sectors"][1]["d"], "1/6");
  for (const auto& s : j["sectors"]) {
    for (const char* key : {"label", "d", "tau", "hfk", "hfk_knot"}) EXPECT_TRUE(s.contains(key));
    for (const auto& e : s["hfk"]) EXPECT_TRUE(e["M"].is_string());
  }
}

TEST(Cli, CrossingsMatchPQ) {
  cli::RunRequest c;
  c.crossings = {3};
  EXPECT_EQ(cli::run(c).output, cli::run(pq(3, 1)).output);
  cli::RunRequest c2;
  c2.crossings = {2, 2};
  EXPECT_EQ(cli::run(c2).output, cli::run(pq(3, -1)).output);
}

TEST(Cli, CacheIsByteIdentical) {
  const auto dir = fresh_dir("cache");
  auto req = pq(3, 1);
  req.cache_dir = dir.string();
  const auto first = cli::run(req);
  const auto second = cli::run(req);
  EXPECT_FALSE(first.from_cache);
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(first.output, second.output);
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    ++files;
    EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos);
  }
  EXPECT_EQ(files, 1);
  req.format = "tsv";
  EXPECT_FALSE(cli::run(req).from_cache);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CacheFromEnvironment) {
  const auto dir = fresh_dir("env");
  ::setenv("TBHFK_CACHE_DIR", dir.c_str(), 1);
  const auto a = cli::run(pq(5, 1));
  const auto b = cli::run(pq(5, 1));
  ::unsetenv("TBHFK_CACHE_DIR");
  EXPECT_TRUE(b.from_cache);
  EXPECT_EQ(a.output, b.output);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CacheKeyDependsOnInputs) {
  EXPECT_NE(cli::cache_key("a"), cli::cache_key("b"));
  EXPECT_EQ(cli::fnv1a(""), 14695981039346656037ULL);
  EXPECT_EQ(cli::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Cli, Batch) {
  cli::RunRequest b;
  b.batch = 3;
  const auto three = cli::run(b);
  ASSERT_EQ(three.code, cli::kOk);
  EXPECT_EQ(std::count(three.output.begin(), three.output.end(), '\n'), 2);
  b.batch = 7;
  const auto seven = cli::run(b);
  EXPECT_EQ(std::count(seven.output.begin(), seven.output.end(), '\n'), 6);
  EXPECT_EQ(seven.output.find("7\t5\t"), std::string::npos);
  EXPECT_NE(seven.output.find("7\t3\t"), std::string::npos);
}

TEST(Cli, InvalidInputs) {
  EXPECT_EQ(cli::run(pq(4, 1)).code, cli::kInvalidInput);
  EXPECT_EQ(cli::run(pq(9, 3)).code, cli::kInvalidInput);
  EXPECT_EQ(cli::run(pq(1, 0)).code, cli::kInvalidInput);
  cli::RunRequest none;
  EXPECT_EQ(cli::run(none).code, cli::kInvalidInput);
  auto both = pq(3, 1);
  both.crossings = {3};
  EXPECT_EQ(cli::run(both).code, cli::kInvalidInput);
  auto flavor = pq(3, 1);
  flavor.flavor = "plus";
  EXPECT_EQ(cli::run(flavor).code, cli::kInvalidInput);
  cli::RunRequest zero;
  zero.crossings = {1, 1};
  EXPECT_EQ(cli::run(zero).code, cli::kInvalidInput);
}

TEST(Cli, FormatsAndMinus) {
  auto t = pq(3, 1);
  t.format = "tsv";
  const auto tsv = cli::run(t).output;
  EXPECT_EQ(tsv.substr(0, 2), "p\t");
  EXPECT_NE(tsv.find("3\t1\t0\t-1/2\t1\t1,2,2,1\t1,1,1"), std::string::npos);
  t.format = "text";
  EXPECT_NE(cli::run(t).output.find("tau = 1"), std::string::npos);
  auto m = pq(3, 1);
  m.flavor = "minus";
  const auto j = json::parse(cli::run(m).output);
  EXPECT_EQ(j["sectors"][0]["minus"]["truncation"], 6);
  EXPECT_TRUE(j["sectors"][0]["minus"]["stable"].get<bool>());
}

TEST(Cli, ProcessExitCodes) {
  const std::string exe = TBHFK_CLI_PATH;
  const auto dir = fresh_dir("proc");
  std::filesystem::create_directories(dir);
  const auto out = (dir / "k.json").string();
  EXPECT_EQ(shell(exe + " --p 3 --q 1 --out " + out), 0);
  std::ifstream f(out);
  const auto j = json::parse(f);
  EXPECT_EQ(j["params"]["p"], 3);
  EXPECT_EQ(shell(exe + " --p 4 --q 1 2>/dev/null"), 2);
  EXPECT_EQ(shell(exe + " --bogus 2>/dev/null >/dev/null"), 2);
  EXPECT_EQ(shell(exe + " --crossings 2,2 --format tsv > /dev/null"), 0);
  std::filesystem::remove_all(dir);
}
