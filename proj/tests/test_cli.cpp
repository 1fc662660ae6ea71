#include "json.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(WGB_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, GeneratorsSingleRow) {
  auto r = run("generators --partition 2");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_TRUE(j.contains("convention"));
  EXPECT_EQ(j["counts"]["H"], 2);
  EXPECT_EQ(j["counts"]["E"], 0);
  EXPECT_EQ(j["counts"]["F"], 0);
  EXPECT_EQ(j["generators"][0]["name"], "D_1^(1)");
  EXPECT_EQ(j["generators"][1]["name"], "D_1^(2)");
  EXPECT_EQ(j["generators"][0]["value"]["order"], "PR");
}

TEST(Cli, GeneratorsTwoRows) {
  auto j = parse(run("generators --partition 1,2"));
  EXPECT_EQ(j["counts"]["H"], 3);
  EXPECT_EQ(j["counts"]["E"], 1);
  EXPECT_EQ(j["counts"]["F"], 1);
  for (const auto& g : j["generators"])
    for (const auto& t : g["value"]["terms"]) EXPECT_TRUE(t["coeff"].is_string());
}

TEST(Cli, BadPartitionIsAValidationError) {
  EXPECT_EQ(run("generators --partition 2,1").code, 2);
  EXPECT_EQ(run("generators --partition x").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verma --partition 1,1 --tableau \"2;0\" --depth 65").code, 2);
  EXPECT_EQ(run("classify --partition 1,2 --tableau \"3;1\"").code, 2);
}

TEST(Cli, Classify) {
  auto j = parse(run("classify --partition 1,2 --tableau \"3;1,2\""));
  EXPECT_EQ(j["verdict"], "finite");
  EXPECT_EQ(j["witness"], "3;1,2");
  auto k = parse(run("classify --partition 1,2 --tableau \"1/2;0,1\""));
  EXPECT_EQ(k["verdict"], "infinite");
  EXPECT_TRUE(k["witness"].is_null());
}

TEST(Cli, VermaWeylDimension) {
  auto r = run("verma --partition 1,1 --tableau \"2;0\" --depth 6");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["l_total"], 2);
  EXPECT_EQ(j["verdict"], "closed");
}

TEST(Cli, Center) {
  auto j = parse(run("center --partition 2 --tableau \"0,1\" --kmax 1"));
  ASSERT_EQ(j["values"].size(), 1u);
  EXPECT_EQ(j["values"][0]["value"], "2");
}

TEST(Cli, Weights) {
  auto j = parse(run("weights --partition 1,2"));
  EXPECT_EQ(j["gamma"], (nlohmann::json{"-1", "0", "1"}));
  EXPECT_EQ(j["jordan_type"], (nlohmann::json{1, 2}));
}

TEST(Cli, TargetedVerify) {
  auto r = run("verify --partition 2,3,4");
  EXPECT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["criteria"].size(), 3u);
}

TEST(Cli, ResourceLimitExitsCleanly) {
  EXPECT_EQ(run("verma --partition 1,1,1 --tableau \"0;0;0\" --depth 8 --max-matrix-dim 5").code, 4);
  EXPECT_EQ(run("generators --partition 3,3 --max-terms 3").code, 4);
}

TEST(Cli, OutputIsDeterministic) {
  const std::string args = "verma --partition 1,2 --tableau \"3;1,2\" --depth 8";
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto t = run("--format text generators --partition 1,2");
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("D_2^(1)"), std::string::npos);
}
