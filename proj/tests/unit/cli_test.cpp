#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "helpers.hpp"

namespace fs = std::filesystem;
using namespace ddt;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(DDT_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("ddt_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string p(const std::string& name) const { return (dir / name).string(); }
  static std::string data(const std::string& name) { return std::string(DDT_DATA_DIR) + "/" + name; }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, SolveFigureOneAuto) {
  Result r = run("solve " + data("fig1.json") + " --decimal 3");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["algorithm"], "tw");
  EXPECT_EQ(j["optimum"], "5");
  EXPECT_EQ(j["optimum_decimal"], "5.000");
  EXPECT_EQ(j["sequence"], json::parse(R"(["blue", "green", "red"])"));
}

TEST_F(Cli, SolveThenVerify) {
  Result r = run("solve " + data("fig1.json") + " --algo oracle --schedule-out " + p("s.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["schedule_path"], p("s.json"));
  Result v = run("verify " + data("fig1.json") + " " + p("s.json"));
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(json::parse(v.out)["delivery_time"], "5");

  json s = json::parse(read_file(p("s.json")));
  s["package_trips"][1][3] = "0";
  write_file(p("bad.json"), s.dump());
  Result bad = run("verify " + data("fig1.json") + " " + p("bad.json"));
  EXPECT_NE(bad.code, 0);
  EXPECT_FALSE(json::parse(bad.out)["violations"].empty());
}

TEST_F(Cli, FixedModeRejectsWrongStart) {
  json inst = json::parse(read_file(data("fig1.json")));
  for (auto& a : inst["agents"]) {
    if (a["id"] == "green") a["start"] = "u3";
  }
  write_file(p("fp.json"), inst.dump());
  ASSERT_EQ(run("solve " + p("fp.json") + " --algo tw --schedule-out " + p("s.json")).code, 0);
  EXPECT_EQ(run("verify " + p("fp.json") + " " + p("s.json")).code, 0);
  EXPECT_NE(run("verify " + p("fp.json") + " " + p("s.json") + " --mode fp").code, 0);
}

TEST_F(Cli, InfeasibleIsAnAnswer) {
  Instance gap = testing_ddt::path_instance({"1", "1"}, {{"a", "1", 0, 0}, {"b", "1", 2, 2}}, 0, 2);
  write_file(p("gap.json"), serialize_instance(gap));
  Result r = run("solve " + p("gap.json"));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["optimum"], "inf");
  EXPECT_TRUE(j["schedule"].is_null());
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("solve " + data("fig1.json") + " --algo fastest").code, 2);
  EXPECT_EQ(run("solve " + data("fig1.json") + " --algo path").code, 2);
  EXPECT_EQ(run("solve " + data("fig1.json") + " --algo order").code, 2);
  EXPECT_EQ(run("solve " + p("missing.json")).code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("gen random-graph --max-n 1").code, 2);
}

TEST_F(Cli, GenIsDeterministic) {
  for (const char* kind : {"random-path", "random-graph", "tree-intersection"}) {
    ASSERT_EQ(run(std::string("gen ") + kind + " --seed 7 -o " + p("a.json")).code, 0);
    ASSERT_EQ(run(std::string("gen ") + kind + " --seed 7 -o " + p("b.json")).code, 0);
    EXPECT_EQ(read_file(p("a.json")), read_file(p("b.json"))) << kind;
  }
  Result t = run("gen tree-intersection --seed 7");
  write_file(p("t.json"), t.out);
  EXPECT_EQ(json::parse(run("isect " + p("t.json")).out)["tree"], true);
}

TEST_F(Cli, GadgetAndSidecar) {
  ASSERT_EQ(run("gen gadget --p 3,2,1 --k 2 -o " + p("g.json")).code, 0);
  EXPECT_EQ(load_instance(p("g.json")).k(), 26);
  json side = json::parse(read_file(p("g.spec.json")));
  EXPECT_EQ(side["budget_d"], "216");
  EXPECT_EQ(side["counts"]["total"], 26);
  Result r = run("solve " + p("g.json"));
  EXPECT_EQ(json::parse(r.out)["algorithm"], "path");
}

TEST_F(Cli, IsectDot) {
  Result r = run("isect " + data("fig1.json") + " --dot");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"green\" -- \"purple\""), std::string::npos);
}

TEST_F(Cli, BenchAgreesOnRandomPaths) {
  fs::create_directories(dir / "corpus");
  for (int s = 1; s <= 20; ++s) {
    write_file(p("corpus/p" + std::to_string(100 + s) + ".json"), serialize_instance(random_path_instance(s)));
  }
  Result r = run("bench " + p("corpus") + " --algos path,oracle,tw --repeat 2");
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "instance,algo,status,optimum,wall_ms,dp_states,agrees");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "yes") << line;
  }
  EXPECT_EQ(rows, 60);
  setenv("DDT_WORKERS", "3", 1);
  Result par = run("bench " + p("corpus") + " --algos path,oracle");
  unsetenv("DDT_WORKERS");
  EXPECT_EQ(par.code, 0);
  EXPECT_EQ(std::count(par.out.begin(), par.out.end(), '\n'), 41);
}

TEST_F(Cli, BenchEmptyCorpusAndErrorPolicy) {
  fs::create_directories(dir / "empty");
  Result e = run("bench " + p("empty") + " --algos path");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "instance,algo,status,optimum,wall_ms,dp_states,agrees\n");

  fs::create_directories(dir / "mixed");
  fs::copy_file(data("fig1.json"), dir / "mixed" / "fig1.json");
  fs::copy_file(data("fig3.json"), dir / "mixed" / "fig3.json");
  Result lax = run("bench " + p("mixed") + " --algos path");
  EXPECT_EQ(lax.code, 0);
  EXPECT_NE(lax.out.find("fig1.json,path,error: "), std::string::npos);
  EXPECT_EQ(run("bench " + p("mixed") + " --algos path --strict").code, 1);
}
