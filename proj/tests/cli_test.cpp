#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct run_result {
  int status = -1;
  std::string out;
};

run_result run(const std::string& args, const char* binary = GAPGRAPH_CLI) {
  const std::string cmd = std::string("\"") + binary + "\" " + args + " 2>/dev/null";
  run_result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (const auto got = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(GAPGRAPH_FIXTURES) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gapgraph_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, BuildReportsCounts) {
  const auto r = run("build " + fixture("blocks.world") + " " + path("blocks.idx"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("obstacles 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("relevant_edges 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("regions 1\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("blocks.idx")));

  const auto e = run("build " + fixture("empty.world") + " " + path("empty.idx"));
  ASSERT_EQ(e.status, 0);
  EXPECT_NE(e.out.find("obstacles 0\n"), std::string::npos);
}

TEST_F(Cli, RetiringSweepMissesTheTouchingPair) {
  const auto ex = run("build " + fixture("touching.world") + " " + path("a.idx"));
  const auto pa = run("build --sweep retiring " + fixture("touching.world") + " " + path("b.idx"));
  ASSERT_EQ(ex.status, 0);
  ASSERT_EQ(pa.status, 0);
  EXPECT_NE(ex.out, pa.out);
}

TEST_F(Cli, QueryMatchesExpected) {
  ASSERT_EQ(run("build " + fixture("room.world") + " " + path("room.idx")).status, 0);
  const std::string expected = slurp(fixture("room.expected"));
  const auto one = run("query " + path("room.idx") + " " + fixture("room.queries"));
  ASSERT_EQ(one.status, 0);
  EXPECT_EQ(one.out, expected);
  const auto many = run("query --jobs 4 " + path("room.idx") + " " + fixture("room.queries"));
  EXPECT_EQ(many.out, expected);
}

TEST_F(Cli, GenIsDeterministic) {
  const auto a = run("gen --kind maze -n 50 --seed 9");
  const auto b = run("gen --kind maze -n 50 --seed 9");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  ASSERT_EQ(run("gen --kind cluster -n 40 --seed 2 -o " + path("w.world")).status, 0);
  EXPECT_EQ(slurp(path("w.world")), run("gen --kind cluster -n 40 --seed 2").out);
  EXPECT_NE(run("gen --kind spiral").status, 0);
}

TEST_F(Cli, VerifyAgreesAndCatchesFault) {
  ASSERT_EQ(run("gen --kind uniform -n 40 --seed 3 -o " + path("w.world")).status, 0);
  const auto ok = run("verify " + path("w.world") + " --random 100 --seed 5");
  ASSERT_EQ(ok.status, 0);
  EXPECT_NE(ok.out.find("100/100 agree"), std::string::npos);

  const auto bad = run("verify " + fixture("room.world") + " " + fixture("room.queries") + " --repro " + path("r"),
                       GAPGRAPH_FAULTY);
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.out.find("minimised repro"), std::string::npos);
  const std::string q = slurp(path("r.queries"));
  EXPECT_EQ(q.rfind("Q ", 0), 0u);
  // the fault needs no obstacles to show, so shrinking removes them all
  EXPECT_EQ(slurp(path("r.world")).find("\nR "), std::string::npos);
}

TEST_F(Cli, RenderWritesSvg) {
  ASSERT_EQ(run("build " + fixture("empty.world") + " " + path("e.idx")).status, 0);
  ASSERT_EQ(run("render " + path("e.idx") + " " + path("e.svg")).status, 0);
  const std::string empty = slurp(path("e.svg"));
  EXPECT_NE(empty.find("class=\"frame\""), std::string::npos);
  EXPECT_EQ(empty.find("data-id="), std::string::npos);

  ASSERT_EQ(run("build " + fixture("room.world") + " " + path("r.idx")).status, 0);
  ASSERT_EQ(run("render --show-pathways " + path("r.idx") + " " + path("r.svg")).status, 0);
  const std::string room = slurp(path("r.svg"));
  EXPECT_NE(room.find("data-id=\"3\""), std::string::npos);
  EXPECT_NE(room.find("data-region="), std::string::npos);
  EXPECT_NE(room.find("class=\"pathways\""), std::string::npos);
  ASSERT_EQ(run("render --show-pathways " + path("r.idx") + " " + path("r2.svg")).status, 0);
  EXPECT_EQ(slurp(path("r2.svg")), room);
}

TEST_F(Cli, CirclesOnSquare) {
  const auto r = run("circles " + fixture("square.centers") + " --radius 2 --svg " + path("c.svg"));
  ASSERT_EQ(r.status, 0);
  // cocircular corners: the diagonals survive the open-disc test
  EXPECT_EQ(r.out, "0 1 100\n0 2 200\n0 3 100\n1 2 100\n1 3 200\n2 3 100\n");
  EXPECT_NE(slurp(path("c.svg")).find("<circle"), std::string::npos);
  EXPECT_EQ(run("circles --random 30 --seed 1").out, run("circles --random 30 --seed 1").out);
}

TEST_F(Cli, InputErrorsExitOne) {
  {
    std::ofstream bad(path("bad.world"));
    bad << "R 0 0 1 1\nR 0 0 x 1\n";
  }
  EXPECT_EQ(run("build " + path("bad.world") + " " + path("x.idx")).status, 1);
  EXPECT_EQ(run("build " + path("missing.world") + " " + path("x.idx")).status, 1);
  {
    std::ofstream bad(path("bad.idx"));
    bad << "gapgraph-index 7\n";
  }
  EXPECT_EQ(run("query " + path("bad.idx") + " " + fixture("room.queries")).status, 1);
}

}  // namespace
