#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "support/bridge.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = roommates::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  roommates::write_file(path, text);
  return path;
}

}  // namespace

TEST(Cli, SolveText) {
  const auto r = run({"solve", "--instance", support::fixture("table7"), "--algo", "sd"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{(a,c,i),(b,f,j),(d,e,k)}\nsw 38\n");
}

TEST(Cli, SolveJsonWithInitial) {
  const std::string init = temp_file("t9init.json", R"([["a","b","r1"],["c","d","r2"],["e","f","r3"]])");
  const auto r = run({"solve", "--instance", support::fixture("table9"), "--algo", "cttcr", "--initial", init,
                      "--format", "json", "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = roommates::detail::parse_json(r.out);
  EXPECT_EQ(j["sw"], 58);
  EXPECT_EQ(j["trace"][0]["kind"], "trade-cycle");
}

TEST(Cli, CheckCsv) {
  const std::string init = temp_file("t9id.json", R"([["a","b","r1"],["c","d","r2"],["e","f","r3"]])");
  const auto r = run({"check", "--instance", support::fixture("table9"), "--assignment", init, "--kind", "4ps",
                      "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "kind,i,j,delta_i,delta_j\n4PS,c,e,7,7\n4PS,c,f,5,2\n4PS,d,e,3,4\n4PS,d,f,7,7\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"solve", "--instance", support::fixture("table11"), "--algo", "swap"}).code, 4);
  EXPECT_EQ(run({"solve", "--instance", "/nonexistent.json", "--algo", "sd"}).code, 2);
  EXPECT_EQ(run({"solve", "--instance", support::fixture("table7"), "--algo", "nope"}).code, 2);
  const std::string big = temp_file("big.json", roommates::format_instance(roommates::zero_instance(14)));
  EXPECT_EQ(run({"oracle", "--instance", big, "--query", "max-sw"}).code, 3);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto bad = temp_file("bad.json", R"({"agent_values": [[0, -1], [2, 0]], "room_values": [[3], [4]]})");
  const auto r = run({"solve", "--instance", bad, "--algo", "sd"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NegativeValue"), std::string::npos);
}

TEST(Cli, OracleMaxSw) {
  const auto r = run({"oracle", "--instance", support::fixture("table10"), "--query", "max-sw"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("max_sw 48"), std::string::npos);
}

TEST(Cli, GenIsDeterministic) {
  const auto a = run({"gen", "--kind", "random", "--agents", "6", "--seed", "5"});
  const auto b = run({"gen", "--kind", "random", "--agents", "6", "--seed", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NO_THROW(roommates::parse_instance(a.out));
}

TEST(Cli, ProbeFindsTable4Lie) {
  const auto r = run({"probe", "--instance", support::fixture("table4"), "--algo", "oracle-2ps", "--agent", "b",
                      "--space", "grid", "--grid-max", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("agent b gains 2 -> 3"), std::string::npos);
}

TEST(Cli, ReportCsv) {
  const auto r = run({"report", "--fixtures", FIXTURE_DIR, "--algos", "sd,dm"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), roommates::kReportCsvHeader);
  EXPECT_NE(r.out.find("table6,dm,"), std::string::npos);
}
