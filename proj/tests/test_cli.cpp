#include <gtest/gtest.h>

#include <algorithm>

#include "cli_support.hpp"
#include "json.hpp"

using tk_test::run_cli;
using Json = nlohmann::json;

namespace {

TEST(Cli, VerifyPasses) {
  auto r = run_cli("verify --d 3 --format json");
  ASSERT_EQ(r.rc, 0) << r.out;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["d"], 3);
  std::size_t ok = 0;
  for (const auto& c : j["checks"]) ok += c["status"] != "fail";
  EXPECT_GE(ok, 6u);
  EXPECT_TRUE(j["certificate"]["issued"].get<bool>());
}

TEST(Cli, ZeroedParameterNamed) {
  auto path = tk_test::write_temp("tk_zero_c1b.json", R"({"C_1b": 0})");
  auto r = run_cli("verify --d 3 --param-file " + path);
  EXPECT_EQ(r.rc, 1);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["certificate"]["vanishing"], Json::array({"C_1b"}));
  auto t = run_cli("certify --d 3 --format text --param-file " + path);
  EXPECT_EQ(t.rc, 1);
  EXPECT_NE(t.out.find("vanishing: C_1b"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli("verify --d 2").rc, 2);
  EXPECT_EQ(run_cli("tables --d 3 --figure 2").rc, 2);
  EXPECT_EQ(run_cli("verify --d 3 --format yaml").rc, 2);
  EXPECT_EQ(run_cli("frobnicate").rc, 2);
  auto bad = tk_test::write_temp("tk_bad_param.json", R"j({"C_(9,9)": 1})j");
  EXPECT_EQ(run_cli("verify --d 3 --param-file " + bad).rc, 2);
  EXPECT_EQ(run_cli("certify --d 3 --n-prime 8").rc, 2);
  EXPECT_EQ(run_cli("verify --d 3", "TWISTKIT_SEED=abc").rc, 2);
  EXPECT_EQ(run_cli("divisor schedule --a0 2 --b1 5 --a 13").rc, 2);
}

TEST(Cli, SeedFallbackAndDeterminism) {
  auto a = run_cli("verify --d 3 --seed 77");
  auto b = run_cli("verify --d 3", "TWISTKIT_SEED=77");
  auto c = run_cli("verify --d 3 --seed 77");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(Json::parse(a.out)["seed"], 77);
}

TEST(Cli, Tables) {
  auto f1 = Json::parse(run_cli("tables --d 3 --figure 1").out);
  bool found = false;
  for (const auto& r : f1["rows"])
    if (r["row"] == "b_(2,1)") found = r["entry"] == "S0^2 S1^0 · T0 T1";
  EXPECT_TRUE(found);
  EXPECT_EQ(Json::parse(run_cli("tables --d 4 --figure 3").out)["rows"].size(), 10u);
  auto f6 = Json::parse(run_cli("tables --d 3 --figure 6").out);
  ASSERT_EQ(f6["rows"].size(), 4u);
  EXPECT_EQ(f6["rows"][0]["entry"], "-C_1a·(1/S0)·g0");
}

TEST(Cli, TextAndJsonCarrySameRows) {
  for (int fig : {1, 3, 4, 5, 6}) {
    std::string a = "tables --d 4 --figure " + std::to_string(fig);
    Json j = Json::parse(run_cli(a).out);
    std::string text = run_cli(a + " --format text").out;
    std::vector<std::string> from_json, from_text;
    for (const auto& r : j["rows"]) from_json.push_back(r["row"].get<std::string>() + ": " + r["entry"].get<std::string>());
    std::size_t pos = text.find('\n') + 1;
    while (pos < text.size()) {
      std::size_t e = text.find('\n', pos);
      std::string line = text.substr(pos, e - pos);
      if (!line.empty() && line[0] != '#') from_text.push_back(line);
      pos = e + 1;
    }
    std::sort(from_json.begin(), from_json.end());
    std::sort(from_text.begin(), from_text.end());
    EXPECT_EQ(from_json, from_text) << fig;
  }
}

TEST(Cli, Divisor) {
  auto n = run_cli("divisor necessity --n 8 --d 3");
  EXPECT_EQ(n.rc, 0);
  EXPECT_EQ(n.out, "infeasible: n+1-d^2 = 0\n");
  auto c = Json::parse(run_cli("divisor conic --n 9 --d 3 --format json").out);
  EXPECT_EQ(c["fiber_dim"], 4);
  EXPECT_EQ(c["omega_twist"], -1);
  EXPECT_EQ(run_cli("divisor schedule --a0 3 --b1 1 --a 13").out, "m=3 r'=2 a1=12 case=odd\n");
  auto f = run_cli("divisor necessity --n 9 --d 3 --deg-x 2 --deg-h 1 --deg-psi 0");
  EXPECT_EQ(f.out, "feasible: degree 1\n");
  EXPECT_NE(run_cli("divisor chern --n 9 --d 3").out.find("3x - 5h"), std::string::npos);
}

TEST(Cli, CertifyExtension) {
  auto r = run_cli("certify --d 3 --n-prime 12");
  ASSERT_EQ(r.rc, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["extension"]["extra_O1_summands"], 3);
  EXPECT_TRUE(j["extension"]["transfers"].get<bool>());
  EXPECT_EQ(j["determinant"], "4*C_1a*C_za^2*C_1b");
}

}  // namespace
