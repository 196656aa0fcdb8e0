#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "trimcx/cli.hpp"
#include "trimcx/detfacet.hpp"

using namespace trimcx;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const char* name) { return ::testing::TempDir() + name; }

const std::string kData = TRIMCX_DATA_DIR;

}  // namespace

TEST(CliBetti, PfaffianFive) {
  auto r = run({"betti", "--preset", "pfaffian", "--size", "5", "--remove", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto doc = betti_from_json(r.out);
  EXPECT_EQ(doc.table, betti_pfaffian_trim(5));
  EXPECT_EQ(doc.field, "gf:32003");
  EXPECT_EQ(doc.vars, 10u);
}

TEST(CliBetti, MinorsTwoByThree) {
  auto r = run({"betti", "--preset", "minors", "--rows", "2", "--cols", "3", "--remove-sets", "1,2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  BettiTable want{{{0, 0}, 1}, {{1, 2}, 2}, {{2, 4}, 1}};
  EXPECT_EQ(betti_from_json(r.out).table, want);
}

TEST(CliBetti, CustomExample) {
  auto r = run({"betti", "--custom", kData + "/golden5.skew", "--remove", "1,2", "--a-ideal", "x,y,z", "--field",
                "QQ"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto doc = betti_from_json(r.out);
  EXPECT_EQ(betti_totals(doc.table), (std::vector<mpz_class>{1, 9, 11, 3}));
  EXPECT_EQ(doc.field, "QQ");
}

TEST(CliBetti, WritesJsonAndCsv) {
  auto js = tmp_path("trimcx_b.json"), csv = tmp_path("trimcx_b.csv");
  auto r = run({"betti", "--preset", "minors", "--rows", "2", "--cols", "4", "--json", js, "--csv", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(slurp(js), r.out);
  auto c = slurp(csv);
  EXPECT_EQ(c.substr(0, c.find('\n')), "i,j,v");
  EXPECT_NE(c.find("1,2,5"), std::string::npos) << c;
  std::remove(js.c_str());
  std::remove(csv.c_str());
}

TEST(CliClosedForm, Pfaffian101) {
  auto r = run({"closed-form", "--size", "101"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto t = betti_from_json(r.out).table;
  for (int k = 2; k <= 100; ++k) EXPECT_EQ(t.at({k, k + 50}), binom(100, k));
  EXPECT_GT(t.at({50, 100}), mpz_class("100000000000000000000"));
}

TEST(CliClosedForm, Minors) {
  auto r = run({"closed-form", "--preset", "minors", "--rows", "3", "--cols", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(betti_from_json(r.out).table, betti_single_minor(3, 5));
  auto r2 = run({"closed-form", "--preset", "minors", "--rows", "2", "--cols", "4", "--remove-sets", "1,2;3,4"});
  ASSERT_EQ(r2.code, kExitOk) << r2.err;
  EXPECT_EQ(betti_from_json(r2.out).table.at({2, 4}), 9);
}

TEST(CliVerify, MinorsTwoByFour) {
  auto r = run({"verify", "--preset", "minors", "--rows", "2", "--cols", "4"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("\"ok\": true"), std::string::npos);
  EXPECT_NE(r.out.find("closed_form"), std::string::npos);
  EXPECT_EQ(r.out.find("\"pass\": false"), std::string::npos);
}

TEST(CliVerify, PfaffianFiveRunsOracle) {
  auto r = run({"verify", "--preset", "pfaffian", "--size", "5"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("koszul_oracle"), std::string::npos);
  EXPECT_NE(r.out.find("colon_in_a_1"), std::string::npos);
  EXPECT_EQ(r.out.find("\"pass\": false"), std::string::npos);
}

TEST(CliVerify, InjectedFaultFails) {
  auto r = run({"verify", "--preset", "pfaffian", "--size", "5", "--inject-fault"});
  EXPECT_EQ(r.code, kExitVerify);
  EXPECT_NE(r.out.find("\"ok\": false"), std::string::npos);
}

TEST(CliVerify, SameSeedSameReport) {
  std::vector<std::string> args{"verify", "--preset", "minors", "--rows", "2", "--cols", "4", "--seed", "77"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliVerify, FailedLiftExits4) {
  // (x) does not contain the d_0 entries, so no lift exists.
  auto r = run({"betti", "--custom", kData + "/golden5.skew", "--remove", "1", "--a-ideal", "x", "--field", "QQ"});
  EXPECT_EQ(r.code, kExitVerify);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliFvector, Cases) {
  auto r = run({"fvector", "--rows", "2", "--cols", "4", "--remove-sets", "1,2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"enumerated\":[4,5,2,0]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"mismatch_shifted\":[false,false,false]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"mismatch_as_printed\":[true"), std::string::npos) << r.out;

  auto z = run({"fvector", "--rows", "2", "--cols", "5"});
  ASSERT_EQ(z.code, kExitOk) << z.err;
  EXPECT_NE(z.out.find("\"mismatch_as_printed\":[false,false,false,false]"), std::string::npos) << z.out;
  EXPECT_NE(z.out.find("\"mismatch_shifted\":[false,false,false,false]"), std::string::npos) << z.out;

  auto s = run({"fvector", "--rows", "2", "--cols", "6", "--remove-sets", "1,2;3,4;5,6"});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_NE(s.out.find("\"mismatch_shifted\":[false,false,false,false,false]"), std::string::npos) << s.out;

  EXPECT_EQ(run({"fvector", "--rows", "1", "--cols", "21"}).code, kExitGuard);
}

TEST(CliDemo, PrintsTable) {
  auto r = run({"demo"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("total: 1 9 11 3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("cone minimal: yes"), std::string::npos);
  EXPECT_NE(r.out.find("y^4"), std::string::npos);
}

TEST(CliExitCodes, UsageAndGuards) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--size", "x"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--size", "6"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--preset", "nope"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--remove", "9"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--field", "gf:8"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--preset", "minors", "--remove-sets", "1,2;2,3"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--preset", "custom"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--custom", "/nonexistent/file"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "--size", "15"}).code, kExitGuard);
  EXPECT_EQ(run({"betti", "--preset", "minors", "--rows", "4", "--cols", "13"}).code, kExitGuard);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(BettiJson, RoundTripIsByteIdentical) {
  BettiDocument doc{betti_pfaffian_trim(101), "gf:32003", 5050};
  auto js = betti_to_json(doc);
  auto back = betti_from_json(js);
  EXPECT_EQ(back.table, doc.table);
  EXPECT_EQ(back.vars, 5050u);
  EXPECT_EQ(betti_to_json(back), js);
  EXPECT_EQ(js.find("{\"betti\":[{\"i\":0,\"j\":0,\"v\":1}"), 0u) << js.substr(0, 60);
  EXPECT_NE(js.find("\"ring\":{\"field\":\"gf:32003\",\"vars\":5050}"), std::string::npos);
}

TEST(BettiJson, AcceptsReorderedKeysAndRejectsJunk) {
  auto d = betti_from_json(R"({"ring":{"vars":3,"field":"QQ"},"betti":[{"v":2,"j":4,"i":1},{"j":0,"i":0,"v":1}]})");
  BettiTable want{{{0, 0}, 1}, {{1, 4}, 2}};
  EXPECT_EQ(d.table, want);
  EXPECT_ANY_THROW(betti_from_json("{"));
  EXPECT_ANY_THROW(betti_from_json(R"({"betti":[{"i":0}],"ring":{"field":"QQ","vars":1}})"));
}
