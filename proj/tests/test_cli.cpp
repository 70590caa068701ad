#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using chs::io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "chs_cli");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = chs::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto dir = fs::temp_directory_path() / "chs_cli_test";
  fs::create_directories(dir);
  auto path = (dir / name).string();
  std::ofstream(path) << body;
  return path;
}

json pairs_of(const std::string& s) { return json::parse(s)["pairs"]; }

}  // namespace

TEST(CliEncode, Examples) {
  auto r = cli({"encode", "--input", temp_file("zero.json", "[0,0,0]"), "--Z", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(pairs_of(r.out), json::parse(R"([["0","0"],["0","0"],["0","0"]])"));
  r = cli({"encode", "--input", temp_file("ones.json", "[1,1,1]"), "--Z", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(pairs_of(r.out), json::parse(R"([["1","1"],["1","0"],["1","0"]])"));
  r = cli({"encode", "--input", temp_file("big.json", "[1,5,1]"), "--Z", "4"});
  EXPECT_EQ(r.code, 3);
  r = cli({"encode", "--input", temp_file("bad.json", "[1,"), "--Z", "4"});
  EXPECT_EQ(r.code, 2);
  r = cli({"encode", "--input", temp_file("bad2.json", R"(["1x"])"), "--Z", "4"});
  EXPECT_EQ(r.code, 2);
}

TEST(CliEncode, Variants) {
  auto in = temp_file("m3.json", "[1,0,1]");
  auto r = cli({"encode", "--input", in, "--Z", "1", "--code", "cyclotomic"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["ell"], 29);
  EXPECT_EQ(j["pairs"][0]["b"]["coeffs"].size(), 28u);
  r = cli({"encode", "--input", in, "--Z", "1", "--code", "sunflower", "--c-prec", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["precision"], 66);
  r = cli({"encode", "--input", in, "--Z", "1", "--code", "weyl", "--precision", "100", "--c-prec", "1"});
  EXPECT_NE(r.code, 0);
}

TEST(CliDecode, CleanCodeword) {
  std::string msg = "[";
  for (int i = 0; i < 24; ++i) msg += std::to_string((i * 7) % 9 - 4) + (i + 1 < 24 ? "," : "]");
  auto enc = cli({"encode", "--input", temp_file("m24.json", msg), "--Z", "4"});
  ASSERT_EQ(enc.code, 0);
  auto cw = temp_file("c24.json", enc.out);
  auto r = cli({"--seed", "5", "decode", "--input", cw, "--Z", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(chs::io::eval_vector_from_json(j["message"]), chs::io::eval_vector_from_json(json::parse(msg)));
  EXPECT_EQ(j["report"]["attempts"], 1);
  EXPECT_EQ(j["report"]["verification_distance"], 0);
  // bare pair arrays are accepted too
  auto bare = temp_file("bare24.json", pairs_of(enc.out).dump());
  EXPECT_EQ(cli({"decode", "--input", bare, "--Z", "4"}).code, 0);
}

TEST(CliDecode, ErrorCodes) {
  auto enc = cli({"encode", "--input", temp_file("m3b.json", "[1,0,1]"), "--Z", "1", "--code", "cyclotomic"});
  auto r = cli({"decode", "--input", temp_file("cyc.json", enc.out), "--Z", "1"});
  EXPECT_EQ(r.code, 5);
  EXPECT_NE(r.err.find("cyclotomic"), std::string::npos);
  auto small = cli({"encode", "--input", temp_file("m5.json", "[1,2,3,0,5]"), "--Z", "5"});
  EXPECT_EQ(cli({"decode", "--input", temp_file("c5.json", small.out), "--Z", "5"}).code, 5);
  EXPECT_EQ(cli({"decode", "--input", temp_file("c5b.json", small.out), "--Z", "1"}).code, 3);
  // Random garbage at n = 20: the Las Vegas loop gives up.
  json pairs = json::array();
  for (int i = 0; i < 20; ++i) pairs.push_back({std::to_string(i % 3 - 1), std::to_string((i * 7919) % 1000 - 500)});
  auto r4 = cli({"decode", "--input", temp_file("junk.json", pairs.dump()), "--Z", "1", "--budget", "2"});
  EXPECT_EQ(r4.code, 4);
}

TEST(CliParams, ClosedFormRows) {
  auto r = cli({"params", "--n", "1000000,10000", "--c", "1"});
  ASSERT_EQ(r.code, 0);
  auto rows = json::parse(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0]["method"], "closed_form");
  EXPECT_TRUE(rows[0]["feasible"].get<bool>());
  EXPECT_EQ(rows[0]["params"]["alpha"], 17946);
  EXPECT_EQ(rows[0]["params"]["beta"], 17946);
  EXPECT_EQ(rows[0]["params"]["epsilon"], 3);
  EXPECT_FALSE(rows[2]["feasible"].get<bool>());
  EXPECT_EQ(rows[2]["n"], 10000);
  for (const auto& row : rows) {
    if (!row.contains("params")) continue;
    auto p = chs::io::params_from_json(row["params"]);
    EXPECT_EQ(chs::decode::validate_params(p).empty(), row["feasible"].get<bool>());
  }
  auto csv = cli({"--format", "csv", "params", "--n", "64"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 3);
}

TEST(CliVerify, Examples) {
  auto r = cli({"verify-variants", "--code", "chs", "--n", "6"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>());
  r = cli({"verify-variants", "--code", "cyclotomic", "--n", "4", "--ell", "67"});
  EXPECT_EQ(r.code, 0) << r.out;
  r = cli({"verify-variants", "--code", "chs", "--n", "8", "--budget", "10"});
  EXPECT_EQ(r.code, 4);
  r = cli({"verify-variants", "--code", "sunflower", "--n", "3", "--c-prec", "0.05"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(json::parse(r.out)["margins"]["violations"].size(), 0u);
}

TEST(CliRip, RowsAndDeterminism) {
  auto a = cli({"--seed", "3", "--format", "csv", "rip", "--n", "16", "--S", "1,2,4", "--trials", "200"});
  auto b = cli({"--seed", "3", "--format", "csv", "rip", "--n", "16", "--S", "1,2,4", "--trials", "200"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header, "source,n,S,trials,delta_hat,seed");
  std::getline(in, row);
  auto f = chs::cli::split(row, ',');
  ASSERT_EQ(f.size(), 6u);
  EXPECT_EQ(f[2], "1");
  EXPECT_LE(std::stod(f[4]), std::ldexp(1.0, -50));
  EXPECT_EQ(cli({"rip", "--n", "8", "--source", "gaussian"}).code, 2);
}

TEST(CliSimulate, ZeroErrorsAndDeterminism) {
  auto r = cli({"--seed", "9", "simulate", "--n", "20", "--trials", "6", "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["aggregate"]["first_symbol_rate"], 1.0);
  auto s1 = cli({"--seed", "9", "--format", "csv", "simulate", "--n", "20", "--errors", "1", "--trials", "6"});
  auto s2 = cli({"--seed", "9", "--format", "csv", "simulate", "--n", "20", "--errors", "1", "--trials", "6"});
  EXPECT_EQ(s1.out, s2.out);
  auto adv = cli({"simulate", "--n", "20", "--placement", "adversarial", "--adversarial", "3:1:0", "--trials", "2"});
  EXPECT_EQ(adv.code, 0) << adv.err;
  EXPECT_EQ(cli({"simulate", "--n", "12"}).code, 5);
  EXPECT_EQ(cli({"simulate", "--n", "20", "--placement", "diagonal"}).code, 2);
}

TEST(CliMisc, ParseErrorsAndOutFile) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"--format", "xml", "params", "--n", "64"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  auto path = (fs::temp_directory_path() / "chs_cli_test" / "params.json").string();
  ASSERT_EQ(cli({"--out", path, "params", "--n", "64"}).code, 0);
  std::ifstream f(path);
  EXPECT_EQ(json::parse(f).size(), 2u);
}
