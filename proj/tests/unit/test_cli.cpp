#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "egp/cli/cli.hpp"
#include "egp/cli/goldens.hpp"

using namespace egp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("gperm subcommand") {
  const Result r = run_cli({"gperm", "--name", "K4", "--max-prime", "41", "--format", "csv", "--golden", "P3_1"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 13);
  CHECK(r.out.rfind("prime,residue,sign_class\n3,0,flippable\n5,1,fixed\n", 0) == 0);
  CHECK(r.err.find("golden P3_1: match") != std::string::npos);
  const Result bad = run_cli({"gperm", "--name", "K4", "--golden", "P4_1"});
  CHECK(bad.code == 1);
}

TEST_CASE("worker count does not change output") {
  const Result one = run_cli({"gperm", "--name", "W4", "--max-prime", "29", "--workers", "1"});
  const Result four = run_cli({"gperm", "--name", "W4", "--max-prime", "29", "--workers", "4"});
  CHECK(one.out == four.out);
}

TEST_CASE("formula subcommands") {
  const auto path = temp_file("egp_p5_1.fml", "PRIME 2n+1; FACT(2*n)^5 * SUM{x0, x1}: C(n,x0)^3 * C(n,x1)^2 * C(n,x0+x1) * SGN(x1)\n");
  const Result eval = run_cli({"formula", "eval", "--file", path.string(), "--prime", "5"});
  CHECK(eval.code == 0);
  CHECK(eval.out == "1\n");
  CHECK(run_cli({"formula", "eval", "--family", "wheel(4)", "--prime", "5"}).out == "3\n");
  CHECK(run_cli({"formula", "show", "--name", "P1_1"}).out == "PRIME 2n+1; FACT(2*n)\n");
  const Result seq = run_cli({"formula", "sequence", "--name", "P3_1", "--max-prime", "7"});
  CHECK(seq.out == "prime,residue,sign_class\n3,0,flippable\n5,1,fixed\n7,0,flippable\n");
  const Result parse = run_cli({"formula", "eval", "--text", "PRIME 2n+1; FACT(", "--prime", "5"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("error:") == 0);
}

TEST_CASE("generate subcommand") {
  const Result r = run_cli({"generate", "--name", "K4", "--check-max-prime", "13"});
  CHECK(r.code == 0);
  CHECK(r.out.find("engine check up to 13: match") != std::string::npos);
}

TEST_CASE("graph files and orientation") {
  const auto path = temp_file("egp_k3.graph", "V 3\nE 1 0\nE 2 1\nE 0 2\n");
  const Result file = run_cli({"gperm", "--graph", path.string(), "--max-prime", "13"});
  const Result canon = run_cli({"gperm", "--graph", path.string(), "--orientation", "canonical", "--max-prime", "13"});
  CHECK(file.code == 0);
  CHECK(canon.code == 0);
  CHECK(canon.out == run_cli({"gperm", "--name", "K3", "--max-prime", "13"}).out);
}

TEST_CASE("invariant subcommands") {
  CHECK(run_cli({"hepp", "--name", "K3_4"}).out == "13968\n");
  CHECK(run_cli({"c2", "--name", "K3", "--max-prime", "3"}).out == "prime,count,c2\n2,4,1\n3,9,1\n");
  const Result pc = run_cli({"pointcount", "--name", "K4", "--polynomial"});
  CHECK(pc.out == "(x1+x2+x3)^2(x1-x4-x5)^2(x2+x4-x6)^2\n");
  const Result rel = run_cli({"pointcount", "--name", "K4", "--prime", "5"});
  CHECK(rel.code == 0);
  CHECK(rel.out.find("count 7361") != std::string::npos);
  const Result witness = run_cli({"verify", "--theorem", "witness", "--name", "W3"});
  CHECK(witness.out.rfind("involution", 0) == 0);
  const Result dual = run_cli({"verify", "--theorem", "dual", "--name", "K4", "--max-prime", "7", "--format", "json"});
  CHECK(dual.code == 0);
  CHECK(dual.out.find("\"schema\"") != std::string::npos);
}

TEST_CASE("modform subcommand") {
  CHECK(run_cli({"modform", "--name", "K4", "--eta", "-eta(4z)^6"}).code == 0);
  CHECK(run_cli({"modform", "--formula", "P4_1", "--eta", "eta(2z)^4*eta(4z)^4"}).code == 0);
  CHECK(run_cli({"modform", "--name", "K4", "--eta", "eta(2z)^12"}).code == 1);
  const auto csv = temp_file("egp_coeffs.csv", "p,a_p\n3,0\n5,6\n7,0\n");
  CHECK(run_cli({"modform", "--name", "K4", "--coefficients", csv.string(), "--max-prime", "7"}).code == 0);
}

TEST_CASE("goldens subcommand and checksums") {
  const Result all = run_cli({"goldens"});
  CHECK(all.code == 0);
  CHECK(all.out.find("P7_7 vs P7_4: match") != std::string::npos);
  CHECK(run_cli({"goldens", "--rows", "P8_1"}).code == 2);
  std::string text(bundled_golden_text());
  const auto pos = text.find("P3_1,,0,1");
  REQUIRE(pos != std::string::npos);
  text[pos + 8] = '2';
  const auto corrupted = temp_file("egp_bad_goldens.csv", text);
  const Result bad = run_cli({"goldens", "--file", corrupted.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("checksum") != std::string::npos);
  CHECK_THROWS_AS(parse_golden_table(text), ChecksumError);
}

TEST_CASE("golden table contents") {
  const GoldenTable& t = bundled_golden_table();
  CHECK(t.primes.size() == 12);
  CHECK(t.rows.size() == 48);
  const GoldenRow* p74 = t.find("P7_4");
  REQUIRE(p74);
  CHECK(annotated_partner(*p74) == std::optional<std::string>("P7_7"));
  CHECK(t.sequence(*p74).entries[1].sign_class == SignClass::fixed);
  CHECK(golden_checksum("") == "cbf29ce484222325");
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"gperm", "--engine", "magic", "--name", "K4"}).code == 2);
  CHECK(run_cli({"gperm", "--name", "no-such-graph"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}
