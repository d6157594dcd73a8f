#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "waring/parallel.hpp"
#include "waring/report.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "waring");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = waring::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json failure(const Outcome& o) {
  auto j = nlohmann::json::parse(o.err);
  REQUIRE(j.at("status") == "failure");
  REQUIRE(j.at("exit_code") == o.code);
  return j;
}

}  // namespace

TEST_CASE("identity command") {
  const auto json = invoke({"identity", "--t", "4", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(json.out == "{\"t\":4,\"sum\":\"2401/16\",\"expected\":\"2401/16\",\"pass\":true}\n");
  const auto csv = invoke({"identity", "--t", "4"});
  CHECK(csv.out == "t,sum,expected,pass\n4,2401/16,2401/16,true\n");
  const auto bad = invoke({"identity", "--t", "21"});
  CHECK(bad.code == waring::cli::kExitUsage);
  CHECK(failure(bad).at("message") == "--t must be in [1, 20]");
}

TEST_CASE("count command") {
  const auto r = invoke({"count", "--N", "1729", "--n", "3", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "N,n,k,pattern,count\n1729,3,2,unrestricted,4\n");
  const auto p = invoke({"count", "--N", "1729", "--n", "3", "--k", "2", "--pattern", "00"});
  CHECK(p.out == "N,n,k,pattern,count\n1729,3,2,00,2\n");
  const auto bad = invoke({"count", "--N", "1729", "--n", "3", "--k", "2", "--pattern", "0"});
  CHECK(bad.code == waring::cli::kExitUsage);
  const auto rec = failure(bad);
  CHECK(rec.at("operation") == "count");
  CHECK(rec.at("inputs").at("--pattern") == "0");
  CHECK(rec.at("inputs").at("--N") == "1729");
}

TEST_CASE("ratio command") {
  const auto r = invoke({"ratio", "--n", "3", "--k", "8", "--from", "50000", "--to", "50010"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "N,I,J,ratio");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 11);

  const auto json = invoke({"ratio", "--n", "3", "--k", "8", "--from", "50000", "--to", "50010", "--format", "json"});
  const auto rep = waring::parse_json_report(json.out);
  CHECK(rep.kind == "theorem_ratio");
  CHECK(rep.rows.size() == 11);
  CHECK(waring::emit_report(rep, waring::ReportFormat::Json) == json.out);

  const auto empty = invoke({"ratio", "--n", "3", "--k", "8", "--from", "10", "--to", "9"});
  CHECK(empty.code == waring::cli::kExitUsage);
  const auto huge = invoke({"ratio", "--n", "3", "--k", "8", "--from", "1", "--to", "100000000"});
  CHECK(huge.code == waring::cli::kExitResource);
  CHECK(failure(huge).at("kind") == "resource");
}

TEST_CASE("moments command") {
  const auto pure = invoke({"moments", "--P", "8", "--n", "3", "--s", "2"});
  CHECK(pure.code == 0);
  CHECK(pure.out.find("\n8,3,0,4,120,") != std::string::npos);
  const auto mixed = invoke({"moments", "--P", "8", "--n", "3", "--l", "1", "--m", "1", "--format", "json"});
  CHECK(mixed.code == 0);
  const auto rep = waring::parse_json_report(mixed.out);
  CHECK(std::get<waring::i128>(rep.rows[0][4]) == 60);
  CHECK(std::get<waring::i128>(rep.rows[1][4]) == 120);
  CHECK(std::get<bool>(rep.metadata[0].value));
}

TEST_CASE("corr and weylscan commands") {
  const auto corr = invoke({"corr", "--X", "8", "--H", "2"});
  CHECK(corr.code == 0);
  CHECK(corr.out.rfind("h,S,V,kappa12_h1,alpha_bound\n", 0) == 0);
  CHECK(corr.out.find("\n2,-4,-2,") != std::string::npos);

  const auto scan = invoke({"weylscan", "--P", "64", "--n", "3", "--q-max", "5", "--format", "json"});
  CHECK(scan.code == 0);
  const auto rep = waring::parse_json_report(scan.out);
  CHECK(rep.rows.size() == 1 + 1 + 2 + 2 + 4);
  CHECK(rep.columns.front().name == "alpha_num");
  const auto bad = invoke({"weylscan", "--P", "64", "--n", "3", "--q-max", "65"});
  CHECK(bad.code == waring::cli::kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == waring::cli::kExitUsage);
  CHECK(invoke({"nonsense"}).code == waring::cli::kExitUsage);
  CHECK(invoke({"count", "--n", "3"}).code == waring::cli::kExitUsage);
  CHECK(invoke({"verify", "--level", "medium"}).code == waring::cli::kExitUsage);
  CHECK(invoke({"verify", "--threads", "0"}).code == waring::cli::kExitUsage);
  CHECK(invoke({"identity", "--t", "3", "--format", "xml"}).code == waring::cli::kExitUsage);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("output files") {
  const auto dir = std::filesystem::temp_directory_path() / "waring_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "count.csv").string();
  const auto r = invoke({"count", "--N", "4", "--n", "3", "--k", "4", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "N,n,k,pattern,count\n4,3,4,unrestricted,1\n");

  const auto bad = invoke({"count", "--N", "4", "--n", "3", "--k", "4", "--out", (dir / "no/such/file").string()});
  CHECK(bad.code != 0);
  CHECK(failure(bad).at("message").get<std::string>().find("No such file") != std::string::npos);

  const auto cache = (dir / "cache").string();
  const auto first = invoke({"count", "--N", "1729", "--n", "3", "--k", "2", "--cache", cache});
  const auto second = invoke({"count", "--N", "1729", "--n", "3", "--k", "2", "--cache", cache});
  CHECK(first.out == second.out);
  CHECK(std::filesystem::exists(dir / "cache" / "base_P12_n3_A.wdc"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify quick is deterministic") {
  const auto a = invoke({"verify", "--level", "quick", "--seed", "3", "--threads", "1"});
  const auto b = invoke({"verify", "--level", "quick", "--seed", "3", "--threads", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = invoke({"verify", "--seed", "4"});
  CHECK(c.code == 0);
  CHECK(c.out.find("identity_sum") != std::string::npos);
}

TEST_CASE("thread count from the environment") {
  ::setenv("WARING_THREADS", "3", 1);
  CHECK(waring::default_thread_count() == 3);
  ::setenv("WARING_THREADS", "zero", 1);
  CHECK(waring::default_thread_count() >= 1);
  ::unsetenv("WARING_THREADS");
}
