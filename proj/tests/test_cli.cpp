#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/commands.hpp"
#include "core/nice_family.hpp"
#include "core/trace.hpp"

using namespace permhom;

namespace {

std::pair<int, std::string> run(const std::string& command,
                                const std::vector<std::string>& args,
                                const std::string& catalog = "") {
  RunConfig cfg;
  cfg.command = command;
  cfg.args = args;
  cfg.catalog_path = catalog;
  std::ostringstream out;
  int code = run_command(cfg, out);
  return {code, out.str()};
}

}  // namespace

TEST_CASE("config_from_kv") {
  RunConfig cfg = config_from_kv(
      "# a comment\ncommand=ordinal\nargs=add w^2+w w\nbudget=55\nlambda=w*2\nout=/tmp/t.jsonl\n");
  CHECK(cfg.command == "ordinal");
  CHECK(cfg.args == std::vector<std::string>{"add", "w^2+w", "w"});
  CHECK(cfg.budget == 55);
  CHECK(cfg.lambda == "w*2");
  CHECK(cfg.out_path == "/tmp/t.jsonl");
  CHECK_THROWS_AS(config_from_kv("nonsense line"), std::invalid_argument);
  CHECK_THROWS_AS(config_from_kv("mystery=1"), std::invalid_argument);
}

TEST_CASE("ordinal command") {
  auto [code, out] = run("ordinal", {"add", "w^2+w", "w"});
  CHECK(code == kExitOk);
  CHECK(out.find("\"w^2+w*2\"") != std::string::npos);
  CHECK(run("ordinal", {"cmp", "w", "w^2"}).second.find("\"lt\"") != std::string::npos);
  CHECK(run("ordinal", {"sub", "w^2", "w"}).first == kExitUsage);  // w < w^2, undefined
  CHECK(run("ordinal", {"frobnicate", "w"}).first == kExitUsage);
  CHECK(run("nonsense", {}).first == kExitUsage);
  CHECK(run("ordinal", {"add"}).first == kExitUsage);  // missing argument
}

TEST_CASE("family-check command round-trips a generated family") {
  NiceFamily fam = clopen_family(2, 2);
  std::string path = "/tmp/permhom-test-family.json";
  {
    std::ofstream f(path);
    f << fam.to_json();
  }
  auto [code, out] = run("family-check", {path});
  CHECK(code == kExitOk);
  CHECK(out.find("\"ok\":true") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run("family-check", {"/tmp/does-not-exist.json"}).first == kExitUsage);
}

TEST_CASE("construction commands succeed and verify") {
  CHECK(run("orders-build", {"2", "3", "2", "6"}).first == kExitOk);
  CHECK(run("partition", {"2", "3", "2", "0"}).first == kExitOk);
  CHECK(run("homog-map", {"evens", "odds", "10"}).first == kExitOk);
  CHECK(run("witness-escape", {"0"}).first == kExitOk);
  auto [fc, fo] = run("extend-fuzz", {"4", "2"});
  CHECK(fc == kExitOk);
  CHECK(fo.find("\"counterexamples\":0") != std::string::npos);
  CHECK(run("intransitive-cert", {}).first == kExitOk);
}

TEST_CASE("engine-run trace replays through verify-log") {
  std::string path = "/tmp/permhom-test-run.jsonl";
  RunConfig cfg;
  cfg.command = "engine-run";
  cfg.args = {"8"};
  cfg.out_path = path;
  std::ostringstream out;
  REQUIRE(run_command(cfg, out) == kExitOk);
  auto [code, vout] = run("verify-log", {path});
  CHECK(code == kExitOk);
  CHECK(vout.find("\"ok\":true") != std::string::npos);

  // tampering with a witness flips the verdict
  std::ifstream in(path);
  auto records = read_records(in);
  in.close();
  bool tampered = false;
  for (auto& rec : records)
    if (rec["type"] == "witness" && !tampered) {
      rec["alpha_star"] = rec["alpha"];
      tampered = true;
    }
  REQUIRE(tampered);
  {
    std::ofstream f(path);
    for (const auto& rec : records) write_record(f, rec);
  }
  CHECK(run("verify-log", {path}).first == kExitPropertyFailure);
  std::remove(path.c_str());
}

TEST_CASE("identical config gives byte-identical traces") {
  for (const auto& [cmd, args] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"engine-run", {"10"}},
           {"keylemma", {"2", "3"}},
           {"generic-run", {"1", "4"}},
           {"orders-build", {"2", "3", "2", "8"}}}) {
    auto a = run(cmd, args);
    auto b = run(cmd, args);
    CHECK(a.first == kExitOk);
    CHECK(a.second == b.second);
  }
}

TEST_CASE("budget exhaustion reports exit 3") {
  RunConfig cfg;
  cfg.command = "intransitive-cert";
  cfg.budget = 1;  // cannot even scan past alpha = 0
  std::ostringstream out;
  CHECK(run_command(cfg, out) == kExitBudget);
}
