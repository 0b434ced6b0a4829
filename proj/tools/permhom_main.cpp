// permhom: reproducible runs of the construction commands, traced as JSON
// lines. All work happens in the shared library behind the C API.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permhom.h"

int main(int argc, char** argv) {
  CLI::App app{"ordinal permutation-group constructions with replayable traces"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string lambda = "w";
  std::uint64_t budget = 10000, seed = 1;
  std::string out_path, catalog_path, config_path;
  app.add_option("--lambda", lambda, "ambient ordinal (e.g. w, w*2, w^2)");
  app.add_option("--budget", budget, "search/step budget");
  app.add_option("--seed", seed, "seed for randomized property checks");
  app.add_option("--out", out_path, "trace output path (JSON lines)");
  app.add_option("--catalog", catalog_path, "catalog/family input file");
  app.add_option("--config", config_path, "key=value config file (flags override it)");

  static const std::vector<std::string> kCommands{
      "ordinal",     "family-check",      "orders-build", "partition",
      "homog-map",   "witness-escape",    "extend-fuzz",  "engine-run",
      "keylemma",    "intransitive-cert", "generic-run",  "verify-log"};
  std::string command;
  std::vector<std::vector<std::string>> sub_args(kCommands.size());
  for (std::size_t i = 0; i < kCommands.size(); ++i) {
    auto* sub = app.add_subcommand(kCommands[i]);
    sub->add_option("args", sub_args[i], "positional arguments");
    sub->callback([&, i] { command = kCommands[i]; });
  }

  CLI11_PARSE(app, argc, argv);

  std::ostringstream cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::fprintf(stderr, "error: cannot open config %s\n", config_path.c_str());
      return 2;
    }
    cfg << in.rdbuf() << "\n";
  }
  // flags given on the command line override the config file
  if (!command.empty()) {
    cfg << "command=" << command << "\n";
    std::string joined;
    for (std::size_t i = 0; i < kCommands.size(); ++i)
      for (const auto& a : sub_args[i]) joined += (joined.empty() ? "" : " ") + a;
    cfg << "args=" << joined << "\n";
  }
  if (app.count("--lambda")) cfg << "lambda=" << lambda << "\n";
  if (app.count("--budget")) cfg << "budget=" << budget << "\n";
  if (app.count("--seed")) cfg << "seed=" << seed << "\n";
  if (app.count("--catalog")) cfg << "catalog=" << catalog_path << "\n";

  std::string trace_path = out_path;
  bool temp_trace = false;
  if (trace_path.empty()) {
    trace_path = "/tmp/permhom-trace-" + std::to_string(::getpid()) + ".jsonl";
    temp_trace = true;
  }
  int code = ph_command_run(nullptr, cfg.str().c_str(), trace_path.c_str());
  if (code < 0) {
    std::fprintf(stderr, "error: %s\n", ph_last_error());
    return 2;
  }
  std::ifstream trace(trace_path);
  std::string line;
  while (std::getline(trace, line)) std::printf("%s\n", line.c_str());
  if (temp_trace) std::remove(trace_path.c_str());
  return code;
}
