#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/ordinal.hpp"

namespace permhom {

/// Exit codes shared by the CLI and the C API.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

struct RunConfig {
  std::string command;
  std::vector<std::string> args;
  std::string lambda = "w";
  std::uint64_t budget = 10000;
  std::uint64_t seed = 1;
  std::string out_path;      // empty = caller-provided stream only
  std::string catalog_path;  // input file for family/catalog commands
};

/// Parses a plain key=value config (keys: command, args, lambda, budget,
/// seed, out, catalog; '#' starts a comment). Throws std::invalid_argument on
/// malformed lines.
RunConfig config_from_kv(const std::string& text);

/// Runs one subcommand, writing its JSON-lines trace to `out` (and to
/// cfg.out_path when set). Returns an exit code; never throws.
int run_command(const RunConfig& cfg, std::ostream& out);

}  // namespace permhom
