#pragma once

#include "bergman/report.hpp"
#include "bergman/verify.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bergman::cli {

enum class Command { Weights, Coeffs, Verify, Beurling, Census, Suite };

struct CliConfig {
  Command command = Command::Suite;
  int N = 1;
  Alpha alpha = Alpha::parse("0");
  Index dim = 16;
  std::optional<std::vector<int>> residues;  // unset: every residue
  int depth = 1;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  ScalarMode mode = ScalarMode::Float64;
  ReportFormat format = ReportFormat::Json;
  std::string out = "-";
  std::string check;              // verify
  std::string grid = "default";   // suite
  int trials = 100;               // census
  std::optional<CoeffPerturbation> perturbation;
  unsigned threads = 0;
};

/// A parse failure: exit status plus message (empty for --help).
struct UsageExit {
  int status = kExitUsage;
  std::string message;
};

std::variant<CliConfig, UsageExit> parse_args(int argc, const char* const* argv);

/// Executes a parsed configuration and returns the process exit status.
int run(const CliConfig& config);

/// BERGMAN_LAB_THREADS, or 0 (all cores) when unset or malformed.
unsigned threads_from_env();

}  // namespace bergman::cli
