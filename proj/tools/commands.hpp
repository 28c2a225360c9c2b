#pragma once

// Subcommands of the parthom tool. Each returns a Report; main() only parses
// flags, prints, and exits with the report's code.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "parthom/serialize.hpp"

namespace parthom::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kClaimFailure = 3, kResourceAbort = 4 };

/// Bad parameters; maps to kUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  Json json;
  /// Presentation text (csv, tables, rendered pages); printed after the JSON
  /// unless it replaces it.
  std::string text;
  bool text_only = false;
  int exit_code = kOk;
};

struct BettiArgs {
  std::string kind = "xi2";  // delta | boundary-delta | xi2
  unsigned n = 4;
  std::string coeff = "q";   // q | z
  bool reduced = false;
  std::string format = "json";  // json | csv | text
  std::optional<std::string> facets_out;
  bool stretch = false;
  std::size_t mem_budget_mb = 0;
};

struct EulerArgs {
  unsigned n = 4;
  std::string method = "all";  // simplex | partition-sum | permutation | all
};

struct SpectralArgs {
  unsigned n = 6;
  unsigned m = 3;
  int page = 1;
  bool render = false;
  bool computed = false;
  bool override_lemma = false;
};

struct ReportArgs {
  unsigned n = 4;
  std::optional<unsigned> m;
  bool stretch = false;
  std::size_t mem_budget_mb = 0;
};

Report cmd_betti(const BettiArgs& args);
Report cmd_euler(const EulerArgs& args);
Report cmd_spectral(const SpectralArgs& args);
Report cmd_report(const ReportArgs& args);

/// Smallest odd m >= 3 with m > N/2 - 1.
unsigned default_m(unsigned n);

/// Runs `body`, converting UsageError, std::invalid_argument, ResourceAbort and
/// std::bad_alloc into reports with the matching exit code.
Report guarded(const std::string& command, const std::function<Report()>& body);

std::string version();

}  // namespace parthom::cli
