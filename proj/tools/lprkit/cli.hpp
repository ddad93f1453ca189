#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lprkit {

enum class Subcommand { fit, curve, kernel, classify, decompose, symmetry };
enum class OutputFormat { json, csv };

enum ExitCode : int {
  kExitOk = 0,
  kExitData = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

/// start:stop:count, inclusive of both ends.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> points() const;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::fit;
  std::optional<std::string> input_path;
  double t = 0.0;
  int q = 0;
  int p = 2;
  bool orders_given = false;  // --q or --p on the command line
  std::optional<double> h;
  std::string weight = "quadratic";
  std::optional<GridSpec> grid;
  int half_count = 2;
  bool include_center = true;
  std::optional<std::string> output;
  double moment_tol = 1e-8;
  double zero_tol = 1e-12;
  double equality_tol = 1e-10;
  OutputFormat format = OutputFormat::json;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was requested; what() holds the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// argv without the program name. Throws UsageError naming the bad flag.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes one subcommand. Results go to config.output (or out), and only
/// when the exit code is 0; diagnostics go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lprkit
