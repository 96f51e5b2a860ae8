#ifndef NLR_CLI_H_
#define NLR_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlr/image.h"
#include "nlr/kernels.h"
#include "nlr/pgm.h"

namespace nlr::cli {

/// Bad command line; the message names the offending flag.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// --help was given; what() holds the help text.
class HelpRequested : public UsageError {
 public:
  using UsageError::UsageError;
};

enum class Command {
  kDenoise,
  kCheckEquivalence,
  kDumpRearrangement,
  kAnalyzeExpansion,
  kBench,
};

/// --weight value before any file is read.
struct WeightArg {
  enum class Kind { kConstant, kMap, kBall, kBilateral };
  Kind kind = Kind::kConstant;
  std::string path;  // kMap
  double rho = 0;    // kBall, kBilateral
  int m = 0;         // kBilateral
  bool operator==(const WeightArg&) const = default;
};

/// Parsed command line. Defaults:
///   kernel gaussian, h 20, weight const (check-equivalence: all families),
///   quantize native, iters 1, tol 0, format P5, seed 1, threads 0 (auto),
///   trials 50, size 8, levels 5, profile exp, h list 0.2,0.1,0.05,0.025,
///   t 0.3:0.7:0.05, constants derived, suite complexity.
struct RunConfig {
  Command command = Command::kDenoise;
  std::string input;
  std::string output;
  KernelSpec kernel = KernelSpec::gaussian(20.0);
  std::optional<WeightArg> weight;
  QuantizeMode quantize;
  int iters = 1;
  double tol = 0;
  std::string dump_history;
  PgmFormat format = PgmFormat::kBinary;
  std::uint64_t seed = 1;
  int threads = 0;
  // check-equivalence
  int trials = 50;
  int size = 8;
  int levels = 5;
  // analyze-expansion
  std::string profile = "exp";
  std::vector<double> h_list = {0.2, 0.1, 0.05, 0.025};
  std::string t_range = "0.3:0.7:0.05";
  std::string constants = "derived";
  // bench
  std::string suite = "complexity";
  bool parallel = false;

  bool operator==(const RunConfig&) const = default;
};

/// args excludes the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Argument list that parses back to `cfg`.
std::vector<std::string> serialize(const RunConfig& cfg);

/// "gaussian" or "power:P,K0", with h taken from `h`.
KernelSpec parse_kernel(const std::string& text, double h);
/// "const", "map:PATH", "ball:RHO" or "bilateral:RHO,M".
WeightArg parse_weight(const std::string& text);

/// Runs the command. Data (CSV) goes to the configured file or `out`,
/// diagnostics to `err`. Returns 0 on success, 1 when an equivalence check
/// fails, 2 on I/O or validation errors.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Entry point used by the executable: parse, then run.
int main(int argc, char** argv);

/// Equivalence tolerance of check-equivalence.
inline constexpr double kEquivalenceTolerance = 1e-10;

struct EquivalenceCase {
  std::string family;
  int trial = -1;
  std::size_t pixel = 0;
  double rearranged = 0;
  double direct = 0;
  double abs_diff = 0;
};

/// Worst |rearranged - direct| per weight family over seeded random images
/// (size x size, `levels` native levels). An empty `weights` list selects
/// constant, weight map, ball rho=2 and bilateral rho=2 m=4.
std::vector<EquivalenceCase> check_equivalence(
    int trials, int size, int levels, std::uint64_t seed,
    const KernelSpec& kernel, const std::vector<WeightSpec>& weights = {});

}  // namespace nlr::cli

#endif  // NLR_CLI_H_
