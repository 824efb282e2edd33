#ifndef BERGMAN_CLI_HPP
#define BERGMAN_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bergman/json_io.hpp"
#include "bergman/kernels.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

inline constexpr std::string_view kVersion = "1.0.0";

/// Environment variable naming a JSON file with default RunConfig values.
inline constexpr const char* kConfigEnv = "BERGMAN_CONFIG";

/// Settings shared by every subcommand. Precedence, lowest first: built-in
/// defaults, the file named by BERGMAN_CONFIG, --config, explicit flags.
struct RunConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  std::size_t max_subdivisions = 4000;
  /// Largest kernel series truncation.
  std::size_t truncation = 16384;
  std::uint64_t seed = 7;
  /// Empty means standard output.
  std::string output;
  /// auto, json or csv. auto is csv for zeromap and json otherwise.
  std::string format = "auto";
  unsigned workers = 1;

  void validate() const;
  QuadratureConfig quadrature() const;
  KernelOptions kernel() const;
};

json to_json(const RunConfig& c);
/// Overrides the fields present in j; unknown keys are rejected.
RunConfig merge_run_config(RunConfig base, const json& j);

/// "a:b:step" (inclusive, computed in exact rationals) or "x,y,z".
std::vector<double> parse_range(std::string_view text);
/// "re" or "re,im".
cdouble parse_complex(std::string_view text);

/// Entry point of the command-line tool. Returns 0 on success, 1 when a
/// check fails or a computation raises, 2 on usage errors. Errors are
/// written to `err` as {"error": {"code", "message"}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bergman

#endif  // BERGMAN_CLI_HPP
