#ifndef BERGMAN_ERROR_HPP
#define BERGMAN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bergman {

enum class ErrorCode {
  invalid_argument,
  non_integrable_weight,
  moment_underflow,
  moment_overflow,
  singular_at_origin,
  insufficient_moments,
  truncation_insufficient,
  outside_domain,
  no_closed_form,
  branch_point,
  diagonal_divergence,
  kernel_has_zero,
  depth_cap,
  threshold_search_exhausted,
  root_iteration_stalled,
  zero_near_contour,
  analyticity_violated,
  roots_not_all_inside_disk,
  tail_not_certifiable,
  magnitude_overflow,
  syntax_error,
  alpha_out_of_range,
  gamma_out_of_range,
};

/// Stable machine-readable name, used in the CLI's JSON error stream.
std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bergman

#endif  // BERGMAN_ERROR_HPP
