#include "bergman/format.hpp"

#include <charconv>
#include <cmath>

#include "bergman/error.hpp"

namespace bergman {

double to_double(const mpq_class& q) {
  const double t = q.get_d();
  if (!std::isfinite(t) || mpq_class(t) == q) return t;
  const double away = std::nextafter(t, q > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return t;
  const mpq_class dt = abs(q - mpq_class(t));
  const mpq_class da = abs(q - mpq_class(away));
  return da < dt ? away : t;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string format_rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::non_integrable_weight: return "non-integrable weight";
    case ErrorCode::moment_underflow: return "moment underflow";
    case ErrorCode::moment_overflow: return "moment overflow";
    case ErrorCode::singular_at_origin: return "singular at origin";
    case ErrorCode::insufficient_moments: return "insufficient moments";
    case ErrorCode::truncation_insufficient: return "truncation insufficient";
    case ErrorCode::outside_domain: return "outside domain";
    case ErrorCode::no_closed_form: return "no closed form";
    case ErrorCode::branch_point: return "branch point";
    case ErrorCode::diagonal_divergence: return "diagonal divergence";
    case ErrorCode::kernel_has_zero: return "kernel has zero";
    case ErrorCode::depth_cap: return "depth cap";
    case ErrorCode::threshold_search_exhausted: return "threshold search exhausted";
    case ErrorCode::root_iteration_stalled: return "root iteration stalled";
    case ErrorCode::zero_near_contour: return "zero near contour";
    case ErrorCode::analyticity_violated: return "analyticity violated";
    case ErrorCode::roots_not_all_inside_disk: return "roots not all inside disk";
    case ErrorCode::tail_not_certifiable: return "tail not certifiable";
    case ErrorCode::magnitude_overflow: return "magnitude overflow";
    case ErrorCode::syntax_error: return "syntax error";
    case ErrorCode::alpha_out_of_range: return "alpha out of range";
    case ErrorCode::gamma_out_of_range: return "gamma out of range";
  }
  return "unknown";
}

}  // namespace bergman
