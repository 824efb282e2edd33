#ifndef BERGMAN_FORMAT_HPP
#define BERGMAN_FORMAT_HPP

#include <gmpxx.h>

#include <string>

namespace bergman {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// The double nearest to q (mpq_class::get_d truncates toward zero).
double to_double(const mpq_class& q);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string format_rational(const mpq_class& q);

}  // namespace bergman

#endif  // BERGMAN_FORMAT_HPP
