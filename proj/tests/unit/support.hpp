#ifndef BERGMAN_TEST_SUPPORT_HPP
#define BERGMAN_TEST_SUPPORT_HPP

#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "bergman/error.hpp"

namespace test {

inline bergman::ErrorCode code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const bergman::Error& e) {
    return e.code();
  }
  FAIL("expected bergman::Error");
  return bergman::ErrorCode::invalid_argument;
}

inline double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double rel(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace test

#define CHECK_ERROR(expr, code) CHECK(test::code_of([&] { (void)(expr); }) == (code))

#endif
