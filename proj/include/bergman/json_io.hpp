#ifndef BERGMAN_JSON_IO_HPP
#define BERGMAN_JSON_IO_HPP

#include <gmpxx.h>

#include <json.hpp>

#include "bergman/checks.hpp"
#include "bergman/kernels.hpp"
#include "bergman/plane.hpp"
#include "bergman/starcalc.hpp"
#include "bergman/zeros.hpp"

namespace bergman {

using json = nlohmann::ordered_json;

// Complex numbers are {re, im}; rationals are "p/q" strings.
json to_json(cdouble z);
json to_json(const mpq_class& q);
json to_json(const RationalPoly& p);
json to_json(const AlphaPolynomial& p);
json to_json(const ZeroReport& r);
json to_json(const CheckOutcome& c);
json to_json(const ExpKernelClosedForm& f);

}  // namespace bergman

#endif  // BERGMAN_JSON_IO_HPP
