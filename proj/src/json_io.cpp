#include "bergman/json_io.hpp"

#include <cmath>

#include "bergman/format.hpp"

namespace bergman {

namespace {

// JSON has no infinities; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

json to_json(cdouble z) { return {{"re", number(z.real())}, {"im", number(z.imag())}}; }

json to_json(const mpq_class& q) { return format_rational(q); }

json to_json(const RationalPoly& p) {
  json coeffs = json::array();
  for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(to_json(p.coefficient(i)));
  return {{"alpha_coefficients", coeffs}, {"text", p.to_string("a")}};
}

json to_json(const AlphaPolynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(to_json(c));
  return {{"level", p.level()}, {"zeta_coefficients", coeffs}};
}

json to_json(const ZeroReport& r) {
  json roots = json::array();
  for (const auto& root : r.roots) {
    roots.push_back({{"re", number(root.value.real())},
                     {"im", number(root.value.imag())},
                     {"residual", number(root.residual)},
                     {"multiplicity", root.multiplicity}});
  }
  json counts = json::object();
  for (const auto& [radius, count] : r.count_in_radius) counts[format_double(radius)] = count;
  json out = {{"roots", roots},
              {"count_in_radius", counts},
              {"method", to_string(r.method)},
              {"certified", r.certified}};
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  return out;
}

json to_json(const CheckOutcome& c) {
  json out = {{"name", c.name}, {"pass", c.pass}, {"skipped", c.skipped}};
  if (!c.skipped) {
    out["lhs"] = to_json(c.lhs);
    out["rhs"] = to_json(c.rhs);
    out["abs_err"] = number(c.abs_err);
    out["rel_err"] = number(c.rel_err);
    out["tolerance"] = number(c.tolerance);
  }
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

json to_json(const ExpKernelClosedForm& f) {
  json poly = json::array();
  for (const auto& q : f.polynomial) poly.push_back(to_json(q));
  return {{"gamma", f.gamma.exact ? to_json(*f.gamma.exact) : json(f.gamma.value)},
          {"level", f.level},
          {"prefactor", to_json(f.exact_prefactor())},
          {"polynomial", poly}};
}

}  // namespace bergman
