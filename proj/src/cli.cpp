#include "bergman/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "bergman/checks.hpp"
#include "bergman/error.hpp"
#include "bergman/format.hpp"
#include "bergman/plane.hpp"
#include "bergman/starcalc.hpp"
#include "bergman/weight_expr.hpp"
#include "bergman/zeros.hpp"

namespace bergman {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs fn(0..n-1) on `workers` threads; results keep input order.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned workers,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned width = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < width; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
}

struct Output {
  const RunConfig& cfg;
  std::ostream& out;

  void write(const std::string& text, const std::string& path) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
    f << text;
  }
  void write(const std::string& text) const { write(text, cfg.output); }
};

std::string csv_header(const json& config) {
  return "# bergman " + std::string(kVersion) + "\n# config: " + config.dump() + "\n";
}

bool is_usage_code(ErrorCode c) {
  return c == ErrorCode::syntax_error || c == ErrorCode::invalid_argument ||
         c == ErrorCode::alpha_out_of_range || c == ErrorCode::gamma_out_of_range;
}

void report_error(std::ostream& err, std::string_view code, const std::string& message) {
  json e = {{"error", {{"code", code}, {"message", message}}}};
  err << e.dump() << "\n";
}

std::string json_document(const json& config, const json& results, const json& checks) {
  json doc = {{"version", kVersion}, {"config", config}, {"results", results}, {"checks", checks}};
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- verify

using CheckTask = std::function<CheckOutcome()>;

CheckOutcome count_outcome(std::string name, int lhs, int rhs) {
  return equality_outcome(std::move(name), static_cast<double>(lhs), static_cast<double>(rhs), 0.0);
}

CheckOutcome flag_outcome(std::string name, bool ok) {
  return equality_outcome(std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0);
}

cdouble random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

std::vector<RadialWeight> suite_weights() {
  return {RadialWeight::standard(mpq_class(0)), RadialWeight::standard(mpq_class(3, 2)),
          star(RadialWeight::standard(mpq_class(0))), RadialWeight::gaussian(mpq_class(1))};
}

double sample_radius(const RadialWeight& w) { return w.domain() == Domain::disk ? 0.8 : 1.5; }

void add_moment_checks(std::vector<CheckTask>& tasks, const QuadratureConfig& q) {
  for (const mpq_class& alpha : {mpq_class(0), mpq_class(1), mpq_class(5, 2), mpq_class(7)}) {
    const RadialWeight w = RadialWeight::standard(alpha);
    for (std::size_t n : {0, 1, 2, 5, 10, 20, 40, 64}) {
      tasks.push_back([w, n, q] {
        return equality_outcome("moment " + w.describe() + " n=" + std::to_string(n),
                                quadrature_moment(w, n, q), moment(w, n, q), 1e-10);
      });
    }
    const RadialWeight ws = star(w);
    for (std::size_t n : {0, 1, 4, 8}) {
      tasks.push_back([ws, n, q] {
        return equality_outcome("moment " + ws.describe() + " n=" + std::to_string(n),
                                quadrature_moment(ws, n, q), moment(ws, n, q), 1e-8);
      });
    }
  }
  for (const mpq_class& gamma : {mpq_class(1), mpq_class(5, 2)}) {
    const RadialWeight w = RadialWeight::gaussian(gamma);
    for (std::size_t n : {0, 1, 3, 6, 12}) {
      tasks.push_back([w, n, q] {
        return equality_outcome("moment " + w.describe() + " n=" + std::to_string(n),
                                quadrature_moment(w, n, q), moment(w, n, q), 1e-10);
      });
    }
  }
}

void add_function_checks(std::vector<CheckTask>& tasks, const std::string& suite,
                         const QuadratureConfig& q, std::mt19937_64& rng) {
  const bool all = suite == "all";
  for (const RadialWeight& w : suite_weights()) {
    if (all || suite == "inner") {
      for (int t = 0; t < 3; ++t) {
        const auto f = PolynomialFunction::random(10, rng);
        const auto g = PolynomialFunction::random(10, rng);
        tasks.push_back([w, f, g, q] { return inner_product_check(f, g, w, q); });
      }
    }
    if (all || suite == "reproducing") {
      const auto f = PolynomialFunction::random(10, rng);
      const cdouble z = random_point(rng, sample_radius(w));
      tasks.push_back([w, f, z, q] { return reproducing_check(w, f, z, q); });
      tasks.push_back([w, f, z, q] {
        return equality_outcome("reproducing reduction " + w.describe(),
                                reproducing_reduction(w, f, z, q), f(z), 1e-12);
      });
      tasks.push_back([w] { return flag_outcome("reproducing exact " + w.describe(), reproducing_exact(w, 10)); });
    }
    if (all || suite == "lp") {
      const auto f = PolynomialFunction::random(8, rng);
      const auto g = PolynomialFunction::random(8, rng);
      tasks.push_back([w, f, g, q] {
        return littlewood_paley_check(w, f, g, q, MomentRoute::star_relation, 1e-10);
      });
      tasks.push_back([w, f, g, q] {
        return littlewood_paley_check(w, f, g, q, MomentRoute::quadrature, 1e-8);
      });
      const auto fe = random_exact_polynomial(8, rng);
      const auto ge = random_exact_polynomial(8, rng);
      tasks.push_back([w, fe, ge] {
        return flag_outcome("littlewood_paley exact " + w.describe(), littlewood_paley_exact(w, fe, ge));
      });
    }
    if (all || suite == "sharpness") {
      const cdouble z = random_point(rng, w.depth() > 0 ? 0.4 : sample_radius(w));
      for (double p : {0.5, 1.0, 2.0, 3.0}) {
        tasks.push_back([w, z, p, q] { return sharpness_check(w, z, p, q); });
      }
    }
    if (all || suite == "hoelder") {
      const auto f = PolynomialFunction::random(6, rng);
      const cdouble z = random_point(rng, sample_radius(w));
      for (double p : {1.0, 2.0, 3.0}) {
        tasks.push_back([w, f, z, p, q] { return hoelder_check(w, f, z, p, q); });
      }
    }
  }
}

void add_zero_checks(std::vector<CheckTask>& tasks, const RunConfig& cfg) {
  ZeroConfig zc;
  zc.quad = cfg.quadrature();
  zc.kernel = cfg.kernel();
  for (int n = 1; n <= 5; ++n) {
    tasks.push_back([n] {
      const double t = rouche_threshold(n);
      CheckOutcome out;
      std::string detail;
      bool ok = true;
      for (double alpha : {t + 1.0, t + 10.0}) {
        const auto c = p_n(n).coefficients_at(alpha);
        const ZeroReport roots = poly_roots(c);
        for (double radius : {0.3, 0.6, 0.9, 0.99}) {
          ContourSpec spec;
          spec.radius = radius;
          const int winding = count_zeros(star_kernel_closed_form(n), alpha, spec);
          if (winding != roots.count_within(radius)) ok = false;
        }
      }
      return flag_outcome("zero count methods agree n=" + std::to_string(n), ok);
    });
  }
  const RadialWeight w = star(RadialWeight::standard(mpq_class(0)));
  tasks.push_back([w, zc] {
    return count_outcome("zeros " + w.describe() + " |z|=0.75",
                         zeros_of_Bz(w, cdouble(0.75, 0.0), zc).count_in_radius.begin()->second, 1);
  });
  tasks.push_back([w, zc] {
    return count_outcome("zeros " + w.describe() + " |z|=0.4",
                         zeros_of_Bz(w, cdouble(0.4, 0.0), zc).count_in_radius.begin()->second, 0);
  });
  tasks.push_back([w, zc] {
    const double r = zero_free_radius(w, zc);
    return bound_outcome("zero_free_radius " + w.describe() + " below first zero", r, 0.5, 0.0);
  });
  tasks.push_back([zc] {
    std::vector<double> radii;
    for (int i = 1; i <= 19; ++i) radii.push_back(0.05 * i);
    bool ok = true;
    for (const RadialWeight& v : {RadialWeight::standard(1.0), star(RadialWeight::standard(0.0)),
                                  RadialWeight::star_iterate(RadialWeight::standard(0.0), 2)}) {
      const auto table = zero_map(v, radii, zc);
      for (std::size_t i = 1; i < table.size(); ++i) ok = ok && table[i].second >= table[i - 1].second;
    }
    return flag_outcome("zero maps non-decreasing", ok);
  });
}

void add_plane_checks(std::vector<CheckTask>& tasks, const QuadratureConfig& q,
                      std::mt19937_64& rng) {
  for (int n = 1; n <= 8; ++n) {
    tasks.push_back([n] {
      return count_outcome("sb zeros n=" + std::to_string(n),
                           static_cast<int>(sb_zeros(1.0, n).roots.size()), n);
    });
  }
  for (int t = 0; t < 4; ++t) {
    const auto f = PolynomialFunction::random(static_cast<std::size_t>(t + 1), rng);
    const cdouble z = random_point(rng, 1.5);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      tasks.push_back([f, z, p, q] { return sb_point_eval_bound(1.0, z, p, f, q); });
    }
  }
}

// ------------------------------------------------------------- commands

struct Context {
  RunConfig cfg;
  json config_json;
  std::ostream& out;
  std::ostream& err;

  std::string format_or(const std::string& fallback) const {
    return cfg.format == "auto" ? fallback : cfg.format;
  }
  Output output() const { return Output{cfg, out}; }
};

int cmd_moments(const Context& ctx, const std::string& weight_text, std::size_t n,
                const std::string& route, bool exact) {
  const WeightExpr expr = parse_weight(weight_text);
  const RadialWeight w = expr.to_weight();
  const QuadratureConfig q = ctx.cfg.quadrature();
  if (route != "auto" && route != "quadrature") throw UsageError("--route must be auto or quadrature");
  std::vector<std::size_t> idx(n + 1);
  for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
  const auto values = parallel_map<double>(n + 1, ctx.cfg.workers, [&](std::size_t i) {
    return route == "quadrature" ? quadrature_moment(w, i, q) : moment(w, i, q);
  });
  if (ctx.format_or("json") == "csv") {
    std::string s = csv_header(ctx.config_json) + "n,value" + (exact ? ",exact" : "") + "\n";
    for (std::size_t i = 0; i <= n; ++i) {
      s += std::to_string(i) + "," + format_double(values[i]);
      if (exact) s += "," + format_rational(exact_moment(w, i));
      s += "\n";
    }
    ctx.output().write(s);
    return 0;
  }
  json rows = json::array();
  for (std::size_t i = 0; i <= n; ++i) {
    json row = {{"n", i}, {"value", values[i]}};
    if (exact) row["exact"] = to_json(exact_moment(w, i));
    rows.push_back(row);
  }
  const json results = {{"weight", expr.canonical()}, {"route", route}, {"moments", rows}};
  ctx.output().write(json_document(ctx.config_json, results, json::array()));
  return 0;
}

int cmd_kernel(const Context& ctx, const std::string& weight_text, const std::string& z_text,
               const std::string& xi_text) {
  const WeightExpr expr = parse_weight(weight_text);
  const RadialWeight w = expr.to_weight();
  const cdouble z = parse_complex(z_text);
  const cdouble xi = parse_complex(xi_text);
  const cdouble value = bergman_kernel(w, z, xi, ctx.cfg.quadrature());
  const json results = {{"weight", expr.canonical()},
                        {"z", to_json(z)},
                        {"xi", to_json(xi)},
                        {"zeta", to_json(std::conj(z) * xi)},
                        {"closed_form", has_closed_form(w)},
                        {"value", to_json(value)}};
  ctx.output().write(json_document(ctx.config_json, results, json::array()));
  return 0;
}

int cmd_poly(const Context& ctx, int n, const std::string& alpha_text) {
  if (n < 0) throw UsageError("--n must be >= 0");
  const StarKernelClosedForm f = star_kernel_closed_form(n);
  json results = {{"n", n}, {"numerator", to_json(f.numerator)}};
  if (!alpha_text.empty()) {
    const mpq_class alpha = parse_rational(alpha_text);
    json coeffs = json::array();
    for (const auto& c : f.numerator.coefficients_at(alpha)) coeffs.push_back(to_json(c));
    results["alpha"] = to_json(alpha);
    results["coefficients"] = coeffs;
    results["pole_exponent"] = to_json(mpq_class(alpha + 2 + 2 * n));
  }
  ctx.output().write(json_document(ctx.config_json, results, json::array()));
  return 0;
}

ZeroConfig zero_config(const RunConfig& cfg, bool force_series, double plane_radius) {
  ZeroConfig zc;
  zc.quad = cfg.quadrature();
  zc.kernel = cfg.kernel();
  zc.force_series = force_series;
  zc.plane_search_radius = plane_radius;
  return zc;
}

int cmd_zeros(const Context& ctx, const std::string& weight_text, const std::string& z_text,
              bool force_series, double plane_radius) {
  const WeightExpr expr = parse_weight(weight_text);
  const ZeroReport rep = zeros_of_Bz(expr.to_weight(), parse_complex(z_text),
                                     zero_config(ctx.cfg, force_series, plane_radius));
  json results = to_json(rep);
  results["weight"] = expr.canonical();
  results["z"] = to_json(parse_complex(z_text));
  ctx.output().write(json_document(ctx.config_json, results, json::array()));
  return 0;
}

int cmd_zeromap(const Context& ctx, const std::string& weight_text, const std::string& radii_text,
                std::string loci_path, bool force_series, double plane_radius) {
  const WeightExpr expr = parse_weight(weight_text);
  const RadialWeight w = expr.to_weight();
  const std::vector<double> radii = parse_range(radii_text);
  if (radii.empty()) throw UsageError("--radii is empty");
  const ZeroConfig zc = zero_config(ctx.cfg, force_series, plane_radius);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (w.domain() == Domain::disk && !(radii[i] < 1.0))) {
      throw UsageError("radius " + format_double(radii[i]) + " outside the domain");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) throw UsageError("--radii must be strictly increasing");
  }
  const auto reports = parallel_map<ZeroReport>(radii.size(), ctx.cfg.workers, [&](std::size_t i) {
    return zeros_of_Bz(w, cdouble(radii[i], 0.0), zc);
  });
  if (ctx.format_or("csv") == "csv") {
    std::string table = csv_header(ctx.config_json) + "radius,count,certified\n";
    std::string loci = csv_header(ctx.config_json) + "radius,re,im,multiplicity,residual\n";
    for (std::size_t i = 0; i < radii.size(); ++i) {
      table += format_double(radii[i]) + "," +
               std::to_string(reports[i].count_in_radius.begin()->second) + "," +
               (reports[i].certified ? "true" : "false") + "\n";
      for (const auto& root : reports[i].roots) {
        loci += format_double(radii[i]) + "," + format_double(root.value.real()) + "," +
                format_double(root.value.imag()) + "," + std::to_string(root.multiplicity) + "," +
                format_double(root.residual) + "\n";
      }
    }
    const Output o = ctx.output();
    o.write(table);
    if (loci_path.empty() && !ctx.cfg.output.empty()) {
      const auto dot = ctx.cfg.output.rfind('.');
      loci_path = (dot == std::string::npos ? ctx.cfg.output : ctx.cfg.output.substr(0, dot)) +
                  "_loci.csv";
    }
    if (!loci_path.empty()) o.write(loci, loci_path);
    return 0;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    json row = to_json(reports[i]);
    row["radius"] = radii[i];
    rows.push_back(row);
  }
  const json results = {{"weight", expr.canonical()}, {"table", rows}};
  ctx.output().write(json_document(ctx.config_json, results, json::array()));
  return 0;
}

int cmd_threshold(const Context& ctx, const std::string& n_text, double resolution) {
  std::vector<int> ns;
  for (double v : parse_range(n_text)) {
    if (v < 1 || v != std::floor(v)) throw UsageError("--n must list positive integers");
    ns.push_back(static_cast<int>(v));
  }
  ThresholdSearch opts;
  opts.resolution = resolution;
  const auto rows = parallel_map<json>(ns.size(), ctx.cfg.workers, [&](std::size_t i) {
    const int n = ns[i];
    const double t = rouche_threshold(n, opts);
    json row = {{"n", n}, {"alpha_star", t}, {"margin_at_alpha_star", rouche_margin(n, t)}};
    try {
      row["largest_zero_modulus_at_alpha_star_plus_1"] = largest_zero_modulus(n, t + 1.0);
    } catch (const Error& e) {
      row["largest_zero_modulus_at_alpha_star_plus_1"] = e.what();
    }
    return row;
  });
  ctx.output().write(json_document(ctx.config_json, {{"thresholds", rows}}, json::array()));
  return 0;
}

int cmd_verify(const Context& ctx, const std::string& suite) {
  static const std::vector<std::string> suites = {"all",       "moments", "inner",   "reproducing",
                                                  "lp",        "sharpness", "hoelder", "zeros",
                                                  "plane"};
  if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    throw UsageError("unknown suite " + suite);
  }
  std::mt19937_64 rng(ctx.cfg.seed);
  const QuadratureConfig q = ctx.cfg.quadrature();
  std::vector<CheckTask> tasks;
  const bool all = suite == "all";
  if (all || suite == "moments") add_moment_checks(tasks, q);
  add_function_checks(tasks, suite, q, rng);
  if (all || suite == "zeros") add_zero_checks(tasks, ctx.cfg);
  if (all || suite == "plane") add_plane_checks(tasks, q, rng);
  const auto outcomes = parallel_map<CheckOutcome>(tasks.size(), ctx.cfg.workers,
                                                   [&](std::size_t i) { return tasks[i](); });
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  json checks = json::array();
  for (const auto& o : outcomes) {
    if (o.skipped) ++skipped;
    else if (o.pass) ++passed;
    else ++failed;
    checks.push_back(to_json(o));
  }
  const json results = {{"suite", suite}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}};
  ctx.output().write(json_document(ctx.config_json, results, checks));
  return failed == 0 ? 0 : 1;
}

int cmd_sb(const Context& ctx, const std::string& gamma_text, int n, const std::string& z_text) {
  const mpq_class gamma = parse_rational(gamma_text);
  if (!(gamma > 0)) throw Error(ErrorCode::gamma_out_of_range, "gamma out of range: " + gamma_text);
  const ExpKernelClosedForm f = sb_star_iterate(Parameter::from_rational(gamma), n);
  const cdouble z = parse_complex(z_text);
  json results = {{"weight", RadialWeight::star_iterate(RadialWeight::gaussian(gamma), n).describe()},
                  {"closed_form", to_json(f)},
                  {"z", to_json(z)},
                  {"point_eval_norm", sb_point_eval_norm(to_double(gamma), z)}};
  if (n >= 1) results["zeros"] = to_json(sb_zeros(to_double(gamma), n));
  std::mt19937_64 rng(ctx.cfg.seed);
  json checks = json::array();
  bool ok = true;
  for (std::size_t deg = 0; deg <= 4; ++deg) {
    const auto poly = PolynomialFunction::random(deg, rng);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      const CheckOutcome o = sb_point_eval_bound(to_double(gamma), z, p, poly, ctx.cfg.quadrature());
      ok = ok && (o.pass || o.skipped);
      checks.push_back(to_json(o));
    }
  }
  ctx.output().write(json_document(ctx.config_json, results, checks));
  return ok ? 0 : 1;
}

}  // namespace

void RunConfig::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::invalid_argument, m); };
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) bad("tolerances must be positive");
  if (max_subdivisions < 1) bad("max_subdivisions must be >= 1");
  if (truncation < 64) bad("truncation must be >= 64");
  if (workers < 1) bad("workers must be >= 1");
  if (format != "auto" && format != "json" && format != "csv") {
    bad("format must be auto, json or csv");
  }
}

QuadratureConfig RunConfig::quadrature() const {
  QuadratureConfig q;
  q.abs_tol = abs_tol;
  q.rel_tol = rel_tol;
  q.max_subdivisions = max_subdivisions;
  return q;
}

KernelOptions RunConfig::kernel() const {
  KernelOptions k;
  k.max_truncation = truncation;
  k.initial_truncation = std::min<std::size_t>(k.initial_truncation, truncation);
  return k;
}

json to_json(const RunConfig& c) {
  return {{"abs_tol", c.abs_tol},   {"rel_tol", c.rel_tol}, {"max_subdivisions", c.max_subdivisions},
          {"truncation", c.truncation}, {"seed", c.seed}, {"output", c.output},
          {"format", c.format},     {"workers", c.workers}};
}

RunConfig merge_run_config(RunConfig base, const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "abs_tol") base.abs_tol = value.get<double>();
      else if (key == "rel_tol") base.rel_tol = value.get<double>();
      else if (key == "max_subdivisions") base.max_subdivisions = value.get<std::size_t>();
      else if (key == "truncation") base.truncation = value.get<std::size_t>();
      else if (key == "seed") base.seed = value.get<std::uint64_t>();
      else if (key == "output") base.output = value.get<std::string>();
      else if (key == "format") base.format = value.get<std::string>();
      else if (key == "workers") base.workers = value.get<unsigned>();
      else throw UsageError("unknown config key " + key);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  return base;
}

std::vector<double> parse_range(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
      if (c == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw UsageError("range must be a:b:step");
    const mpq_class a = parse_rational(parts[0]);
    const mpq_class b = parse_rational(parts[1]);
    const mpq_class step = parse_rational(parts[2]);
    if (!(step > 0)) throw UsageError("range step must be positive");
    if (b < a) throw UsageError("range end below start");
    for (mpq_class x = a; x <= b; x += step) {
      out.push_back(to_double(x));
      if (out.size() > 1000000) throw UsageError("range has too many points");
    }
    return out;
  }
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw UsageError("empty entry in list");
    out.push_back(to_double(parse_rational(cur)));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') flush();
    else cur += c;
  }
  flush();
  return out;
}

cdouble parse_complex(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {to_double(parse_rational(text)), 0.0};
  return {to_double(parse_rational(text.substr(0, comma))),
          to_double(parse_rational(text.substr(comma + 1)))};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Bergman kernels: moments, star iterates, zeros and checks", "bergman"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
  std::optional<std::size_t> max_subdivisions;
  std::optional<std::size_t> truncation;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<unsigned> workers;
  app.add_option("--config", config_path, "JSON file with RunConfig values");
  app.add_option("--abs-tol", abs_tol, "absolute quadrature tolerance");
  app.add_option("--rel-tol", rel_tol, "relative quadrature tolerance");
  app.add_option("--max-subdivisions", max_subdivisions, "quadrature panel limit");
  app.add_option("--truncation", truncation, "largest kernel series truncation");
  app.add_option("--seed", seed, "random seed");
  app.add_option("-o,--output", output, "output file (default: standard output)");
  app.add_option("--format", format, "auto, json or csv");
  app.add_option("-j,--workers", workers, "worker threads");

  std::string weight;
  std::size_t n_moments = 16;
  std::string route = "auto";
  bool exact = false;
  auto* moments_cmd = app.add_subcommand("moments", "table of moments omega_n");
  moments_cmd->add_option("-w,--weight", weight, "weight expression")->required();
  moments_cmd->add_option("-n,--n", n_moments, "largest moment index");
  moments_cmd->add_option("--route", route, "auto or quadrature");
  moments_cmd->add_flag("--exact", exact, "also print exact rational moments");

  std::string z_text = "0.5";
  std::string xi_text = "0.5";
  auto* kernel_cmd = app.add_subcommand("kernel", "evaluate B_z(xi)");
  kernel_cmd->add_option("-w,--weight", weight, "weight expression")->required();
  kernel_cmd->add_option("--z", z_text, "z as re or re,im");
  kernel_cmd->add_option("--xi", xi_text, "xi as re or re,im");

  int n_poly = 1;
  std::string alpha_text;
  auto* poly_cmd = app.add_subcommand("poly", "exact numerator of the n-th star iterate kernel");
  poly_cmd->add_option("-n,--n", n_poly, "star depth")->required();
  poly_cmd->add_option("--alpha", alpha_text, "evaluate at this alpha (decimal or p/q)");

  bool force_series = false;
  double plane_radius = ZeroConfig{}.plane_search_radius;
  auto* zeros_cmd = app.add_subcommand("zeros", "zeros of B_z");
  zeros_cmd->add_option("-w,--weight", weight, "weight expression")->required();
  zeros_cmd->add_option("--z", z_text, "z as re or re,im")->required();
  zeros_cmd->add_flag("--force-series", force_series, "count on the truncated series");
  zeros_cmd->add_option("--plane-radius", plane_radius, "xi search radius for plane weights");

  std::string radii_text;
  std::string loci_path;
  auto* zeromap_cmd = app.add_subcommand("zeromap", "zero counts of B_z over |z|");
  zeromap_cmd->add_option("-w,--weight", weight, "weight expression")->required();
  zeromap_cmd->add_option("--radii", radii_text, "a:b:step or a comma list")->required();
  zeromap_cmd->add_option("--loci", loci_path, "root loci CSV path");
  zeromap_cmd->add_flag("--force-series", force_series, "count on the truncated series");
  zeromap_cmd->add_option("--plane-radius", plane_radius, "xi search radius for plane weights");

  std::string n_list = "2:5:1";
  double resolution = ThresholdSearch{}.resolution;
  auto* threshold_cmd = app.add_subcommand("threshold", "dominance thresholds alpha*(n)");
  threshold_cmd->add_option("-n,--n", n_list, "depths as a:b:step or a list");
  threshold_cmd->add_option("--resolution", resolution, "alpha grid resolution");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run the check suite");
  verify_cmd->add_option("--suite", suite,
                         "all, moments, inner, reproducing, lp, sharpness, hoelder, zeros, plane");

  std::string gamma_text = "1";
  int n_sb = 1;
  std::string sb_z = "0.5,0.5";
  auto* sb_cmd = app.add_subcommand("sb", "Gaussian weight analogues on the plane");
  sb_cmd->add_option("--gamma", gamma_text, "gamma (decimal or p/q)");
  sb_cmd->add_option("-n,--n", n_sb, "star depth");
  sb_cmd->add_option("--z", sb_z, "evaluation point as re or re,im");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return 2;
  }

  try {
    RunConfig cfg;
    if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') {
      cfg = merge_run_config(cfg, read_json_file(env));
    }
    if (!config_path.empty()) cfg = merge_run_config(cfg, read_json_file(config_path));
    if (abs_tol) cfg.abs_tol = *abs_tol;
    if (rel_tol) cfg.rel_tol = *rel_tol;
    if (max_subdivisions) cfg.max_subdivisions = *max_subdivisions;
    if (truncation) cfg.truncation = *truncation;
    if (seed) cfg.seed = *seed;
    if (output) cfg.output = *output;
    if (format) cfg.format = *format;
    if (workers) cfg.workers = *workers;
    cfg.validate();

    CLI::App* sub = app.get_subcommands().front();
    json arguments = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_name() == "--help" || opt->count() == 0) continue;
      const auto results = opt->results();
      arguments[opt->get_name()] = results.size() == 1 ? json(results.front()) : json(results);
    }
    json config = to_json(cfg);
    config["command"] = sub->get_name();
    config["arguments"] = arguments;
    const Context ctx{cfg, config, out, err};

    const std::string name = sub->get_name();
    if (name == "moments") return cmd_moments(ctx, weight, n_moments, route, exact);
    if (name == "kernel") return cmd_kernel(ctx, weight, z_text, xi_text);
    if (name == "poly") return cmd_poly(ctx, n_poly, alpha_text);
    if (name == "zeros") return cmd_zeros(ctx, weight, z_text, force_series, plane_radius);
    if (name == "zeromap") {
      return cmd_zeromap(ctx, weight, radii_text, loci_path, force_series, plane_radius);
    }
    if (name == "threshold") return cmd_threshold(ctx, n_list, resolution);
    if (name == "verify") return cmd_verify(ctx, suite);
    if (name == "sb") return cmd_sb(ctx, gamma_text, n_sb, sb_z);
    report_error(err, "usage", "unknown subcommand " + name);
    return 2;
  } catch (const UsageError& e) {
    report_error(err, "usage", e.what());
    return 2;
  } catch (const Error& e) {
    std::string code(to_string(e.code()));
    std::replace_if(code.begin(), code.end(), [](char c) { return c == ' ' || c == '-'; }, '_');
    report_error(err, code, e.what());
    return is_usage_code(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return 1;
  }
}

}  // namespace bergman
