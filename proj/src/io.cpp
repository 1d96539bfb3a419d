#include "interpk/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "interpk/errors.hpp"

#ifndef INTERPK_VERSION
#define INTERPK_VERSION "0.0.0"
#endif

namespace interpk::io {

const char* version() { return INTERPK_VERSION; }

Json parse(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(source + ": malformed JSON at byte " +
                      std::to_string(e.byte));
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Library errors raised while building a value from a config are reported
// against the key that produced it.
template <class F>
auto at_key(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

// For library lookups whose ConfigError carries no key path.
template <class F>
auto named(const std::string& path, F&& lookup) {
  try {
    return lookup();
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::vector<double> number_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], indexed(path, i)));
  return out;
}

}  // namespace

double as_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
  }
  fail(path, "expected a number");
}

int as_int(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max()) {
      return static_cast<int>(v);
    }
  }
  fail(path, "expected an integer");
}

// --- Fields -----------------------------------------------------------------------

Fields::Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) fail(path_.empty() ? "config" : path_, "expected an object");
}

bool Fields::has(const char* key) const { return j_.contains(key); }

const Json& Fields::at(const char* key) {
  if (!j_.contains(key)) fail(key_path(key), "required key is missing");
  used_.emplace_back(key);
  return j_.at(key);
}

std::string Fields::key_path(const char* key) const { return join(path_, key); }

void Fields::done() const {
  for (const auto& item : j_.items()) {
    if (std::find(used_.begin(), used_.end(), item.key()) == used_.end()) {
      fail(join(path_, item.key()), "unknown key");
    }
  }
}

double Fields::number(const char* key, double fallback) {
  return has(key) ? number(key) : fallback;
}

double Fields::number(const char* key) { return as_number(at(key), key_path(key)); }

int Fields::integer(const char* key, int fallback) {
  return has(key) ? as_int(at(key), key_path(key)) : fallback;
}

std::uint64_t Fields::seed(const char* key, std::uint64_t fallback) {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  fail(key_path(key), "expected a nonnegative integer");
}

bool Fields::boolean(const char* key, bool fallback) {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_boolean()) fail(key_path(key), "expected true or false");
  return v.get<bool>();
}

std::string Fields::string(const char* key, const std::string& fallback) {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_string()) fail(key_path(key), "expected a string");
  return v.get<std::string>();
}

std::vector<double> Fields::numbers(const char* key, std::vector<double> fallback) {
  return has(key) ? numbers(key) : fallback;
}

std::vector<double> Fields::numbers(const char* key) {
  return number_array(at(key), key_path(key));
}

std::vector<int> Fields::integers(const char* key, std::vector<int> fallback) {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  const std::string path = key_path(key);
  if (!v.is_array()) fail(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], indexed(path, i)));
  return out;
}

// --- domain readers -------------------------------------------------------------

FiniteVector vector_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  const int offset = f.integer("offset", 0);
  auto entries = f.numbers("entries");
  f.done();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i])) fail(indexed(join(path, "entries"), i), "must be finite");
  }
  return FiniteVector(offset, std::move(entries));
}

WeightedNorm norm_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  const double p = f.number("p");
  auto weights = f.numbers("weights");
  const int offset = f.integer("offset", 0);
  f.done();
  return at_key(path, [&] { return WeightedNorm(p, std::move(weights), offset); });
}

OracleOptions oracle_from_json(const Json& j, const std::string& path,
                               OracleOptions fallback) {
  Fields f(j, path);
  OracleOptions o = fallback;
  o.budget = f.integer("budget", o.budget);
  o.seed = f.seed("seed", o.seed);
  o.max_dim = f.integer("max_dim", o.max_dim);
  o.golden_iterations = f.integer("golden_iterations", o.golden_iterations);
  o.max_sweeps = f.integer("max_sweeps", o.max_sweeps);
  f.done();
  if (o.budget < 0) fail(join(path, "budget"), "must be nonnegative");
  if (o.max_dim < 1) fail(join(path, "max_dim"), "must be positive");
  if (o.golden_iterations < 1) fail(join(path, "golden_iterations"), "must be positive");
  if (o.max_sweeps < 1) fail(join(path, "max_sweeps"), "must be positive");
  return o;
}

namespace {

bool unit_weights(const WeightedNorm& n) {
  const auto w = n.weights();
  return std::all_of(w.begin(), w.end(), [](double v) { return v == 1.0; });
}

std::vector<double> weights_of(const WeightedNorm& n) {
  return {n.weights().begin(), n.weights().end()};
}

}  // namespace

Couple couple_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  const WeightedNorm n0 = norm_from_json(f.at("norm0"), f.key_path("norm0"));
  const WeightedNorm n1 = norm_from_json(f.at("norm1"), f.key_path("norm1"));
  const std::string strategy_path = f.key_path("strategy");
  const KStrategy strategy = named(strategy_path, [&] {
    return strategy_from_string(f.string("strategy", "oracle"));
  });
  OracleOptions oracle;
  if (f.has("oracle")) oracle = oracle_from_json(f.at("oracle"), f.key_path("oracle"));
  f.done();
  if (!(n0.window() == n1.window())) {
    fail(join(path, "norm1"), "weights and offset must match norm0");
  }
  const Couple couple = at_key(path, [&]() -> Couple {
    switch (strategy) {
      case KStrategy::ExactL1Linf:
        if (n0.p() != 1 || !std::isinf(n1.p()) || !unit_weights(n0) || !unit_weights(n1)) {
          fail(strategy_path, "exact_l1_linf needs unit-weight p = 1 and p = inf norms");
        }
        return Couple::l1_linf(n0.window().size, n0.offset());
      case KStrategy::WeightedSupLP:
        if (!std::isinf(n0.p()) || !std::isinf(n1.p())) {
          fail(strategy_path, "weighted_sup_lp needs p = inf on both norms");
        }
        return Couple::weighted_sup(weights_of(n0), weights_of(n1), n0.offset());
      case KStrategy::PowerCoordinatewise:
        if (n0.p() != n1.p() || std::isinf(n0.p())) {
          fail(strategy_path, "power_coordinatewise needs a common finite p");
        }
        return Couple::power_coordinatewise(n0.p(), weights_of(n0), weights_of(n1),
                                            n0.offset());
      case KStrategy::Oracle:
        break;
    }
    return Couple::oracle(n0, n1);
  });
  return couple.with_oracle_options(oracle);
}

InterpParams params_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  InterpParams p;
  p.theta = f.number("theta");
  p.q = f.number("q");
  f.done();
  at_key(path, [&] { p.validate(); return 0; });
  return p;
}

DyadicWindow window_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  DyadicWindow w;
  w.n_min = f.integer("n_min", w.n_min);
  w.n_max = f.integer("n_max", w.n_max);
  f.done();
  at_key(path, [&] { w.validate(); return 0; });
  return w;
}

LatticeParam lattice_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  LatticeParam l;
  l.r = f.number("r");
  l.weights = f.numbers("lattice_weights");
  l.n_min = f.integer("n_min", l.n_min);
  f.done();
  if (!(l.r > 0)) fail(join(path, "r"), "must be positive");
  if (l.weights.empty()) fail(join(path, "lattice_weights"), "must not be empty");
  for (std::size_t i = 0; i < l.weights.size(); ++i) {
    if (!(l.weights[i] >= 0) || !std::isfinite(l.weights[i])) {
      fail(indexed(join(path, "lattice_weights"), i), "must be finite and nonnegative");
    }
  }
  return l;
}

MatrixOperator matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(number_array(j[i], indexed(path, i)));
  return at_key(path, [&] { return MatrixOperator::from_rows(rows); });
}

CoupleFamily family_from_json(const Json& j, const std::string& path) {
  Fields f(j, path);
  CoupleFamily c;
  c.kind = named(f.key_path("kind"), [&] {
    return family_kind_from_string(f.string("kind", c.name()));
  });
  c.p = f.number("p", c.p);
  c.alpha0 = f.number("alpha0", c.alpha0);
  c.alpha1 = f.number("alpha1", c.alpha1);
  f.done();
  at_key(path, [&] { return c.make(1); });
  return c;
}

namespace {

void require_dims(const std::vector<int>& dims, const std::string& path) {
  if (dims.empty()) fail(path, "must not be empty");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1) fail(indexed(path, i), "must be positive");
  }
}

void require_positive(int v, const std::string& path) {
  if (v < 1) fail(path, "must be positive");
}

}  // namespace

MainlemaConfig mainlema_from_json(const Json& j) {
  Fields f(j, "");
  MainlemaConfig c;
  if (f.has("couple")) c.couple = family_from_json(f.at("couple"), "couple");
  c.dims = f.integers("dims", c.dims);
  c.t_exponents = f.integers("t_exponents", c.t_exponents);
  c.count = f.integer("count", c.count);
  c.seed = f.seed("seed", c.seed);
  c.band_lo = f.number("band_lo", c.band_lo);
  c.band_hi = f.number("band_hi", c.band_hi);
  if (f.has("oracle")) c.oracle = oracle_from_json(f.at("oracle"), "oracle", c.oracle);
  f.done();
  require_dims(c.dims, "dims");
  require_positive(c.count, "count");
  if (!(c.band_lo > 0)) fail("band_lo", "must be positive");
  if (!(c.band_hi >= c.band_lo)) fail("band_hi", "must be at least band_lo");
  if (std::none_of(c.t_exponents.begin(), c.t_exponents.end(), [](int n) { return n <= 0; })) {
    fail("t_exponents", "needs at least one exponent <= 0");
  }
  return c;
}

SumIntersectionConfig sum_intersection_from_json(const Json& j) {
  Fields f(j, "");
  SumIntersectionConfig c;
  if (f.has("couple")) c.couple = family_from_json(f.at("couple"), "couple");
  c.theta = f.number("theta", c.theta);
  c.p = f.number("p", c.p);
  c.dims = f.integers("dims", c.dims);
  c.count = f.integer("count", c.count);
  c.seed = f.seed("seed", c.seed);
  c.growth = f.number("growth", c.growth);
  if (f.has("window")) c.window = window_from_json(f.at("window"), "window");
  f.done();
  if (!(c.theta > 0 && c.theta < 1)) fail("theta", "must lie in (0, 1)");
  if (!(c.p > 0)) fail("p", "must be positive");
  require_dims(c.dims, "dims");
  require_positive(c.count, "count");
  if (!(c.growth >= 0)) fail("growth", "must be nonnegative");
  return c;
}

namespace {

const char* k_method_name(ReiterationK k) {
  return k == ReiterationK::Oracle ? "oracle" : "level_clip";
}

}  // namespace

ReiterationConfig reiteration_from_json(const Json& j) {
  Fields f(j, "");
  ReiterationConfig c;
  if (f.has("couple")) c.couple = family_from_json(f.at("couple"), "couple");
  c.theta0 = f.number("theta0", c.theta0);
  c.theta1 = f.number("theta1", c.theta1);
  c.alpha = f.number("alpha", c.alpha);
  c.r = f.number("r", c.r);
  c.p = f.number("p", c.p);
  c.dims = f.integers("dims", c.dims);
  c.count = f.integer("count", c.count);
  c.seed = f.seed("seed", c.seed);
  c.growth = f.number("growth", c.growth);
  const std::string method = f.string("k_method", k_method_name(c.k_method));
  if (method == "oracle") {
    c.k_method = ReiterationK::Oracle;
  } else if (method == "level_clip") {
    c.k_method = ReiterationK::LevelClip;
  } else {
    fail("k_method", "expected 'level_clip' or 'oracle'");
  }
  if (f.has("oracle")) c.oracle = oracle_from_json(f.at("oracle"), "oracle", c.oracle);
  if (f.has("outer")) c.outer = window_from_json(f.at("outer"), "outer");
  f.done();
  for (const auto& [v, key] : {std::pair{c.theta0, "theta0"}, {c.theta1, "theta1"}, {c.alpha, "alpha"}}) {
    if (!(v > 0 && v < 1)) fail(key, "must lie in (0, 1)");
  }
  if (!(c.r > 0)) fail("r", "must be positive");
  if (!(c.p > 0)) fail("p", "must be positive");
  require_dims(c.dims, "dims");
  require_positive(c.count, "count");
  if (!(c.growth >= 0)) fail("growth", "must be nonnegative");
  return c;
}

KonigConfig konig_from_json(const Json& j) {
  Fields f(j, "");
  KonigConfig c;
  c.p0 = f.number("p0", c.p0);
  c.p1 = f.number("p1", c.p1);
  c.theta = f.number("theta", c.theta);
  c.q = f.number("q", c.q);
  c.lengths = f.integers("lengths", c.lengths);
  c.count = f.integer("count", c.count);
  c.seed = f.seed("seed", c.seed);
  c.growth = f.number("growth", c.growth);
  if (f.has("window")) c.window = window_from_json(f.at("window"), "window");
  f.done();
  if (!(c.p0 > 0)) fail("p0", "must be positive");
  if (!(c.p1 > 0)) fail("p1", "must be positive");
  if (!(c.theta > 0 && c.theta < 1)) fail("theta", "must lie in (0, 1)");
  if (!(c.q > 0) || std::isinf(c.q)) fail("q", "must be positive and finite");
  require_dims(c.lengths, "lengths");
  require_positive(c.count, "count");
  if (!(c.growth >= 0)) fail("growth", "must be nonnegative");
  return c;
}

DichotomyConfig dichotomy_from_json(const Json& j) {
  Fields f(j, "");
  DichotomyConfig c;
  c.ordered = f.boolean("ordered", c.ordered);
  c.t = f.number("t", c.t);
  c.half_widths = f.integers("half_widths", c.half_widths);
  c.samples = f.integer("samples", c.samples);
  c.seed = f.seed("seed", c.seed);
  c.threshold = f.number("threshold", c.threshold);
  f.done();
  if (!(c.t > 0)) fail("t", "must be positive");
  require_dims(c.half_widths, "half_widths");
  require_positive(c.samples, "samples");
  return c;
}

DistinctnessConfig distinctness_from_json(const Json& j) {
  Fields f(j, "");
  DistinctnessConfig c;
  c.p_list = f.numbers("p_list", c.p_list);
  c.q_list = f.numbers("q_list", c.q_list);
  c.length = f.integer("length", c.length);
  f.done();
  for (const auto& [list, key] : {std::pair{&c.p_list, "p_list"}, {&c.q_list, "q_list"}}) {
    if (list->empty()) fail(key, "must not be empty");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const double v = (*list)[i];
      if (!(v > 0) || std::isinf(v)) fail(indexed(key, i), "must be positive and finite");
    }
  }
  if (c.length < 4) fail("length", "must be at least 4");
  return c;
}

// --- writers ----------------------------------------------------------------------

namespace {

Json numbers_json(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

Json seed_json(std::uint64_t seed) { return seed; }

}  // namespace

Json to_json(const FiniteVector& x) {
  return {{"offset", x.offset}, {"entries", numbers_json(x.entries)}};
}

Json to_json(const WeightedNorm& norm) {
  return {{"p", number(norm.p())},
          {"weights", numbers_json(norm.weights())},
          {"offset", norm.offset()}};
}

Json to_json(const OracleOptions& o) {
  return {{"budget", o.budget},
          {"seed", seed_json(o.seed)},
          {"max_dim", o.max_dim},
          {"golden_iterations", o.golden_iterations},
          {"max_sweeps", o.max_sweeps}};
}

Json to_json(const Couple& couple) {
  const WeightedNorm* n0 = couple.norm0().weighted();
  const WeightedNorm* n1 = couple.norm1().weighted();
  if (n0 == nullptr || n1 == nullptr) {
    throw UnsupportedError("only couples of weighted lp norms serialize");
  }
  Json out = {{"norm0", to_json(*n0)},
              {"norm1", to_json(*n1)},
              {"strategy", to_string(couple.strategy())}};
  if (couple.strategy() == KStrategy::Oracle) out["oracle"] = to_json(couple.oracle_options());
  return out;
}

Json to_json(const InterpParams& p) { return {{"theta", number(p.theta)}, {"q", number(p.q)}}; }

Json to_json(const DyadicWindow& w) { return {{"n_min", w.n_min}, {"n_max", w.n_max}}; }

Json to_json(const LatticeParam& l) {
  return {{"r", number(l.r)}, {"lattice_weights", numbers_json(l.weights)}, {"n_min", l.n_min}};
}

Json to_json(const MatrixOperator& op) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < op.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < op.cols(); ++k) row.push_back(number(op.entries(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CoupleFamily& c) {
  Json out = {{"kind", c.name()}};
  if (c.kind == CoupleFamily::Kind::PowerCoordinatewise) out["p"] = number(c.p);
  if (c.kind != CoupleFamily::Kind::L1Linf) {
    out["alpha0"] = number(c.alpha0);
    out["alpha1"] = number(c.alpha1);
  }
  return out;
}

Json to_json(const ConditionReport& report) {
  Json conditions = Json::object();
  for (const auto& c : report.conditions) {
    conditions[c.name] = c.bounded ? number(c.constant) : Json("fail");
  }
  return {{"conditions", conditions},
          {"half_width", report.half_width},
          {"probes", report.probes},
          {"seed", seed_json(report.seed)}};
}

Json to_json(const MainlemaConfig& c) {
  return {{"couple", to_json(c.couple)},
          {"dims", c.dims},
          {"t_exponents", c.t_exponents},
          {"count", c.count},
          {"seed", seed_json(c.seed)},
          {"band_lo", number(c.band_lo)},
          {"band_hi", number(c.band_hi)},
          {"oracle", to_json(c.oracle)}};
}

Json to_json(const SumIntersectionConfig& c) {
  return {{"couple", to_json(c.couple)},
          {"theta", number(c.theta)},
          {"p", number(c.p)},
          {"dims", c.dims},
          {"count", c.count},
          {"seed", seed_json(c.seed)},
          {"growth", number(c.growth)},
          {"window", to_json(c.window)}};
}

Json to_json(const ReiterationConfig& c) {
  return {{"couple", to_json(c.couple)},
          {"theta0", number(c.theta0)},
          {"theta1", number(c.theta1)},
          {"alpha", number(c.alpha)},
          {"r", number(c.r)},
          {"p", number(c.p)},
          {"dims", c.dims},
          {"count", c.count},
          {"seed", seed_json(c.seed)},
          {"growth", number(c.growth)},
          {"k_method", k_method_name(c.k_method)},
          {"oracle", to_json(c.oracle)},
          {"outer", to_json(c.outer)}};
}

Json to_json(const KonigConfig& c) {
  return {{"p0", number(c.p0)},
          {"p1", number(c.p1)},
          {"theta", number(c.theta)},
          {"q", number(c.q)},
          {"lengths", c.lengths},
          {"count", c.count},
          {"seed", seed_json(c.seed)},
          {"growth", number(c.growth)},
          {"window", to_json(c.window)}};
}

Json to_json(const DichotomyConfig& c) {
  return {{"ordered", c.ordered},
          {"t", number(c.t)},
          {"half_widths", c.half_widths},
          {"samples", c.samples},
          {"seed", seed_json(c.seed)},
          {"threshold", number(c.threshold)}};
}

Json to_json(const DistinctnessConfig& c) {
  return {{"p_list", numbers_json(c.p_list)},
          {"q_list", numbers_json(c.q_list)},
          {"length", c.length}};
}

Json report_json(const EquivReport& r, const Json& config) {
  Json per_dim = Json::array();
  for (const DimBand& b : r.per_dim) {
    per_dim.push_back({{"dim", b.dim},
                       {"count", b.count},
                       {"min_ratio", number(b.min_ratio)},
                       {"max_ratio", number(b.max_ratio)},
                       {"spread", number(b.spread())}});
  }
  return {{"check", r.check},
          {"config", config},
          {"seed", seed_json(r.seed)},
          {"min_ratio", number(r.min_ratio)},
          {"max_ratio", number(r.max_ratio)},
          {"pass", r.pass},
          {"rule", r.rule},
          {"sample_count", r.sample_count},
          {"per_dim", per_dim}};
}

Json report_json(const DichotomyReport& r) {
  Json rows = Json::array();
  double lo = kInf, hi = -kInf;
  for (const DichotomyRow& row : r.rows) {
    rows.push_back({{"half_width", row.half_width}, {"dim", row.dim}, {"value", number(row.value)}});
    lo = std::min(lo, row.value);
    hi = std::max(hi, row.value);
  }
  return {{"check", "dichotomy"},
          {"config", to_json(r.config)},
          {"seed", seed_json(r.config.seed)},
          {"min_ratio", r.rows.empty() ? Json(nullptr) : number(lo)},
          {"max_ratio", r.rows.empty() ? Json(nullptr) : number(hi)},
          {"pass", r.pass},
          {"rule", r.rule},
          {"rows", rows}};
}

Json report_json(const DistinctnessReport& r) {
  Json rows = Json::array();
  for (const DistinctnessRow& row : r.rows) {
    rows.push_back({{"witness", {{"p", number(row.witness.p)}, {"q", number(row.witness.q)}}},
                    {"other", {{"p", number(row.other.p)}, {"q", number(row.other.q)}}},
                    {"own", to_string(row.own)},
                    {"in_other", to_string(row.in_other)},
                    {"separated", row.separated}});
  }
  return {{"check", "distinctness"},
          {"config", to_json(r.config)},
          {"seed", nullptr},
          {"min_ratio", nullptr},
          {"max_ratio", nullptr},
          {"pass", r.pass},
          {"rule", r.rule},
          {"rows", rows}};
}

// --- CSV ----------------------------------------------------------------------------

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "dim,sample,t,lhs,rhs,ratio\n";
  for (const TraceRow& r : trace) {
    out << r.dim << ',' << r.sample << ',' << format_number(r.t) << ','
        << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
        << format_number(r.ratio) << '\n';
  }
}

void write_profile_csv(std::ostream& out, const KProfile& profile) {
  out << "n,t,k\n";
  for (int n = profile.n_min; n <= profile.n_max; ++n) {
    out << n << ',' << format_number(std::ldexp(1.0, n)) << ','
        << format_number(profile.at(n)) << '\n';
  }
}

void write_snumbers_csv(std::ostream& out, const SNumSeq& s) {
  out << "n,a_n\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    out << i + 1 << ',' << format_number(s.values[i]) << '\n';
  }
}

void write_witness_csv(std::ostream& out, const WitnessReport& report) {
  out << "p,q,n,s_n,summand,partial_sum,flag\n";
  for (const SeriesMembership& s : report.series) {
    const std::string head = format_number(s.spec.p) + ',' + format_number(s.spec.q) + ',';
    const char* flag = to_string(s.flag);
    for (std::size_t i = 0; i < s.summands.size(); ++i) {
      out << head << i + 1 << ',' << format_number(report.epsilon[i]) << ','
          << format_number(s.summands[i]) << ',' << format_number(s.partial_sums[i])
          << ',' << flag << '\n';
    }
  }
}

void write_lift_csv(std::ostream& out, const DecaySpec& spec,
                    const std::vector<double>& xi) {
  out << "n,epsilon,h,xi\n";
  for (std::size_t i = 0; i < xi.size(); ++i) {
    out << i + 1 << ',' << format_number(spec.epsilon[i]) << ',' << spec.h[i] << ','
        << format_number(xi[i]) << '\n';
  }
}

void write_strictness_csv(std::ostream& out,
                          const std::vector<StrictnessPoint>& points) {
  out << "N,int_norm,sum_norm,interp_norm\n";
  for (const StrictnessPoint& p : points) {
    out << p.n << ',' << format_number(p.int_norm) << ',' << format_number(p.sum_norm)
        << ',' << format_number(p.interp_norm) << '\n';
  }
}

}  // namespace interpk::io
