#include "cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "interpk/errors.hpp"
#include "interpk/io.hpp"

namespace interpk::cli {

namespace {

using io::Json;

struct Args {
  std::string config;
  std::string output;
  std::string format;
  std::string matrix;
  std::string trace;
  std::string check;
  std::optional<std::uint64_t> seed;
  std::optional<double> p, q, theta;
  std::optional<int> n, max_exponent;
};

struct Outcome {
  std::string body;
  int code = kOk;
};

enum class Format { Csv, Json };

Format format_or(const Args& a, Format fallback) {
  if (a.format == "csv") return Format::Csv;
  if (a.format == "json") return Format::Json;
  return fallback;
}

// The config object with command-line flags written over its keys, so that
// flags and files go through the same strict reader.
Json load_config(const Args& a) {
  Json cfg = a.config.empty() ? Json::object() : io::read_file(a.config);
  if (!cfg.is_object()) throw ConfigError("config: expected an object");
  if (a.seed) cfg["seed"] = *a.seed;
  return cfg;
}

Json header(const std::string& command) {
  return {{"tool", "interpk"}, {"version", io::version()}, {"command", command}};
}

std::string csv(const std::function<void(std::ostream&)>& write) {
  std::ostringstream s;
  write(s);
  return s.str();
}

// Couples with the oracle strategy are randomized: they take the top-level
// seed, or the one stored in couple.oracle, and refuse to run without either.
Couple seeded_couple(io::Fields& f, const Json& cfg) {
  Couple couple = io::couple_from_json(f.at("couple"), "couple");
  std::optional<std::uint64_t> seed;
  if (f.has("seed")) seed = f.seed("seed", 0);
  if (couple.strategy() != KStrategy::Oracle) return couple;
  const Json& raw = cfg.at("couple");
  const bool stored = raw.contains("oracle") && raw.at("oracle").contains("seed");
  if (!seed && !stored) throw ConfigError("seed: required for the oracle strategy");
  OracleOptions options = couple.oracle_options();
  if (seed) options.seed = *seed;
  return couple.with_oracle_options(options);
}

FiniteVector vector_in(io::Fields& f) { return io::vector_from_json(f.at("vector"), "vector"); }

// --- commands ---------------------------------------------------------------------

Outcome kprofile(const Args& a) {
  const Json cfg = load_config(a);
  io::Fields f(cfg, "");
  const Couple couple = seeded_couple(f, cfg);
  const FiniteVector x = vector_in(f);
  DyadicWindow window;
  if (f.has("window")) window = io::window_from_json(f.at("window"), "window");
  f.done();
  const KProfile profile = k_profile(x, couple, window.n_min, window.n_max);
  if (format_or(a, Format::Csv) == Format::Csv) {
    return {csv([&](std::ostream& s) { io::write_profile_csv(s, profile); })};
  }
  Json out = header("kprofile");
  out["config"] = {{"couple", io::to_json(couple)}, {"vector", io::to_json(x)}, {"window", io::to_json(window)}};
  Json values = Json::array();
  for (double v : profile.values) values.push_back(io::number(v));
  out["profile"] = {{"n_min", profile.n_min}, {"n_max", profile.n_max}, {"k", values}};
  return {io::dump(out)};
}

Outcome interp_norm_cmd(const Args& a) {
  Json cfg = load_config(a);
  if (a.theta || a.q) {
    Json& params = cfg["params"];
    if (params.is_null()) params = Json::object();
    if (params.is_object()) {
      if (a.theta) params["theta"] = *a.theta;
      if (a.q) params["q"] = *a.q;
    }
  }
  io::Fields f(cfg, "");
  const Couple couple = seeded_couple(f, cfg);
  const FiniteVector x = vector_in(f);
  const InterpParams params = io::params_from_json(f.at("params"), "params");
  DyadicWindow window;
  if (f.has("window")) window = io::window_from_json(f.at("window"), "window");
  f.done();
  const InterpNormDetail d = interp_norm_detailed(x, k_evaluator(couple), params, window);
  if (format_or(a, Format::Json) == Format::Csv) {
    return {"value,edge_low,edge_high\n" + io::format_number(d.value) + "," +
            io::format_number(d.edge_low) + "," + io::format_number(d.edge_high) + "\n"};
  }
  Json out = header("interp-norm");
  out["config"] = {{"couple", io::to_json(couple)},
                   {"vector", io::to_json(x)},
                   {"params", io::to_json(params)},
                   {"window", io::to_json(window)}};
  out["value"] = io::number(d.value);
  out["edge_low"] = io::number(d.edge_low);
  out["edge_high"] = io::number(d.edge_high);
  return {io::dump(out)};
}

Outcome lattice_norm_cmd(const Args& a) {
  const Json cfg = load_config(a);
  io::Fields f(cfg, "");
  const Couple couple = seeded_couple(f, cfg);
  const FiniteVector x = vector_in(f);
  const LatticeParam lattice = io::lattice_from_json(f.at("lattice"), "lattice");
  f.done();
  const double value = lattice_norm(x, couple, lattice);
  const double constant = lattice_constant(lattice);
  if (format_or(a, Format::Json) == Format::Csv) {
    return {"value,lattice_constant\n" + io::format_number(value) + "," +
            io::format_number(constant) + "\n"};
  }
  Json out = header("lattice-norm");
  out["config"] = {{"couple", io::to_json(couple)},
                   {"vector", io::to_json(x)},
                   {"lattice", io::to_json(lattice)}};
  out["value"] = io::number(value);
  out["lattice_constant"] = io::number(constant);
  return {io::dump(out)};
}

// --matrix names a JSON file holding the row-major array.
Json matrix_config(const Args& a) {
  Json cfg = load_config(a);
  if (!a.matrix.empty()) cfg["matrix"] = io::read_file(a.matrix);
  return cfg;
}

Outcome snumbers(const Args& a) {
  const Json cfg = matrix_config(a);
  io::Fields f(cfg, "");
  const MatrixOperator op = io::matrix_from_json(f.at("matrix"), "matrix");
  f.done();
  const SNumSeq s = approx_numbers(op);
  if (format_or(a, Format::Csv) == Format::Csv) {
    return {csv([&](std::ostream& out) { io::write_snumbers_csv(out, s); })};
  }
  Json out = header("snumbers");
  out["config"] = {{"matrix", io::to_json(op)}};
  Json values = Json::array();
  for (double v : s.values) values.push_back(io::number(v));
  out["a_n"] = values;
  return {io::dump(out)};
}

Outcome ideal_norm_cmd(const Args& a) {
  Json cfg = matrix_config(a);
  if (a.p) cfg["p"] = *a.p;
  if (a.q) cfg["q"] = *a.q;
  io::Fields f(cfg, "");
  const MatrixOperator op = io::matrix_from_json(f.at("matrix"), "matrix");
  const LorentzParams params{f.number("p"), f.number("q")};
  f.done();
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("p, q: ") + e.what());
  }
  const double value = ideal_norm(op, params);
  if (format_or(a, Format::Json) == Format::Csv) {
    return {"p,q,ideal_norm\n" + io::format_number(params.p) + "," +
            io::format_number(params.q) + "," + io::format_number(value) + "\n"};
  }
  Json out = header("ideal-norm");
  out["config"] = {{"matrix", io::to_json(op)}, {"p", io::number(params.p)}, {"q", io::number(params.q)}};
  out["value"] = io::number(value);
  return {io::dump(out)};
}

Outcome witness(const Args& a) {
  Json cfg = load_config(a);
  if (a.p) cfg["p"] = *a.p;
  if (a.q) cfg["q"] = *a.q;
  if (a.n) cfg["n"] = *a.n;
  io::Fields f(cfg, "");
  const double p = f.number("p");
  const double q = f.number("q");
  const int n = f.integer("n", 1 << 16);
  std::vector<SeriesSpec> series;
  if (f.has("series")) {
    const Json& list = f.at("series");
    if (!list.is_array()) throw ConfigError("series: expected an array of {p, q}");
    for (std::size_t i = 0; i < list.size(); ++i) {
      io::Fields s(list[i], "series[" + std::to_string(i) + "]");
      series.push_back({s.number("p"), s.number("q")});
      s.done();
    }
  }
  f.done();
  if (!(p > 0) || std::isinf(p)) throw ConfigError("p: must be positive and finite");
  if (!(q > 0) || std::isinf(q)) throw ConfigError("q: must be positive and finite");
  if (n < 4) throw ConfigError("n: must be at least 4");
  const WitnessReport report = witness_sequence(p, q, n, series);
  if (format_or(a, Format::Csv) == Format::Csv) {
    return {csv([&](std::ostream& s) { io::write_witness_csv(s, report); })};
  }
  Json out = header("witness");
  Json resolved_series = Json::array();
  Json rows = Json::array();
  for (const SeriesMembership& s : report.series) {
    resolved_series.push_back({{"p", io::number(s.spec.p)}, {"q", io::number(s.spec.q)}});
    rows.push_back({{"p", io::number(s.spec.p)},
                    {"q", io::number(s.spec.q)},
                    {"half_sum", io::number(s.half_sum)},
                    {"total", io::number(s.total)},
                    {"increment", io::number(s.increment)},
                    {"tail_ratio", io::number(s.tail_ratio)},
                    {"flag", to_string(s.flag)}});
  }
  out["config"] = {{"p", io::number(p)}, {"q", io::number(q)}, {"n", n}, {"series", resolved_series}};
  out["flag_rule"] = "trend indicator only: diverging when S_N - S_{N/2} >= " +
                     io::format_number(kDivergenceIncrement) +
                     ", converging when (S_N - S_{N/2}) / S_N <= " +
                     io::format_number(kConvergenceTailRatio);
  out["series"] = rows;
  return {io::dump(out)};
}

Outcome lift(const Args& a) {
  Json cfg = load_config(a);
  if (a.n) cfg["length"] = *a.n;
  io::Fields f(cfg, "");
  DecaySpec spec;
  spec.epsilon = f.numbers("epsilon");
  const Json& h = f.at("h");
  if (!h.is_array()) throw ConfigError("h: expected an array of integers");
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!h[i].is_number_integer()) {
      throw ConfigError("h[" + std::to_string(i) + "]: expected an integer");
    }
    spec.h.push_back(h[i].get<std::int64_t>());
  }
  const int length = f.integer("length", static_cast<int>(spec.epsilon.size()));
  f.done();
  std::vector<double> xi;
  try {
    xi = lift_sequence(spec, length);
  } catch (const InvariantError& e) {
    throw ConfigError(std::string("epsilon, h: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("length: ") + e.what());
  }
  if (format_or(a, Format::Csv) == Format::Csv) {
    return {csv([&](std::ostream& s) { io::write_lift_csv(s, spec, xi); })};
  }
  Json out = header("lift");
  Json eps = Json::array();
  for (int i = 0; i < length; ++i) eps.push_back(io::number(spec.epsilon[static_cast<std::size_t>(i)]));
  out["config"] = {{"epsilon", eps},
                   {"h", std::vector<std::int64_t>(spec.h.begin(), spec.h.begin() + length)},
                   {"length", length}};
  Json values = Json::array();
  for (double v : xi) values.push_back(io::number(v));
  out["xi"] = values;
  return {io::dump(out)};
}

Outcome strictness(const Args& a) {
  Json cfg = load_config(a);
  if (a.theta || a.q) {
    Json& params = cfg["params"];
    if (params.is_null()) params = {{"theta", 0.5}, {"q", 1.0}};
    if (params.is_object()) {
      if (a.theta) params["theta"] = *a.theta;
      if (a.q) params["q"] = *a.q;
    }
  }
  if (a.max_exponent) cfg["max_exponent"] = *a.max_exponent;
  io::Fields f(cfg, "");
  InterpParams params{0.5, 1.0};
  if (f.has("params")) params = io::params_from_json(f.at("params"), "params");
  const int max_exponent = f.integer("max_exponent", 6);
  DyadicWindow window = kStrictnessWindow;
  if (f.has("window")) window = io::window_from_json(f.at("window"), "window");
  f.done();
  if (max_exponent < 0 || max_exponent > 24) {
    throw ConfigError("max_exponent: must lie in [0, 24]");
  }
  const auto points = strictness_sweep(max_exponent, params, window);
  if (format_or(a, Format::Csv) == Format::Csv) {
    return {csv([&](std::ostream& s) { io::write_strictness_csv(s, points); })};
  }
  Json out = header("strictness");
  out["config"] = {{"params", io::to_json(params)},
                   {"max_exponent", max_exponent},
                   {"window", io::to_json(window)}};
  Json rows = Json::array();
  for (const auto& p : points) {
    rows.push_back({{"N", p.n},
                    {"int_norm", io::number(p.int_norm)},
                    {"sum_norm", io::number(p.sum_norm)},
                    {"interp_norm", io::number(p.interp_norm)}});
  }
  out["points"] = rows;
  return {io::dump(out)};
}

// --- verify -------------------------------------------------------------------------

void require_seed(const Json& cfg) {
  if (!cfg.contains("seed")) throw ConfigError("seed: required for this check");
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << body) || !file.flush()) {
    throw std::runtime_error("cannot write " + path);
  }
}

std::string band_csv(const EquivReport& r) {
  std::ostringstream s;
  s << "dim,count,min_ratio,max_ratio,spread\n";
  for (const DimBand& b : r.per_dim) {
    s << b.dim << ',' << b.count << ',' << io::format_number(b.min_ratio) << ','
      << io::format_number(b.max_ratio) << ',' << io::format_number(b.spread()) << '\n';
  }
  return s.str();
}

Json verify_json(const Json& report, const Args& a) {
  Json out = header("verify");
  for (const auto& item : report.items()) out[item.key()] = item.value();
  if (!a.trace.empty()) out["trace_path"] = a.trace;
  return out;
}

template <class Config>
Outcome run_equivalence(const Args& a, Config (*read)(const Json&),
                        EquivReport (*check)(const Config&)) {
  const Json cfg = load_config(a);
  require_seed(cfg);
  Config config = read(cfg);
  config.trace = !a.trace.empty();
  const EquivReport report = check(config);
  if (!a.trace.empty()) {
    write_file(a.trace, csv([&](std::ostream& s) { io::write_trace_csv(s, report.trace); }));
  }
  const int code = report.pass ? kOk : kVerifyFailed;
  if (format_or(a, Format::Json) == Format::Csv) return {band_csv(report), code};
  return {io::dump(verify_json(io::report_json(report, io::to_json(config)), a)), code};
}

Outcome verify(const Args& a) {
  if (a.check == "mainlema") {
    return run_equivalence<MainlemaConfig>(a, io::mainlema_from_json, check_mainlema);
  }
  if (a.check == "sum_intersection") {
    return run_equivalence<SumIntersectionConfig>(a, io::sum_intersection_from_json,
                                                  check_sum_intersection);
  }
  if (a.check == "reiteration") {
    return run_equivalence<ReiterationConfig>(a, io::reiteration_from_json, check_reiteration);
  }
  if (a.check == "konig") {
    return run_equivalence<KonigConfig>(a, io::konig_from_json, check_konig);
  }
  if (!a.trace.empty()) throw ConfigError("trace: not available for " + a.check);
  if (a.check == "dichotomy") {
    const Json cfg = load_config(a);
    require_seed(cfg);
    const DichotomyReport report = dichotomy_sweep(io::dichotomy_from_json(cfg));
    const int code = report.pass ? kOk : kVerifyFailed;
    if (format_or(a, Format::Json) == Format::Csv) {
      std::ostringstream s;
      s << "half_width,dim,value\n";
      for (const auto& r : report.rows) {
        s << r.half_width << ',' << r.dim << ',' << io::format_number(r.value) << '\n';
      }
      return {s.str(), code};
    }
    return {io::dump(verify_json(io::report_json(report), a)), code};
  }
  if (a.check == "distinctness") {
    if (a.seed) throw ConfigError("seed: distinctness is not randomized");
    const DistinctnessReport report = distinctness_demo(io::distinctness_from_json(load_config(a)));
    const int code = report.pass ? kOk : kVerifyFailed;
    if (format_or(a, Format::Json) == Format::Csv) {
      std::ostringstream s;
      s << "witness_p,witness_q,other_p,other_q,own,in_other,separated\n";
      for (const auto& r : report.rows) {
        s << io::format_number(r.witness.p) << ',' << io::format_number(r.witness.q) << ','
          << io::format_number(r.other.p) << ',' << io::format_number(r.other.q) << ','
          << to_string(r.own) << ',' << to_string(r.in_other) << ','
          << (r.separated ? "true" : "false") << '\n';
      }
      return {s.str(), code};
    }
    return {io::dump(verify_json(io::report_json(report), a)), code};
  }
  throw ConfigError("check: unknown check '" + a.check + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"K-functionals, real interpolation norms and s-numbers", "interpk"};
  app.set_version_flag("--version", std::string(io::version()));
  app.require_subcommand(1);
  Args a;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", a.config, "JSON config file");
    sub->add_option("--output,-o", a.output, "write the report here instead of stdout");
    sub->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", a.seed, "seed for randomized steps");
    return sub;
  };
  const std::vector<std::pair<std::string, std::function<Outcome(const Args&)>>> commands{
      {"kprofile", kprofile},         {"interp-norm", interp_norm_cmd},
      {"lattice-norm", lattice_norm_cmd}, {"snumbers", snumbers},
      {"ideal-norm", ideal_norm_cmd}, {"witness", witness},
      {"lift", lift},                 {"strictness", strictness},
      {"verify", verify}};

  common(app.add_subcommand("kprofile", "K(x, 2^n) over a dyadic window"));
  common(app.add_subcommand("interp-norm", "(theta, q) interpolation norm"));
  common(app.add_subcommand("lattice-norm", "interpolation norm through a weighted lattice"));
  for (const char* name : {"snumbers", "ideal-norm"}) {
    auto* sub = common(app.add_subcommand(name, name == std::string("snumbers")
                                                    ? "approximation numbers of a matrix"
                                                    : "Lorentz ideal quasi-norm of a matrix"));
    sub->add_option("--matrix", a.matrix, "JSON file with the row-major matrix");
    if (name == std::string("ideal-norm")) {
      sub->add_option("--p", a.p, "Lorentz p");
      sub->add_option("--q", a.q, "Lorentz q");
    }
  }
  auto* wit = common(app.add_subcommand("witness", "membership trends of the witness sequence"));
  wit->add_option("--p", a.p, "witness p");
  wit->add_option("--q", a.q, "witness q");
  wit->add_option("--n", a.n, "sequence length");
  auto* lift_sub = common(app.add_subcommand("lift", "lift a decay rate through an index map"));
  lift_sub->add_option("--n", a.n, "number of terms");
  auto* strict = common(app.add_subcommand("strictness", "norms of y_N for N = 2^0..2^m"));
  strict->add_option("--theta", a.theta, "interpolation theta");
  strict->add_option("--q", a.q, "interpolation q");
  strict->add_option("--max-exponent", a.max_exponent, "largest m");
  auto* ver = common(app.add_subcommand("verify", "run a named verification check"));
  ver->add_option("check", a.check,
                  "mainlema, sum_intersection, reiteration, konig, dichotomy or distinctness")
      ->required();
  ver->add_option("--trace", a.trace, "CSV file for per-sample ratios");
  // interp-norm takes --theta/--q on top of its params key.
  auto* in = app.get_subcommand("interp-norm");
  in->add_option("--theta", a.theta, "interpolation theta");
  in->add_option("--q", a.q, "interpolation q");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << io::version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "interpk: " << e.what() << '\n';
    return kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Outcome outcome;
    for (const auto& [command, handler] : commands) {
      if (command == name) outcome = handler(a);
    }
    if (a.output.empty()) {
      out << outcome.body;
    } else {
      write_file(a.output, outcome.body);
    }
    if (outcome.code == kVerifyFailed) err << "interpk: verify " << a.check << ": FAIL\n";
    return outcome.code;
  } catch (const ConstructionError& e) {
    err << "interpk: " << e.what() << '\n';
    return kRuntimeFailure;
  } catch (const EmptyReport& e) {
    err << "interpk: " << e.what() << '\n';
    return kRuntimeFailure;
  } catch (const Error& e) {
    // Everything else the library rejects is a property of the input.
    err << "interpk: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "interpk: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

}  // namespace interpk::cli
