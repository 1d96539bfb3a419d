#include "interpk/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "interpk/errors.hpp"
#include "interpk/numeric.hpp"
#include "interpk/random.hpp"

namespace interpk {

// --- execution -------------------------------------------------------------------

int thread_count() {
  if (const char* env = std::getenv("INTERPK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min(count, static_cast<std::size_t>(thread_count()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        // keep the lowest failing index so the rethrown error is deterministic
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// --- couples -----------------------------------------------------------------------

Couple CoupleFamily::make(int dim) const {
  if (dim < 1) throw DomainError("dimension must be positive");
  if (kind == Kind::L1Linf) return Couple::l1_linf(dim);
  std::vector<double> w0, w1;
  for (int k = 0; k < dim; ++k) {
    w0.push_back(std::exp2(alpha0 * k));
    w1.push_back(std::exp2(alpha1 * k));
  }
  if (kind == Kind::WeightedSup) return Couple::weighted_sup(w0, w1);
  return Couple::power_coordinatewise(p, w0, w1);
}

std::string CoupleFamily::name() const {
  switch (kind) {
    case Kind::L1Linf:
      return "l1_linf";
    case Kind::WeightedSup:
      return "weighted_sup";
    case Kind::PowerCoordinatewise:
      return "power_coordinatewise";
  }
  return "l1_linf";
}

CoupleFamily::Kind family_kind_from_string(const std::string& name) {
  if (name == "l1_linf") return CoupleFamily::Kind::L1Linf;
  if (name == "weighted_sup") return CoupleFamily::Kind::WeightedSup;
  if (name == "power_coordinatewise") return CoupleFamily::Kind::PowerCoordinatewise;
  throw ConfigError("unknown couple family '" + name + "'");
}

// --- sampling ----------------------------------------------------------------------

std::mt19937_64 sample_rng(std::uint64_t seed, int dim, std::uint64_t index) {
  return make_rng(seed, (static_cast<std::uint64_t>(dim) << 32) ^ index);
}

FiniteVector mixed_sample(std::mt19937_64& rng, int dim) {
  std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
  switch (uniform_int(rng, 0, 2)) {
    case 0:
      for (double& v : x) v = gaussian(rng);
      break;
    case 1: {
      const int spikes = uniform_int(rng, 1, std::min(3, dim));
      for (int s = 0; s < spikes; ++s) {
        const double sign = uniform_int(rng, 0, 1) == 0 ? -1.0 : 1.0;
        x[static_cast<std::size_t>(uniform_int(rng, 0, dim - 1))] =
            sign * std::exp2(uniform(rng, -3, 3));
      }
      break;
    }
    default: {
      // y_N = (1/N, ..., 1/N) on a random support of size N
      const int n = uniform_int(rng, 1, dim);
      std::vector<int> slots(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) slots[static_cast<std::size_t>(i)] = i;
      for (int i = 0; i < n; ++i) {
        std::swap(slots[static_cast<std::size_t>(i)],
                  slots[static_cast<std::size_t>(uniform_int(rng, i, dim - 1))]);
        x[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])] = 1.0 / n;
      }
    }
  }
  return FiniteVector(0, std::move(x));
}

std::vector<double> nonincreasing_sample(std::mt19937_64& rng, int length) {
  std::vector<double> s(static_cast<std::size_t>(length));
  switch (uniform_int(rng, 0, 4)) {
    case 0:
      for (double& v : s) v = -std::log(uniform(rng, 1e-12, 1.0));
      std::sort(s.begin(), s.end(), std::greater<>());
      break;
    case 1: {
      const double a = uniform(rng, 0.1, 2.0);
      for (int n = 1; n <= length; ++n) s[static_cast<std::size_t>(n - 1)] = std::pow(n, -a);
      break;
    }
    case 2: {
      const double p = uniform(rng, 0.5, 3.0), q = uniform(rng, 0.5, 3.0);
      for (int n = 1; n <= length; ++n) {
        s[static_cast<std::size_t>(n - 1)] =
            std::pow(n, -1 / p) * std::pow(1 + std::log(n), -1 / q);
      }
      break;
    }
    case 3: {
      const int k = uniform_int(rng, 1, length);
      for (int n = 0; n < length; ++n) s[static_cast<std::size_t>(n)] = n < k ? 1.0 : 0.0;
      break;
    }
    default: {
      const double c = uniform(rng, 0.05, 1.0);
      for (int n = 0; n < length; ++n) s[static_cast<std::size_t>(n)] = std::exp2(-c * n);
    }
  }
  return s;
}

// --- report assembly ---------------------------------------------------------------

namespace {

using SampleBody = std::function<std::vector<TraceRow>(int dim, std::uint64_t index)>;

bool counts(const TraceRow& row) {
  return row.lhs > 0 && row.rhs > 0 && std::isfinite(row.lhs) &&
         std::isfinite(row.rhs);
}

EquivReport collect(const std::string& check, std::uint64_t seed,
                    const std::vector<int>& dims, int count, bool trace,
                    const SampleBody& body) {
  if (count < 1) throw DomainError("sample count must be at least 1");
  if (dims.empty()) throw DomainError("dimension list is empty");
  EquivReport report;
  report.check = check;
  report.seed = seed;
  bool any = false;
  for (int dim : dims) {
    std::vector<std::vector<TraceRow>> rows(static_cast<std::size_t>(count));
    parallel_for(rows.size(), [&](std::size_t i) {
      rows[i] = body(dim, static_cast<std::uint64_t>(i));
    });
    DimBand band{dim, 0, kInf, 0};
    for (auto& sample_rows : rows) {
      for (TraceRow& row : sample_rows) {
        row.dim = dim;
        if (!counts(row)) continue;
        row.ratio = row.lhs / row.rhs;
        band.min_ratio = std::min(band.min_ratio, row.ratio);
        band.max_ratio = std::max(band.max_ratio, row.ratio);
        ++band.count;
        if (trace) report.trace.push_back(row);
      }
    }
    if (band.count == 0) continue;
    if (!any) {
      report.min_ratio = band.min_ratio;
      report.max_ratio = band.max_ratio;
      any = true;
    }
    report.min_ratio = std::min(report.min_ratio, band.min_ratio);
    report.max_ratio = std::max(report.max_ratio, band.max_ratio);
    report.sample_count += band.count;
    report.per_dim.push_back(band);
  }
  if (!any) throw EmptyReport(check + ": no sample produced a ratio");
  return report;
}

std::string fixed(double v) { return format_number(v); }

}  // namespace

EquivReport equivalence_report(const NormFn& a, const NormFn& b,
                               const VectorSampler& sampler, int dim, int count,
                               std::uint64_t seed, bool trace) {
  EquivReport report =
      collect("equivalence", seed, {dim}, count, trace,
              [&](int d, std::uint64_t i) {
                auto rng = sample_rng(seed, d, i);
                const FiniteVector x = sampler(rng, d);
                return std::vector<TraceRow>{{d, i, 0, a(x), b(x), 0}};
              });
  report.rule = "none";
  return report;
}

bool spread_stable(const std::vector<DimBand>& bands, double growth) {
  for (std::size_t i = 1; i < bands.size(); ++i) {
    if (bands[i].spread() > bands[i - 1].spread() * (1 + growth)) return false;
  }
  return true;
}

// --- level clipping ----------------------------------------------------------------

LevelClipTable::LevelClipTable(const FiniteVector& x, const NormFn& n0,
                               const NormFn& n1) {
  std::vector<double> mags;
  for (double v : x.entries) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
  std::vector<double> levels{0.0};
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (i > 0) levels.push_back(0.5 * (mags[i - 1] + mags[i]));
    levels.push_back(mags[i]);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (double m : levels) {
    FiniteVector clamped = x, peaks = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      clamped.entries[i] = std::clamp(x.entries[i], -m, m);
      peaks.entries[i] = x.entries[i] - clamped.entries[i];
    }
    entries_.push_back({n0(peaks), n1(clamped), peaks});
    entries_.push_back({n0(clamped), n1(peaks), clamped});
  }
}

double LevelClipTable::value(double t) const {
  double best = kInf;
  for (const Entry& e : entries_) best = std::min(best, e.a_norm + t * e.b_norm);
  return best;
}

FiniteVector LevelClipTable::best_a0(double t) const {
  const Entry* best = &entries_.front();
  for (const Entry& e : entries_) {
    if (e.a_norm + t * e.b_norm < best->a_norm + t * best->b_norm) best = &e;
  }
  return best->a;
}

// --- checks --------------------------------------------------------------------------

EquivReport check_mainlema(const MainlemaConfig& config) {
  if (!(config.band_lo > 0) || !(config.band_lo <= config.band_hi)) {
    throw DomainError("mainlema band must satisfy 0 < lo <= hi");
  }
  std::vector<double> ts;
  for (int n : config.t_exponents) {
    if (n <= 0) ts.push_back(std::ldexp(1.0, n));
  }
  if (ts.empty()) throw DomainError("t grid has no point in (0, 1]");
  std::vector<DerivedCouple> derived;
  for (int dim : config.dims) {
    derived.emplace_back(config.couple.make(dim), config.oracle);
  }
  EquivReport report = collect(
      "mainlema", config.seed, config.dims, config.count, config.trace,
      [&](int dim, std::uint64_t index) {
        const auto slot = static_cast<std::size_t>(
            std::find(config.dims.begin(), config.dims.end(), dim) -
            config.dims.begin());
        const DerivedCouple& d = derived[slot];
        auto rng = sample_rng(config.seed, dim, index);
        const FiniteVector x = mixed_sample(rng, dim);
        std::vector<TraceRow> rows;
        if (x.is_zero()) return rows;
        for (double t : ts) {
          rows.push_back({dim, index, t, d.k_surrogate(x, t), d.k_oracle(x, t), 0});
        }
        return rows;
      });
  report.pass = report.min_ratio >= config.band_lo && report.max_ratio <= config.band_hi;
  report.rule = "ratio in [" + fixed(config.band_lo) + ", " + fixed(config.band_hi) + "]";
  return report;
}

EquivReport check_sum_intersection(const SumIntersectionConfig& config) {
  const InterpParams params{config.theta, config.p};
  params.validate();
  const InterpParams dual{1 - config.theta, config.p};
  struct PerDim {
    Couple base;
    DerivedCouple derived;
    Norm e_theta;
    Norm e_dual;
  };
  std::vector<PerDim> per;
  for (int dim : config.dims) {
    Couple base = config.couple.make(dim);
    per.push_back({base, DerivedCouple(base), endpoint_space(base, params, config.window),
                   endpoint_space(base, dual, config.window)});
  }
  const bool sum_branch = config.theta < 0.5;
  // Exact K of (A0 + A1, A0 ∩ A1) where available, the surrogate otherwise.
  std::vector<KEvaluator> derived_k;
  bool all_exact = true;
  for (const PerDim& pd : per) {
    all_exact &= pd.derived.has_exact();
    derived_k.push_back(pd.derived.has_exact() ? pd.derived.exact_evaluator()
                                               : pd.derived.surrogate_evaluator());
  }
  EquivReport report = collect(
      "sum_intersection", config.seed, config.dims, config.count, config.trace,
      [&](int dim, std::uint64_t index) {
        const auto slot = static_cast<std::size_t>(
            std::find(config.dims.begin(), config.dims.end(), dim) -
            config.dims.begin());
        const PerDim& pd = per[slot];
        auto rng = sample_rng(config.seed, dim, index);
        const FiniteVector x = mixed_sample(rng, dim);
        std::vector<TraceRow> rows;
        if (x.is_zero()) return rows;
        const double lhs = interp_norm(x, derived_k[slot], params, config.window);
        double rhs;
        if (sum_branch) {
          rhs = LevelClipTable(x, pd.e_theta, pd.e_dual).value(1.0);
        } else {
          rhs = std::max(pd.e_theta(x), pd.e_dual(x));
        }
        rows.push_back({dim, index, 0, lhs, rhs, 0});
        return rows;
      });
  report.pass = spread_stable(report.per_dim, config.growth);
  report.rule = "spread(2d) <= (1 + " + fixed(config.growth) + ") spread(d); derived K " +
                (all_exact ? "exact" : "surrogate");
  return report;
}

EquivReport check_reiteration(const ReiterationConfig& config) {
  if (!(config.alpha > 0 && config.alpha < 1)) {
    throw DomainError("reiteration requires alpha in (0, 1)");
  }
  const InterpParams p0{config.theta0, config.p}, p1{config.theta1, config.p};
  p0.validate();
  p1.validate();
  const InterpParams outer{config.alpha, config.r};
  outer.validate();
  const InterpParams direct{(1 - config.alpha) * config.theta0 + config.alpha * config.theta1,
                            config.r};
  struct PerDim {
    Couple base;
    Norm e0;
    Norm e1;
    Couple reiterated;
  };
  std::vector<PerDim> per;
  for (int dim : config.dims) {
    Couple base = config.couple.make(dim);
    Norm e0 = endpoint_space(base, p0), e1 = endpoint_space(base, p1);
    OracleOptions opts = config.oracle;
    opts.max_dim = std::max(opts.max_dim, dim);
    per.push_back({base, e0, e1, Couple::oracle(e0, e1, opts)});
  }
  EquivReport report = collect(
      "reiteration", config.seed, config.dims, config.count, config.trace,
      [&](int dim, std::uint64_t index) {
        const auto slot = static_cast<std::size_t>(
            std::find(config.dims.begin(), config.dims.end(), dim) -
            config.dims.begin());
        const PerDim& pd = per[slot];
        auto rng = sample_rng(config.seed, dim, index);
        const FiniteVector x = mixed_sample(rng, dim);
        std::vector<TraceRow> rows;
        if (x.is_zero()) return rows;
        const LevelClipTable table(x, pd.e0, pd.e1);
        KEvaluator k;
        if (config.k_method == ReiterationK::LevelClip) {
          k = [&table](const FiniteVector&, double t) { return table.value(t); };
        } else {
          k = [&table, &pd](const FiniteVector& v, double t) {
            const FiniteVector start = table.best_a0(t);
            return std::min(table.value(t),
                            k_oracle(v, t, pd.reiterated, pd.reiterated.oracle_options(),
                                     std::span<const FiniteVector>(&start, 1)));
          };
        }
        rows.push_back({dim, index, 0, interp_norm(x, k, outer, config.outer),
                        interp_norm(x, pd.base, direct), 0});
        return rows;
      });
  report.pass = spread_stable(report.per_dim, config.growth);
  report.rule = "spread(2d) <= (1 + " + fixed(config.growth) + ") spread(d)";
  return report;
}

EquivReport check_konig(const KonigConfig& config) {
  const InterpParams params{config.theta, config.q};
  params.validate();
  if (!(config.p0 > 0) || !(config.p1 > 0)) {
    throw DomainError("konig exponents must be positive");
  }
  config.window.validate();
  const double inv_p = (1 - config.theta) / config.p0 + config.theta / config.p1;
  const LorentzParams lorentz{1 / inv_p, config.q};
  lorentz.validate();
  for (int len : config.lengths) {
    if (len < 1) throw DomainError("konig lengths must be positive");
  }
  EquivReport report = collect(
      "konig", config.seed, config.lengths, config.count, config.trace,
      [&](int len, std::uint64_t index) {
        auto rng = sample_rng(config.seed, len, index);
        const std::vector<double> sigma = nonincreasing_sample(rng, len);
        KProfile profile{config.window.n_min, config.window.n_max, {}};
        for (int n = config.window.n_min; n <= config.window.n_max; ++n) {
          profile.values.push_back(
              k_operator_diag(sigma, std::ldexp(1.0, n), config.p0, config.p1));
        }
        return std::vector<TraceRow>{{len, index, 0, profile_norm(profile, params),
                                      lorentz_norm(sigma, lorentz), 0}};
      });
  report.pass = spread_stable(report.per_dim, config.growth);
  report.rule = "spread(2d) <= (1 + " + fixed(config.growth) + ") spread(d)";
  return report;
}

DichotomyReport dichotomy_sweep(const DichotomyConfig& config) {
  if (!(config.t > 0)) throw DomainError("t must be positive");
  if (config.half_widths.empty()) throw DomainError("no window given");
  DichotomyReport report;
  report.config = config;
  for (int w : config.half_widths) {
    if (w < 0) throw DomainError("half widths must be nonnegative");
    const int dim = 2 * w + 1;
    Couple couple = Couple::l1_linf(dim);
    if (!config.ordered) {
      std::vector<double> w0, w1;
      for (int k = -w; k <= w; ++k) {
        w0.push_back(std::ldexp(1.0, k));
        w1.push_back(std::ldexp(1.0, -k));
      }
      couple = Couple::power_coordinatewise(1, w0, w1, -w);
    }
    report.rows.push_back(
        {w, dim, k_sphere_sup(couple, config.t, config.samples, config.seed)});
  }
  if (config.ordered) {
    const double cap = config.t < 1 ? config.t : 1.0;
    report.rule = "value <= min(t, 1)";
    for (const auto& row : report.rows) report.pass &= row.value <= cap * (1 + 1e-12);
  } else {
    report.rule = "value >= " + fixed(config.threshold);
    for (const auto& row : report.rows) report.pass &= row.value >= config.threshold;
  }
  return report;
}

DistinctnessReport distinctness_demo(const DistinctnessConfig& config) {
  if (config.p_list.empty() || config.q_list.empty()) {
    throw DomainError("distinctness needs nonempty p and q lists");
  }
  std::vector<SeriesSpec> grid;
  for (double p : config.p_list)
    for (double q : config.q_list) grid.push_back({p, q});
  DistinctnessReport report;
  report.config = config;
  report.rule = "each pair separated in at least one direction";
  // separated[i][j]: the witness for grid[i] tells grid[i] from grid[j]
  std::vector<std::vector<bool>> separated(grid.size(),
                                           std::vector<bool>(grid.size(), false));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const WitnessReport w =
        witness_sequence(grid[i].p, grid[i].q, config.length, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (i == j) continue;
      DistinctnessRow row{grid[i], grid[j], w.series[i].flag, w.series[j].flag, false};
      row.separated = row.own == Membership::Diverging &&
                      row.in_other == Membership::Converging;
      separated[i][j] = row.separated;
      report.rows.push_back(row);
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      report.pass &= separated[i][j] || separated[j][i];
    }
  }
  return report;
}

}  // namespace interpk
