#include "interpk/couples.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "interpk/errors.hpp"
#include "interpk/numeric.hpp"
#include "interpk/random.hpp"

namespace interpk {

double FiniteVector::at(int index) const {
  const int local = index - offset;
  if (local < 0 || local >= static_cast<int>(entries.size())) return 0.0;
  return entries[static_cast<std::size_t>(local)];
}

bool FiniteVector::is_zero() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](double v) { return v == 0.0; });
}

FiniteVector scaled(const FiniteVector& x, double factor) {
  FiniteVector out = x;
  for (double& v : out.entries) v *= factor;
  return out;
}

FiniteVector add(const FiniteVector& x, const FiniteVector& y) {
  if (x.size() == 0) return y;
  if (y.size() == 0) return x;
  const int lo = std::min(x.offset, y.offset);
  const int hi = std::max(x.window().end(), y.window().end());
  FiniteVector out(lo, std::vector<double>(static_cast<std::size_t>(hi - lo)));
  for (int i = lo; i < hi; ++i) {
    out.entries[static_cast<std::size_t>(i - lo)] = x.at(i) + y.at(i);
  }
  return out;
}

FiniteVector aligned(const FiniteVector& x, const Window& window) {
  if (!window.contains(x.window())) {
    throw WindowError("vector window [" + std::to_string(x.offset) + ", " +
                      std::to_string(x.window().end()) +
                      ") is not contained in [" +
                      std::to_string(window.offset) + ", " +
                      std::to_string(window.end()) + ")");
  }
  if (x.offset == window.offset && x.window().size == window.size) return x;
  FiniteVector out(window.offset,
                   std::vector<double>(static_cast<std::size_t>(window.size)));
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.entries[static_cast<std::size_t>(x.offset - window.offset) + i] =
        x.entries[i];
  }
  return out;
}

// --- WeightedNorm -----------------------------------------------------------

WeightedNorm::WeightedNorm(double p, std::vector<double> weights, int offset)
    : p_(p), offset_(offset), weights_(std::move(weights)) {
  if (!(p_ > 0)) throw DomainError("exponent p must be positive");
  for (double w : weights_) {
    if (!(w > 0) || !std::isfinite(w)) {
      throw InvariantError("weights must be positive and finite");
    }
  }
}

WeightedNorm WeightedNorm::unit(double p, int size, int offset) {
  return WeightedNorm(p, std::vector<double>(static_cast<std::size_t>(size), 1.0),
                      offset);
}

double WeightedNorm::weight_at(int index) const {
  const int local = index - offset_;
  if (local < 0 || local >= static_cast<int>(weights_.size())) {
    throw WindowError("index outside the norm window");
  }
  return weights_[static_cast<std::size_t>(local)];
}

double WeightedNorm::quasi_constant() const {
  return p_ < 1 ? std::pow(2.0, 1.0 / p_ - 1.0) : 1.0;
}

double WeightedNorm::power_exponent() const { return std::min(p_, 1.0); }

double quasi_norm(const FiniteVector& x, const WeightedNorm& norm) {
  if (!norm.window().contains(x.window())) {
    throw WindowError("vector window is not contained in the norm window");
  }
  std::vector<double> values(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    values[i] = norm.weight_at(x.offset + static_cast<int>(i)) *
                std::abs(x.entries[i]);
  }
  return lp_norm(values, norm.p());
}

// --- Norm -------------------------------------------------------------------

struct Norm::Impl {
  struct Custom {
    std::string name;
    Window window;
    double quasi_constant;
    Evaluator evaluator;
  };
  std::variant<WeightedNorm, Custom> body;
  std::string name;
};

Norm::Norm(WeightedNorm weighted) {
  auto impl = std::make_shared<Impl>(Impl{weighted, {}});
  const double p = weighted.p();
  impl->name = std::isinf(p) ? "linf" : "l" + format_number(p);
  impl_ = std::move(impl);
}

Norm::Norm(std::string name, Window window, double quasi_constant,
           Evaluator evaluator) {
  if (!(quasi_constant >= 1)) {
    throw InvariantError("quasi-norm constant must be >= 1");
  }
  impl_ = std::make_shared<Impl>(
      Impl{Impl::Custom{name, window, quasi_constant, std::move(evaluator)},
           name});
}

double Norm::operator()(const FiniteVector& x) const {
  if (const auto* w = std::get_if<WeightedNorm>(&impl_->body)) {
    return quasi_norm(x, *w);
  }
  const auto& custom = std::get<Impl::Custom>(impl_->body);
  if (!custom.window.contains(x.window())) {
    throw WindowError("vector window is not contained in the norm window");
  }
  return custom.evaluator(x);
}

const WeightedNorm* Norm::weighted() const {
  return std::get_if<WeightedNorm>(&impl_->body);
}

const std::string& Norm::name() const { return impl_->name; }

Window Norm::window() const {
  if (const auto* w = weighted()) return w->window();
  return std::get<Impl::Custom>(impl_->body).window;
}

double Norm::quasi_constant() const {
  if (const auto* w = weighted()) return w->quasi_constant();
  return std::get<Impl::Custom>(impl_->body).quasi_constant;
}

double Norm::scale_at(int index) const {
  if (const auto* w = weighted()) return w->weight_at(index);
  return 1.0;
}

// --- Couple -----------------------------------------------------------------

const char* to_string(KStrategy strategy) {
  switch (strategy) {
    case KStrategy::ExactL1Linf:
      return "exact_l1_linf";
    case KStrategy::WeightedSupLP:
      return "weighted_sup_lp";
    case KStrategy::PowerCoordinatewise:
      return "power_coordinatewise";
    case KStrategy::Oracle:
      return "oracle";
  }
  return "unknown";
}

KStrategy strategy_from_string(const std::string& name) {
  for (KStrategy s : {KStrategy::ExactL1Linf, KStrategy::WeightedSupLP,
                      KStrategy::PowerCoordinatewise, KStrategy::Oracle}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown strategy '" + name + "'");
}

namespace {

bool has_unit_weights(const WeightedNorm& norm) {
  const auto w = norm.weights();
  return std::all_of(w.begin(), w.end(), [](double v) { return v == 1.0; });
}

const WeightedNorm& require_weighted(const Norm& norm, const char* what) {
  const WeightedNorm* w = norm.weighted();
  if (w == nullptr) {
    throw InvariantError(std::string(what) + " requires weighted lp norms");
  }
  return *w;
}

// Proven band of the coordinatewise surrogate relative to the true K of
// (lp(w0), lp(w1)): (a^p + b^p)^{1/p} vs a + b.
std::pair<double, double> power_band(double p) {
  if (p >= 1) return {std::pow(2.0, -(1.0 - 1.0 / p)), 1.0};
  return {1.0, std::pow(2.0, 1.0 / p - 1.0)};
}

}  // namespace

Couple::Couple(Norm norm0, Norm norm1, KStrategy strategy, double equiv_lo,
               double equiv_hi, OracleOptions oracle)
    : norm0_(std::move(norm0)),
      norm1_(std::move(norm1)),
      strategy_(strategy),
      equiv_lo_(equiv_lo),
      equiv_hi_(equiv_hi),
      oracle_(oracle) {
  if (!(norm0_.window() == norm1_.window())) {
    throw WindowError("couple norms must share an index window");
  }
  if (!(equiv_lo_ > 0) || !(equiv_lo_ <= 1) || !(equiv_hi_ >= 1)) {
    throw InvariantError("equivalence constants must satisfy 0 < lo <= 1 <= hi");
  }
  switch (strategy_) {
    case KStrategy::ExactL1Linf: {
      const auto& w0 = require_weighted(norm0_, "exact_l1_linf");
      const auto& w1 = require_weighted(norm1_, "exact_l1_linf");
      if (w0.p() != 1 || !std::isinf(w1.p()) || !has_unit_weights(w0) ||
          !has_unit_weights(w1)) {
        throw InvariantError("exact_l1_linf requires unweighted (l1, linf)");
      }
      break;
    }
    case KStrategy::WeightedSupLP: {
      const auto& w0 = require_weighted(norm0_, "weighted_sup_lp");
      const auto& w1 = require_weighted(norm1_, "weighted_sup_lp");
      if (!std::isinf(w0.p()) || !std::isinf(w1.p())) {
        throw InvariantError("weighted_sup_lp requires p = inf on both sides");
      }
      break;
    }
    case KStrategy::PowerCoordinatewise: {
      const auto& w0 = require_weighted(norm0_, "power_coordinatewise");
      const auto& w1 = require_weighted(norm1_, "power_coordinatewise");
      if (w0.p() != w1.p()) {
        throw InvariantError("power_coordinatewise requires equal exponents");
      }
      if (std::isinf(w0.p())) {
        throw DomainError(
            "power_coordinatewise rejects p = inf; use weighted_sup_lp");
      }
      break;
    }
    case KStrategy::Oracle:
      break;
  }
  if (is_exact() && (equiv_lo_ != 1 || equiv_hi_ != 1)) {
    throw InvariantError("exact strategies carry equivalence constants 1");
  }
}

Couple Couple::l1_linf(int size, int offset) {
  return Couple(WeightedNorm::unit(1.0, size, offset),
                WeightedNorm::unit(kInf, size, offset), KStrategy::ExactL1Linf,
                1.0, 1.0);
}

Couple Couple::weighted_sup(std::vector<double> w0, std::vector<double> w1,
                            int offset) {
  return Couple(WeightedNorm(kInf, std::move(w0), offset),
                WeightedNorm(kInf, std::move(w1), offset),
                KStrategy::WeightedSupLP, 1.0, 1.0);
}

Couple Couple::power_coordinatewise(double p, std::vector<double> w0,
                                    std::vector<double> w1, int offset) {
  if (!(p > 0) || std::isinf(p)) {
    throw DomainError("power_coordinatewise requires p in (0, inf)");
  }
  const auto [lo, hi] = power_band(p);
  return Couple(WeightedNorm(p, std::move(w0), offset),
                WeightedNorm(p, std::move(w1), offset),
                KStrategy::PowerCoordinatewise, lo, hi);
}

Couple Couple::oracle(Norm norm0, Norm norm1, OracleOptions options) {
  return Couple(std::move(norm0), std::move(norm1), KStrategy::Oracle, 1.0, 1.0,
                options);
}

double Couple::quasi_constant() const {
  return std::max(norm0_.quasi_constant(), norm1_.quasi_constant());
}

Couple Couple::reversed() const {
  switch (strategy_) {
    case KStrategy::WeightedSupLP:
    case KStrategy::PowerCoordinatewise: {
      const auto& w0 = *norm0_.weighted();
      const auto& w1 = *norm1_.weighted();
      std::vector<double> a(w1.weights().begin(), w1.weights().end());
      std::vector<double> b(w0.weights().begin(), w0.weights().end());
      if (strategy_ == KStrategy::WeightedSupLP) {
        return weighted_sup(std::move(a), std::move(b), w0.offset());
      }
      return power_coordinatewise(w0.p(), std::move(a), std::move(b),
                                  w0.offset());
    }
    case KStrategy::ExactL1Linf:
    case KStrategy::Oracle:
      return oracle(norm1_, norm0_, oracle_);
  }
  return *this;
}

Couple Couple::with_oracle_options(OracleOptions options) const {
  Couple out = *this;
  out.oracle_ = options;
  return out;
}

// --- exact and surrogate K ----------------------------------------------------

namespace {

void require_positive_t(double t) {
  if (!(t > 0)) throw DomainError("t must be positive");
}

void require_matching_weights(const FiniteVector& x, std::span<const double> w0,
                              std::span<const double> w1) {
  if (w0.size() != x.size() || w1.size() != x.size()) {
    throw WindowError("weights must be aligned with the vector entries");
  }
  for (std::size_t i = 0; i < w0.size(); ++i) {
    if (!(w0[i] > 0) || !(w1[i] > 0)) {
      throw InvariantError("weights must be positive");
    }
  }
}

}  // namespace

double k_exact_l1_linf(const FiniteVector& x, double t) {
  require_positive_t(t);
  std::vector<double> sorted(x.size());
  std::transform(x.entries.begin(), x.entries.end(), sorted.begin(),
                 [](double v) { return std::abs(v); });
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double whole = std::floor(t);
  if (whole >= static_cast<double>(sorted.size())) {
    return kahan_sum(sorted);
  }
  const auto k = static_cast<std::size_t>(whole);
  double head = 0;
  for (std::size_t i = 0; i < k; ++i) head += sorted[i];
  return head + (t - whole) * sorted[k];
}

double k_weighted_sup(const FiniteVector& x, double t,
                      std::span<const double> w0, std::span<const double> w1) {
  require_positive_t(t);
  require_matching_weights(x, w0, w1);
  // Constraints a_i l0 + b_i l1 >= c_i with a = 1/w0, b = 1/w1, c = |x|.
  struct Row {
    double a, b, c;
  };
  std::vector<Row> rows;
  double axis0 = 0, axis1 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = std::abs(x.entries[i]);
    if (c == 0) continue;
    rows.push_back({1.0 / w0[i], 1.0 / w1[i], c});
    axis0 = std::max(axis0, c * w0[i]);
    axis1 = std::max(axis1, c * w1[i]);
  }
  if (rows.empty()) return 0.0;

  double best = std::min(axis0, t * axis1);
  const auto feasible = [&](double l0, double l1) {
    for (const Row& r : rows) {
      if (r.a * l0 + r.b * l1 < r.c * (1 - 1e-12)) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const Row& r = rows[i];
      const Row& s = rows[j];
      const double det = r.a * s.b - s.a * r.b;
      const double scale = std::abs(r.a * s.b) + std::abs(s.a * r.b);
      if (std::abs(det) <= 1e-14 * scale) continue;
      const double l0 = (r.c * s.b - s.c * r.b) / det;
      const double l1 = (r.a * s.c - s.a * r.c) / det;
      if (l0 < 0 || l1 < 0) continue;
      const double value = l0 + t * l1;
      if (value < best && feasible(l0, l1)) best = value;
    }
  }
  return best;
}

double k_power_coordinatewise(const FiniteVector& x, double t, double p,
                              std::span<const double> w0,
                              std::span<const double> w1) {
  if (!(p > 0) || std::isinf(p)) throw DomainError("p must lie in (0, inf)");
  require_positive_t(t);
  require_matching_weights(x, w0, w1);
  std::vector<double> per_coordinate(x.size());
  const double conjugate = p > 1 ? p / (p - 1) : kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c0 = w0[i];
    const double c1 = t * w1[i];
    const double lo = std::min(c0, c1);
    double factor = lo;
    if (p > 1) {
      // inf_{a+b=1} (c0|a|)^p + (c1|b|)^p = ((c0^{-p'} + c1^{-p'})^{-1/p'})^p.
      const double ratio = lo / std::max(c0, c1);
      factor = lo * std::pow(1.0 + std::pow(ratio, conjugate), -1.0 / conjugate);
    }
    per_coordinate[i] = factor * std::abs(x.entries[i]);
  }
  return lp_norm(per_coordinate, p);
}

double k_value(const FiniteVector& x, double t, const Couple& couple) {
  switch (couple.strategy()) {
    case KStrategy::ExactL1Linf:
      aligned(x, couple.window());
      return k_exact_l1_linf(x, t);
    case KStrategy::WeightedSupLP:
    case KStrategy::PowerCoordinatewise: {
      const FiniteVector xa = aligned(x, couple.window());
      const auto& n0 = *couple.norm0().weighted();
      const auto& n1 = *couple.norm1().weighted();
      if (couple.strategy() == KStrategy::WeightedSupLP) {
        return k_weighted_sup(xa, t, n0.weights(), n1.weights());
      }
      return k_power_coordinatewise(xa, t, n0.p(), n0.weights(), n1.weights());
    }
    case KStrategy::Oracle:
      return k_oracle(x, t, couple, couple.oracle_options());
  }
  return 0.0;
}

KEvaluator k_evaluator(const Couple& couple) {
  return [couple](const FiniteVector& x, double t) {
    return k_value(x, t, couple);
  };
}

KProfile k_profile(const FiniteVector& x, const KEvaluator& k, int n_min,
                   int n_max) {
  if (n_min > n_max) throw DomainError("profile window requires n_min <= n_max");
  KProfile profile{n_min, n_max, {}};
  profile.values.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    profile.values.push_back(k(x, std::ldexp(1.0, n)));
  }
  return profile;
}

KProfile k_profile(const FiniteVector& x, const Couple& couple, int n_min,
                   int n_max) {
  return k_profile(x, k_evaluator(couple), n_min, n_max);
}

EndpointNorms endpoint_norms(const FiniteVector& x, const Couple& couple) {
  return {k_value(x, 1.0, couple),
          std::max(couple.norm0()(x), couple.norm1()(x))};
}

double k_sphere_sup(const Couple& couple, double t, int samples,
                    std::uint64_t seed) {
  if (samples < 1) throw DomainError("k_sphere_sup needs at least one sample");
  require_positive_t(t);
  const Window w = couple.window();
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(i));
    FiniteVector x(w.offset, std::vector<double>(static_cast<std::size_t>(w.size)));
    if (i % 2 == 0) {
      const auto slot = static_cast<std::size_t>((i / 2) % w.size);
      const double sign = uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0;
      x.entries[slot] = sign * uniform(rng, 0.5, 2.0);
    } else {
      for (double& v : x.entries) v = gaussian(rng);
    }
    const double k1 = k_value(x, 1.0, couple);
    if (!(k1 > 0)) continue;
    best = std::max(best, k_value(x, t, couple) / k1);
  }
  return best;
}

}  // namespace interpk
