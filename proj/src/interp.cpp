#include "interpk/interp.hpp"

#include <algorithm>
#include <cmath>

#include "interpk/errors.hpp"
#include "interpk/numeric.hpp"
#include "interpk/random.hpp"

namespace interpk {

void InterpParams::validate() const {
  if (!(theta > 0 && theta < 1)) {
    throw DomainError("theta must lie in (0, 1)");
  }
  if (!(q > 0)) throw DomainError("q must be positive");
}

void DyadicWindow::validate() const {
  if (n_min > n_max) throw DomainError("dyadic window requires n_min <= n_max");
}

namespace {

std::vector<double> weighted_terms(const KProfile& profile, double theta) {
  std::vector<double> terms(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const int n = profile.n_min + static_cast<int>(i);
    terms[i] = std::exp2(-theta * n) * profile.values[i];
  }
  return terms;
}

}  // namespace

double profile_norm(const KProfile& profile, const InterpParams& params) {
  params.validate();
  return lp_norm(weighted_terms(profile, params.theta), params.q);
}

InterpNormDetail interp_norm_detailed(const FiniteVector& x, const KEvaluator& k,
                                      const InterpParams& params,
                                      const DyadicWindow& window) {
  params.validate();
  window.validate();
  const KProfile profile = k_profile(x, k, window.n_min, window.n_max);
  const auto terms = weighted_terms(profile, params.theta);
  return {lp_norm(terms, params.q), terms.front(), terms.back()};
}

double interp_norm(const FiniteVector& x, const KEvaluator& k,
                   const InterpParams& params, const DyadicWindow& window) {
  return interp_norm_detailed(x, k, params, window).value;
}

double interp_norm(const FiniteVector& x, const Couple& couple,
                   const InterpParams& params, const DyadicWindow& window) {
  return interp_norm(x, k_evaluator(couple), params, window);
}

// --- lattice parameters ---------------------------------------------------

LatticeParam LatticeParam::power(const InterpParams& params,
                                 const DyadicWindow& window) {
  params.validate();
  window.validate();
  LatticeParam e{params.q, window.n_min, {}};
  for (int n = window.n_min; n <= window.n_max; ++n) {
    e.weights.push_back(std::exp2(-params.theta * n));
  }
  return e;
}

namespace {

void validate_lattice(const LatticeParam& lattice) {
  if (!(lattice.r > 0)) throw ParamError("lattice exponent r must be positive");
  if (lattice.weights.empty()) throw ParamError("lattice window is empty");
  for (double w : lattice.weights) {
    if (!(w > 0) || !std::isfinite(w)) {
      throw ParamError("lattice weights must be positive and finite");
    }
  }
}

}  // namespace

double lattice_constant(const LatticeParam& lattice) {
  validate_lattice(lattice);
  std::vector<double> terms(lattice.weights.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const int n = lattice.n_min + static_cast<int>(i);
    terms[i] = lattice.weights[i] * std::min(1.0, std::ldexp(1.0, n));
  }
  return lp_norm(terms, lattice.r);
}

double lattice_norm(const FiniteVector& x, const Couple& couple,
                    const LatticeParam& lattice) {
  const double c = lattice_constant(lattice);
  if (!(c > 0) || !std::isfinite(c)) {
    throw ParamError("lattice is K-trivial: {min(1, 2^n)} has no finite norm");
  }
  const KProfile profile = k_profile(x, couple, lattice.n_min, lattice.n_max());
  std::vector<double> terms(profile.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = lattice.weights[i] * profile.values[i];
  }
  return lp_norm(terms, lattice.r);
}

// --- split ------------------------------------------------------------------

double lq_quasi_constant(double q) {
  return q < 1 ? std::pow(2.0, 1.0 / q - 1.0) : 1.0;
}

SplitNorm split_norm(const FiniteVector& x, const KEvaluator& k,
                     const InterpParams& params, const DyadicWindow& window) {
  params.validate();
  window.validate();
  const KProfile profile = k_profile(x, k, window.n_min, window.n_max);
  const auto terms = weighted_terms(profile, params.theta);
  std::vector<double> low, high;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const int n = profile.n_min + static_cast<int>(i);
    (n <= 0 ? low : high).push_back(terms[i]);
  }
  return {lp_norm(low, params.q), lp_norm(high, params.q)};
}

SplitNorm split_norm(const FiniteVector& x, const Couple& couple,
                     const InterpParams& params, const DyadicWindow& window) {
  return split_norm(x, k_evaluator(couple), params, window);
}

// --- parameter conditions ----------------------------------------------------

void ParamSpace::validate() const {
  if (!(theta > 0 && theta < 1)) throw DomainError("theta must lie in (0, 1)");
  if (!(p > 0) || std::isinf(p)) throw DomainError("p must lie in (0, inf)");
}

double ParamSpace::norm(const std::vector<double>& u, int n_min, int lo,
                        int hi) const {
  std::vector<double> terms;
  for (int n = std::max(lo, n_min);
       n <= hi && n - n_min < static_cast<int>(u.size()); ++n) {
    terms.push_back(std::exp2(-theta * n) *
                    std::abs(u[static_cast<std::size_t>(n - n_min)]));
  }
  return lp_norm(terms, p);
}

namespace {

struct Constants {
  std::array<double, 4> worst{0, 0, 0, 0};
};

// u indexed over [-w, w]; v = t u(1/t) on the same grid: v_n = 2^n u_{-n}.
std::vector<double> inverted(const std::vector<double>& u, int w) {
  std::vector<double> v(u.size());
  for (int n = -w; n <= w; ++n) {
    v[static_cast<std::size_t>(n + w)] =
        std::ldexp(u[static_cast<std::size_t>(-n + w)], n);
  }
  return v;
}

void accumulate(const ParamSpace& phi0, const ParamSpace& phi1,
                const std::vector<double>& u, int w, Constants& c) {
  const int lo = -w;
  const auto ratio = [](double num, double den) {
    return (num > 0 && den > 0) ? num / den : 0.0;
  };
  // Cond1: ||chi_(0,1) u||_0 <= C ||chi_(0,1) u||_1.
  c.worst[0] = std::max(c.worst[0], ratio(phi0.norm(u, lo, lo, 0), phi1.norm(u, lo, lo, 0)));
  // Cond2: ||chi_(1,inf) u||_1 <= C ||chi_(1,inf) u||_0.
  c.worst[1] = std::max(c.worst[1], ratio(phi1.norm(u, lo, 0, w), phi0.norm(u, lo, 0, w)));
  const std::vector<double> v = inverted(u, w);
  // Cond3: ||chi_(1,inf) u||_0 ~ ||chi_(0,1) t u(1/t)||_1.
  const double l3 = phi0.norm(u, lo, 0, w), r3 = phi1.norm(v, lo, lo, 0);
  if (l3 > 0 && r3 > 0) c.worst[2] = std::max({c.worst[2], l3 / r3, r3 / l3});
  // Cond4: ||chi_(1,inf) g||_1 ~ ||chi_(0,1) t g(1/t)||_0.
  const double l4 = phi1.norm(u, lo, 0, w), r4 = phi0.norm(v, lo, lo, 0);
  if (l4 > 0 && r4 > 0) c.worst[3] = std::max({c.worst[3], l4 / r4, r4 / l4});
}

Constants evaluate_window(const ParamSpace& phi0, const ParamSpace& phi1,
                          int probes, std::uint64_t seed, int w) {
  Constants c;
  const auto size = static_cast<std::size_t>(2 * w + 1);
  for (std::size_t i = 0; i < size; ++i) {
    std::vector<double> spike(size, 0.0);
    spike[i] = 1.0;
    accumulate(phi0, phi1, spike, w, c);
  }
  for (int k = 0; k < probes; ++k) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(k));
    std::vector<double> u(size, 0.0);
    int a = uniform_int(rng, 0, static_cast<int>(size) - 1);
    int b = uniform_int(rng, 0, static_cast<int>(size) - 1);
    if (a > b) std::swap(a, b);
    for (int n = a; n <= b; ++n) u[static_cast<std::size_t>(n)] = uniform(rng, 0.0, 1.0);
    accumulate(phi0, phi1, u, w, c);
  }
  return c;
}

}  // namespace

ConditionReport parameter_conditions(const ParamSpace& phi0,
                                     const ParamSpace& phi1, int probes,
                                     std::uint64_t seed, int half_width) {
  phi0.validate();
  phi1.validate();
  if (probes < 1) throw DomainError("parameter_conditions needs probes >= 1");
  if (half_width < 2) throw DomainError("half width must be at least 2");
  const Constants full = evaluate_window(phi0, phi1, probes, seed, half_width);
  const Constants half = evaluate_window(phi0, phi1, probes, seed, half_width / 2);
  ConditionReport report;
  report.half_width = half_width;
  report.probes = probes;
  report.seed = seed;
  const char* names[4] = {"cond1", "cond2", "cond3", "cond4"};
  for (std::size_t i = 0; i < 4; ++i) {
    report.conditions[i] = {names[i], full.worst[i],
                            full.worst[i] <= half.worst[i] * (1 + 1e-9)};
  }
  return report;
}

// --- sum / intersection couple -----------------------------------------------

namespace {

void require_exact_base(const Couple& couple) {
  const bool exact_power =
      couple.strategy() == KStrategy::PowerCoordinatewise &&
      couple.norm0().weighted()->p() == 1;
  if (!couple.is_exact() && !exact_power) {
    throw InvariantError("derived sum/intersection couple needs an exact base");
  }
}

Couple explicit_sum_int(const Couple& base, OracleOptions oracle) {
  const double m = base.quasi_constant();
  Norm sum("sum", base.window(), m, [base](const FiniteVector& x) {
    return k_value(x, 1.0, base);
  });
  Norm intersection("intersection", base.window(), m,
                    [base](const FiniteVector& x) {
                      return std::max(base.norm0()(x), base.norm1()(x));
                    });
  return Couple::oracle(std::move(sum), std::move(intersection), oracle);
}

}  // namespace

DerivedCouple::DerivedCouple(Couple base, OracleOptions oracle)
    : base_((require_exact_base(base), std::move(base))),
      oracle_(explicit_sum_int(base_, oracle)) {
  const double m = base_.quasi_constant();
  equiv_lo_ = 1.0 / (2.0 + 2.0 * m);
  equiv_hi_ = 8.0 * m;
}

double DerivedCouple::k_surrogate(const FiniteVector& x, double t) const {
  if (!(t > 0)) throw DomainError("t must be positive");
  const double s = std::min(t, 1.0);
  return k_value(x, s, base_) + s * k_value(x, 1.0 / s, base_);
}

double DerivedCouple::k_oracle(const FiniteVector& x, double t) const {
  return interpk::k_oracle(x, t, oracle_, oracle_.oracle_options());
}

bool DerivedCouple::has_exact() const {
  return base_.strategy() == KStrategy::ExactL1Linf;
}

double DerivedCouple::k_exact(const FiniteVector& x, double t) const {
  if (!has_exact()) {
    throw UnsupportedError("exact K of the derived couple needs an (l1, linf) base");
  }
  if (!(t > 0)) throw DomainError("t must be positive");
  return t * k_value(x, 1.0 / t, base_);
}

KEvaluator DerivedCouple::exact_evaluator() const {
  return [self = *this](const FiniteVector& x, double t) {
    return self.k_exact(x, t);
  };
}

KEvaluator DerivedCouple::surrogate_evaluator() const {
  return [self = *this](const FiniteVector& x, double t) {
    return self.k_surrogate(x, t);
  };
}

KEvaluator DerivedCouple::oracle_evaluator() const {
  return [self = *this](const FiniteVector& x, double t) {
    return self.k_oracle(x, t);
  };
}

DerivedCouple derived_sum_int_couple(const Couple& couple, OracleOptions oracle) {
  return DerivedCouple(couple, oracle);
}

Norm endpoint_space(const Couple& couple, const InterpParams& params,
                    const DyadicWindow& window) {
  params.validate();
  window.validate();
  const double m = couple.quasi_constant() * lq_quasi_constant(params.q);
  return Norm("interp(" + format_number(params.theta) + "," +
                  format_number(params.q) + ")",
              couple.window(), m,
              [couple, params, window](const FiniteVector& x) {
                return interp_norm(x, couple, params, window);
              });
}

}  // namespace interpk
