#include <cmath>
#include <random>

#include "doctest.h"
#include "interpk/errors.hpp"
#include "interpk/interp.hpp"
#include "oracles.hpp"

using namespace interpk;
using interpk::testing::relative_error;

namespace {

// K(e, t) = min(1, t) exactly.
const Couple& unit_sup() {
  static const Couple c = Couple::weighted_sup({1}, {1});
  return c;
}

}  // namespace

TEST_CASE("interp_norm of a single coordinate") {
  const FiniteVector e({1.0});
  // sum_{n=-20}^{0} 2^n + sum_{n=1}^{20} 2^{-n} = 3 - 2^{-19}
  const double expected = std::sqrt(3.0 - std::ldexp(1.0, -19));
  CHECK(interp_norm(e, unit_sup(), {0.5, 2.0}) ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(interp_norm(e, unit_sup(), {0.5, 2.0}) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
  CHECK(interp_norm(e, unit_sup(), {0.5, kInf}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(interp_norm(FiniteVector({0.0}), unit_sup(), {0.5, 2.0}) == 0);
}

TEST_CASE("interp_norm parameter validation") {
  const FiniteVector e({1.0});
  CHECK_THROWS_AS(interp_norm(e, unit_sup(), {0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(interp_norm(e, unit_sup(), {0.5, -1.0}), DomainError);
  CHECK_THROWS_AS(interp_norm(e, unit_sup(), {0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(interp_norm(e, unit_sup(), {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(interp_norm(e, unit_sup(), {0.5, 1.0}, {3, 2}), DomainError);
}

TEST_CASE("interp_norm truncation diagnostics") {
  const auto d = interp_norm_detailed(FiniteVector({1.0}), k_evaluator(unit_sup()),
                                      {0.5, 2.0}, {-20, 20});
  CHECK(d.edge_low == doctest::Approx(std::ldexp(1.0, -10)));
  CHECK(d.edge_high == doctest::Approx(std::ldexp(1.0, -10)));
}

TEST_CASE("interp_norm is monotone in q") {
  std::mt19937_64 rng(4);
  const Couple c = Couple::l1_linf(5);
  for (int i = 0; i < 50; ++i) {
    const auto x = testing::random_vector(rng, 5);
    for (double theta : {0.2, 0.5, 0.8}) {
      const double q[] = {0.5, 1.0, 2.0, 4.0, kInf};
      for (int j = 0; j + 1 < 5; ++j) {
        CHECK(interp_norm(x, c, {theta, q[j + 1]}) <=
              interp_norm(x, c, {theta, q[j]}) * (1 + 1e-14));
      }
    }
  }
}

TEST_CASE("lattice_norm reduces to interp_norm") {
  std::mt19937_64 rng(5);
  const Couple c = Couple::l1_linf(4);
  for (int i = 0; i < 20; ++i) {
    const auto x = testing::random_vector(rng, 4);
    const InterpParams params{0.3 + 0.02 * i, 1.0 + 0.1 * i};
    CHECK(relative_error(lattice_norm(x, c, LatticeParam::power(params)),
                         interp_norm(x, c, params)) < 1e-12);
  }
  CHECK(lattice_norm(FiniteVector({0.0, 0.0, 0.0, 0.0}), c,
                     LatticeParam::power({0.5, 2})) == 0);
}

TEST_CASE("lattice_norm with E = linf on an ordered couple") {
  // A1 = linf(2) embeds in A0 = linf: the profile saturates at ||x||_{A0}.
  const Couple ordered = Couple::weighted_sup({1, 1, 1}, {2, 2, 2});
  const LatticeParam linf{kInf, -20, std::vector<double>(41, 1.0)};
  const FiniteVector x({0.5, -3.0, 1.0});
  CHECK(lattice_norm(x, ordered, linf) == doctest::Approx(ordered.norm0()(x)));
}

TEST_CASE("lattice parameter errors") {
  const Couple c = Couple::l1_linf(2);
  CHECK_THROWS_AS(lattice_norm(FiniteVector({1.0, 0.0}), c, {1.0, 0, {1.0, 0.0}}),
                  ParamError);
  CHECK_THROWS_AS(lattice_norm(FiniteVector({1.0, 0.0}), c, {1.0, 0, {}}), ParamError);
  CHECK_THROWS_AS(lattice_norm(FiniteVector({1.0, 0.0}), c, {0.0, 0, {1.0}}),
                  ParamError);
}

TEST_CASE("sandwich: C sum_norm <= lattice_norm <= C intersection_norm") {
  std::mt19937_64 rng(6);
  const Couple couples[] = {Couple::l1_linf(5),
                            Couple::weighted_sup(testing::random_weights(rng, 5),
                                                 testing::random_weights(rng, 5))};
  const LatticeParam lattices[] = {
      LatticeParam::power({0.3, 1.0}), LatticeParam::power({0.7, 3.0}),
      LatticeParam{kInf, -20, std::vector<double>(41, 1.0)}};
  for (const Couple& c : couples) {
    for (const LatticeParam& e : lattices) {
      const double k = lattice_constant(e);
      for (int i = 0; i < 30; ++i) {
        const auto x = testing::random_vector(rng, 5);
        const auto ends = endpoint_norms(x, c);
        const double value = lattice_norm(x, c, e);
        CHECK(k * ends.sum_norm <= value * (1 + 1e-12));
        CHECK(value <= k * ends.intersection_norm * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("split_norm") {
  const FiniteVector e({1.0});
  const auto s = split_norm(e, unit_sup(), {0.5, 2.0});
  CHECK(s.low * s.low == doctest::Approx(2.0 - std::ldexp(1.0, -20)));
  CHECK(s.high * s.high == doctest::Approx(1.0 - std::ldexp(1.0, -20)));
  const auto z = split_norm(FiniteVector({0.0}), unit_sup(), {0.5, 2.0});
  CHECK(z.low == 0);
  CHECK(z.high == 0);
  // 2^{-n/2} min(1, 2^n) = 2^{-|n|/2} is even in n: low^q = high^q + (n = 0 term)^q.
  const KEvaluator sym = [](const FiniteVector&, double t) {
    return std::min(t, 1.0);
  };
  const auto q1 = split_norm(e, sym, {0.5, 1.0});
  CHECK(q1.low == doctest::Approx(q1.high + 1.0));

  // quasi-equivalence with the full norm
  std::mt19937_64 rng(7);
  const Couple c = Couple::l1_linf(6);
  for (double q : {0.5, 1.0, 3.0}) {
    for (int i = 0; i < 20; ++i) {
      const auto x = testing::random_vector(rng, 6);
      const InterpParams params{0.4, q};
      const auto parts = split_norm(x, c, params);
      const double full = interp_norm(x, c, params);
      CHECK(full <= lq_quasi_constant(q) * (parts.low + parts.high) * (1 + 1e-12));
      CHECK(parts.low + parts.high <= 2 * lq_quasi_constant(q) * full * (1 + 1e-12));
    }
  }
}

TEST_CASE("parameter_conditions for Phi(theta), Phi(1-theta)") {
  const auto r = parameter_conditions({0.3, 1.0}, {0.7, 1.0}, 50, 1);
  // Cond3/Cond4 are change-of-variables identities.
  CHECK(r.conditions[2].bounded);
  CHECK(r.conditions[3].bounded);
  CHECK(r.conditions[2].constant == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.conditions[3].constant == doctest::Approx(1.0).epsilon(1e-12));
  // theta < 1/2: Cond1 and Cond2 hold (constant 1, attained at t = 1).
  CHECK(r.conditions[0].bounded);
  CHECK(r.conditions[1].bounded);
  CHECK(r.conditions[0].constant == doctest::Approx(1.0));

  const auto same = parameter_conditions({0.5, 2.0}, {0.5, 2.0}, 50, 2);
  for (const auto& c : same.conditions) {
    CHECK(c.bounded);
    CHECK(c.constant == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Swapped order: t^{-0.7} vs t^{-0.3} on (0,1) is unbounded.
  const auto swapped = parameter_conditions({0.7, 1.0}, {0.3, 1.0}, 50, 3);
  CHECK_FALSE(swapped.conditions[0].bounded);
  CHECK_FALSE(swapped.conditions[1].bounded);
  CHECK(swapped.conditions[0].constant == doctest::Approx(std::exp2(0.4 * 20)));
  CHECK(swapped.conditions[2].bounded);

  CHECK_THROWS_AS(parameter_conditions({0.5, 1}, {0.5, 1}, 0, 1), DomainError);
}

TEST_CASE("derived sum/intersection couple") {
  const DerivedCouple d(Couple::weighted_sup({1}, {1}));
  const FiniteVector x({-1.5});
  for (double t : {1.0 / 64, 0.125, 0.5}) {
    CHECK(d.k_surrogate(x, t) == doctest::Approx(2 * t * 1.5));
    CHECK(d.k_oracle(x, t) == doctest::Approx(t * 1.5).epsilon(1e-9));
  }
  CHECK(d.k_surrogate(x, 4.0) == d.k_surrogate(x, 1.0));
  CHECK(d.k_surrogate(FiniteVector({0.0}), 0.3) == 0);
  CHECK(d.k_oracle(FiniteVector({0.0}), 0.3) == 0);
  CHECK(d.equiv_lo() == doctest::Approx(0.25));
  CHECK(d.equiv_hi() == doctest::Approx(8));
  CHECK_THROWS_AS(derived_sum_int_couple(Couple::power_coordinatewise(2, {1}, {1})),
                  InvariantError);

  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) {
    const int dim = 1 + i % 8;
    const DerivedCouple l1(Couple::l1_linf(dim));
    const auto v = testing::random_vector(rng, dim);
    if (v.is_zero()) continue;
    for (int n = -6; n <= 0; n += 2) {
      const double t = std::ldexp(1.0, n);
      const double ratio = l1.k_surrogate(v, t) / l1.k_oracle(v, t);
      CHECK(ratio >= 1.0 / 8);
      CHECK(ratio <= 8.0);
    }
  }
}

TEST_CASE("endpoint_space") {
  const Couple c = Couple::l1_linf(4);
  const InterpParams params{0.3, 2.0};
  const Norm e = endpoint_space(c, params);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const auto x = testing::random_vector(rng, 4);
    CHECK(e(x) == interp_norm(x, c, params));
  }
  const Norm e0 = endpoint_space(c, {0.25, 2.0});
  const Norm e1 = endpoint_space(c, {0.75, 2.0});
  const Couple reit = Couple::oracle(e0, e1, {1, 0, 16, 60, 50});
  for (int i = 0; i < 5; ++i) {
    const auto x = testing::random_vector(rng, 4);
    CHECK(k_value(x, 1.0, reit) <= std::min(e0(x), e1(x)) * (1 + 1e-12));
  }
}
