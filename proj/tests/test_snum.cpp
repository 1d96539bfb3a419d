#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "interpk/errors.hpp"
#include "interpk/numeric.hpp"
#include "interpk/snum.hpp"
#include "oracles.hpp"

using namespace interpk;
using interpk::testing::relative_error;

namespace {

Eigen::MatrixXd gaussian_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(rng, n, n));
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

// s_n with the convention s_n = 0 past the stored length.
double s_at(const SNumSeq& s, std::size_t n) {
  return n <= s.values.size() ? s.values[n - 1] : 0.0;
}

std::vector<double> random_nonincreasing(std::mt19937_64& rng, int len) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> s(static_cast<std::size_t>(len));
  for (double& v : s) v = e(rng);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace

TEST_CASE("approx_numbers examples") {
  const auto d = approx_numbers(MatrixOperator::from_rows({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  REQUIRE(d.values.size() == 3);
  CHECK(d.values[0] == doctest::Approx(3).epsilon(1e-12));
  CHECK(d.values[1] == doctest::Approx(2).epsilon(1e-12));
  CHECK(d.values[2] == doctest::Approx(1).epsilon(1e-12));

  const auto r1 = approx_numbers(MatrixOperator::from_rows({{1, 1}, {1, 1}}));
  CHECK(r1.values[0] == doctest::Approx(2).epsilon(1e-12));
  CHECK(std::abs(r1.values[1]) < 1e-12);

  for (int n = 1; n <= 8; ++n) {
    const auto id = approx_numbers(MatrixOperator(Eigen::MatrixXd::Identity(n, n)));
    REQUIRE(id.values.size() == static_cast<std::size_t>(n));
    for (double v : id.values) CHECK(v == doctest::Approx(1).epsilon(1e-12));
  }

  const auto rect = approx_numbers(MatrixOperator::from_rows({{1, 2, 3}, {4, 5, 6}}));
  CHECK(rect.values.size() == 2);

  MatrixOperator lp(Eigen::MatrixXd::Identity(2, 2));
  lp.codomain_p = 1;
  CHECK_THROWS_AS(approx_numbers(lp), UnsupportedError);
  CHECK_THROWS_AS(MatrixOperator::from_rows({{1, 2}, {3}}), InvariantError);
}

TEST_CASE("lorentz_norm examples") {
  const double quarter[] = {1.0, 0.25};
  CHECK(lorentz_norm(quarter, {2, 1}) ==
        doctest::Approx(1 + std::pow(2.0, -0.5) / 4).epsilon(1e-14));
  CHECK(lorentz_norm(quarter, {2, 1}) == doctest::Approx(1.17678).epsilon(1e-5));
  const double spike[] = {1.0, 0.0, 0.0};
  for (double p : {0.5, 1.0, 3.0})
    for (double q : {0.25, 1.0, 7.0}) CHECK(lorentz_norm(spike, {p, q}) == 1.0);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto s = random_nonincreasing(rng, 1 + i);
    for (double p : {0.5, 1.0, 2.5}) {
      double direct = 0;
      for (double v : s) direct += std::pow(v, p);
      CHECK(relative_error(lorentz_norm(s, {p, p}), std::pow(direct, 1 / p)) < 1e-13);
    }
  }
  const double rising[] = {0.5, 1.0};
  CHECK_THROWS_AS(lorentz_norm(rising, {1, 1}), InvariantError);
  CHECK_THROWS_AS(lorentz_norm(quarter, {0, 1}), DomainError);
  CHECK_THROWS_AS(lorentz_norm(quarter, {1, kInf}), DomainError);
}

TEST_CASE("ideal_norm examples") {
  const double sigma[] = {1.0, 0.5, 0.25};
  CHECK(ideal_norm(diag_operator(sigma), {1, 1}) == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(ideal_norm(MatrixOperator(Eigen::MatrixXd::Zero(3, 4)), {2, 3}) == 0);
  for (double p : {0.5, 1.0, 2.0})
    for (double q : {0.5, 2.0})
      CHECK(ideal_norm(MatrixOperator::from_rows({{1, 1}, {1, 1}}), {p, q}) ==
            doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("diag_operator round trip is exact") {
  const double half[] = {1.0, 0.5};
  CHECK(approx_numbers(diag_operator(half)).values == std::vector<double>{1.0, 0.5});
  const auto w = witness_sequence(2, 1, 64);
  CHECK(approx_numbers(diag_operator(w.epsilon)).values == w.epsilon);
  const double zero[] = {0.0};
  const auto z = approx_numbers(diag_operator(zero));
  CHECK(z.values == std::vector<double>{0.0});
  const double unsorted[] = {0.5, 1.0};
  CHECK_THROWS_AS(diag_operator(unsorted), InvariantError);
  const double negative[] = {1.0, -0.5};
  CHECK_THROWS_AS(diag_operator(negative), InvariantError);
}

TEST_CASE("s-number axioms on random matrices") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const Eigen::MatrixXd t = gaussian_matrix(rng, n, n);
    const Eigen::MatrixXd s = gaussian_matrix(rng, n, n);
    const SNumSeq st = approx_numbers(MatrixOperator(t));
    const SNumSeq ss = approx_numbers(MatrixOperator(s));
    const SNumSeq sum = approx_numbers(MatrixOperator(t + s));
    const SNumSeq prod = approx_numbers(MatrixOperator(t * s));
    for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) {
      for (std::size_t j = 1; i + j - 1 <= static_cast<std::size_t>(n); ++j) {
        CHECK(s_at(sum, i + j - 1) <= s_at(st, i) + s_at(ss, j) + 1e-9);
        CHECK(s_at(prod, i + j - 1) <= s_at(st, i) * s_at(ss, j) + 1e-9);
      }
    }
    // ||T|| from the spectrum of T^T T.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t.transpose() * t);
    CHECK(std::abs(st.values[0] - std::sqrt(eig.eigenvalues().maxCoeff())) <= 1e-9);
    for (std::size_t i = 1; i < st.values.size(); ++i) {
      CHECK(st.values[i] <= st.values[i - 1]);
    }
  }
}

TEST_CASE("rank property") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    const int r = trial % n;
    const Eigen::MatrixXd m = gaussian_matrix(rng, n, r) * gaussian_matrix(rng, r, n);
    const SNumSeq s = approx_numbers(MatrixOperator(m));
    for (int i = r; i < n; ++i) CHECK(s.values[static_cast<std::size_t>(i)] <= 1e-9);
  }
}

TEST_CASE("singular values are orthogonally invariant") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 8;
    const Eigen::MatrixXd t = gaussian_matrix(rng, n, n);
    const Eigen::MatrixXd u = random_orthogonal(rng, n);
    const Eigen::MatrixXd v = random_orthogonal(rng, n);
    const auto a = approx_numbers(MatrixOperator(t));
    const auto b = approx_numbers(MatrixOperator(u * t * v));
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(a.values[static_cast<std::size_t>(i)] -
                     b.values[static_cast<std::size_t>(i)]) <= 1e-9);
    }
  }
}

TEST_CASE("Lorentz norms: monotone in p, embedding constants in q") {
  std::mt19937_64 rng(25);
  const double ps[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  const double qs[] = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  for (int trial = 0; trial < 300; ++trial) {
    auto s = random_nonincreasing(rng, 1 + trial % 64);
    if (trial % 3 == 0) std::fill(s.begin(), s.end(), 1.0);
    for (double q : qs) {
      for (int i = 0; i + 1 < 5; ++i) {
        CHECK(lorentz_norm(s, {ps[i + 1], q}) <=
              lorentz_norm(s, {ps[i], q}) * (1 + 1e-13));
      }
    }
    for (double p : ps) {
      for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
          const double q1 = qs[i], q2 = qs[j];
          // n^{1/p} s_n <= max(1, q1/p)^{1/q1} ||s||_{p,q1}; equals 1 for q1 <= p.
          const double c =
              std::pow(std::max(1.0, q1 / p), (1 / q1) * (1 - q1 / q2));
          CHECK(lorentz_norm(s, {p, q2}) <=
                c * lorentz_norm(s, {p, q1}) * (1 + 1e-13));
        }
      }
    }
  }
  // The constant is needed: q1 > p on a flat sequence.
  const std::vector<double> flat(32, 1.0);
  CHECK(lorentz_norm(flat, {1, 8}) > lorentz_norm(flat, {1, 2}));
}

TEST_CASE("finite Pietsch decay") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_nonincreasing(rng, 1 + trial % 100);
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
      const double n = static_cast<double>(s.size());
      CHECK(std::pow(n, 1 / p) * s.back() <= lorentz_norm(s, {p, p}) * (1 + 1e-13));
    }
  }
}

TEST_CASE("witness_sequence membership flags") {
  const int n = 1 << 16;
  for (double p : {0.5, 1.0, 2.0}) {
    for (double q : {0.5, 1.0, 2.0}) {
      const auto w = witness_sequence(p, q, n);
      REQUIRE(w.series.size() == 2);
      CHECK(w.epsilon.size() == static_cast<std::size_t>(n));
      CHECK(w.epsilon[0] == 1.0);
      // q' = q: summand 1 / (n (1 + ln n)).
      CHECK(relative_error(w.series[0].summands[9], 1 / (10 * (1 + std::log(10.0)))) < 1e-12);
      CHECK(w.series[0].flag == Membership::Diverging);
      CHECK(w.series[1].flag == Membership::Converging);
    }
  }
  const auto w = witness_sequence(2, 1, n, {{4, 1}, {4, 3}, {2, 1}});
  CHECK(w.series[0].flag == Membership::Converging);
  CHECK(w.series[1].flag == Membership::Converging);
  CHECK(w.series[2].flag == Membership::Diverging);
  const auto& d = w.series[2];
  CHECK(d.increment == doctest::Approx(d.total - d.half_sum));
  CHECK(d.half_sum == d.partial_sums[n / 2 - 1]);
  CHECK(d.increment > kDivergenceIncrement);
  CHECK(d.increment < 0.07);

  CHECK_THROWS_AS(witness_sequence(2, 1, 3), DomainError);
  CHECK_THROWS_AS(witness_sequence(0, 1, 8), DomainError);
  CHECK(classify_series(1.0, 1.005) == Membership::Converging);
  CHECK(classify_series(1.0, 1.02) == Membership::Inconclusive);
  CHECK(classify_series(1.0, 1.05) == Membership::Diverging);
}

TEST_CASE("k_operator_diag") {
  for (double t : {0.1, 1.0, 3.0}) {
    const double c[] = {2.5};
    CHECK(k_operator_diag(c, t, 1, 1) == doctest::Approx(std::min(1.0, t) * 2.5));
  }
  const double zeros[] = {0.0, 0.0};
  CHECK(k_operator_diag(zeros, 0.5, 1, 2) == 0);

  std::vector<double> geometric;
  for (int i = 0; i <= 7; ++i) geometric.push_back(std::ldexp(1.0, -i));
  const Couple l1_l2 = Couple::oracle(WeightedNorm::unit(1, 8), WeightedNorm::unit(2, 8),
                                      {8, 3, 16, 80, 200});
  for (int n = -8; n <= 4; ++n) {
    const double t = std::ldexp(1.0, n);
    const double oracle = k_oracle(FiniteVector(geometric), t, l1_l2, l1_l2.oracle_options());
    CHECK(relative_error(k_operator_diag(geometric, t, 1, 2), oracle) < 1e-6);
  }

  // p1 = inf: the (l1, linf) closed form.
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_nonincreasing(rng, 1 + trial % 16);
    const double t = std::exp2(std::uniform_real_distribution<double>(-6, 6)(rng));
    CHECK(relative_error(k_operator_diag(s, t, 1, kInf),
                         testing::k_l1_linf_by_levels(s, t)) < 1e-9);
  }
  // p0 = 1 < p1: level clipping is never beaten by the oracle.
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 6;
    const auto s = random_nonincreasing(rng, d);
    const double p1 = 1.5 + trial % 3;
    const double t = std::exp2(std::uniform_real_distribution<double>(-5, 3)(rng));
    const Couple c = Couple::oracle(WeightedNorm::unit(1, d), WeightedNorm::unit(p1, d),
                                    {6, 5, 16, 80, 200});
    const double oracle = k_oracle(FiniteVector(s), t, c, c.oracle_options());
    CHECK(relative_error(k_operator_diag(s, t, 1, p1), oracle) < 1e-6);
  }
  // Other pairs go to the oracle and stay below both trivial splits.
  const auto s = std::vector<double>{1.0, 0.6, 0.2};
  const double k = k_operator_diag(s, 0.5, 2, 1);
  CHECK(k <= std::min(lp_norm(s, 2), 0.5 * lp_norm(s, 1)) * (1 + 1e-12));

  const double rising[] = {0.1, 0.2};
  CHECK_THROWS_AS(k_operator_diag(rising, 1, 1, 2), InvariantError);
  CHECK_THROWS_AS(k_operator_diag(geometric, 0, 1, 2), DomainError);
}
