#ifndef INTERPK_SNUM_HPP_
#define INTERPK_SNUM_HPP_

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace interpk {

// A matrix acting between finite-dimensional lp spaces. Exact s-numbers are
// only available when both sides are Euclidean.
struct MatrixOperator {
  Eigen::MatrixXd entries;
  double domain_p = 2;
  double codomain_p = 2;

  MatrixOperator() = default;
  explicit MatrixOperator(Eigen::MatrixXd m) : entries(std::move(m)) {}
  static MatrixOperator from_rows(const std::vector<std::vector<double>>& rows);

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
  bool euclidean() const { return domain_p == 2 && codomain_p == 2; }
};

// Nonincreasing nonnegative sequence.
struct SNumSeq {
  std::vector<double> values;

  // Throws InvariantError unless `values` is nonnegative and nonincreasing.
  static SNumSeq checked(std::vector<double> values);
};

struct LorentzParams {
  double p = 1;
  double q = 1;

  void validate() const;
};

// a_n(T) = sigma_n(T) between Euclidean spaces.
SNumSeq approx_numbers(const MatrixOperator& op);

// (sum_n (n^{1/p - 1/q} s_n)^q)^{1/q}.
double lorentz_norm(const SNumSeq& s, const LorentzParams& params);
double lorentz_norm(std::span<const double> s, const LorentzParams& params);

double ideal_norm(const MatrixOperator& op, const LorentzParams& params);

MatrixOperator diag_operator(std::span<const double> sigma);

// --- witness sequences ---------------------------------------------------------

enum class Membership { Diverging, Converging, Inconclusive };
const char* to_string(Membership m);

// Trend thresholds: finite data cannot decide summability, so a series is
// called diverging when doubling its length still adds at least
// kDivergenceIncrement, converging when the last half contributes at most
// kConvergenceTailRatio of the total.
inline constexpr double kDivergenceIncrement = 0.05;
inline constexpr double kConvergenceTailRatio = 0.01;

struct SeriesSpec {
  double p = 1;
  double q = 1;
};

// Partial sums of (n^{1/p' - 1/q'} eps_n)^{q'} for n = 1..N.
struct SeriesMembership {
  SeriesSpec spec;
  std::vector<double> summands;
  std::vector<double> partial_sums;
  double half_sum = 0;   // partial sum at N/2
  double total = 0;      // partial sum at N
  double increment = 0;  // total - half_sum
  double tail_ratio = 0; // increment / total
  Membership flag = Membership::Inconclusive;
};

Membership classify_series(double half_sum, double total);
SeriesMembership series_membership(std::span<const double> epsilon,
                                   const SeriesSpec& spec);

struct WitnessReport {
  double p = 1;
  double q = 1;
  int length = 0;
  std::vector<double> epsilon;  // eps_n = n^{-1/p} (1 + ln n)^{-1/q}, n = 1..N
  std::vector<SeriesMembership> series;
};

// With no explicit series, reports (p, q) and (p, 2q).
WitnessReport witness_sequence(double p, double q, int length,
                               std::vector<SeriesSpec> series = {});

// inf over diagonal splits sigma = d0 + d1 (d0, d1 >= 0) of
// ||d0||_{p0} + t ||d1||_{p1}.
double k_operator_diag(std::span<const double> sigma, double t, double p0,
                       double p1);

}  // namespace interpk

#endif  // INTERPK_SNUM_HPP_
