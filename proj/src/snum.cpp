#include "interpk/snum.hpp"

#include <algorithm>
#include <cmath>

#include "interpk/couples.hpp"
#include "interpk/errors.hpp"
#include "interpk/numeric.hpp"

namespace interpk {

MatrixOperator MatrixOperator::from_rows(
    const std::vector<std::vector<double>>& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = rows.empty() ? Eigen::Index{0}
                              : static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != c) {
      throw InvariantError("matrix rows must have equal length");
    }
    for (Eigen::Index j = 0; j < c; ++j) {
      const double v = row[static_cast<std::size_t>(j)];
      if (!std::isfinite(v)) throw InvariantError("matrix entries must be finite");
      m(i, j) = v;
    }
  }
  return MatrixOperator(std::move(m));
}

SNumSeq SNumSeq::checked(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0)) {
      throw InvariantError("s-number sequences are nonnegative");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw InvariantError("s-number sequences are nonincreasing");
    }
  }
  return SNumSeq{std::move(values)};
}

void LorentzParams::validate() const {
  if (!(p > 0) || std::isinf(p) || !(q > 0) || std::isinf(q)) {
    throw DomainError("Lorentz exponents must lie in (0, inf)");
  }
}

SNumSeq approx_numbers(const MatrixOperator& op) {
  if (!op.euclidean()) {
    throw UnsupportedError(
        "exact s-numbers are only available between Euclidean spaces");
  }
  if (op.rows() == 0 || op.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(op.entries);
  const Eigen::VectorXd& sv = svd.singularValues();
  std::vector<double> values(sv.data(), sv.data() + sv.size());
  // JacobiSVD returns them sorted; enforce it against ties in rounding.
  std::sort(values.begin(), values.end(), std::greater<>());
  return SNumSeq{std::move(values)};
}

double lorentz_norm(std::span<const double> s, const LorentzParams& params) {
  params.validate();
  const SNumSeq checked = SNumSeq::checked({s.begin(), s.end()});
  std::vector<double> terms(s.size());
  const double exponent = 1.0 / params.p - 1.0 / params.q;
  for (std::size_t i = 0; i < s.size(); ++i) {
    terms[i] = std::pow(static_cast<double>(i + 1), exponent) * s[i];
  }
  return lp_norm(terms, params.q);
}

double lorentz_norm(const SNumSeq& s, const LorentzParams& params) {
  return lorentz_norm(std::span<const double>(s.values), params);
}

double ideal_norm(const MatrixOperator& op, const LorentzParams& params) {
  return lorentz_norm(approx_numbers(op), params);
}

MatrixOperator diag_operator(std::span<const double> sigma) {
  SNumSeq::checked({sigma.begin(), sigma.end()});
  const auto n = static_cast<Eigen::Index>(sigma.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = sigma[static_cast<std::size_t>(i)];
  return MatrixOperator(std::move(m));
}

// --- witness ------------------------------------------------------------------

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Diverging:
      return "diverging";
    case Membership::Converging:
      return "converging";
    case Membership::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Membership classify_series(double half_sum, double total) {
  const double increment = total - half_sum;
  if (increment >= kDivergenceIncrement) return Membership::Diverging;
  if (total > 0 && increment <= kConvergenceTailRatio * total) {
    return Membership::Converging;
  }
  return Membership::Inconclusive;
}

SeriesMembership series_membership(std::span<const double> epsilon,
                                   const SeriesSpec& spec) {
  LorentzParams{spec.p, spec.q}.validate();
  SeriesMembership out;
  out.spec = spec;
  const std::size_t n_total = epsilon.size();
  out.summands.resize(n_total);
  out.partial_sums.resize(n_total);
  const double exponent = 1.0 / spec.p - 1.0 / spec.q;
  double sum = 0, carry = 0;
  for (std::size_t i = 0; i < n_total; ++i) {
    const double n = static_cast<double>(i + 1);
    const double term = std::pow(std::pow(n, exponent) * epsilon[i], spec.q);
    out.summands[i] = term;
    const double y = term - carry;
    const double next = sum + y;
    carry = (next - sum) - y;
    sum = next;
    out.partial_sums[i] = sum;
  }
  if (n_total == 0) return out;
  out.total = out.partial_sums.back();
  out.half_sum = out.partial_sums[n_total / 2 - (n_total >= 2 ? 1 : 0)];
  out.increment = out.total - out.half_sum;
  out.tail_ratio = out.total > 0 ? out.increment / out.total : 0;
  out.flag = classify_series(out.half_sum, out.total);
  return out;
}

WitnessReport witness_sequence(double p, double q, int length,
                               std::vector<SeriesSpec> series) {
  LorentzParams{p, q}.validate();
  if (length < 4) throw DomainError("witness length must be at least 4");
  WitnessReport report;
  report.p = p;
  report.q = q;
  report.length = length;
  report.epsilon.resize(static_cast<std::size_t>(length));
  for (int n = 1; n <= length; ++n) {
    report.epsilon[static_cast<std::size_t>(n - 1)] =
        std::pow(n, -1.0 / p) * std::pow(1.0 + std::log(n), -1.0 / q);
  }
  if (series.empty()) series = {{p, q}, {p, 2 * q}};
  for (const SeriesSpec& spec : series) {
    report.series.push_back(series_membership(report.epsilon, spec));
  }
  return report;
}

// --- diagonal K ----------------------------------------------------------------

namespace {

// p0 = 1 < p1: the optimal split clips at a level, d1 = min(sigma, lambda).
// On each piece between consecutive sorted values the objective
// S_k - k lambda + t (k lambda^{p1} + R_k)^{1/p1} is convex in lambda.
double k_clip_levels(const std::vector<double>& sigma, double t, double p1) {
  const std::size_t d = sigma.size();
  // Tail sums R_k = sum_{i >= k} sigma_i^{p1}, head sums S_k.
  std::vector<double> tail(d + 1, 0.0), head(d + 1, 0.0);
  for (std::size_t i = d; i-- > 0;) {
    tail[i] = tail[i + 1] + (std::isinf(p1) ? 0.0 : std::pow(sigma[i], p1));
  }
  for (std::size_t i = 0; i < d; ++i) head[i + 1] = head[i] + sigma[i];
  const auto objective = [&](std::size_t k, double lambda) {
    double second;
    if (std::isinf(p1)) {
      second = k > 0 ? lambda : (d > 0 ? sigma[0] : 0.0);
    } else {
      second = std::pow(static_cast<double>(k) * std::pow(lambda, p1) + tail[k],
                        1.0 / p1);
    }
    return (head[k] - static_cast<double>(k) * lambda) + t * second;
  };
  double best = objective(0, sigma[0]);
  for (std::size_t k = 1; k <= d; ++k) {
    const double hi = sigma[k - 1];
    const double lo = k < d ? sigma[k] : 0.0;
    const auto piece = [&](double lambda) { return objective(k, lambda); };
    best = std::min(best, golden_section(piece, lo, hi, 120).value);
  }
  return best;
}

}  // namespace

double k_operator_diag(std::span<const double> sigma, double t, double p0,
                       double p1) {
  const SNumSeq s = SNumSeq::checked({sigma.begin(), sigma.end()});
  if (!(t > 0)) throw DomainError("t must be positive");
  if (!(p0 > 0) || !(p1 > 0)) throw DomainError("exponents must be positive");
  if (s.values.empty() || s.values.front() == 0) return 0.0;
  const double top = s.values.front();
  if (p0 == p1 && p0 >= 1) {
    return std::min(1.0, t) * lp_norm(s.values, p0);
  }
  if (p0 == 1 && p1 > 1) {
    std::vector<double> normalized(s.values);
    for (double& v : normalized) v /= top;
    return top * k_clip_levels(normalized, t, p1);
  }
  const int d = static_cast<int>(s.values.size());
  const Couple couple = Couple::oracle(WeightedNorm::unit(p0, d),
                                       WeightedNorm::unit(p1, d));
  return k_oracle(FiniteVector(s.values), t, couple, couple.oracle_options());
}

}  // namespace interpk
