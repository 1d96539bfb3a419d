#ifndef INTERPK_INTERP_HPP_
#define INTERPK_INTERP_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "interpk/couples.hpp"

namespace interpk {

// (theta, q) of the real method; q may be kInf.
struct InterpParams {
  double theta = 0.5;
  double q = 2.0;

  void validate() const;
};

// Dyadic grid t = 2^n, n in [n_min, n_max].
struct DyadicWindow {
  int n_min = kDefaultNMin;
  int n_max = kDefaultNMax;

  void validate() const;
};

// Weighted lq norm of {2^{-theta n} K(x, 2^n)} together with the first and
// last terms, which bound the truncation error of the window.
struct InterpNormDetail {
  double value = 0;
  double edge_low = 0;
  double edge_high = 0;
};

double profile_norm(const KProfile& profile, const InterpParams& params);

InterpNormDetail interp_norm_detailed(const FiniteVector& x, const KEvaluator& k,
                                      const InterpParams& params,
                                      const DyadicWindow& window = {});
double interp_norm(const FiniteVector& x, const KEvaluator& k,
                   const InterpParams& params, const DyadicWindow& window = {});
double interp_norm(const FiniteVector& x, const Couple& couple,
                   const InterpParams& params, const DyadicWindow& window = {});

// Parameter lattice E = weighted l^r over the n-window starting at n_min.
struct LatticeParam {
  double r = 1.0;
  int n_min = kDefaultNMin;
  std::vector<double> weights;

  int n_max() const { return n_min + static_cast<int>(weights.size()) - 1; }
  // 2^{-theta n} weights with r = q: reproduces the (theta, q) method.
  static LatticeParam power(const InterpParams& params,
                            const DyadicWindow& window = {});
};

// ||{min(1, 2^n)}||_E; finite and positive iff E is K-nontrivial on its window.
double lattice_constant(const LatticeParam& lattice);
double lattice_norm(const FiniteVector& x, const Couple& couple,
                    const LatticeParam& lattice);

// Contributions of t <= 1 (n <= 0) and t > 1 (n > 0), each an lq norm.
struct SplitNorm {
  double low = 0;
  double high = 0;
};
SplitNorm split_norm(const FiniteVector& x, const KEvaluator& k,
                     const InterpParams& params, const DyadicWindow& window = {});
SplitNorm split_norm(const FiniteVector& x, const Couple& couple,
                     const InterpParams& params, const DyadicWindow& window = {});
// Quasi-triangle constant of lq: max(1, 2^{1/q - 1}).
double lq_quasi_constant(double q);

// Parameter space Phi(theta, p): ||u|| = (sum_n (2^{-theta n} u_n)^p)^{1/p}.
struct ParamSpace {
  double theta = 0.5;
  double p = 1.0;

  void validate() const;
  // Norm of u restricted to n in [lo, hi]; u is indexed from n_min.
  double norm(const std::vector<double>& u, int n_min, int lo, int hi) const;
};

struct ConditionResult {
  std::string name;
  double constant = 0;  // worst observed constant on the full window
  bool bounded = true;  // false when the constant keeps growing with the window
};

struct ConditionReport {
  std::array<ConditionResult, 4> conditions;
  int half_width = 20;
  int probes = 0;
  std::uint64_t seed = 0;
};

// Evaluates Cond1..Cond4 on spikes at every grid point and `probes` seeded
// random nonnegative step functions, on [-W, W] and [-W/2, W/2].
ConditionReport parameter_conditions(const ParamSpace& phi0,
                                     const ParamSpace& phi1, int probes,
                                     std::uint64_t seed, int half_width = 20);

// The ordered couple (A0+A1, A0 ∩ A1) built over an exact base couple.
class DerivedCouple {
 public:
  explicit DerivedCouple(Couple base, OracleOptions oracle = {});

  const Couple& base() const { return base_; }
  // K(x, t) + t K(x, 1/t) on the base couple, for t in (0, 1]; t > 1 is
  // clamped to 1.
  double k_surrogate(const FiniteVector& x, double t) const;
  // Oracle K on the explicit sum and intersection norms.
  double k_oracle(const FiniteVector& x, double t) const;
  const Couple& oracle_couple() const { return oracle_; }
  // Over (l1, linf) the derived couple is (linf, l1) with equal norms, so
  // K(x, t) = t K(x, 1/t; l1, linf) exactly.
  bool has_exact() const;
  double k_exact(const FiniteVector& x, double t) const;
  // Proven band of k_surrogate / true K.
  double equiv_lo() const { return equiv_lo_; }
  double equiv_hi() const { return equiv_hi_; }

  KEvaluator surrogate_evaluator() const;
  KEvaluator oracle_evaluator() const;
  KEvaluator exact_evaluator() const;

 private:
  Couple base_;
  Couple oracle_;
  double equiv_lo_;
  double equiv_hi_;
};

DerivedCouple derived_sum_int_couple(const Couple& couple,
                                     OracleOptions oracle = {});

// (A0, A1)_{theta, q} materialized as a norm over the couple's window.
Norm endpoint_space(const Couple& couple, const InterpParams& params,
                    const DyadicWindow& window = {});

}  // namespace interpk

#endif  // INTERPK_INTERP_HPP_
