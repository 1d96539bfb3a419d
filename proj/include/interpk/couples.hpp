#ifndef INTERPK_COUPLES_HPP_
#define INTERPK_COUPLES_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace interpk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite integer interval [offset, offset + size).
struct Window {
  int offset = 0;
  int size = 0;

  int end() const { return offset + size; }
  bool contains(const Window& other) const {
    return other.size == 0 ||
           (other.offset >= offset && other.end() <= end());
  }
  bool operator==(const Window&) const = default;
};

// A finitely supported sequence over Z. Entries outside the stored window
// are zero.
struct FiniteVector {
  int offset = 0;
  std::vector<double> entries;

  FiniteVector() = default;
  FiniteVector(int offset_, std::vector<double> entries_)
      : offset(offset_), entries(std::move(entries_)) {}
  explicit FiniteVector(std::vector<double> entries_)
      : entries(std::move(entries_)) {}

  Window window() const { return {offset, static_cast<int>(entries.size())}; }
  std::size_t size() const { return entries.size(); }
  double at(int index) const;
  bool is_zero() const;
};

FiniteVector scaled(const FiniteVector& x, double factor);
// Sum over the union of both windows.
FiniteVector add(const FiniteVector& x, const FiniteVector& y);
// Re-expresses x over `window`; throws WindowError when x does not fit.
FiniteVector aligned(const FiniteVector& x, const Window& window);

// Weighted lp quasi-norm ||x|| = (sum (w_i |x_i|)^p)^{1/p}, sup_i w_i|x_i|
// for p = inf.
class WeightedNorm {
 public:
  WeightedNorm(double p, std::vector<double> weights, int offset = 0);
  static WeightedNorm unit(double p, int size, int offset = 0);

  double p() const { return p_; }
  int offset() const { return offset_; }
  std::span<const double> weights() const { return weights_; }
  Window window() const { return {offset_, static_cast<int>(weights_.size())}; }
  double weight_at(int index) const;

  // M with ||a+b|| <= M(||a|| + ||b||).
  double quasi_constant() const;
  // r = min(p, 1); the norm is r-normed.
  double power_exponent() const;

 private:
  double p_;
  int offset_;
  std::vector<double> weights_;
};

double quasi_norm(const FiniteVector& x, const WeightedNorm& norm);

// Type-erased quasi-norm over a window: either a WeightedNorm or an arbitrary
// evaluator (interpolation endpoints, sum/intersection norms).
class Norm {
 public:
  using Evaluator = std::function<double(const FiniteVector&)>;

  Norm(WeightedNorm weighted);  // NOLINT(google-explicit-constructor)
  Norm(std::string name, Window window, double quasi_constant,
       Evaluator evaluator);

  double operator()(const FiniteVector& x) const;

  const WeightedNorm* weighted() const;
  const std::string& name() const;
  Window window() const;
  double quasi_constant() const;
  // Per-coordinate scale used by the oracle's block moves (the weight for a
  // weighted norm, 1 otherwise).
  double scale_at(int index) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

enum class KStrategy { ExactL1Linf, WeightedSupLP, PowerCoordinatewise, Oracle };

const char* to_string(KStrategy strategy);
KStrategy strategy_from_string(const std::string& name);

struct OracleOptions {
  int budget = 4;  // seeded random starts on top of the canonical ones
  std::uint64_t seed = 0;
  int max_dim = 16;
  int golden_iterations = 80;
  int max_sweeps = 200;
};

class Couple {
 public:
  Couple(Norm norm0, Norm norm1, KStrategy strategy, double equiv_lo,
         double equiv_hi, OracleOptions oracle = {});

  // (l1, linf) on `size` coordinates; exact closed form.
  static Couple l1_linf(int size, int offset = 0);
  // (linf(w0), linf(w1)); exact LP.
  static Couple weighted_sup(std::vector<double> w0, std::vector<double> w1,
                             int offset = 0);
  // (lp(w0), lp(w1)) with the coordinatewise surrogate; p in (0, inf).
  static Couple power_coordinatewise(double p, std::vector<double> w0,
                                     std::vector<double> w1, int offset = 0);
  static Couple oracle(Norm norm0, Norm norm1, OracleOptions options = {});

  const Norm& norm0() const { return norm0_; }
  const Norm& norm1() const { return norm1_; }
  KStrategy strategy() const { return strategy_; }
  double equiv_lo() const { return equiv_lo_; }
  double equiv_hi() const { return equiv_hi_; }
  const OracleOptions& oracle_options() const { return oracle_; }
  Window window() const { return norm0_.window(); }
  int dimension() const { return window().size; }
  double quasi_constant() const;
  bool is_exact() const {
    return strategy_ == KStrategy::ExactL1Linf ||
           strategy_ == KStrategy::WeightedSupLP;
  }

  // (A1, A0). ExactL1Linf has no closed form for the swapped couple and
  // falls back to the oracle.
  Couple reversed() const;
  Couple with_oracle_options(OracleOptions options) const;

 private:
  Norm norm0_;
  Norm norm1_;
  KStrategy strategy_;
  double equiv_lo_;
  double equiv_hi_;
  OracleOptions oracle_;
};

// K(x, t) for the couple (l1, linf).
double k_exact_l1_linf(const FiniteVector& x, double t);
// K(x, t) for (linf(w0), linf(w1)) by vertex enumeration of the dual LP.
// Weights are aligned with x.entries.
double k_weighted_sup(const FiniteVector& x, double t,
                      std::span<const double> w0, std::span<const double> w1);
// Coordinatewise surrogate (sum_i inf_{a+b=x_i} (w0|a|)^p + t^p (w1|b|)^p)^{1/p}.
double k_power_coordinatewise(const FiniteVector& x, double t, double p,
                              std::span<const double> w0,
                              std::span<const double> w1);
// Multi-start block/coordinate descent upper bound for
// inf{||a||_0 + t||x - a||_1}.
double k_oracle(const FiniteVector& x, double t, const Couple& couple,
                int budget, std::uint64_t seed);
double k_oracle(const FiniteVector& x, double t, const Couple& couple,
                const OracleOptions& options,
                std::span<const FiniteVector> extra_starts = {},
                FiniteVector* best_decomposition = nullptr);

// Dispatches on the couple's strategy.
double k_value(const FiniteVector& x, double t, const Couple& couple);

using KEvaluator = std::function<double(const FiniteVector&, double)>;
KEvaluator k_evaluator(const Couple& couple);

// Sampled K(x, 2^n), n in [n_min, n_max].
struct KProfile {
  int n_min = 0;
  int n_max = -1;
  std::vector<double> values;

  double at(int n) const { return values.at(static_cast<std::size_t>(n - n_min)); }
  std::size_t size() const { return values.size(); }
};

inline constexpr int kDefaultNMin = -20;
inline constexpr int kDefaultNMax = 20;

KProfile k_profile(const FiniteVector& x, const KEvaluator& k, int n_min,
                   int n_max);
KProfile k_profile(const FiniteVector& x, const Couple& couple,
                   int n_min = kDefaultNMin, int n_max = kDefaultNMax);

struct EndpointNorms {
  double sum_norm = 0;
  double intersection_norm = 0;
};
EndpointNorms endpoint_norms(const FiniteVector& x, const Couple& couple);

// Lower estimate of K(S(A0+A1), t) from seeded directions (cyclic spikes and
// dense Gaussian vectors) normalized to K(x, 1) = 1.
double k_sphere_sup(const Couple& couple, double t, int samples,
                    std::uint64_t seed);

}  // namespace interpk

#endif  // INTERPK_COUPLES_HPP_
