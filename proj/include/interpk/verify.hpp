#ifndef INTERPK_VERIFY_HPP_
#define INTERPK_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "interpk/couples.hpp"
#include "interpk/interp.hpp"
#include "interpk/snum.hpp"

namespace interpk {

// --- execution -------------------------------------------------------------------

// Worker count: INTERPK_THREADS when set (>= 1), else the hardware count.
int thread_count();
// Runs body(i) for i in [0, count). Results must be written to per-index
// slots; the caller reduces them in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// --- couples indexed by dimension -----------------------------------------------

struct CoupleFamily {
  enum class Kind { L1Linf, WeightedSup, PowerCoordinatewise };
  Kind kind = Kind::L1Linf;
  double p = 1;       // power_coordinatewise only
  double alpha0 = 0;  // weights 2^{alpha0 k}, 2^{alpha1 k}, k = 0..dim-1
  double alpha1 = 0;

  Couple make(int dim) const;
  std::string name() const;
};
CoupleFamily::Kind family_kind_from_string(const std::string& name);

// --- sampling ----------------------------------------------------------------------

// Every sample draws from its own stream, so sample i is the same no matter
// how many samples are taken.
std::mt19937_64 sample_rng(std::uint64_t seed, int dim, std::uint64_t index);

using VectorSampler = std::function<FiniteVector(std::mt19937_64&, int dim)>;

// Dense Gaussian directions, sparse spikes and flat witnesses y_N on a random
// support, in equal proportion.
FiniteVector mixed_sample(std::mt19937_64& rng, int dim);
// Nonincreasing nonnegative sequences of the given length (sorted random,
// power laws, Lorentz witnesses, flat, geometric).
std::vector<double> nonincreasing_sample(std::mt19937_64& rng, int length);

// --- reports -----------------------------------------------------------------------

struct TraceRow {
  int dim = 0;
  std::uint64_t sample = 0;
  double t = 0;  // 0 when the check has no t
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
};

struct DimBand {
  int dim = 0;
  int count = 0;
  double min_ratio = 0;
  double max_ratio = 0;
  double spread() const { return max_ratio / min_ratio; }
};

struct EquivReport {
  std::string check;
  std::uint64_t seed = 0;
  int sample_count = 0;  // ratios counted
  double min_ratio = 0;
  double max_ratio = 0;
  std::vector<DimBand> per_dim;
  std::vector<TraceRow> trace;  // filled only on request
  bool pass = true;
  std::string rule;             // the pass rule that was applied

  double spread() const { return max_ratio / min_ratio; }
};

using NormFn = std::function<double(const FiniteVector&)>;

// Ratios a(x) / b(x) over `count` samples; samples where either side is 0 are
// skipped. Throws EmptyReport when no sample yields a ratio.
EquivReport equivalence_report(const NormFn& a, const NormFn& b,
                               const VectorSampler& sampler, int dim, int count,
                               std::uint64_t seed, bool trace = false);

// Spread rule: for consecutive dims, spread(next) <= (1 + growth) spread(prev).
bool spread_stable(const std::vector<DimBand>& bands, double growth);

// --- level-clipping decompositions -------------------------------------------------

// The decompositions x = (x - c_m) + c_m, c_m = clamp(x, -m, m), over m in
// {0, |x_i|, midpoints of consecutive |x_i|, max}, each assigned both ways.
// value(t) = min over them of n0(a) + t n1(b), an upper bound for K(x, t).
class LevelClipTable {
 public:
  LevelClipTable(const FiniteVector& x, const NormFn& n0, const NormFn& n1);
  double value(double t) const;
  // The minimizing a0 at t.
  FiniteVector best_a0(double t) const;

 private:
  struct Entry {
    double a_norm;
    double b_norm;
    FiniteVector a;
  };
  std::vector<Entry> entries_;
};

// --- named checks ------------------------------------------------------------------

struct MainlemaConfig {
  CoupleFamily couple;
  std::vector<int> dims{2, 4, 8};
  std::vector<int> t_exponents{-6, -5, -4, -3, -2, -1, 0};
  int count = 200;
  std::uint64_t seed = 0;
  double band_lo = 0.125;
  double band_hi = 8.0;
  OracleOptions oracle{};
  bool trace = false;
};
// Ratio k_surrogate / oracle K on (A0 + A1, A0 ∩ A1).
EquivReport check_mainlema(const MainlemaConfig& config);

struct SumIntersectionConfig {
  CoupleFamily couple;
  double theta = 0.3;
  double p = 1.0;
  std::vector<int> dims{4, 8, 16, 32, 64};
  int count = 60;
  std::uint64_t seed = 0;
  double growth = 0.10;
  DyadicWindow window{};
  bool trace = false;
};
// (A0 + A1, A0 ∩ A1)_{theta,p} against E_theta + E_{1-theta} (theta < 1/2)
// or E_theta ∩ E_{1-theta} (theta >= 1/2), E_s = (A0, A1)_{s,p}. The left side
// uses the exact derived K when the base is (l1, linf), else the surrogate; the
// sum norm is the level-clipping upper bound.
EquivReport check_sum_intersection(const SumIntersectionConfig& config);

enum class ReiterationK { LevelClip, Oracle };

struct ReiterationConfig {
  CoupleFamily couple;
  double theta0 = 0.25;
  double theta1 = 0.75;
  double alpha = 0.5;
  double r = 2.0;
  double p = 2.0;  // exponent of the endpoint spaces E_i = (A0, A1)_{theta_i, p}
  std::vector<int> dims{4, 8, 16, 32};
  int count = 40;
  std::uint64_t seed = 0;
  double growth = 0.10;
  ReiterationK k_method = ReiterationK::LevelClip;
  OracleOptions oracle{2, 0, 32, 60, 60};
  DyadicWindow outer{};  // t-grid of the (alpha, r) norm on (E0, E1)
  bool trace = false;
};
// (E0, E1)_{alpha, r} against (A0, A1)_{(1-alpha) theta0 + alpha theta1, r}.
EquivReport check_reiteration(const ReiterationConfig& config);

struct KonigConfig {
  double p0 = 1;
  double p1 = 2;
  double theta = 0.5;
  double q = 1;
  std::vector<int> lengths{4, 8, 16, 32, 64};
  int count = 400;
  std::uint64_t seed = 0;
  double growth = 0.10;
  DyadicWindow window{};
  bool trace = false;
};
// Dyadic (theta, q) norm of the diagonal K-profile against the Lorentz norm
// with 1/p = (1 - theta)/p0 + theta/p1.
EquivReport check_konig(const KonigConfig& config);

struct DichotomyConfig {
  bool ordered = false;  // false: (l1(2^k), l1(2^-k)); true: (l1, linf)
  double t = 0.25;
  std::vector<int> half_widths{4, 5, 6, 7, 8};
  int samples = 200;
  std::uint64_t seed = 0;
  double threshold = 0.99;
};

struct DichotomyRow {
  int half_width = 0;
  int dim = 0;
  double value = 0;
};

struct DichotomyReport {
  DichotomyConfig config;
  std::vector<DichotomyRow> rows;
  bool pass = true;
  std::string rule;
};

// sup K(x, t)/K(x, 1) across growing windows. The non-ordered family must
// stay >= threshold; the ordered one <= t.
DichotomyReport dichotomy_sweep(const DichotomyConfig& config);

struct DistinctnessConfig {
  std::vector<double> p_list{1, 2};
  std::vector<double> q_list{1, 2};
  int length = 1 << 16;
};

struct DistinctnessRow {
  SeriesSpec witness;  // the witness eps is built for this (p, q)
  SeriesSpec other;
  Membership own = Membership::Inconclusive;
  Membership in_other = Membership::Inconclusive;
  bool separated = false;  // own diverging, other converging
};

struct DistinctnessReport {
  DistinctnessConfig config;
  std::vector<DistinctnessRow> rows;
  bool pass = true;  // every pair of distinct ideals is separated one way
  std::string rule;
};

DistinctnessReport distinctness_demo(const DistinctnessConfig& config);

}  // namespace interpk

#endif  // INTERPK_VERIFY_HPP_
