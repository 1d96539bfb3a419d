// Test-only reference computations. Each one takes a route that is
// independent of the library code it is used to check.
#ifndef INTERPK_TESTS_ORACLES_HPP_
#define INTERPK_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "interpk/couples.hpp"

namespace interpk::testing {

// K for (l1, linf) as the minimum over level-clipping decompositions
// b = clamp(x, -m, m). The objective is piecewise linear in m with breaks at
// the |x_i|, so checking m in {0, |x_i|} is exhaustive.
inline double k_l1_linf_by_levels(const std::vector<double>& x, double t) {
  std::vector<double> levels{0.0};
  double peak = 0;
  for (double v : x) {
    levels.push_back(std::abs(v));
    peak = std::max(peak, std::abs(v));
  }
  double best = 1e300;
  for (double m : levels) {
    double excess = 0;
    for (double v : x) excess += std::max(0.0, std::abs(v) - m);
    best = std::min(best, excess + t * std::min(m, peak));
  }
  return best;
}

// K for (linf(w0), linf(w1)) by a dense scan of lambda1, followed by a local
// refinement. lambda0 is determined by lambda1.
inline double k_weighted_sup_by_scan(const std::vector<double>& x, double t,
                                     const std::vector<double>& w0,
                                     const std::vector<double>& w1) {
  double top = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    top = std::max(top, std::abs(x[i]) * w1[i]);
  }
  const auto value = [&](double l1) {
    double l0 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      l0 = std::max(l0, w0[i] * std::max(0.0, std::abs(x[i]) - l1 / w1[i]));
    }
    return l0 + t * l1;
  };
  if (top == 0) return 0;
  const int steps = 20000;
  double best = value(0), arg = 0;
  for (int k = 1; k <= steps; ++k) {
    const double l1 = top * k / steps;
    const double v = value(l1);
    if (v < best) best = v, arg = l1;
  }
  // value is convex in lambda1: ternary refinement around the grid minimum.
  double lo = std::max(0.0, arg - top / steps), hi = std::min(top, arg + top / steps);
  for (int it = 0; it < 200; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (value(a) <= value(b)) hi = b; else lo = a;
  }
  return std::min(best, value((lo + hi) / 2));
}

inline FiniteVector random_vector(std::mt19937_64& rng, int dim,
                                  int offset = 0) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (double& e : v) e = g(rng);
  // Some samples are sparse.
  if (u(rng) < 0.3) {
    for (double& e : v) {
      if (u(rng) < 0.5) e = 0;
    }
  }
  // Some carry exact ties.
  if (u(rng) < 0.2 && dim >= 2) v[1] = v[0];
  return FiniteVector(offset, std::move(v));
}

inline std::vector<double> random_weights(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> w(static_cast<std::size_t>(dim));
  for (double& e : w) e = std::exp2(u(rng));
  return w;
}

inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0 : std::abs(a - b) / scale;
}

}  // namespace interpk::testing

#endif  // INTERPK_TESTS_ORACLES_HPP_
