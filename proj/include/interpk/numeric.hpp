#ifndef INTERPK_NUMERIC_HPP_
#define INTERPK_NUMERIC_HPP_

#include <functional>
#include <span>
#include <string>

namespace interpk {

// (sum |v_i|^p)^{1/p}, max |v_i| for p = inf. Scaled by the
// largest entry so that extreme exponents neither overflow nor underflow.
double lp_norm(std::span<const double> values, double p);

double kahan_sum(std::span<const double> values);

struct LineMinimum {
  double argument = 0;
  double value = 0;
};

// Golden-section search on [lo, hi]. Returns the best point seen, endpoints
// included, so non-unimodal functions still yield a valid upper bound.
LineMinimum golden_section(const std::function<double(double)>& f, double lo,
                           double hi, int iterations);

// Shortest decimal that round-trips.
std::string format_number(double value);

}  // namespace interpk

#endif  // INTERPK_NUMERIC_HPP_
