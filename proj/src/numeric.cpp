#include "interpk/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace interpk {

double lp_norm(std::span<const double> values, double p) {
  double largest = 0;
  for (double v : values) largest = std::max(largest, std::abs(v));
  if (largest == 0 || std::isinf(p)) return largest;
  double sum = 0;
  for (double v : values) {
    if (v != 0) sum += std::pow(std::abs(v) / largest, p);
  }
  return largest * std::pow(sum, 1.0 / p);
}

double kahan_sum(std::span<const double> values) {
  double sum = 0, carry = 0;
  for (double v : values) {
    const double y = v - carry;
    const double next = sum + y;
    carry = (next - sum) - y;
    sum = next;
  }
  return sum;
}

LineMinimum golden_section(const std::function<double(double)>& f, double lo,
                           double hi, int iterations) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  LineMinimum best{lo, f(lo)};
  const auto consider = [&best](double x, double fx) {
    if (fx < best.value) best = {x, fx};
  };
  consider(hi, f(hi));
  if (!(hi > lo)) return best;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  consider(c, fc);
  consider(d, fd);
  for (int i = 0; i < iterations && b - a > 0; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

std::string format_number(double value) {
  char buffer[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

}  // namespace interpk
