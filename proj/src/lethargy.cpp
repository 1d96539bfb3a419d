#include "interpk/lethargy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "interpk/errors.hpp"

namespace interpk {

void DecaySpec::validate(int length) const {
  if (length < 1) throw DomainError("lift length must be at least 1");
  const auto n = static_cast<std::size_t>(length);
  if (epsilon.size() < n || h.size() < n) {
    throw InvariantError("decay spec is shorter than the requested length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(epsilon[i] > 0) || !std::isfinite(epsilon[i])) {
      throw InvariantError("epsilon must be positive and finite");
    }
    if (i > 0 && epsilon[i] > epsilon[i - 1]) {
      throw InvariantError("epsilon must be nonincreasing");
    }
    if (h[i] < static_cast<std::int64_t>(i + 1)) {
      throw InvariantError("h(n) >= n fails at n = " + std::to_string(i + 1));
    }
    if (i > 0 && h[i] < h[i - 1]) {
      throw InvariantError("h must be nondecreasing");
    }
  }
}

std::vector<double> lift_sequence(const DecaySpec& spec, int length) {
  spec.validate(length);
  const auto n_max = static_cast<std::int64_t>(length);
  std::vector<double> xi(static_cast<std::size_t>(length), 0.0);
  for (std::int64_t m = 1; m <= n_max; ++m) {
    const double eps = spec.epsilon[static_cast<std::size_t>(m - 1)];
    // Walk the orbit m, h(m), h(h(m)), ...; n in (h^{k-1}(m), h^k(m)] has rho = k.
    std::int64_t reached = m - 1;
    std::int64_t point = m;
    for (int k = 0;; ++k) {
      const std::int64_t top = std::min(point, n_max);
      const double value = std::ldexp(eps, -k);
      for (std::int64_t n = reached + 1; n <= top; ++n) {
        double& slot = xi[static_cast<std::size_t>(n - 1)];
        slot = std::max(slot, value);
      }
      if (point >= n_max || value == 0) break;
      const std::int64_t next = spec.h[static_cast<std::size_t>(point - 1)];
      if (next == point) break;  // the orbit stalls; larger n are unreachable
      reached = point;
      point = next;
    }
  }
  return xi;
}

Couple slow_k_couple(int n) {
  std::vector<double> w0(static_cast<std::size_t>(n) + 1, 1.0), w1;
  for (int k = 0; k <= n; ++k) w1.push_back(std::ldexp(1.0, k));
  return Couple::weighted_sup(std::move(w0), std::move(w1), 0);
}

SlowKWitness slow_k_witness(const std::vector<double>& epsilon, int n) {
  if (n < 0) throw DomainError("witness window requires N >= 0");
  if (epsilon.size() < static_cast<std::size_t>(n) + 1) {
    throw DomainError("slow_k_witness needs eps_0..eps_N");
  }
  SNumSeq::checked({epsilon.begin(), epsilon.begin() + n + 1});
  const Couple couple = slow_k_couple(n);
  SlowKWitness out;
  out.x = FiniteVector(0, {epsilon.begin(), epsilon.begin() + n + 1});
  out.profile = k_profile(out.x, couple, -n, 0);
  for (int k = 0; k <= n; ++k) {
    const double bound = epsilon[static_cast<std::size_t>(k)];
    if (!(out.profile.at(-k) >= bound)) {
      throw ConstructionError("K(x, 2^-" + std::to_string(k) +
                              ") fell below eps_" + std::to_string(k));
    }
  }
  return out;
}

MatrixOperator slow_snumber_witness(const std::vector<double>& epsilon) {
  return diag_operator(epsilon);
}

StrictnessPoint strictness_witness(int n, const InterpParams& params,
                                   const DyadicWindow& window) {
  if (n < 1) throw DomainError("strictness witness requires N >= 1");
  const FiniteVector y(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
  const Couple couple = Couple::l1_linf(n);
  const EndpointNorms ends = endpoint_norms(y, couple);
  return {n, ends.intersection_norm, ends.sum_norm,
          interp_norm(y, couple, params, window)};
}

std::vector<StrictnessPoint> strictness_sweep(int max_exponent,
                                              const InterpParams& params,
                                              const DyadicWindow& window) {
  if (max_exponent < 0 || max_exponent > 24) {
    throw DomainError("strictness sweep exponent must lie in [0, 24]");
  }
  std::vector<StrictnessPoint> out;
  for (int m = 0; m <= max_exponent; ++m) {
    out.push_back(strictness_witness(1 << m, params, window));
  }
  return out;
}

}  // namespace interpk
