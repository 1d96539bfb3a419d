#ifndef INTERPK_LETHARGY_HPP_
#define INTERPK_LETHARGY_HPP_

#include <cstdint>
#include <vector>

#include "interpk/couples.hpp"
#include "interpk/interp.hpp"
#include "interpk/snum.hpp"

namespace interpk {

// A prescribed decay eps_1 >= eps_2 >= ... > 0 together with a nondecreasing
// index map h with h(n) >= n. Both are stored 1-based: epsilon[n-1] = eps_n,
// h[n-1] = h(n).
struct DecaySpec {
  std::vector<double> epsilon;
  std::vector<std::int64_t> h;

  // Throws InvariantError when an invariant fails on the first `length` terms.
  void validate(int length) const;
};

// xi_n = max over m <= n of eps_m 2^{-rho(m, n)}, rho(m, n) the number of
// h-steps from m to reach n (m whose orbit stalls below n are skipped).
// Returns xi_1..xi_N; xi is nonincreasing, eps <= xi and xi_n <= 2 xi_{h(n)}.
std::vector<double> lift_sequence(const DecaySpec& spec, int length);

struct SlowKWitness {
  FiniteVector x;      // x_k = eps_k, k = 0..N
  KProfile profile;    // K(x, 2^n) for n = -N..0
};

// x_k = eps_k in the couple (linf, linf(2^k)). Since
// K(x, t) >= min(1, t 2^k)|x_k|, the exact profile satisfies K(x, 2^{-n}) >= eps_n;
// this is checked on the computed values and a miss throws ConstructionError.
SlowKWitness slow_k_witness(const std::vector<double>& epsilon, int n);
Couple slow_k_couple(int n);

// diag(epsilon): a_n = eps_n.
MatrixOperator slow_snumber_witness(const std::vector<double>& epsilon);

struct StrictnessPoint {
  int n = 1;
  double int_norm = 0;
  double sum_norm = 0;
  double interp_norm = 0;
};

// The (l1, linf) tail on [-20, 20] is ~3e-3 for small N; the witness uses a
// wider window by default.
inline constexpr DyadicWindow kStrictnessWindow{-40, 40};

// y_N = (1/N, ..., 1/N) in (l1, linf): norms in the intersection, the sum
// and (l1, linf)_{theta, q}.
StrictnessPoint strictness_witness(int n, const InterpParams& params,
                                   const DyadicWindow& window = kStrictnessWindow);
std::vector<StrictnessPoint> strictness_sweep(
    int max_exponent, const InterpParams& params,
    const DyadicWindow& window = kStrictnessWindow);

}  // namespace interpk

#endif  // INTERPK_LETHARGY_HPP_
