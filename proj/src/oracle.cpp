// Brute-force upper bound for K(x, t) = inf{||a||_0 + t||x - a||_1}.
//
// Multi-start descent. Each sweep runs a golden-section line search on every
// free coordinate a_i in [-2|x_i|, 2|x_i|], then block moves that shrink the
// k largest (scaled) coordinates of one side together. The block moves are
// what lets the search leave the ties that sup-type norms create.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "interpk/couples.hpp"
#include "interpk/errors.hpp"
#include "interpk/numeric.hpp"
#include "interpk/random.hpp"

namespace interpk {

namespace {

class Descent {
 public:
  Descent(const FiniteVector& x, double t, const Couple& couple,
          const OracleOptions& options)
      : x_(x), t_(t), couple_(couple), options_(options) {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (x_.entries[i] != 0) free_.push_back(i);
    }
    scale0_.resize(x_.size());
    scale1_.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
      const int index = x_.offset + static_cast<int>(i);
      scale0_[i] = couple_.norm0().scale_at(index);
      scale1_[i] = couple_.norm1().scale_at(index);
    }
  }

  // Runs the descent from `start` (aligned with x) and returns the final
  // objective; `start` is overwritten with the final decomposition.
  double run(FiniteVector& a) {
    b_ = x_;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (x_.entries[i] == 0) a.entries[i] = 0;
      b_.entries[i] = x_.entries[i] - a.entries[i];
    }
    a_ = &a;
    double f = objective();
    for (int sweep = 0; sweep < options_.max_sweeps; ++sweep) {
      const double before = f;
      for (std::size_t i : free_) f = coordinate_move(i, f);
      f = block_moves(/*reduce_second=*/true, f);
      f = block_moves(/*reduce_second=*/false, f);
      if (!(before - f > 1e-14 * std::max(before, 1e-300))) break;
    }
    return f;
  }

 private:
  double objective() const {
    return couple_.norm0()(*a_) + t_ * couple_.norm1()(b_);
  }

  void set(std::size_t i, double value) {
    a_->entries[i] = value;
    b_.entries[i] = x_.entries[i] - value;
  }

  double coordinate_move(std::size_t i, double f) {
    const double current = a_->entries[i];
    const double radius = 2 * std::abs(x_.entries[i]);
    const auto phi = [&](double v) {
      set(i, v);
      return objective();
    };
    LineMinimum best =
        golden_section(phi, -radius, radius, options_.golden_iterations);
    for (double candidate : {0.0, x_.entries[i]}) {
      const double value = phi(candidate);
      if (value < best.value) best = {candidate, value};
    }
    if (best.value < f) {
      set(i, best.argument);
      return best.value;
    }
    set(i, current);
    return f;
  }

  // Moves the k largest scaled entries of one side towards zero at equal
  // scaled speed, for k = 1..m.
  double block_moves(bool reduce_second, double f) {
    std::vector<std::size_t> order;
    std::vector<double> magnitude(x_.size());
    const auto refresh = [&] {
      order.clear();
      for (std::size_t i : free_) {
        const double v = reduce_second ? b_.entries[i] : a_->entries[i];
        magnitude[i] =
            std::abs(v) * (reduce_second ? scale1_[i] : scale0_[i]);
        if (magnitude[i] > 0) order.push_back(i);
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t l, std::size_t r) {
                         return magnitude[l] > magnitude[r];
                       });
    };
    refresh();
    for (std::size_t k = 1; k <= order.size(); ++k) {
      std::vector<std::size_t> block(order.begin(), order.begin() + static_cast<long>(k));
      std::vector<double> base(k), direction(k);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t i = block[j];
        base[j] = a_->entries[i];
        if (reduce_second) {
          direction[j] = (b_.entries[i] > 0 ? 1.0 : -1.0) / scale1_[i];
        } else {
          direction[j] = (a_->entries[i] > 0 ? -1.0 : 1.0) / scale0_[i];
        }
      }
      const double reach = magnitude[block.back()];
      const auto phi = [&](double s) {
        for (std::size_t j = 0; j < k; ++j) set(block[j], base[j] + s * direction[j]);
        return objective();
      };
      const LineMinimum best =
          golden_section(phi, 0.0, reach, options_.golden_iterations);
      if (best.value < f) {
        phi(best.argument);
        f = best.value;
        refresh();
      } else {
        phi(0.0);
      }
    }
    return f;
  }

  const FiniteVector& x_;
  double t_;
  const Couple& couple_;
  const OracleOptions& options_;
  std::vector<std::size_t> free_;
  std::vector<double> scale0_, scale1_;
  FiniteVector* a_ = nullptr;
  FiniteVector b_;
};

}  // namespace

double k_oracle(const FiniteVector& x, double t, const Couple& couple,
                int budget, std::uint64_t seed) {
  OracleOptions options = couple.oracle_options();
  options.budget = budget;
  options.seed = seed;
  return k_oracle(x, t, couple, options);
}

double k_oracle(const FiniteVector& x, double t, const Couple& couple,
                const OracleOptions& options,
                std::span<const FiniteVector> extra_starts,
                FiniteVector* best_decomposition) {
  if (!(t > 0)) throw DomainError("t must be positive");
  if (options.budget < 1) throw DomainError("oracle budget must be >= 1");
  if (static_cast<int>(x.size()) > options.max_dim) {
    throw SizeError("oracle dimension " + std::to_string(x.size()) +
                    " exceeds the guard " + std::to_string(options.max_dim));
  }
  const Window window = couple.window();
  const FiniteVector xa = aligned(x, window);
  FiniteVector zero(window.offset,
                    std::vector<double>(static_cast<std::size_t>(window.size)));
  if (xa.is_zero()) {
    if (best_decomposition != nullptr) *best_decomposition = zero;
    return 0.0;
  }

  std::vector<FiniteVector> starts;
  starts.push_back(zero);
  starts.push_back(xa);
  double peak = 0;
  for (double v : xa.entries) peak = std::max(peak, std::abs(v));
  FiniteVector clip = xa;
  for (double& v : clip.entries) v = std::clamp(v, -peak / 2, peak / 2);
  starts.push_back(clip);
  for (const FiniteVector& s : extra_starts) starts.push_back(aligned(s, window));
  for (int k = 0; k < options.budget; ++k) {
    auto rng = make_rng(options.seed, static_cast<std::uint64_t>(k));
    FiniteVector s = xa;
    for (double& v : s.entries) v = uniform(rng, -2 * std::abs(v), 2 * std::abs(v));
    starts.push_back(std::move(s));
  }

  Descent descent(xa, t, couple, options);
  double best = kInf;
  for (FiniteVector& start : starts) {
    const double value = descent.run(start);
    if (value < best) {
      best = value;
      if (best_decomposition != nullptr) *best_decomposition = start;
    }
  }
  return best;
}

}  // namespace interpk
