#ifndef FRACBV_TESTS_SUPPORT_HPP
#define FRACBV_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fracbv/func_repr.hpp"

namespace fracbv::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

// Random step with n_levels levels (tails included) drawn from [lo, hi].
inline StepFunction random_step(int n_levels, double lo = -1.0, double hi = 1.0, bool zero_tails = false) {
  if (n_levels < 2) return StepFunction::constant(uniform(lo, hi));
  std::vector<double> bps;
  double x = uniform(-2.0, -1.0);
  for (int i = 0; i + 1 < n_levels; ++i) {
    bps.push_back(x);
    x += uniform(0.05, 0.6);
  }
  std::vector<double> lv;
  for (int i = 0; i < n_levels; ++i) lv.push_back(uniform(lo, hi));
  if (zero_tails) {
    lv.front() = 0.0;
    lv.back() = 0.0;
  }
  return StepFunction(std::move(bps), std::move(lv));
}

// Exhaustive maximum over all subsequences of sum |increment|^p.
inline double brute_force_subsequence(const std::vector<double>& v, double p, bool positive_only = false) {
  const std::size_t n = v.size();
  double best = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    double total = 0.0;
    int prev = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      if (prev >= 0) {
        double d = v[i] - v[static_cast<std::size_t>(prev)];
        if (positive_only && d < 0.0) d = 0.0;
        total += std::pow(std::abs(d), p);
      }
      prev = static_cast<int>(i);
    }
    best = std::max(best, total);
  }
  return best;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace fracbv::testing

#endif  // FRACBV_TESTS_SUPPORT_HPP
