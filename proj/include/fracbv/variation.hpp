#ifndef FRACBV_VARIATION_HPP
#define FRACBV_VARIATION_HPP

#include <cmath>
#include <span>
#include <vector>

#include "fracbv/func_repr.hpp"

namespace fracbv {

/**
 * Exponent pair of the s-total variation: increments are raised to p = 1/s.
 *
 * p is stored and s derived from it, so that p-driven code never sees a
 * round-tripped 1/(1/p).
 */
class SExponent {
 public:
  static SExponent from_s(double s);
  static SExponent from_p(double p);

  double s() const { return 1.0 / p_; }
  double p() const { return p_; }

 private:
  explicit SExponent(double p) : p_(p) {}
  double p_;
};

/// |delta|^p with the zero increment short-circuited.
inline double increment_power(double delta, double p);

/// Strictly increasing list of at least two points.
class Subdivision {
 public:
  explicit Subdivision(std::vector<double> points);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<double> points_;
};

struct VariationReport {
  double tvs = 0.0;
  // Subdivision attaining `tvs`. For constant data both points share a cell.
  std::vector<double> witness;
  double seminorm = 0.0;
};

/// Sum of |u(x_i) - u(x_{i-1})|^{1/s} along sigma.
double tvs_on_subdivision(const StepFunction& u, const Subdivision& sigma, SExponent s);

/// Same sum for an explicit value sequence.
double tvs_on_values(std::span<const double> values, SExponent s);

/// Endpoints plus the interior points whose value is a (non-strict) local
/// max or min along the sequence of values u(x_i).
Subdivision extremal_points(const StepFunction& u, const Subdivision& sigma);

// Dynamic programming over subsequences of a value sequence:
//   best[i] = max_{j<i} best[j] + w(v_j, v_i),
// where w is |v_i - v_j|^p (or its positive part for the one-sided
// variant). Returns the maximum and the chosen indices.
struct SubsequenceOptimum {
  double value = 0.0;
  std::vector<std::size_t> indices;
};
SubsequenceOptimum max_subsequence_variation(std::span<const double> values, SExponent s,
                                             bool positive_only = false);

/// TV^s of a step function over the whole line, with a witness subdivision
/// (one interior point per selected cell).
VariationReport tvs_step_exact(const StepFunction& u, SExponent s);

/// One-sided variant: only increasing increments contribute.
double tvs_plus_step(const StepFunction& u, SExponent s);

/// DP over the samples; a lower bound for TV^s of any function through them.
VariationReport tvs_grid_lower_bound(const GridFunction& u, SExponent s);
double tvs_plus_grid_lower_bound(const GridFunction& u, SExponent s);

/// 2^{-k}, k = 0..20.
std::vector<double> default_lip_h_grid();

/// max over h of (1/h) * integral |u(x+h) - u(x)|^{1/s} dx.
double lip_functional(const StepFunction& u, SExponent s, std::span<const double> h_grid);

// ---------------------------------------------------------------------------

inline double increment_power(double delta, double p) {
  const double a = delta < 0.0 ? -delta : delta;
  if (a == 0.0) return 0.0;
  if (p == 1.0) return a;
  return std::exp(p * std::log(a));
}

}  // namespace fracbv

#endif  // FRACBV_VARIATION_HPP
