#ifndef FRACBV_FUNC_REPR_HPP
#define FRACBV_FUNC_REPR_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace fracbv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance under which two breakpoints are considered equal.
inline constexpr double kBreakpointMergeTol = 1e-12;

/// Nondegenerate interval with possibly infinite ends.
class Interval {
 public:
  Interval(double lo, double hi);

  static Interval whole_line() { return {-kInf, kInf}; }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  bool bounded() const;
  bool contains(double x) const { return x >= lo_ && x <= hi_; }

 private:
  double lo_;
  double hi_;
};

/**
 * Piecewise-constant function on the real line.
 *
 * Breakpoints x_0 < ... < x_n split the line into the left tail ]-inf, x_0],
 * the cells ]x_{i-1}, x_i] and the right tail ]x_n, +inf[. `levels()` stores
 * all n + 2 values in left-to-right order: levels[0] is the left tail,
 * levels[i] (1 <= i <= n) the value on ]x_{i-1}, x_i] and levels[n + 1] the
 * right tail. A function without breakpoints is a constant with a single
 * level.
 *
 * Cells are half-open on the left, so evaluating at a breakpoint x_i returns
 * the value of the cell that ends there.
 */
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> levels);

  static StepFunction constant(double value) { return StepFunction({}, {value}); }

  // Cells ]edges[i], edges[i+1]] carry cell_values[i]; tails are given
  // explicitly.
  static StepFunction from_cells(std::vector<double> edges, std::span<const double> cell_values,
                                 double left_tail, double right_tail);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> levels() const { return levels_; }
  std::size_t num_breakpoints() const { return breakpoints_.size(); }
  double left_tail() const { return levels_.front(); }
  double right_tail() const { return levels_.back(); }

  double operator()(double x) const;

  // Merges breakpoints closer than kBreakpointMergeTol (dropping the
  // zero-width cell between them) and adjacent cells with equal values.
  StepFunction canonical() const;
  bool is_canonical() const;

  double sup() const;
  double inf() const;

  // Affine change of variable x -> (x - shift) / scale applied to the graph,
  // i.e. returns v(x) = u(scale * x + shift) for scale > 0.
  StepFunction dilate(double scale, double shift = 0.0) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
};

/// Uniform samples x0, x0 + dx, ..., of a function; linear in between.
class GridFunction {
 public:
  GridFunction(double x0, double dx, std::vector<double> samples);

  double x0() const { return x0_; }
  double dx() const { return dx_; }
  std::span<const double> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double x(std::size_t i) const { return x0_ + dx_ * static_cast<double>(i); }
  double x_last() const { return x(samples_.size() - 1); }

  // Linear interpolation, constant extension outside the sampled range.
  double operator()(double x) const;

 private:
  double x0_;
  double dx_;
  std::vector<double> samples_;
};

/**
 * (1/h) * integral over R of |u(x+h) - u(x)|^p, in closed form.
 *
 * The integrand is piecewise constant with breaks at {x_i} and {x_i - h}
 * and vanishes outside [x_0 - h, x_n], so the value is finite for every
 * step function. Throws ValidationError for h <= 0 or p < 1.
 */
double shift_difference_lp(const StepFunction& u, double h, double p);

using RealFunction = std::function<double(double)>;

/// Cell averages over ]ph, (p+1)h] covering `window`; constant tails.
/// Closures are averaged with composite Simpson on 64 subcells per cell.
StepFunction step_approximate(const RealFunction& u, double h, const Interval& window);
StepFunction step_approximate(const GridFunction& u, double h, const Interval& window);

/// u on `window`, extended constantly outside it.
StepFunction restrict(const StepFunction& u, const Interval& window);

/// Samples `u` at n uniformly spaced points spanning [lo, hi].
GridFunction sample(const RealFunction& u, double lo, double hi, std::size_t n);

/// Exact L1 distance on a bounded window.
double l1_distance(const StepFunction& u, const StepFunction& v, const Interval& window);
// The grid function is taken as its linear interpolant.
double l1_distance(const StepFunction& u, const GridFunction& v, const Interval& window);

}  // namespace fracbv

#endif  // FRACBV_FUNC_REPR_HPP
