#ifndef FRACBV_LAX_OLEINIK_HPP
#define FRACBV_LAX_OLEINIK_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracbv/func_repr.hpp"
#include "fracbv/variation.hpp"

namespace fracbv {

/**
 * Smooth flux with strictly monotone velocity a = f' on a compact state
 * range K, together with its degeneracy data:
 *
 *   p      degeneracy exponent, inf_{K x K} |a(u) - a(v)| / |u - v|^p > 0
 *   C_deg  that infimum, D = 1 / C_deg
 *   q      decay exponent, inf_{U in a(K)} |b(U - a(0))| / |U|^q > 0
 *
 * Outside K the velocity is continued by a translated power law
 * a(M + d) = a(M) + C_deg d^p (mirrored at the lower end), so b = a^{-1}
 * is defined on the whole line. Power and Burgers fluxes use their own
 * global formulas, which already satisfy the same bound.
 */
class ConvexFluxModel {
 public:
  // f(u) = u^2 / 2 on [-M, M].
  static ConvexFluxModel burgers(double M);
  // f(u) = |u|^{1+alpha} / (1 + alpha) on `range`.
  static ConvexFluxModel power(double alpha, const Interval& range);
  // Velocity tabulated at nodes (linear in between), with declared p.
  // Monotone decreasing tables describe concave fluxes.
  static ConvexFluxModel table(std::vector<double> u_nodes, std::vector<double> a_values, double p);

  // -f(-u): turns a concave flux into a convex one.
  ConvexFluxModel reflected() const;

  const std::string& name() const { return name_; }
  const Interval& range() const { return range_; }
  double p() const { return p_; }
  double s() const { return 1.0 / p_; }
  double c_deg() const { return c_deg_; }
  double d_const() const { return 1.0 / c_deg_; }
  double q() const { return q_; }
  double c_zero() const { return velocity(0.0); }
  bool increasing() const { return increasing_; }
  double sup_abs_velocity() const;

  double flux(double u) const;
  double velocity(double u) const;
  // Closed-form b when known (Burgers, power).
  std::optional<double> closed_form_inverse(double xi) const;

 private:
  enum class Kind { kPower, kTable };
  ConvexFluxModel() : range_(0.0, 1.0) {}

  Kind kind_ = Kind::kPower;
  std::string name_;
  Interval range_;
  double alpha_ = 1.0;
  double p_ = 1.0;
  double c_deg_ = 1.0;
  double q_ = 1.0;
  bool increasing_ = true;
  double sign_ = 1.0;  // flux(u) = sign * base(sign * u) for reflected power models
  std::vector<double> nodes_;
  std::vector<double> a_values_;
  std::vector<double> f_at_nodes_;
};

/// Grid minimum of |a(u) - a(v)| / |u - v|^p over distinct pairs of n_grid
/// uniform points of K.
double estimate_degeneracy(const RealFunction& a, const Interval& K, double p, std::size_t n_grid);

/// Grid infimum of |b(U - a(0))| / |U|^q over n_grid uniform points of a(K)
/// (U = 0 skipped).
double q_ratio_infimum(const ConvexFluxModel& model, double q, std::size_t n_grid);

/// Smallest q for which the grid infimum does not decay under a 4x
/// refinement of the grid, located by bisection on q.
double estimate_q(const ConvexFluxModel& model, std::size_t n_grid);

/// b(xi) = a^{-1}(xi) by bracketed bisection on the extended velocity.
double invert_velocity(const ConvexFluxModel& model, double xi);

/// Periodic initial data: one period of cells starting at the first breakpoint.
struct PeriodicData {
  StepFunction one_period;
  double period = 1.0;
};

struct LaxOleinikOptions {
  std::size_t scan_points = 4096;
  // Per-point full windows (parallelizable) instead of windows narrowed by
  // the monotonicity of the minimizer.
  bool independent_points = false;
  unsigned threads = 1;
};

struct LaxOleinikEvaluation {
  GridFunction u;
  std::vector<double> minimizers;
};

/**
 * Lax-Oleinik solution u(t, x) = b((x - y) / t), y minimizing
 * G(t, x, y) = U_0(y) + t h((x - y) / t) with U_0 the primitive of the data
 * and h(xi) = integral of b from a(0) to xi.
 *
 * For step data U_0 is affine on each cell and G is convex there, so each
 * cell contributes its exact minimizer; grid data is minimized by a uniform
 * scan followed by golden-section refinement.
 */
class LaxOleinikSolver {
 public:
  LaxOleinikSolver(ConvexFluxModel model, StepFunction u0, LaxOleinikOptions options = {});
  LaxOleinikSolver(ConvexFluxModel model, GridFunction u0, LaxOleinikOptions options = {});
  LaxOleinikSolver(ConvexFluxModel model, PeriodicData u0, LaxOleinikOptions options = {});

  const ConvexFluxModel& model() const { return model_; }
  bool periodic() const { return std::holds_alternative<PeriodicData>(data_); }
  // Mean over one period (periodic data only).
  double mean() const { return mean_; }
  double sup_abs_velocity() const { return sup_a_; }
  // Periodic data only.
  double period() const;
  double period_start() const;
  // Step data with zero tails only: [first breakpoint, last breakpoint].
  Interval support() const;

  double b(double xi) const;
  double h(double xi) const;
  double primitive(double y) const;
  double objective(double t, double x, double y) const;

  /// Leftmost global minimizer of G(t, x, .) within |x - y| <= t sup|a|.
  double minimize_hopf(double t, double x) const;
  /// Same search restricted to [lo, hi] (intersected with the localization window).
  double minimize_hopf(double t, double x, double lo, double hi) const;
  /// Scan + golden-section search regardless of the data representation.
  double minimize_hopf_scan(double t, double x, double lo, double hi) const;

  double value(double t, double x) const;
  LaxOleinikEvaluation evaluate(double t, double x0, double dx, std::size_t n) const;

 private:
  double minimize_step(double t, double x, double lo, double hi) const;
  double minimize_periodic(double t, double x, double lo, double hi) const;
  double u_from_minimizer(double t, double x, double y) const;
  void evaluate_range(double t, double x0, double dx, std::size_t i_lo, std::size_t i_hi, double y_lo,
                      double y_hi, std::vector<double>& ys) const;

  ConvexFluxModel model_;
  double orientation_ = 1.0;  // -1 when solving the reflected problem
  std::variant<StepFunction, GridFunction, PeriodicData> data_;
  LaxOleinikOptions options_;
  double sup_a_ = 0.0;
  double mean_ = 0.0;
  double f_zero_ = 0.0;
  std::vector<double> prim_at_breaks_;  // U_0 at breakpoints / grid nodes
};

struct HolderReport {
  bool ok = true;
  std::size_t violations = 0;
  double max_violation = 0.0;
  double worst_x = 0.0;
  double worst_y = 0.0;
  // Smallest c for which every sampled pair passes.
  double smallest_sufficient_c = 0.0;
};

/// u(y) - u(x) <= c (y - x)^s / t^s + 1e-9 for every sample pair x < y.
HolderReport check_oleinik_holder(const GridFunction& u, double t, double s, double c_bound);

struct SmoothingReport {
  double tvs_lower_bound = 0.0;
  double tvs_plus_lower_bound = 0.0;
  // (D / t)(2 |window| + t sup|a|)
  double bound = 0.0;
  // D |window| / t
  double plus_bound = 0.0;
  bool ok = true;
};

SmoothingReport smoothing_report(const LaxOleinikSolver& solver, double t, const Interval& window, double s,
                                 std::size_t n_grid);

enum class DecayMode { kCompact, kPeriodic };

struct DecayReport {
  std::vector<double> times;
  std::vector<double> sup_norms;
  double fitted_exponent = 0.0;
  double predicted_exponent = 0.0;
};

/// Sup norm of u(t, .) (minus the mean for periodic data) over a window
/// containing the support (or one period).
double sup_norm(const LaxOleinikSolver& solver, double t, DecayMode mode);

DecayReport decay_report(const LaxOleinikSolver& solver, const std::vector<double>& times, DecayMode mode);

/// Least-squares slope of log y against log t over times >= t_max / 10.
double fit_last_decade_slope(const std::vector<double>& times, const std::vector<double>& values);

}  // namespace fracbv

#endif  // FRACBV_LAX_OLEINIK_HPP
