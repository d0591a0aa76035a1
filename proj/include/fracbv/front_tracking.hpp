#ifndef FRACBV_FRONT_TRACKING_HPP
#define FRACBV_FRONT_TRACKING_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fracbv/func_repr.hpp"
#include "fracbv/variation.hpp"

namespace fracbv {

/// Continuous piecewise-affine flux given by its values at nodes u_0 < ... < u_K.
/// Queries outside [u_0, u_K] throw.
class PiecewiseAffineFlux {
 public:
  PiecewiseAffineFlux(std::vector<double> u_nodes, std::vector<double> f_values);

  std::span<const double> nodes() const { return u_nodes_; }
  std::span<const double> values() const { return f_values_; }
  double lo() const { return u_nodes_.front(); }
  double hi() const { return u_nodes_.back(); }
  bool in_range(double u) const { return u >= lo() && u <= hi(); }
  // Slope on [u_k, u_{k+1}].
  double slope(std::size_t k) const;
  bool is_convex() const;

  double operator()(double u) const;

 private:
  std::vector<double> u_nodes_;
  std::vector<double> f_values_;
};

/// Interpolates f at K + 1 uniformly spaced nodes of `range`.
PiecewiseAffineFlux polygonalize_flux(const RealFunction& f, const Interval& range, int K);

struct FluxVertex {
  double u;
  double f;
};

/**
 * Envelope of the flux graph between the two states, listed from ul to ur.
 *
 * ul < ur: lower convex envelope on [ul, ur]; ul > ur: upper concave
 * envelope on [ur, ul]. Vertices are the endpoints plus a subset of the
 * flux nodes; collinear vertices are removed so consecutive chord slopes
 * are strictly increasing along the list.
 */
std::vector<FluxVertex> convex_envelope(const PiecewiseAffineFlux& flux, double ul, double ur);

/// Discontinuity moving at constant speed; x_ref is its position at the
/// owning state's reference time.
struct Front {
  double x_ref = 0.0;
  double speed = 0.0;
  double left_state = 0.0;
  double right_state = 0.0;
};

// Fronts whose states differ by less than this are not created.
inline constexpr double kZeroStrength = 1e-14;
inline constexpr double kEventTimeTol = 1e-12;

/// Entropy solution of the Riemann problem (ul | ur) at x: one front per
/// envelope chord, speeds strictly increasing left to right.
std::vector<Front> solve_riemann(const PiecewiseAffineFlux& flux, double ul, double ur, double x = 0.0);

/// Piecewise-constant solution snapshot at time t_ref.
class FrontTrackingState {
 public:
  // Resolves the Riemann problem at every breakpoint of u0.
  FrontTrackingState(const PiecewiseAffineFlux& flux, const StepFunction& u0, double t0 = 0.0);
  FrontTrackingState(double t_ref, std::vector<Front> fronts, double left_state, double right_state);

  double t_ref() const { return t_ref_; }
  std::span<const Front> fronts() const { return fronts_; }
  std::vector<Front>& mutable_fronts() { return fronts_; }
  double left_state() const { return left_state_; }
  double right_state() const { return right_state_; }

  // State values from left to right: left state then every front's right state.
  std::vector<double> state_sequence() const;
  double position(std::size_t i, double t) const { return fronts_[i].x_ref + fronts_[i].speed * (t - t_ref_); }
  // Moves all reference positions to time t.
  void advance_to(double t);

 private:
  double t_ref_;
  std::vector<Front> fronts_;
  double left_state_;
  double right_state_;
};

struct InteractionEvent {
  double t_star = 0.0;
  double x_star = 0.0;
  // Colliding fronts are first..last (inclusive, contiguous).
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Earliest collision between adjacent fronts, if any.
std::optional<InteractionEvent> next_interaction(const FrontTrackingState& state);

struct EventRecord {
  double t_star = 0.0;
  double x_star = 0.0;
  std::size_t fronts_before = 0;
  std::size_t fronts_after = 0;
  std::vector<double> tvs_before;  // one per s in the options' grid
  std::vector<double> tvs_after;
};

struct EvolveOptions {
  std::vector<SExponent> s_grid;
  // Throw InvariantViolation on Rankine-Hugoniot, fan monotonicity or
  // TV^s increase at any interaction.
  bool check_invariants = true;
  double tvs_slack = 1e-10;
  std::size_t max_events = 1'000'000;
};

struct EvolveResult {
  FrontTrackingState state;
  std::vector<EventRecord> events;
};

/// Advances to t_target, resolving every interaction on the way.
EvolveResult evolve(const PiecewiseAffineFlux& flux, FrontTrackingState state, double t_target,
                    const EvolveOptions& options = {});

/// Profile at time t (t_ref <= t <= next interaction), restricted to window.
StepFunction sample_solution(const FrontTrackingState& state, double t,
                             const Interval& window = Interval::whole_line());

/// Checks Rankine-Hugoniot on one front; relative tolerance.
bool satisfies_rankine_hugoniot(const PiecewiseAffineFlux& flux, const Front& front, double tol = 1e-12);

}  // namespace fracbv

#endif  // FRACBV_FRONT_TRACKING_HPP
