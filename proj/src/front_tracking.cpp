#include "fracbv/front_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "fracbv/errors.hpp"

namespace fracbv {

PiecewiseAffineFlux::PiecewiseAffineFlux(std::vector<double> u_nodes, std::vector<double> f_values)
    : u_nodes_(std::move(u_nodes)), f_values_(std::move(f_values)) {
  if (u_nodes_.size() < 2) throw ValidationError("flux needs at least two nodes");
  if (u_nodes_.size() != f_values_.size()) throw ValidationError("flux u_nodes and f_values differ in length");
  for (std::size_t i = 0; i < u_nodes_.size(); ++i) {
    if (!std::isfinite(u_nodes_[i]) || !std::isfinite(f_values_[i])) {
      throw ValidationError("flux nodes and values must be finite");
    }
    if (i > 0 && !(u_nodes_[i - 1] < u_nodes_[i])) throw ValidationError("flux nodes must be strictly increasing");
  }
}

double PiecewiseAffineFlux::slope(std::size_t k) const {
  return (f_values_[k + 1] - f_values_[k]) / (u_nodes_[k + 1] - u_nodes_[k]);
}

bool PiecewiseAffineFlux::is_convex() const {
  for (std::size_t k = 0; k + 2 < u_nodes_.size(); ++k) {
    if (slope(k + 1) < slope(k)) return false;
  }
  return true;
}

double PiecewiseAffineFlux::operator()(double u) const {
  if (!in_range(u)) {
    std::ostringstream os;
    os << "state " << u << " outside flux range [" << lo() << ", " << hi() << "]";
    throw ValidationError(os.str());
  }
  auto it = std::lower_bound(u_nodes_.begin(), u_nodes_.end(), u);
  auto k = static_cast<std::size_t>(it - u_nodes_.begin());
  if (k < u_nodes_.size() && u_nodes_[k] == u) return f_values_[k];
  --k;
  return f_values_[k] + slope(k) * (u - u_nodes_[k]);
}

PiecewiseAffineFlux polygonalize_flux(const RealFunction& f, const Interval& range, int K) {
  if (K < 1) throw ValidationError("polygonalize_flux: K must be >= 1");
  if (!range.bounded()) throw ValidationError("polygonalize_flux: range must be bounded");
  std::vector<double> u(static_cast<std::size_t>(K) + 1);
  std::vector<double> v(u.size());
  for (int k = 0; k <= K; ++k) {
    // Endpoints exact; interior nodes by interpolation between them.
    const double w = static_cast<double>(k) / K;
    u[static_cast<std::size_t>(k)] = k == K ? range.hi() : range.lo() + w * range.length();
    v[static_cast<std::size_t>(k)] = f(u[static_cast<std::size_t>(k)]);
  }
  return PiecewiseAffineFlux(std::move(u), std::move(v));
}

std::vector<FluxVertex> convex_envelope(const PiecewiseAffineFlux& flux, double ul, double ur) {
  if (!flux.in_range(ul) || !flux.in_range(ur)) {
    std::ostringstream os;
    os << "Riemann states (" << ul << ", " << ur << ") outside flux range [" << flux.lo() << ", " << flux.hi()
       << "]";
    throw ValidationError(os.str());
  }
  if (ul == ur) throw ValidationError("convex_envelope: states must differ");

  const double a = std::min(ul, ur);
  const double b = std::max(ul, ur);
  std::vector<FluxVertex> pts{{a, flux(a)}};
  const auto nodes = flux.nodes();
  const auto vals = flux.values();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] > a && nodes[k] < b) pts.push_back({nodes[k], vals[k]});
  }
  pts.push_back({b, flux(b)});

  // Monotone chain: lower hull for increasing data, upper hull otherwise.
  const double sign = ul < ur ? 1.0 : -1.0;
  std::vector<FluxVertex> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& m = hull.back();
      const double cross = (m.u - o.u) * (p.f - o.f) - (m.f - o.f) * (p.u - o.u);
      if (sign * cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  if (ul > ur) std::reverse(hull.begin(), hull.end());
  return hull;
}

std::vector<Front> solve_riemann(const PiecewiseAffineFlux& flux, double ul, double ur, double x) {
  if (!flux.in_range(ul) || !flux.in_range(ur)) {
    std::ostringstream os;
    os << "Riemann states (" << ul << ", " << ur << ") outside flux range [" << flux.lo() << ", " << flux.hi()
       << "]";
    throw ValidationError(os.str());
  }
  std::vector<Front> fronts;
  if (std::abs(ul - ur) < kZeroStrength) return fronts;
  const auto env = convex_envelope(flux, ul, ur);
  fronts.reserve(env.size() - 1);
  for (std::size_t i = 0; i + 1 < env.size(); ++i) {
    const auto& l = env[i];
    const auto& r = env[i + 1];
    fronts.push_back({x, (r.f - l.f) / (r.u - l.u), l.u, r.u});
  }
  return fronts;
}

FrontTrackingState::FrontTrackingState(const PiecewiseAffineFlux& flux, const StepFunction& u0, double t0)
    : t_ref_(t0), left_state_(u0.left_tail()), right_state_(u0.right_tail()) {
  const auto bps = u0.breakpoints();
  const auto lv = u0.levels();
  for (double v : lv) {
    if (!flux.in_range(v)) {
      std::ostringstream os;
      os << "initial value " << v << " outside flux range [" << flux.lo() << ", " << flux.hi() << "]";
      throw ValidationError(os.str());
    }
  }
  for (std::size_t i = 0; i < bps.size(); ++i) {
    auto fan = solve_riemann(flux, lv[i], lv[i + 1], bps[i]);
    fronts_.insert(fronts_.end(), fan.begin(), fan.end());
  }
}

FrontTrackingState::FrontTrackingState(double t_ref, std::vector<Front> fronts, double left_state,
                                       double right_state)
    : t_ref_(t_ref), fronts_(std::move(fronts)), left_state_(left_state), right_state_(right_state) {
  for (std::size_t i = 0; i + 1 < fronts_.size(); ++i) {
    if (fronts_[i].x_ref > fronts_[i + 1].x_ref) throw ValidationError("fronts must be ordered by position");
  }
}

std::vector<double> FrontTrackingState::state_sequence() const {
  std::vector<double> seq{left_state_};
  for (const auto& f : fronts_) seq.push_back(f.right_state);
  if (fronts_.empty()) seq.back() = left_state_;
  return seq;
}

void FrontTrackingState::advance_to(double t) {
  for (auto& f : fronts_) f.x_ref += f.speed * (t - t_ref_);
  t_ref_ = t;
}

namespace {

// Collision time of fronts i and i+1, or +inf when they separate.
double pair_collision_time(const FrontTrackingState& st, std::size_t i) {
  const auto fr = st.fronts();
  const double dv = fr[i].speed - fr[i + 1].speed;
  if (!(dv > 0.0)) return kInf;
  const double gap = std::max(0.0, fr[i + 1].x_ref - fr[i].x_ref);
  return st.t_ref() + gap / dv;
}

double position_tol(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

std::vector<double> tvs_for_grid(std::span<const double> seq, std::span<const SExponent> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& s : grid) out.push_back(max_subsequence_variation(seq, s).value);
  return out;
}

}  // namespace

std::optional<InteractionEvent> next_interaction(const FrontTrackingState& state) {
  const auto fr = state.fronts();
  if (fr.size() < 2) return std::nullopt;
  double best = kInf;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < fr.size(); ++i) {
    const double t = pair_collision_time(state, i);
    if (t < best) {
      best = t;
      at = i;
    }
  }
  if (!std::isfinite(best)) return std::nullopt;

  InteractionEvent ev;
  ev.t_star = best;
  ev.x_star = state.position(at, best);
  ev.first = at;
  ev.last = at + 1;
  // Extend over fronts meeting at the same point at the same time.
  while (ev.first > 0 && pair_collision_time(state, ev.first - 1) <= best + kEventTimeTol) --ev.first;
  while (ev.last + 1 < fr.size() && pair_collision_time(state, ev.last) <= best + kEventTimeTol) ++ev.last;
  return ev;
}

bool satisfies_rankine_hugoniot(const PiecewiseAffineFlux& flux, const Front& front, double tol) {
  const double jump = flux(front.right_state) - flux(front.left_state);
  const double lhs = front.speed * (front.right_state - front.left_state);
  const double scale = std::max({std::abs(jump), std::abs(lhs), 1e-300});
  return std::abs(lhs - jump) <= tol * scale || std::abs(lhs - jump) <= 1e-15;
}

namespace {

void check_fan(const PiecewiseAffineFlux& flux, std::span<const Front> fan, double t) {
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (!satisfies_rankine_hugoniot(flux, fan[i])) {
      std::ostringstream os;
      os << "Rankine-Hugoniot violated at t=" << t << " for front (" << fan[i].left_state << ", "
         << fan[i].right_state << ") speed " << fan[i].speed;
      throw InvariantViolation(os.str());
    }
    if (i > 0) {
      const bool inc = fan[0].left_state < fan[0].right_state;
      const bool ok_states = fan[i - 1].right_state == fan[i].left_state &&
                             (inc ? fan[i].left_state < fan[i].right_state : fan[i].left_state > fan[i].right_state);
      if (!ok_states || !(fan[i - 1].speed < fan[i].speed)) {
        std::ostringstream os;
        os << "wave fan not monotone at t=" << t;
        throw InvariantViolation(os.str());
      }
    }
  }
}

}  // namespace

EvolveResult evolve(const PiecewiseAffineFlux& flux, FrontTrackingState state, double t_target,
                    const EvolveOptions& options) {
  if (!(t_target >= state.t_ref())) throw ValidationError("evolve: target time is before the state's time");
  EvolveResult result{std::move(state), {}};
  auto& st = result.state;

  if (options.check_invariants) {
    for (const auto& f : st.fronts()) {
      if (!satisfies_rankine_hugoniot(flux, f)) throw InvariantViolation("initial front violates Rankine-Hugoniot");
    }
  }

  std::size_t processed = 0;
  while (true) {
    const auto ev = next_interaction(st);
    if (!ev || ev->t_star > t_target) break;
    if (++processed > options.max_events) {
      std::ostringstream os;
      os << "event storm: more than " << options.max_events << " interactions before t=" << t_target
         << " (stuck at t=" << st.t_ref() << " with " << st.fronts().size() << " fronts)";
      throw NumericalError(os.str());
    }

    const double t_star = std::max(ev->t_star, st.t_ref());
    EventRecord rec;
    rec.t_star = t_star;
    rec.x_star = ev->x_star;
    rec.fronts_before = st.fronts().size();
    const auto before_seq = st.state_sequence();
    rec.tvs_before = tvs_for_grid(before_seq, options.s_grid);

    // Gather every adjacent pair colliding at t_star, then process the
    // resulting clusters left to right.
    std::vector<char> link(st.fronts().size(), 0);
    for (std::size_t i = 0; i + 1 < st.fronts().size(); ++i) {
      link[i] = pair_collision_time(st, i) <= t_star + kEventTimeTol ? 1 : 0;
    }
    st.advance_to(t_star);
    const auto& old = st.fronts();
    for (std::size_t i = 0; i + 1 < old.size(); ++i) {
      if (!link[i] && old[i].speed > old[i + 1].speed &&
          std::abs(old[i + 1].x_ref - old[i].x_ref) <= position_tol(old[i].x_ref)) {
        link[i] = 1;
      }
    }

    std::vector<Front> next;
    next.reserve(old.size());
    std::size_t i = 0;
    while (i < old.size()) {
      std::size_t j = i;
      while (j + 1 < old.size() && link[j]) ++j;
      if (j == i) {
        next.push_back(old[i]);
      } else {
        double x_mean = 0.0;
        for (std::size_t k = i; k <= j; ++k) x_mean += old[k].x_ref;
        x_mean /= static_cast<double>(j - i + 1);
        auto fan = solve_riemann(flux, old[i].left_state, old[j].right_state, x_mean);
        if (options.check_invariants) check_fan(flux, fan, t_star);
        next.insert(next.end(), fan.begin(), fan.end());
      }
      i = j + 1;
    }
    // Keep positions ordered after round-off in the cluster means.
    for (std::size_t k = 1; k < next.size(); ++k) next[k].x_ref = std::max(next[k].x_ref, next[k - 1].x_ref);
    st = FrontTrackingState(t_star, std::move(next), st.left_state(), st.right_state());

    rec.fronts_after = st.fronts().size();
    rec.tvs_after = tvs_for_grid(st.state_sequence(), options.s_grid);
    if (options.check_invariants) {
      for (std::size_t k = 0; k < options.s_grid.size(); ++k) {
        if (rec.tvs_after[k] > rec.tvs_before[k] + options.tvs_slack) {
          std::ostringstream os;
          os.precision(17);
          os << "TV^s increased at t=" << t_star << " for s=" << options.s_grid[k].s() << ": " << rec.tvs_before[k]
             << " -> " << rec.tvs_after[k];
          throw InvariantViolation(os.str());
        }
      }
    }
    result.events.push_back(std::move(rec));
  }

  st.advance_to(t_target);
  return result;
}

StepFunction sample_solution(const FrontTrackingState& state, double t, const Interval& window) {
  if (t < state.t_ref()) throw ValidationError("sample_solution: time is before the state's reference time");
  std::vector<double> bps;
  std::vector<double> lv{state.left_state()};
  const auto fr = state.fronts();
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const double x = state.position(i, t);
    if (!bps.empty() && x <= bps.back() + position_tol(x)) {
      if (x < bps.back() - 1e-9 * std::max(1.0, std::abs(x))) {
        throw ValidationError("sample_solution: fronts have crossed; evolve to this time first");
      }
      lv.back() = fr[i].right_state;
    } else {
      bps.push_back(x);
      lv.push_back(fr[i].right_state);
    }
  }
  if (fr.empty()) lv.back() = state.left_state();
  return restrict(StepFunction(std::move(bps), std::move(lv)).canonical(), window);
}

}  // namespace fracbv
