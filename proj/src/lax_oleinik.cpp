#include "fracbv/lax_oleinik.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "fracbv/errors.hpp"

namespace fracbv {

namespace {

double signed_power(double x, double e) { return x < 0.0 ? -std::pow(-x, e) : std::pow(x, e); }

}  // namespace

// --- ConvexFluxModel -------------------------------------------------------

ConvexFluxModel ConvexFluxModel::burgers(double M) {
  auto m = power(1.0, Interval(-M, M));
  m.name_ = "burgers";
  return m;
}

ConvexFluxModel ConvexFluxModel::power(double alpha, const Interval& range) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("power flux: alpha must be positive");
  if (!range.bounded()) throw ValidationError("power flux: state range must be bounded");
  ConvexFluxModel m;
  m.kind_ = Kind::kPower;
  m.name_ = "power";
  m.range_ = range;
  m.alpha_ = alpha;
  m.p_ = std::max(1.0, alpha);
  m.q_ = 1.0 / alpha;
  const double lo = range.lo();
  const double hi = range.hi();
  if (alpha >= 1.0) {
    if (lo < 0.0 && hi > 0.0) {
      // Attained at u = -v.
      m.c_deg_ = std::pow(2.0, 1.0 - alpha);
    } else {
      // Same-sign range: (|v|^a - |u|^a) / (v - u)^a is smallest for the
      // widest pair.
      const double near = std::min(std::abs(lo), std::abs(hi));
      const double far = std::max(std::abs(lo), std::abs(hi));
      m.c_deg_ = (std::pow(far, alpha) - std::pow(near, alpha)) / std::pow(far - near, alpha);
    }
  } else {
    // p = 1: the infimum of a' = alpha |u|^{alpha-1} over the range.
    const double far = std::max(std::abs(lo), std::abs(hi));
    m.c_deg_ = alpha * std::pow(far, alpha - 1.0);
  }
  return m;
}

ConvexFluxModel ConvexFluxModel::table(std::vector<double> u_nodes, std::vector<double> a_values, double p) {
  if (u_nodes.size() < 2 || u_nodes.size() != a_values.size()) {
    throw ValidationError("table flux: need matching u_nodes and a_values with at least two entries");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("table flux: p must be >= 1");
  for (std::size_t i = 1; i < u_nodes.size(); ++i) {
    if (!(u_nodes[i - 1] < u_nodes[i])) throw ValidationError("table flux: u_nodes must be strictly increasing");
  }
  const bool inc = a_values.back() > a_values.front();
  for (std::size_t i = 1; i < a_values.size(); ++i) {
    if (inc ? !(a_values[i] > a_values[i - 1]) : !(a_values[i] < a_values[i - 1])) {
      throw ValidationError("table flux: velocity values must be strictly monotone");
    }
  }
  ConvexFluxModel m;
  m.kind_ = Kind::kTable;
  m.name_ = "table";
  m.range_ = Interval(u_nodes.front(), u_nodes.back());
  m.p_ = p;
  m.increasing_ = inc;
  m.nodes_ = std::move(u_nodes);
  m.a_values_ = std::move(a_values);
  m.f_at_nodes_.assign(m.nodes_.size(), 0.0);
  for (std::size_t i = 1; i < m.nodes_.size(); ++i) {
    m.f_at_nodes_[i] =
        m.f_at_nodes_[i - 1] + 0.5 * (m.a_values_[i] + m.a_values_[i - 1]) * (m.nodes_[i] - m.nodes_[i - 1]);
  }
  const auto a = [&m](double u) { return m.velocity(u); };
  m.c_deg_ = 1.0;  // placeholder so velocity() is usable during estimation
  const double c = estimate_degeneracy(a, m.range_, p, 2001);
  if (!(c > 0.0)) throw ValidationError("table flux: degeneracy infimum is not positive for the declared p");
  m.c_deg_ = c;
  if (m.increasing_) {
    m.q_ = estimate_q(m, 2001);
  } else {
    m.q_ = estimate_q(m.reflected(), 2001);
  }
  return m;
}

ConvexFluxModel ConvexFluxModel::reflected() const {
  ConvexFluxModel m = *this;
  m.range_ = Interval(-range_.hi(), -range_.lo());
  m.increasing_ = !increasing_;
  m.name_ = name_ + "-reflected";
  if (kind_ == Kind::kPower) {
    m.sign_ = -sign_;
  } else {
    // f~(u) = -f(-u), a~(u) = a(-u).
    const std::size_t n = nodes_.size();
    for (std::size_t i = 0; i < n; ++i) {
      m.nodes_[i] = -nodes_[n - 1 - i];
      m.a_values_[i] = a_values_[n - 1 - i];
    }
    m.f_at_nodes_.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      m.f_at_nodes_[i] =
          m.f_at_nodes_[i - 1] + 0.5 * (m.a_values_[i] + m.a_values_[i - 1]) * (m.nodes_[i] - m.nodes_[i - 1]);
    }
  }
  return m;
}

double ConvexFluxModel::sup_abs_velocity() const {
  return std::max(std::abs(velocity(range_.lo())), std::abs(velocity(range_.hi())));
}

double ConvexFluxModel::velocity(double u) const {
  if (kind_ == Kind::kPower) return signed_power(sign_ * u, alpha_);
  const double dir = increasing_ ? 1.0 : -1.0;
  const double lo = nodes_.front();
  const double hi = nodes_.back();
  if (u > hi) return a_values_.back() + dir * c_deg_ * std::pow(u - hi, p_);
  if (u < lo) return a_values_.front() - dir * c_deg_ * std::pow(lo - u, p_);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u);
  std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
  if (k >= nodes_.size()) return a_values_.back();
  --k;
  const double w = (u - nodes_[k]) / (nodes_[k + 1] - nodes_[k]);
  return (1.0 - w) * a_values_[k] + w * a_values_[k + 1];
}

double ConvexFluxModel::flux(double u) const {
  if (kind_ == Kind::kPower) {
    const double w = sign_ * u;
    return sign_ * std::pow(std::abs(w), 1.0 + alpha_) / (1.0 + alpha_);
  }
  const double dir = increasing_ ? 1.0 : -1.0;
  const double lo = nodes_.front();
  const double hi = nodes_.back();
  if (u > hi) {
    const double d = u - hi;
    return f_at_nodes_.back() + a_values_.back() * d + dir * c_deg_ * std::pow(d, p_ + 1.0) / (p_ + 1.0);
  }
  if (u < lo) {
    const double d = lo - u;
    return f_at_nodes_.front() - (a_values_.front() * d - dir * c_deg_ * std::pow(d, p_ + 1.0) / (p_ + 1.0));
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u);
  std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
  if (k >= nodes_.size()) return f_at_nodes_.back();
  --k;
  const double d = u - nodes_[k];
  const double slope = (a_values_[k + 1] - a_values_[k]) / (nodes_[k + 1] - nodes_[k]);
  return f_at_nodes_[k] + a_values_[k] * d + 0.5 * slope * d * d;
}

std::optional<double> ConvexFluxModel::closed_form_inverse(double xi) const {
  if (kind_ != Kind::kPower) return std::nullopt;
  return sign_ * signed_power(xi, 1.0 / alpha_);
}

// --- degeneracy analysis ---------------------------------------------------

double estimate_degeneracy(const RealFunction& a, const Interval& K, double p, std::size_t n_grid) {
  if (!(p >= 1.0)) throw ValidationError("estimate_degeneracy: p must be >= 1");
  if (n_grid < 2) throw ValidationError("estimate_degeneracy: need at least two grid points");
  if (!K.bounded()) throw ValidationError("estimate_degeneracy: K must be bounded");
  std::vector<double> u(n_grid);
  std::vector<double> av(n_grid);
  const double du = K.length() / static_cast<double>(n_grid - 1);
  for (std::size_t i = 0; i < n_grid; ++i) {
    u[i] = i + 1 == n_grid ? K.hi() : K.lo() + du * static_cast<double>(i);
    av[i] = a(u[i]);
  }
  // On a uniform grid |u_i - u_j|^p depends only on the lag.
  std::vector<double> lag_pow(n_grid);
  for (std::size_t d = 1; d < n_grid; ++d) lag_pow[d] = std::pow(du * static_cast<double>(d), p);
  double best = kInf;
  for (std::size_t i = 0; i < n_grid; ++i) {
    for (std::size_t j = i + 1; j < n_grid; ++j) {
      const double denom = (j + 1 == n_grid || i == 0) ? std::pow(u[j] - u[i], p) : lag_pow[j - i];
      best = std::min(best, std::abs(av[j] - av[i]) / denom);
    }
  }
  return best;
}

double q_ratio_infimum(const ConvexFluxModel& model, double q, std::size_t n_grid) {
  if (n_grid < 2) throw ValidationError("q_ratio_infimum: need at least two grid points");
  const double lo = model.velocity(model.range().lo());
  const double hi = model.velocity(model.range().hi());
  const double Ulo = std::min(lo, hi);
  const double Uhi = std::max(lo, hi);
  if (!(Uhi > Ulo)) throw ValidationError("q_ratio_infimum: degenerate velocity range a(K)");
  const double c = model.c_zero();
  double best = kInf;
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double U = Ulo + (Uhi - Ulo) * static_cast<double>(i) / static_cast<double>(n_grid - 1);
    if (U == 0.0) continue;
    const double num = std::abs(invert_velocity(model, U - c));
    best = std::min(best, num / std::pow(std::abs(U), q));
  }
  return best;
}

double estimate_q(const ConvexFluxModel& model, std::size_t n_grid) {
  const auto admissible = [&](double q) {
    const double coarse = q_ratio_infimum(model, q, n_grid);
    const double fine = q_ratio_infimum(model, q, 4 * n_grid - 3);
    return coarse > 0.0 && fine >= coarse * (1.0 - 1e-9);
  };
  double lo = 1e-3;
  double hi = 1.0;
  while (!admissible(hi)) {
    hi *= 2.0;
    if (hi > 1e6) throw ValidationError("estimate_q: no admissible exponent found");
  }
  if (admissible(lo)) return lo;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (admissible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double invert_velocity(const ConvexFluxModel& model, double xi) {
  if (!std::isfinite(xi)) throw ValidationError("invert_velocity: argument must be finite");
  const double dir = model.increasing() ? 1.0 : -1.0;
  const auto g = [&](double u) { return dir * (model.velocity(u) - xi); };
  double lo = model.range().lo();
  double hi = model.range().hi();
  double width = hi - lo;
  int guard = 0;
  while (g(lo) > 0.0) {
    lo -= width;
    width *= 2.0;
    if (++guard > 2000) throw NumericalError("invert_velocity: cannot bracket from below");
  }
  width = hi - model.range().lo();
  while (g(hi) < 0.0) {
    hi += width;
    width *= 2.0;
    if (++guard > 4000) throw NumericalError("invert_velocity: cannot bracket from above");
  }
  if (g(lo) == 0.0) return lo;
  if (g(hi) == 0.0) return hi;
  for (int it = 0; it < 2100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (gm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(g(lo) <= 0.0 && g(hi) >= 0.0)) throw NumericalError("invert_velocity: bracket lost monotonicity");
  return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
}

// --- LaxOleinikSolver ------------------------------------------------------

namespace {

void check_in_range(const Interval& K, std::span<const double> values) {
  const double tol = 1e-12 * std::max(1.0, std::max(std::abs(K.lo()), std::abs(K.hi())));
  for (double v : values) {
    if (v < K.lo() - tol || v > K.hi() + tol) {
      std::ostringstream os;
      os << "initial value " << v << " outside the flux model's state range [" << K.lo() << ", " << K.hi() << "]";
      throw ValidationError(os.str());
    }
  }
}

StepFunction negate(const StepFunction& u) {
  std::vector<double> lv(u.levels().begin(), u.levels().end());
  for (double& v : lv) v = -v;
  return StepFunction(std::vector<double>(u.breakpoints().begin(), u.breakpoints().end()), std::move(lv));
}

// Cumulative integral of a step function from its first breakpoint.
std::vector<double> step_cumulative(const StepFunction& u) {
  const auto bps = u.breakpoints();
  const auto lv = u.levels();
  std::vector<double> c(bps.size(), 0.0);
  for (std::size_t k = 1; k < bps.size(); ++k) c[k] = c[k - 1] + lv[k] * (bps[k] - bps[k - 1]);
  return c;
}

struct Candidate {
  double g = kInf;
  double y = 0.0;

  // Strictly better, or equal within round-off and further left.
  void offer(double g_new, double y_new, double scale) {
    const double tol = 1e-13 * (1.0 + scale);
    if (g_new < g - tol || (g_new <= g + tol && y_new < y)) {
      g = g_new;
      y = y_new;
    }
  }
};

}  // namespace

LaxOleinikSolver::LaxOleinikSolver(ConvexFluxModel model, StepFunction u0, LaxOleinikOptions options)
    : model_(std::move(model)), data_(StepFunction::constant(0.0)), options_(options) {
  check_in_range(model_.range(), u0.levels());
  if (!model_.increasing()) {
    model_ = model_.reflected();
    orientation_ = -1.0;
    u0 = negate(u0);
  }
  const auto c = step_cumulative(u0);
  const auto bps = u0.breakpoints();
  prim_at_breaks_ = c;
  if (!bps.empty()) {
    // Shift so that U_0(0) = 0.
    double at_zero;
    const auto it = std::lower_bound(bps.begin(), bps.end(), 0.0);
    const auto k = static_cast<std::size_t>(it - bps.begin());
    if (k == 0) {
      at_zero = u0.left_tail() * (0.0 - bps.front());
    } else {
      at_zero = c[k - 1] + u0.levels()[k] * (0.0 - bps[k - 1]);
    }
    for (double& v : prim_at_breaks_) v -= at_zero;
  }
  data_ = std::move(u0);
  sup_a_ = model_.sup_abs_velocity();
  f_zero_ = model_.flux(0.0);
}

LaxOleinikSolver::LaxOleinikSolver(ConvexFluxModel model, GridFunction u0, LaxOleinikOptions options)
    : model_(std::move(model)), data_(StepFunction::constant(0.0)), options_(options) {
  check_in_range(model_.range(), u0.samples());
  if (!model_.increasing()) {
    model_ = model_.reflected();
    orientation_ = -1.0;
    std::vector<double> s(u0.samples().begin(), u0.samples().end());
    for (double& v : s) v = -v;
    u0 = GridFunction(u0.x0(), u0.dx(), std::move(s));
  }
  if (u0.size() < 2) throw ValidationError("grid initial data needs at least two samples");
  const auto s = u0.samples();
  prim_at_breaks_.assign(s.size(), 0.0);
  for (std::size_t i = 1; i < s.size(); ++i) prim_at_breaks_[i] = prim_at_breaks_[i - 1] + 0.5 * (s[i] + s[i - 1]) * u0.dx();
  data_ = u0;
  const double at_zero = primitive(0.0);
  for (double& v : prim_at_breaks_) v -= at_zero;
  sup_a_ = model_.sup_abs_velocity();
  f_zero_ = model_.flux(0.0);
}

LaxOleinikSolver::LaxOleinikSolver(ConvexFluxModel model, PeriodicData u0, LaxOleinikOptions options)
    : model_(std::move(model)), data_(StepFunction::constant(0.0)), options_(options) {
  if (!(u0.period > 0.0)) throw ValidationError("periodic data: period must be positive");
  const auto bps = u0.one_period.breakpoints();
  if (bps.size() < 2) throw ValidationError("periodic data: one period needs at least one cell");
  if (std::abs(bps.back() - bps.front() - u0.period) > 1e-9 * std::max(1.0, u0.period)) {
    throw ValidationError("periodic data: cells must span exactly one period");
  }
  const auto lv = u0.one_period.levels();
  check_in_range(model_.range(), lv.subspan(1, bps.size() - 1));
  if (!model_.increasing()) {
    model_ = model_.reflected();
    orientation_ = -1.0;
    u0.one_period = negate(u0.one_period);
  }
  prim_at_breaks_ = step_cumulative(u0.one_period);
  mean_ = prim_at_breaks_.back() / u0.period;
  data_ = std::move(u0);
  const double at_zero = primitive(0.0);
  for (double& v : prim_at_breaks_) v -= at_zero;
  mean_ *= orientation_;
  sup_a_ = model_.sup_abs_velocity();
  f_zero_ = model_.flux(0.0);
}

double LaxOleinikSolver::period() const {
  if (!periodic()) throw ValidationError("period: data is not periodic");
  return std::get<PeriodicData>(data_).period;
}

double LaxOleinikSolver::period_start() const {
  if (!periodic()) throw ValidationError("period_start: data is not periodic");
  return std::get<PeriodicData>(data_).one_period.breakpoints().front();
}

Interval LaxOleinikSolver::support() const {
  const auto* step = std::get_if<StepFunction>(&data_);
  if (step == nullptr) throw ValidationError("support: only step data has a support");
  if (step->left_tail() != 0.0 || step->right_tail() != 0.0 || step->breakpoints().size() < 2) {
    throw ValidationError("support: initial data is not compactly supported");
  }
  return Interval(step->breakpoints().front(), step->breakpoints().back());
}

double LaxOleinikSolver::b(double xi) const {
  if (auto v = model_.closed_form_inverse(xi)) return *v;
  return invert_velocity(model_, xi);
}

double LaxOleinikSolver::h(double xi) const {
  // Legendre identity: the antiderivative of b vanishing at a(0).
  const double u = b(xi);
  return xi * u - model_.flux(u) + f_zero_;
}

double LaxOleinikSolver::primitive(double y) const {
  if (const auto* step = std::get_if<StepFunction>(&data_)) {
    const auto bps = step->breakpoints();
    const auto lv = step->levels();
    if (bps.empty()) return lv[0] * y;
    const auto it = std::lower_bound(bps.begin(), bps.end(), y);
    const auto k = static_cast<std::size_t>(it - bps.begin());
    if (k == 0) return prim_at_breaks_[0] + lv[0] * (y - bps[0]);
    return prim_at_breaks_[k - 1] + lv[k] * (y - bps[k - 1]);
  }
  if (const auto* grid = std::get_if<GridFunction>(&data_)) {
    const auto s = grid->samples();
    const double r = (y - grid->x0()) / grid->dx();
    if (r <= 0.0) return prim_at_breaks_.front() + s.front() * (y - grid->x0());
    const auto last = s.size() - 1;
    if (r >= static_cast<double>(last)) return prim_at_breaks_.back() + s.back() * (y - grid->x_last());
    const auto i = static_cast<std::size_t>(std::floor(r));
    const double xi = grid->x(i);
    return prim_at_breaks_[i] + 0.5 * (s[i] + (*grid)(y)) * (y - xi);
  }
  const auto& per = std::get<PeriodicData>(data_);
  const auto bps = per.one_period.breakpoints();
  const auto lv = per.one_period.levels();
  const double k = std::floor((y - bps.front()) / per.period);
  const double r = y - k * per.period;
  auto it = std::lower_bound(bps.begin(), bps.end(), r);
  auto j = static_cast<std::size_t>(it - bps.begin());
  j = std::clamp<std::size_t>(j, 1, bps.size() - 1);
  const double in_period = prim_at_breaks_[j - 1] + lv[j] * (r - bps[j - 1]);
  // mean_ carries the physical orientation; undo it for the internal data.
  return in_period + k * (orientation_ * mean_) * per.period;
}

double LaxOleinikSolver::objective(double t, double x, double y) const {
  return primitive(y) + t * h((x - y) / t);
}

double LaxOleinikSolver::minimize_step(double t, double x, double lo, double hi) const {
  const auto& u0 = std::get<StepFunction>(data_);
  const auto bps = u0.breakpoints();
  const auto lv = u0.levels();
  const std::size_t n = bps.size();
  const auto k_first = static_cast<std::size_t>(std::lower_bound(bps.begin(), bps.end(), lo) - bps.begin());
  const auto k_last = static_cast<std::size_t>(std::lower_bound(bps.begin(), bps.end(), hi) - bps.begin());
  Candidate best;
  for (std::size_t k = k_first; k <= k_last && k <= n; ++k) {
    const double cell_lo = k == 0 ? -kInf : bps[k - 1];
    const double cell_hi = k == n ? kInf : bps[k];
    const double l = std::max(cell_lo, lo);
    const double r = std::min(cell_hi, hi);
    if (l > r) continue;
    const double v = lv[k];
    const double y = std::clamp(x - t * model_.velocity(v), l, r);
    double U;
    if (n == 0) {
      U = v * y;
    } else if (k == 0) {
      U = prim_at_breaks_[0] + v * (y - bps[0]);
    } else {
      U = prim_at_breaks_[k - 1] + v * (y - bps[k - 1]);
    }
    const double th = t * h((x - y) / t);
    best.offer(U + th, y, std::abs(U) + std::abs(th));
  }
  return best.y;
}

double LaxOleinikSolver::minimize_periodic(double t, double x, double lo, double hi) const {
  const auto& per = std::get<PeriodicData>(data_);
  const auto bps = per.one_period.breakpoints();
  const auto lv = per.one_period.levels();
  const double P = per.period;
  const double shift_per_period = orientation_ * mean_ * P;
  const std::size_t cells = bps.size() - 1;

  // Cell j (1-based) of copy k, clamped to [lo, hi]; returns (G, y).
  const auto cell_min = [&](std::size_t j, double k, double& g, double& y, double& scale) {
    const double cl = std::max(bps[j - 1] + k * P, lo);
    const double cr = std::min(bps[j] + k * P, hi);
    if (cl > cr) return false;
    const double v = lv[j];
    y = std::clamp(x - t * model_.velocity(v), cl, cr);
    const double U = prim_at_breaks_[j - 1] + v * (y - k * P - bps[j - 1]) + k * shift_per_period;
    const double th = t * h((x - y) / t);
    g = U + th;
    scale = std::abs(U) + std::abs(th);
    return true;
  };

  const double k_lo = std::floor((lo - bps.front()) / P);
  const double k_hi = std::floor((hi - bps.front()) / P);
  Candidate best;
  double g = 0.0;
  double y = 0.0;
  double scale = 0.0;
  if (k_hi - k_lo <= 3.0) {
    for (double k = k_lo; k <= k_hi; k += 1.0) {
      for (std::size_t j = 1; j <= cells; ++j) {
        if (cell_min(j, k, g, y, scale)) best.offer(g, y, scale);
      }
    }
    return best.y;
  }
  // Wide window: for each cell, G over its copies is convex in the copy
  // index, so locate the best copy by bisection on forward differences.
  for (std::size_t j = 1; j <= cells; ++j) {
    double a = k_lo;
    double bnd = k_hi;
    const auto psi = [&](double k) {
      double gg = kInf, yy = 0.0, ss = 0.0;
      return cell_min(j, k, gg, yy, ss) ? gg : kInf;
    };
    // Copies at the ends may miss the window; skip them.
    while (a < bnd && psi(a) == kInf) a += 1.0;
    while (bnd > a && psi(bnd) == kInf) bnd -= 1.0;
    while (a < bnd) {
      const double mid = std::floor(0.5 * (a + bnd));
      if (psi(mid + 1.0) < psi(mid)) {
        a = mid + 1.0;
      } else {
        bnd = mid;
      }
    }
    if (cell_min(j, a, g, y, scale)) best.offer(g, y, scale);
  }
  return best.y;
}

double LaxOleinikSolver::minimize_hopf_scan(double t, double x, double lo, double hi) const {
  const std::size_t n = std::max<std::size_t>(options_.scan_points, 3);
  if (!(hi > lo)) return lo;
  const double dy = (hi - lo) / static_cast<double>(n - 1);
  std::size_t best_i = 0;
  double best_g = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = i + 1 == n ? hi : lo + dy * static_cast<double>(i);
    const double g = objective(t, x, y);
    if (g < best_g) {
      best_g = g;
      best_i = i;
    }
  }
  // Golden-section refinement on the bracket around the best scan point.
  double a = best_i == 0 ? lo : lo + dy * static_cast<double>(best_i - 1);
  double c = best_i + 1 >= n ? hi : lo + dy * static_cast<double>(best_i + 1);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = c - ratio * (c - a);
  double x2 = a + ratio * (c - a);
  double g1 = objective(t, x, x1);
  double g2 = objective(t, x, x2);
  for (int it = 0; it < 200 && (c - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (g1 <= g2) {
      c = x2;
      x2 = x1;
      g2 = g1;
      x1 = c - ratio * (c - a);
      g1 = objective(t, x, x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + ratio * (c - a);
      g2 = objective(t, x, x2);
    }
  }
  const double y_best = lo + dy * static_cast<double>(best_i);
  Candidate cand;
  cand.offer(best_g, std::min(y_best, hi), std::abs(best_g));
  const double y_gold = 0.5 * (a + c);
  cand.offer(objective(t, x, y_gold), y_gold, std::abs(best_g));
  return cand.y;
}

double LaxOleinikSolver::minimize_hopf(double t, double x, double lo, double hi) const {
  if (!(t > 0.0)) throw ValidationError("minimize_hopf: t must be positive");
  const double reach = t * sup_a_ * (1.0 + 1e-12) + 1e-12 * (1.0 + std::abs(x));
  lo = std::max(lo, x - reach);
  hi = std::min(hi, x + reach);
  if (lo > hi) lo = hi = std::clamp(x, lo, hi);
  if (std::holds_alternative<StepFunction>(data_)) return minimize_step(t, x, lo, hi);
  if (std::holds_alternative<PeriodicData>(data_)) return minimize_periodic(t, x, lo, hi);
  return minimize_hopf_scan(t, x, lo, hi);
}

double LaxOleinikSolver::minimize_hopf(double t, double x) const { return minimize_hopf(t, x, -kInf, kInf); }

double LaxOleinikSolver::u_from_minimizer(double t, double x, double y) const {
  const auto& K = model_.range();
  const double u = std::clamp(b((x - y) / t), K.lo(), K.hi());
  return orientation_ * u;
}

double LaxOleinikSolver::value(double t, double x) const { return u_from_minimizer(t, x, minimize_hopf(t, x)); }

void LaxOleinikSolver::evaluate_range(double t, double x0, double dx, std::size_t i_lo, std::size_t i_hi,
                                      double y_lo, double y_hi, std::vector<double>& ys) const {
  if (i_lo > i_hi) return;
  const std::size_t mid = i_lo + (i_hi - i_lo) / 2;
  const double x = x0 + dx * static_cast<double>(mid);
  const double y = minimize_hopf(t, x, y_lo, y_hi);
  ys[mid] = y;
  if (mid > i_lo) evaluate_range(t, x0, dx, i_lo, mid - 1, y_lo, y, ys);
  evaluate_range(t, x0, dx, mid + 1, i_hi, y, y_hi, ys);
}

LaxOleinikEvaluation LaxOleinikSolver::evaluate(double t, double x0, double dx, std::size_t n) const {
  if (!(t > 0.0)) throw ValidationError("evaluate: t must be positive");
  if (n == 0) throw ValidationError("evaluate: need at least one point");
  if (!(dx > 0.0)) throw ValidationError("evaluate: grid spacing must be positive");
  std::vector<double> ys(n);
  if (options_.independent_points) {
    const unsigned workers = std::max(1u, std::min<unsigned>(options_.threads, static_cast<unsigned>(n)));
    const auto run = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) ys[i] = minimize_hopf(t, x0 + dx * static_cast<double>(i));
    };
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 1; w < workers; ++w) {
      const std::size_t b = w * chunk;
      if (b < n) pool.emplace_back(run, b, std::min(n, b + chunk));
    }
    run(0, std::min(n, chunk));
    for (auto& th : pool) th.join();
  } else {
    evaluate_range(t, x0, dx, 0, n - 1, -kInf, kInf, ys);
  }
  std::vector<double> us(n);
  for (std::size_t i = 0; i < n; ++i) us[i] = u_from_minimizer(t, x0 + dx * static_cast<double>(i), ys[i]);
  return {GridFunction(x0, dx, std::move(us)), std::move(ys)};
}

// --- estimates ---------------------------------------------------------------

HolderReport check_oleinik_holder(const GridFunction& u, double t, double s, double c_bound) {
  if (!(t > 0.0)) throw ValidationError("check_oleinik_holder: t must be positive");
  if (!(s > 0.0 && s <= 1.0)) throw ValidationError("check_oleinik_holder: s must lie in (0, 1]");
  const auto v = u.samples();
  const std::size_t n = v.size();
  std::vector<double> lag(n, 0.0);  // ((y - x) / t)^s by lag
  for (std::size_t d = 1; d < n; ++d) lag[d] = std::pow(u.dx() * static_cast<double>(d) / t, s);
  HolderReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double rise = v[j] - v[i];
      if (rise <= 0.0) continue;
      rep.smallest_sufficient_c = std::max(rep.smallest_sufficient_c, rise / lag[j - i]);
      const double excess = rise - c_bound * lag[j - i];
      if (excess > 1e-9) {
        ++rep.violations;
        if (excess > rep.max_violation) {
          rep.max_violation = excess;
          rep.worst_x = u.x(i);
          rep.worst_y = u.x(j);
        }
      }
    }
  }
  rep.ok = rep.violations == 0;
  return rep;
}

SmoothingReport smoothing_report(const LaxOleinikSolver& solver, double t, const Interval& window, double s,
                                 std::size_t n_grid) {
  if (!window.bounded()) throw ValidationError("smoothing_report: window must be bounded");
  if (n_grid < 2) throw ValidationError("smoothing_report: need at least two grid points");
  const double dx = window.length() / static_cast<double>(n_grid - 1);
  const auto ev = solver.evaluate(t, window.lo(), dx, n_grid);
  const auto sx = SExponent::from_s(s);
  SmoothingReport rep;
  rep.tvs_lower_bound = tvs_grid_lower_bound(ev.u, sx).tvs;
  rep.tvs_plus_lower_bound = tvs_plus_grid_lower_bound(ev.u, sx);
  const double D = solver.model().d_const();
  rep.bound = (D / t) * (2.0 * window.length() + t * solver.sup_abs_velocity());
  rep.plus_bound = D * window.length() / t;
  rep.ok = rep.tvs_lower_bound <= rep.bound && rep.tvs_plus_lower_bound <= rep.plus_bound;
  return rep;
}

double sup_norm(const LaxOleinikSolver& solver, double t, DecayMode mode) {
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
  if (mode == DecayMode::kPeriodic) {
    if (!solver.periodic()) throw ValidationError("periodic decay needs periodic initial data");
    lo = solver.period_start();
    hi = lo + solver.period();
    center = solver.mean();
  } else {
    if (solver.periodic()) throw ValidationError("compact decay needs compactly supported initial data");
    const auto support = solver.support();
    lo = support.lo() - t * solver.sup_abs_velocity();
    hi = support.hi() + t * solver.sup_abs_velocity();
  }
  constexpr std::size_t kCoarse = 4096;
  constexpr std::size_t kFine = 1025;
  double best = 0.0;
  double arg = lo;
  double dx = (hi - lo) / static_cast<double>(kCoarse - 1);
  auto ev = solver.evaluate(t, lo, dx, kCoarse);
  for (std::size_t i = 0; i < kCoarse; ++i) {
    const double d = std::abs(ev.u.samples()[i] - center);
    if (d > best) {
      best = d;
      arg = ev.u.x(i);
    }
  }
  for (int pass = 0; pass < 2; ++pass) {
    const double a = std::max(lo, arg - 2.0 * dx);
    const double b = std::min(hi, arg + 2.0 * dx);
    if (!(b > a)) break;
    dx = (b - a) / static_cast<double>(kFine - 1);
    ev = solver.evaluate(t, a, dx, kFine);
    for (std::size_t i = 0; i < kFine; ++i) {
      const double d = std::abs(ev.u.samples()[i] - center);
      if (d > best) {
        best = d;
        arg = ev.u.x(i);
      }
    }
  }
  return best;
}

double fit_last_decade_slope(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size()) throw ValidationError("fit: times and values differ in length");
  if (times.size() < 4) throw ValidationError("decay fit needs at least four times");
  const double t_max = times.back();
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_max / 10.0 * (1.0 - 1e-12) && values[i] > 0.0) {
      lx.push_back(std::log(times[i]));
      ly.push_back(std::log(values[i]));
    }
  }
  if (lx.size() < 2) throw ValidationError("decay fit: fewer than two usable times in the last decade");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw ValidationError("decay fit: times in the last decade are all equal");
  return sxy / sxx;
}

DecayReport decay_report(const LaxOleinikSolver& solver, const std::vector<double>& times, DecayMode mode) {
  if (times.size() < 4) throw ValidationError("decay_report: need at least four times");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1]))) {
      throw ValidationError("decay_report: times must be positive and strictly increasing");
    }
  }
  DecayReport rep;
  rep.times = times;
  for (double t : times) rep.sup_norms.push_back(sup_norm(solver, t, mode));
  rep.fitted_exponent = fit_last_decade_slope(rep.times, rep.sup_norms);
  const double s = solver.model().s();
  rep.predicted_exponent = mode == DecayMode::kCompact ? -s / (1.0 + solver.model().q()) : -s;
  return rep;
}

}  // namespace fracbv
