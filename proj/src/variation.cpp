#include "fracbv/variation.hpp"

#include <algorithm>
#include <string>

#include "fracbv/errors.hpp"

namespace fracbv {

SExponent SExponent::from_s(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw ValidationError("s must lie in (0, 1], got " + std::to_string(s));
  return SExponent(1.0 / s);
}

SExponent SExponent::from_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("p = 1/s must be >= 1, got " + std::to_string(p));
  return SExponent(p);
}

Subdivision::Subdivision(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw ValidationError("a subdivision needs at least two points");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1] < points_[i])) throw ValidationError("subdivision points must be strictly increasing");
  }
}

double tvs_on_values(std::span<const double> values, SExponent s) {
  double total = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) total += increment_power(values[i] - values[i - 1], s.p());
  return total;
}

double tvs_on_subdivision(const StepFunction& u, const Subdivision& sigma, SExponent s) {
  std::vector<double> values;
  values.reserve(sigma.size());
  for (double x : sigma.points()) values.push_back(u(x));
  return tvs_on_values(values, s);
}

Subdivision extremal_points(const StepFunction& u, const Subdivision& sigma) {
  const auto pts = sigma.points();
  std::vector<double> values;
  values.reserve(pts.size());
  for (double x : pts) values.push_back(u(x));

  std::vector<double> kept{pts.front()};
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double lo = std::min(values[i - 1], values[i + 1]);
    const double hi = std::max(values[i - 1], values[i + 1]);
    if (values[i] >= hi || values[i] <= lo) kept.push_back(pts[i]);
  }
  kept.push_back(pts.back());
  return Subdivision(std::move(kept));
}

SubsequenceOptimum max_subsequence_variation(std::span<const double> values, SExponent s,
                                             bool positive_only) {
  SubsequenceOptimum out;
  const std::size_t n = values.size();
  if (n == 0) return out;

  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<double> best(n, 0.0);
  std::vector<std::size_t> prev(n, kNone);
  const double p = s.p();
  for (std::size_t i = 1; i < n; ++i) {
    const double vi = values[i];
    double bi = 0.0;
    std::size_t pi = kNone;
    for (std::size_t j = 0; j < i; ++j) {
      double delta = vi - values[j];
      if (positive_only && delta < 0.0) delta = 0.0;
      const double cand = best[j] + increment_power(delta, p);
      if (cand > bi) {
        bi = cand;
        pi = j;
      }
    }
    best[i] = bi;
    prev[i] = pi;
  }

  std::size_t end = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (best[i] > best[end]) end = i;
  }
  out.value = best[end];
  for (std::size_t i = end; i != kNone; i = prev[i]) out.indices.push_back(i);
  std::reverse(out.indices.begin(), out.indices.end());
  return out;
}

namespace {

// A point strictly inside level k of u (k = 0 is the left tail).
double point_in_level(const StepFunction& u, std::size_t k) {
  const auto bps = u.breakpoints();
  if (bps.empty()) return 0.0;
  if (k == 0) return bps.front() - 1.0;
  if (k == bps.size()) return bps.back() + 1.0;
  return 0.5 * (bps[k - 1] + bps[k]);
}

}  // namespace

VariationReport tvs_step_exact(const StepFunction& u, SExponent s) {
  const auto opt = max_subsequence_variation(u.levels(), s);
  VariationReport rep;
  rep.tvs = opt.value;
  rep.seminorm = rep.tvs > 0.0 ? std::pow(rep.tvs, s.s()) : 0.0;
  if (opt.indices.size() >= 2) {
    for (std::size_t k : opt.indices) rep.witness.push_back(point_in_level(u, k));
  } else {
    const double x = point_in_level(u, 0);
    rep.witness = {x - 1.0, x};
  }
  return rep;
}

double tvs_plus_step(const StepFunction& u, SExponent s) {
  return max_subsequence_variation(u.levels(), s, /*positive_only=*/true).value;
}

VariationReport tvs_grid_lower_bound(const GridFunction& u, SExponent s) {
  if (u.size() < 2) throw ValidationError("tvs_grid_lower_bound: need at least two samples");
  const auto opt = max_subsequence_variation(u.samples(), s);
  VariationReport rep;
  rep.tvs = opt.value;
  rep.seminorm = rep.tvs > 0.0 ? std::pow(rep.tvs, s.s()) : 0.0;
  if (opt.indices.size() >= 2) {
    for (std::size_t k : opt.indices) rep.witness.push_back(u.x(k));
  } else {
    rep.witness = {u.x(0), u.x(1)};
  }
  return rep;
}

double tvs_plus_grid_lower_bound(const GridFunction& u, SExponent s) {
  if (u.size() < 2) throw ValidationError("tvs_plus_grid_lower_bound: need at least two samples");
  return max_subsequence_variation(u.samples(), s, /*positive_only=*/true).value;
}

std::vector<double> default_lip_h_grid() {
  std::vector<double> h;
  for (int k = 0; k <= 20; ++k) h.push_back(std::ldexp(1.0, -k));
  return h;
}

double lip_functional(const StepFunction& u, SExponent s, std::span<const double> h_grid) {
  if (h_grid.empty()) throw ValidationError("lip_functional: h grid must be nonempty");
  double best = 0.0;
  for (double h : h_grid) best = std::max(best, shift_difference_lp(u, h, s.p()));
  return best;
}

}  // namespace fracbv
