#include "fracbv/func_repr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracbv/errors.hpp"

namespace fracbv {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw ValidationError("interval must satisfy lo < hi, got [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
}

bool Interval::bounded() const { return std::isfinite(lo_) && std::isfinite(hi_); }

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> levels)
    : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)) {
  if (levels_.size() != breakpoints_.size() + 1) {
    throw ValidationError("step function needs one more level than breakpoints (" +
                          std::to_string(levels_.size()) + " levels, " +
                          std::to_string(breakpoints_.size()) + " breakpoints)");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) throw ValidationError("breakpoints must be finite");
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw ValidationError("breakpoints must be strictly increasing");
    }
  }
  for (double v : levels_) {
    if (!std::isfinite(v)) throw ValidationError("step function values must be finite");
  }
}

StepFunction StepFunction::from_cells(std::vector<double> edges, std::span<const double> cell_values,
                                      double left_tail, double right_tail) {
  if (edges.size() != cell_values.size() + 1) {
    throw ValidationError("from_cells: need exactly one more edge than cell values");
  }
  std::vector<double> levels;
  levels.reserve(edges.size() + 1);
  levels.push_back(left_tail);
  levels.insert(levels.end(), cell_values.begin(), cell_values.end());
  levels.push_back(right_tail);
  return StepFunction(std::move(edges), std::move(levels));
}

double StepFunction::operator()(double x) const {
  // First breakpoint >= x closes the cell containing x.
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return levels_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

StepFunction StepFunction::canonical() const {
  std::vector<double> bps;
  std::vector<double> lv;
  bps.reserve(breakpoints_.size());
  lv.reserve(levels_.size());
  lv.push_back(levels_[0]);
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double right_value = levels_[i + 1];
    if (!bps.empty() && breakpoints_[i] - bps.back() <= kBreakpointMergeTol) {
      // Zero-width cell: the jump now happens at the earlier breakpoint.
      lv.back() = right_value;
    } else {
      bps.push_back(breakpoints_[i]);
      lv.push_back(right_value);
    }
    // Drop the breakpoint if no jump remains across it.
    if (lv.size() >= 2 && lv[lv.size() - 1] == lv[lv.size() - 2]) {
      lv.pop_back();
      bps.pop_back();
    }
  }
  return StepFunction(std::move(bps), std::move(lv));
}

bool StepFunction::is_canonical() const {
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
    if (levels_[i] == levels_[i + 1]) return false;
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (breakpoints_[i + 1] - breakpoints_[i] <= kBreakpointMergeTol) return false;
  }
  return true;
}

double StepFunction::sup() const { return *std::max_element(levels_.begin(), levels_.end()); }
double StepFunction::inf() const { return *std::min_element(levels_.begin(), levels_.end()); }

StepFunction StepFunction::dilate(double scale, double shift) const {
  if (!(scale > 0.0)) throw ValidationError("dilate: scale must be positive");
  // v(x) = u(scale x + shift) jumps where scale x + shift = x_i.
  std::vector<double> bps(breakpoints_.size());
  std::transform(breakpoints_.begin(), breakpoints_.end(), bps.begin(),
                 [&](double b) { return (b - shift) / scale; });
  return StepFunction(std::move(bps), levels_);
}

GridFunction::GridFunction(double x0, double dx, std::vector<double> samples)
    : x0_(x0), dx_(dx), samples_(std::move(samples)) {
  if (!(dx_ > 0.0) || !std::isfinite(dx_)) throw ValidationError("grid spacing must be positive");
  if (samples_.empty()) throw ValidationError("grid function needs at least one sample");
  if (!std::isfinite(x0_)) throw ValidationError("grid origin must be finite");
}

double GridFunction::operator()(double x) const {
  const double r = (x - x0_) / dx_;
  if (r <= 0.0) return samples_.front();
  const auto last = static_cast<double>(samples_.size() - 1);
  if (r >= last) return samples_.back();
  const auto i = static_cast<std::size_t>(std::floor(r));
  const double w = r - static_cast<double>(i);
  return (1.0 - w) * samples_[i] + w * samples_[i + 1];
}

double shift_difference_lp(const StepFunction& u, double h, double p) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("shift_difference_lp: h must be positive");
  if (!(p >= 1.0)) throw ValidationError("shift_difference_lp: exponent p must be >= 1");
  const auto bps = u.breakpoints();
  if (bps.empty()) return 0.0;

  // Merge {x_i - h} and {x_i}; on each resulting piece the integrand is
  // constant, so evaluate it at the midpoint.
  std::vector<double> cuts;
  cuts.reserve(2 * bps.size());
  for (double b : bps) cuts.push_back(b - h);
  std::vector<double> merged(cuts.size() + bps.size());
  std::merge(cuts.begin(), cuts.end(), bps.begin(), bps.end(), merged.begin());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const double a = merged[i];
    const double b = merged[i + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b);
    const double diff = std::abs(u(mid + h) - u(mid));
    if (diff == 0.0) continue;
    total += (b - a) * std::pow(diff, p);
  }
  return total / h;
}

namespace {

// Composite Simpson on [a, b] with a fixed number of subintervals.
double simpson_mean(const RealFunction& f, double a, double b) {
  constexpr int kSub = 64;
  const double w = (b - a) / kSub;
  double acc = 0.0;
  for (int k = 0; k < kSub; ++k) {
    const double l = a + w * k;
    const double r = (k + 1 == kSub) ? b : l + w;
    acc += (f(l) + 4.0 * f(0.5 * (l + r)) + f(r)) * (r - l) / 6.0;
  }
  return acc / (b - a);
}

}  // namespace

StepFunction step_approximate(const RealFunction& u, double h, const Interval& window) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("step_approximate: h must be positive");
  if (!window.bounded()) throw ValidationError("step_approximate: window must be bounded");
  const auto first = static_cast<long long>(std::floor(window.lo() / h));
  auto last = static_cast<long long>(std::ceil(window.hi() / h));
  if (last <= first) last = first + 1;

  std::vector<double> edges;
  std::vector<double> values;
  edges.reserve(static_cast<std::size_t>(last - first + 1));
  for (long long p = first; p <= last; ++p) edges.push_back(static_cast<double>(p) * h);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) values.push_back(simpson_mean(u, edges[i], edges[i + 1]));
  const double left = values.front();
  const double right = values.back();
  return StepFunction::from_cells(std::move(edges), values, left, right);
}

StepFunction step_approximate(const GridFunction& u, double h, const Interval& window) {
  return step_approximate([&u](double x) { return u(x); }, h, window);
}

StepFunction restrict(const StepFunction& u, const Interval& window) {
  const auto bps = u.breakpoints();
  const auto lv = u.levels();
  std::vector<double> out_bps;
  std::vector<double> out_lv;
  out_lv.push_back(std::isfinite(window.lo()) ? u(window.lo()) : u.left_tail());
  for (std::size_t k = 0; k < bps.size(); ++k) {
    if (bps[k] >= window.lo() && bps[k] < window.hi()) {
      out_bps.push_back(bps[k]);
      out_lv.push_back(lv[k + 1]);
    }
  }
  return StepFunction(std::move(out_bps), std::move(out_lv));
}

GridFunction sample(const RealFunction& u, double lo, double hi, std::size_t n) {
  if (n < 2) throw ValidationError("sample: need at least two points");
  if (!(hi > lo)) throw ValidationError("sample: need lo < hi");
  const double dx = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = u(lo + dx * static_cast<double>(i));
  return GridFunction(lo, dx, std::move(s));
}

namespace {

// Integral of |l| over [a, b] for l affine with end values la, lb.
double abs_affine_integral(double la, double lb, double a, double b) {
  const double w = b - a;
  if ((la >= 0.0 && lb >= 0.0) || (la <= 0.0 && lb <= 0.0)) return 0.5 * std::abs(la + lb) * w;
  return 0.5 * w * (la * la + lb * lb) / (std::abs(la) + std::abs(lb));
}

}  // namespace

double l1_distance(const StepFunction& u, const StepFunction& v, const Interval& window) {
  if (!window.bounded()) throw ValidationError("l1_distance: window must be bounded");
  std::vector<double> cuts{window.lo(), window.hi()};
  for (double x : u.breakpoints()) {
    if (window.contains(x)) cuts.push_back(x);
  }
  for (double x : v.breakpoints()) {
    if (window.contains(x)) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (!(cuts[i] > cuts[i - 1])) continue;
    const double m = 0.5 * (cuts[i - 1] + cuts[i]);
    total += std::abs(u(m) - v(m)) * (cuts[i] - cuts[i - 1]);
  }
  return total;
}

double l1_distance(const StepFunction& u, const GridFunction& v, const Interval& window) {
  if (!window.bounded()) throw ValidationError("l1_distance: window must be bounded");
  std::vector<double> cuts{window.lo(), window.hi()};
  for (double x : u.breakpoints()) {
    if (window.contains(x)) cuts.push_back(x);
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (window.contains(v.x(i))) cuts.push_back(v.x(i));
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double a = cuts[i - 1];
    const double b = cuts[i];
    if (!(b > a)) continue;
    const double level = u(0.5 * (a + b));
    total += abs_affine_integral(v(a) - level, v(b) - level, a, b);
  }
  return total;
}

}  // namespace fracbv
