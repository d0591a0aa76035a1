#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fracbv/errors.hpp"
#include "fracbv/front_tracking.hpp"
#include "test_support.hpp"

using namespace fracbv;
using namespace fracbv::testing;

namespace {

PiecewiseAffineFlux burgers_poly(int K) {
  return polygonalize_flux([](double u) { return 0.5 * u * u; }, Interval(-1.0, 1.0), K);
}

PiecewiseAffineFlux random_convex_flux(int n_nodes) {
  std::vector<double> u{-1.0};
  for (int i = 1; i + 1 < n_nodes; ++i) u.push_back(uniform(-1.0, 1.0));
  u.push_back(1.0);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  std::vector<double> slopes;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) slopes.push_back(uniform(-2.0, 2.0));
  std::sort(slopes.begin(), slopes.end());
  std::vector<double> f{uniform(-1.0, 1.0)};
  for (std::size_t i = 0; i + 1 < u.size(); ++i) f.push_back(f.back() + slopes[i] * (u[i + 1] - u[i]));
  return PiecewiseAffineFlux(u, f);
}

PiecewiseAffineFlux random_flux(int n_nodes) {
  std::vector<double> u;
  for (int i = 0; i < n_nodes; ++i) u.push_back(-1.0 + 2.0 * i / (n_nodes - 1));
  std::vector<double> f;
  for (int i = 0; i < n_nodes; ++i) f.push_back(uniform(-1.0, 1.0));
  return PiecewiseAffineFlux(u, f);
}

// Lower convex (or upper concave) envelope value at u, by brute force over
// every chord between candidate points bracketing u.
double envelope_oracle(const PiecewiseAffineFlux& flux, double a, double b, bool lower, double u) {
  std::vector<std::pair<double, double>> pts{{a, flux(a)}, {b, flux(b)}};
  for (std::size_t k = 0; k < flux.nodes().size(); ++k) {
    if (flux.nodes()[k] > a && flux.nodes()[k] < b) pts.push_back({flux.nodes()[k], flux.values()[k]});
  }
  double best = lower ? kInf : -kInf;
  for (const auto& p : pts) {
    for (const auto& q : pts) {
      if (!(p.first <= u && u <= q.first)) continue;
      double v;
      if (q.first == p.first) {
        v = p.second;
      } else {
        v = p.second + (q.second - p.second) * (u - p.first) / (q.first - p.first);
      }
      best = lower ? std::min(best, v) : std::max(best, v);
    }
  }
  return best;
}

double envelope_eval(const std::vector<FluxVertex>& env, double u) {
  for (std::size_t i = 0; i + 1 < env.size(); ++i) {
    const double a = std::min(env[i].u, env[i + 1].u);
    const double b = std::max(env[i].u, env[i + 1].u);
    if (u >= a && u <= b) {
      return env[i].f + (env[i + 1].f - env[i].f) * (u - env[i].u) / (env[i + 1].u - env[i].u);
    }
  }
  return std::nan("");
}

StepFunction random_state_data(const PiecewiseAffineFlux& flux, int n_levels) {
  std::vector<double> bps;
  double x = 0.0;
  for (int i = 0; i + 1 < n_levels; ++i) {
    bps.push_back(x);
    x += uniform(0.05, 1.0);
  }
  std::vector<double> lv;
  for (int i = 0; i < n_levels; ++i) {
    // Mix node values and generic values.
    if (uniform_int(0, 2) == 0) {
      lv.push_back(flux.nodes()[static_cast<std::size_t>(uniform_int(0, static_cast<int>(flux.nodes().size()) - 1))]);
    } else {
      lv.push_back(uniform(flux.lo(), flux.hi()));
    }
  }
  return StepFunction(bps, lv);
}

}  // namespace

TEST_CASE("piecewise affine flux") {
  const PiecewiseAffineFlux f({0.0, 1.0, 3.0}, {0.0, 1.0, 5.0});
  CHECK(f(0.5) == 0.5);
  CHECK(f(2.0) == 3.0);
  CHECK(f.slope(1) == 2.0);
  CHECK(f.is_convex());
  CHECK_THROWS_AS(f(3.5), ValidationError);
  CHECK_THROWS_AS(PiecewiseAffineFlux({0.0}, {0.0}), ValidationError);
  CHECK_THROWS_AS(PiecewiseAffineFlux({0.0, 0.0}, {0.0, 1.0}), ValidationError);
  CHECK_FALSE(PiecewiseAffineFlux({0.0, 1.0, 2.0}, {0.0, 1.0, 1.0}).is_convex());
}

TEST_CASE("polygonalization") {
  const auto affine = polygonalize_flux([](double u) { return 2.0 * u - 1.0; }, Interval(-1.0, 1.0), 5);
  for (double u : {-0.9, -0.1, 0.33, 0.99}) CHECK(affine(u) == doctest::Approx(2.0 * u - 1.0).epsilon(1e-15));
  const auto b2 = burgers_poly(2);
  REQUIRE(b2.nodes().size() == 3);
  CHECK(b2.nodes()[0] == -1.0);
  CHECK(b2.nodes()[1] == 0.0);
  CHECK(b2.nodes()[2] == 1.0);
  CHECK(b2.values()[0] == 0.5);
  CHECK(b2.values()[1] == 0.0);
  CHECK(b2.values()[2] == 0.5);
  double prev = 0.0;
  for (int K : {4, 8, 16, 32}) {
    const auto p = burgers_poly(K);
    double err = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double u = -1.0 + 2.0 * i / 10000.0;
      err = std::max(err, std::abs(p(u) - 0.5 * u * u));
    }
    if (K > 4) CHECK(err == doctest::Approx(prev / 4.0).epsilon(0.02));
    prev = err;
  }
  CHECK_THROWS_AS(polygonalize_flux([](double u) { return u; }, Interval(0.0, 1.0), 0), ValidationError);
}

TEST_CASE("envelopes") {
  const auto b = burgers_poly(4);
  const auto env = convex_envelope(b, -1.0, 1.0);
  CHECK(env.size() == 5);
  const auto chord = convex_envelope(b, 1.0, -1.0);
  REQUIRE(chord.size() == 2);
  CHECK(chord.front().u == 1.0);
  CHECK(chord.back().u == -1.0);
  CHECK_THROWS_AS(convex_envelope(b, -2.0, 0.0), ValidationError);

  // W-shaped flux: the lower envelope bridges the middle bump.
  const PiecewiseAffineFlux w({-2.0, -1.0, 0.0, 1.0, 2.0}, {2.0, 0.0, 1.0, 0.0, 2.0});
  const auto we = convex_envelope(w, -2.0, 2.0);
  REQUIRE(we.size() == 4);
  CHECK(we[1].u == -1.0);
  CHECK(we[2].u == 1.0);

  for (int trial = 0; trial < 300; ++trial) {
    const auto flux = random_flux(uniform_int(2, 10));
    double ul = uniform(-1.0, 1.0);
    double ur = uniform(-1.0, 1.0);
    if (trial % 3 == 0) ul = flux.nodes()[0];
    if (ul == ur) continue;
    const auto e = convex_envelope(flux, ul, ur);
    CHECK(e.front().u == ul);
    CHECK(e.back().u == ur);
    const double a = std::min(ul, ur);
    const double bb = std::max(ul, ur);
    for (int k = 0; k <= 50; ++k) {
      const double u = k == 50 ? bb : a + (bb - a) * k / 50.0;
      CHECK(envelope_eval(e, u) == doctest::Approx(envelope_oracle(flux, a, bb, ul < ur, u)).epsilon(1e-12));
    }
    // Strictly increasing chord slopes along the list.
    for (std::size_t i = 2; i < e.size(); ++i) {
      const double s1 = (e[i - 1].f - e[i - 2].f) / (e[i - 1].u - e[i - 2].u);
      const double s2 = (e[i].f - e[i - 1].f) / (e[i].u - e[i - 1].u);
      CHECK(s1 < s2);
    }
  }
}

TEST_CASE("Riemann solver") {
  const auto b = burgers_poly(4);
  CHECK(solve_riemann(b, 0.3, 0.3).empty());
  const auto shock = solve_riemann(b, 1.0, -0.5, 2.0);
  REQUIRE(shock.size() == 1);
  CHECK(shock[0].speed == doctest::Approx((b(1.0) - b(-0.5)) / 1.5));
  CHECK(shock[0].x_ref == 2.0);
  const auto fan = solve_riemann(b, -1.0, 1.0);
  REQUIRE(fan.size() == 4);
  const double expect[] = {-0.75, -0.25, 0.25, 0.75};
  for (int i = 0; i < 4; ++i) CHECK(fan[static_cast<std::size_t>(i)].speed == doctest::Approx(expect[i]).epsilon(1e-14));
  for (int trial = 0; trial < 300; ++trial) {
    const auto flux = random_flux(uniform_int(2, 12));
    const double ul = uniform(-1.0, 1.0);
    const double ur = uniform(-1.0, 1.0);
    const auto fr = solve_riemann(flux, ul, ur);
    REQUIRE(!fr.empty());
    CHECK(fr.front().left_state == ul);
    CHECK(fr.back().right_state == ur);
    for (std::size_t i = 0; i < fr.size(); ++i) {
      CHECK(satisfies_rankine_hugoniot(flux, fr[i]));
      if (i > 0) {
        CHECK(fr[i - 1].right_state == fr[i].left_state);
        CHECK(fr[i - 1].speed < fr[i].speed);
        CHECK((ul < ur ? fr[i].left_state < fr[i].right_state : fr[i].left_state > fr[i].right_state));
      }
    }
  }
  CHECK_THROWS_AS(solve_riemann(b, 0.0, 1.5), ValidationError);
}

TEST_CASE("next interaction") {
  CHECK_FALSE(next_interaction(FrontTrackingState(0.0, {{0.0, 1.0, 1.0, 0.0}}, 1.0, 0.0)).has_value());
  const FrontTrackingState two(0.0, {{0.0, 1.0, 2.0, 1.0}, {1.0, 0.0, 1.0, 0.0}}, 2.0, 0.0);
  const auto ev = next_interaction(two);
  REQUIRE(ev.has_value());
  CHECK(ev->t_star == doctest::Approx(1.0));
  CHECK(ev->x_star == doctest::Approx(1.0));
  CHECK(ev->first == 0);
  CHECK(ev->last == 1);

  for (int trial = 0; trial < 300; ++trial) {
    const int n = uniform_int(2, 12);
    std::vector<Front> fr;
    double x = 0.0;
    const double t0 = uniform(0.0, 3.0);
    for (int i = 0; i < n; ++i) {
      fr.push_back({x, uniform(-1.0, 1.0), static_cast<double>(i), static_cast<double>(i + 1)});
      x += uniform(0.1, 1.0);
    }
    const FrontTrackingState st(t0, fr, 0.0, n);
    double oracle = kInf;
    for (std::size_t i = 0; i + 1 < fr.size(); ++i) {
      if (fr[i].speed > fr[i + 1].speed) {
        oracle = std::min(oracle, t0 + (fr[i + 1].x_ref - fr[i].x_ref) / (fr[i].speed - fr[i + 1].speed));
      }
    }
    const auto got = next_interaction(st);
    if (oracle == kInf) {
      CHECK_FALSE(got.has_value());
    } else {
      REQUIRE(got.has_value());
      CHECK(got->t_star == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("evolution of simple configurations") {
  const auto b = burgers_poly(4);
  const FrontTrackingState shock(b, StepFunction({0.0}, {1.0, -1.0}));
  const auto res = evolve(b, shock, 3.0);
  CHECK(res.events.empty());
  REQUIRE(res.state.fronts().size() == 1);
  CHECK(res.state.position(0, 3.0) == doctest::Approx(0.0));

  // Two merging shocks for f = u^2 / 2 sampled at 0, 1, 2.
  const PiecewiseAffineFlux f({0.0, 1.0, 2.0}, {0.0, 0.5, 2.0});
  EvolveOptions opt;
  opt.s_grid = {SExponent::from_s(0.5)};
  const auto merged = evolve(f, FrontTrackingState(f, StepFunction({0.0, 1.0}, {2.0, 1.0, 0.0})), 2.0, opt);
  REQUIRE(merged.events.size() == 1);
  CHECK(merged.events[0].t_star == doctest::Approx(1.0));
  CHECK(merged.events[0].x_star == doctest::Approx(1.5));
  CHECK(merged.events[0].tvs_before[0] == doctest::Approx(4.0));
  CHECK(merged.events[0].tvs_after[0] == doctest::Approx(4.0));
  REQUIRE(merged.state.fronts().size() == 1);
  CHECK(merged.state.fronts()[0].speed == doctest::Approx(1.0));
  CHECK(merged.state.position(0, 2.0) == doctest::Approx(2.5));

  CHECK_THROWS_AS(evolve(f, merged.state, 1.0), ValidationError);
}

TEST_CASE("sampling") {
  const auto b = burgers_poly(4);
  const StepFunction u0({0.0, 1.0}, {0.5, 1.0, 0.0});
  const FrontTrackingState st(b, u0);
  CHECK(sample_solution(st, 0.0).canonical() == u0);
  const PiecewiseAffineFlux lin({-1.0, 1.0}, {-1.0, 1.0});
  const FrontTrackingState one(lin, StepFunction({0.0}, {1.0, 0.0}));
  const auto s2 = sample_solution(one, 2.0);
  REQUIRE(s2.num_breakpoints() == 1);
  CHECK(s2.breakpoints()[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(sample_solution(st, -1.0), ValidationError);
  const auto w = sample_solution(st, 0.0, Interval(0.5, 3.0));
  CHECK(w(0.7) == 1.0);
}

TEST_CASE("randomized evolution properties") {
  const std::vector<double> s_grid{0.25, 0.5, 0.75, 1.0};
  EvolveOptions opt;
  for (double s : s_grid) opt.s_grid.push_back(SExponent::from_s(s));
  for (int trial = 0; trial < 100; ++trial) {
    const auto flux = trial % 4 == 0 ? random_flux(uniform_int(3, 8)) : random_convex_flux(uniform_int(2, 10));
    const auto u0 = random_state_data(flux, uniform_int(2, 20));
    std::set<double> allowed(u0.levels().begin(), u0.levels().end());
    allowed.insert(flux.nodes().begin(), flux.nodes().end());
    const auto res = evolve(flux, FrontTrackingState(flux, u0), 5.0, opt);
    std::size_t prev_fronts = FrontTrackingState(flux, u0).fronts().size();
    for (const auto& e : res.events) {
      for (std::size_t k = 0; k < s_grid.size(); ++k) CHECK(e.tvs_after[k] <= e.tvs_before[k] + 1e-10);
      CHECK(e.fronts_after <= e.fronts_before);
      CHECK(e.fronts_before <= prev_fronts);
      prev_fronts = e.fronts_after;
    }
    for (const auto& f : res.state.fronts()) {
      CHECK(satisfies_rankine_hugoniot(flux, f));
      CHECK(allowed.count(f.left_state) == 1);
      CHECK(allowed.count(f.right_state) == 1);
    }
  }
}

TEST_CASE("L1 contraction") {
  for (int trial = 0; trial < 40; ++trial) {
    const auto flux = random_convex_flux(uniform_int(3, 8));
    // Same support so tails agree and the L1 distance is finite.
    std::vector<double> lu{0.0};
    std::vector<double> lv{0.0};
    std::vector<double> bps;
    const int n = uniform_int(2, 10);
    for (int i = 0; i < n; ++i) {
      bps.push_back(0.3 * i);
      lu.push_back(uniform(flux.lo(), flux.hi()));
      lv.push_back(uniform(flux.lo(), flux.hi()));
    }
    bps.push_back(0.3 * n);
    const double tail = uniform(flux.lo(), flux.hi());
    lu.push_back(tail);
    lv.push_back(tail);
    const StepFunction u0(bps, lu);
    const StepFunction v0(bps, lv);
    const Interval w(-50.0, 50.0);
    const double d0 = l1_distance(u0, v0, w);
    const double T = 2.0;
    const auto u = evolve(flux, FrontTrackingState(flux, u0), T);
    const auto v = evolve(flux, FrontTrackingState(flux, v0), T);
    const double dT = l1_distance(sample_solution(u.state, T), sample_solution(v.state, T), w);
    CHECK(dT <= d0 + 1e-9);
  }
}

TEST_CASE("event storm guard") {
  const auto b = burgers_poly(8);
  EvolveOptions opt;
  opt.max_events = 1;
  const StepFunction u0({0.0, 1.0, 3.0, 6.0}, {1.0, 0.5, 0.0, -0.5, -1.0});
  CHECK_THROWS_AS(evolve(b, FrontTrackingState(b, u0), 10.0, opt), NumericalError);
}
