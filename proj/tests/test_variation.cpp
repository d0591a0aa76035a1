#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracbv/errors.hpp"
#include "fracbv/variation.hpp"
#include "test_support.hpp"

using namespace fracbv;
using namespace fracbv::testing;

TEST_CASE("exponent and subdivision validation") {
  CHECK_THROWS_AS(SExponent::from_s(0.0), ValidationError);
  CHECK_THROWS_AS(SExponent::from_s(1.5), ValidationError);
  CHECK_THROWS_AS(SExponent::from_p(0.5), ValidationError);
  CHECK(SExponent::from_p(3.0).p() == 3.0);
  CHECK(SExponent::from_s(0.5).p() == 2.0);
  CHECK_THROWS_AS(Subdivision({1.0}), ValidationError);
  CHECK_THROWS_AS(Subdivision({0.0, 0.0}), ValidationError);
  CHECK(increment_power(0.0, 3.0) == 0.0);
  CHECK(increment_power(-2.0, 1.0) == 2.0);
}

TEST_CASE("TV^s on a subdivision") {
  // Uniform samples of the ramp: n (1/n)^{1/s} -> 0 for s < 1.
  for (int n : {10, 100, 1000}) {
    std::vector<double> pts;
    for (int i = 0; i <= n; ++i) pts.push_back(static_cast<double>(i) / n);
    const auto ramp = step_approximate([](double x) { return x; }, 1e-4, Interval(0.0, 1.0));
    const auto sx = SExponent::from_s(0.5);
    std::vector<double> values(pts.begin(), pts.end());
    CHECK(tvs_on_values(values, sx) == doctest::Approx(1.0 / n).epsilon(1e-12));
    CHECK(tvs_on_subdivision(ramp, Subdivision(pts), sx) == doctest::Approx(1.0 / n).epsilon(0.05));
  }
  const StepFunction u({0.0, 1.0}, {0.0, 1.0, 2.0});
  const auto half = SExponent::from_s(0.5);
  CHECK(tvs_on_subdivision(u, Subdivision({-1.0, 1.5}), half) == 4.0);
  CHECK(tvs_on_subdivision(u, Subdivision({-1.0, 0.5, 1.5}), half) == 2.0);
  CHECK(tvs_on_subdivision(StepFunction::constant(1.0), Subdivision({0.0, 1.0, 2.0}), half) == 0.0);
}

TEST_CASE("extremal points") {
  const StepFunction mono({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0, 3.0});
  const auto e = extremal_points(mono, Subdivision({-1.0, 0.5, 1.5, 2.5}));
  CHECK(e.size() == 2);
  CHECK(e.points().front() == -1.0);
  CHECK(e.points().back() == 2.5);

  const StepFunction w({0.0, 1.0, 2.0}, {0.0, 1.0, 0.99, 2.0});
  CHECK(extremal_points(w, Subdivision({-1.0, 0.5, 1.5, 2.5})).size() == 4);
  CHECK(extremal_points(w, Subdivision({-1.0, 2.5})).size() == 2);

  for (int trial = 0; trial < 300; ++trial) {
    const auto u = random_step(uniform_int(2, 12));
    std::vector<double> pts;
    double x = -2.5;
    for (int i = 0; i < uniform_int(2, 15); ++i) {
      pts.push_back(x);
      x += uniform(0.01, 0.5);
    }
    const Subdivision sigma(pts);
    const auto ext = extremal_points(u, sigma);
    for (double s : {0.25, 0.5, 1.0}) {
      const auto sx = SExponent::from_s(s);
      CHECK(tvs_on_subdivision(u, ext, sx) >= tvs_on_subdivision(u, sigma, sx) * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("exact TV^s closed forms") {
  const StepFunction mono({0.0, 1.0, 2.0, 3.0}, {0.0, 0.2, 0.5, 0.7, 1.0});
  for (double s : {0.2, 0.5, 0.75, 1.0}) {
    const auto sx = SExponent::from_s(s);
    CHECK(tvs_step_exact(mono, sx).tvs == doctest::Approx(1.0).epsilon(1e-12));
  }
  const StepFunction mono2({0.0, 1.0}, {-0.5, 0.1, 1.5});
  CHECK(tvs_step_exact(mono2, SExponent::from_s(0.5)).tvs == doctest::Approx(4.0).epsilon(1e-12));

  const StepFunction dip({0.0, 1.0, 2.0}, {0.0, 1.0, 0.99, 2.0});
  const auto rep = tvs_step_exact(dip, SExponent::from_s(0.5));
  CHECK(rep.tvs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.seminorm == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(tvs_on_values(std::vector<double>{0.0, 1.0, 0.99, 2.0}, SExponent::from_s(0.5)) ==
        doctest::Approx(2.0202).epsilon(1e-12));

  // Alternating oscillations with decreasing amplitudes.
  const std::vector<double> amps{1.0, 0.8, 0.5, 0.45, 0.2, 0.1};
  std::vector<double> levels{0.0};
  for (std::size_t k = 0; k < amps.size(); ++k) levels.push_back(levels.back() + (k % 2 == 0 ? amps[k] : -amps[k]));
  std::vector<double> bps;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) bps.push_back(static_cast<double>(k));
  const StepFunction alt(bps, levels);
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    double expect = 0.0;
    for (double a : amps) expect += std::pow(a, 1.0 / s);
    CHECK(tvs_step_exact(alt, SExponent::from_s(s)).tvs == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(tvs_step_exact(StepFunction::constant(4.0), SExponent::from_s(0.5)).tvs == 0.0);
}

TEST_CASE("exact TV^s equals exhaustive enumeration") {
  for (int trial = 0; trial < 300; ++trial) {
    const auto u = random_step(uniform_int(1, 12));
    const std::vector<double> v(u.levels().begin(), u.levels().end());
    for (double s : {0.2, 1.0 / 3.0, 0.5, 0.75, 1.0}) {
      const auto sx = SExponent::from_s(s);
      const auto rep = tvs_step_exact(u, sx);
      CHECK(close_rel(rep.tvs, brute_force_subsequence(v, sx.p()), 1e-12));
      CHECK(close_rel(tvs_plus_step(u, sx), brute_force_subsequence(v, sx.p(), true), 1e-12));
      // The witness realizes the value.
      CHECK(close_rel(tvs_on_subdivision(u, Subdivision(rep.witness), sx), rep.tvs, 1e-12));
      CHECK(rep.seminorm == doctest::Approx(std::pow(rep.tvs, s)));
    }
  }
}

TEST_CASE("positive-increment variation") {
  const StepFunction down({0.0, 1.0}, {3.0, 2.0, -1.0});
  CHECK(tvs_plus_step(down, SExponent::from_s(0.5)) == 0.0);
  const StepFunction up({0.0, 1.0}, {-1.0, 0.5, 2.0});
  for (double s : {0.3, 0.7, 1.0}) {
    const auto sx = SExponent::from_s(s);
    CHECK(tvs_plus_step(up, sx) == doctest::Approx(tvs_step_exact(up, sx).tvs));
  }
}

TEST_CASE("grid lower bound") {
  const GridFunction c(0.0, 0.1, std::vector<double>(20, 2.5));
  CHECK(tvs_grid_lower_bound(c, SExponent::from_s(0.5)).tvs == 0.0);
  std::vector<double> mono;
  for (int i = 0; i < 50; ++i) mono.push_back(std::sqrt(i));
  const GridFunction m(0.0, 1.0, mono);
  CHECK(tvs_grid_lower_bound(m, SExponent::from_s(0.5)).tvs == doctest::Approx(49.0));
  CHECK_THROWS_AS(tvs_grid_lower_bound(GridFunction(0.0, 1.0, {1.0}), SExponent::from_s(0.5)), ValidationError);
  // Extra samples at local extrema can only increase the value.
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v;
    for (int i = 0; i < 20; ++i) v.push_back(uniform(-1.0, 1.0));
    std::vector<double> w = v;
    const auto at = static_cast<std::size_t>(uniform_int(1, 18));
    w.insert(w.begin() + static_cast<long>(at), std::max(v[at - 1], v[at]) + uniform(0.0, 1.0));
    const auto sx = SExponent::from_s(uniform(0.2, 1.0));
    CHECK(tvs_grid_lower_bound(GridFunction(0.0, 1.0, w), sx).tvs >=
          tvs_grid_lower_bound(GridFunction(0.0, 1.0, v), sx).tvs * (1.0 - 1e-12));
  }
}

TEST_CASE("Lip functional") {
  const StepFunction jump({0.0}, {0.0, 1.0});
  const auto h = default_lip_h_grid();
  CHECK(h.size() == 21);
  for (double s : {0.3, 0.5, 1.0}) CHECK(lip_functional(jump, SExponent::from_s(s), h) == doctest::Approx(1.0));
  CHECK(lip_functional(StepFunction::constant(1.0), SExponent::from_s(0.5), h) == 0.0);
  const auto ramp = step_approximate([](double x) { return (x >= 0.0 && x <= 1.0) ? x : 0.0; }, 1.0 / 4096.0,
                                     Interval(-1.0, 2.0));
  const double lip = lip_functional(ramp, SExponent::from_s(0.5), h);
  CHECK(lip < 1.9);
  CHECK(tvs_step_exact(ramp, SExponent::from_s(0.5)).tvs == doctest::Approx(2.0).epsilon(1e-3));
  CHECK_THROWS_AS(lip_functional(jump, SExponent::from_s(0.5), {}), ValidationError);
}

TEST_CASE("strict convexity inequality and monotone runs") {
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = uniform(1e-3, 2.0);
    const double b = uniform(1e-3, 2.0);
    const double p = 1.0 / uniform(0.05, 0.99);
    CHECK(std::pow(std::abs(a - b), p) < std::pow(a, p) + std::pow(b, p));
    CHECK(std::pow(a, p) + std::pow(b, p) < std::pow(a + b, p));
  }
  // Inserting a value inside a monotone run never helps.
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v;
    for (int i = 0; i < 8; ++i) v.push_back(uniform(-1.0, 1.0));
    const auto sx = SExponent::from_s(uniform(0.2, 0.99));
    const double base = max_subsequence_variation(v, sx).value;
    const auto at = static_cast<std::size_t>(uniform_int(1, 7));
    const double lo = std::min(v[at - 1], v[at]);
    const double hi = std::max(v[at - 1], v[at]);
    auto w = v;
    w.insert(w.begin() + static_cast<long>(at), uniform(lo, hi));
    CHECK(max_subsequence_variation(w, sx).value <= base * (1.0 + 1e-12));
  }
}

TEST_CASE("structural properties") {
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = random_step(uniform_int(2, 12));
    const double s = uniform(0.2, 1.0);
    const auto sx = SExponent::from_s(s);
    const auto rep = tvs_step_exact(u, sx);

    // Superadditivity over adjacent intervals.
    const double a = uniform(-3.0, -1.0);
    const double b = uniform(-1.0, 1.0);
    const double c = uniform(1.0, 6.0);
    const double left = tvs_step_exact(restrict(u, Interval(a, b)), sx).tvs;
    const double right = tvs_step_exact(restrict(u, Interval(b, c)), sx).tvs;
    const double whole = tvs_step_exact(restrict(u, Interval(a, c)), sx).tvs;
    CHECK(left + right <= whole * (1.0 + 1e-12) + 1e-15);

    // Oscillation bounded by the seminorm.
    CHECK(u.sup() - u.inf() <= rep.seminorm * (1.0 + 1e-12));

    // Dilation invariance.
    const double lambda = uniform(0.01, 100.0);
    CHECK(tvs_step_exact(u.dilate(lambda, uniform(-1.0, 1.0)), sx).tvs == rep.tvs);

    // Exponent comparison for data bounded by 1/2.
    const auto small = random_step(uniform_int(2, 12), -0.5, 0.5);
    const double t_exp = uniform(0.3, 1.0);
    const double s_exp = uniform(0.1, t_exp);
    CHECK(tvs_step_exact(small, SExponent::from_s(s_exp)).tvs <=
          tvs_step_exact(small, SExponent::from_s(t_exp)).tvs * (1.0 + 1e-12));
  }
}

TEST_CASE("lower semicontinuity along step approximations") {
  const auto f = [](double x) { return std::sin(5.0 * x) * std::exp(-x); };
  const Interval w(0.0, 2.0);
  std::vector<double> samples;
  for (int i = 0; i <= 200; ++i) samples.push_back(f(0.05 + 0.0095 * i));
  for (double s : {0.25, 0.5, 1.0}) {
    const auto sx = SExponent::from_s(s);
    const double on_samples = max_subsequence_variation(samples, sx).value;
    double liminf = kInf;
    for (int k = 10; k <= 13; ++k) {
      liminf = std::min(liminf, tvs_step_exact(step_approximate(f, std::ldexp(1.0, -k), w), sx).tvs);
    }
    CHECK(on_samples <= liminf + 1e-9);
  }
}
