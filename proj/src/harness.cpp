#include "fracbv/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "fracbv/errors.hpp"
#include "fracbv/io.hpp"
#include "fracbv/variation.hpp"

namespace fracbv {

namespace {

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ValidationError(where + "." + key + ": missing");
  return obj.at(key);
}

double get_real(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ValidationError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(where + "." + key + ": must be finite");
  return x;
}

double get_real_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? get_real(obj, key, where) : fallback;
}

std::vector<double> get_real_array(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_array()) throw ValidationError(where + "." + key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ValidationError(where + "." + key + ": expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::string get_string(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

Interval get_interval(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ValidationError(where + ": expected [lo, hi]");
  }
  const double lo = v[0].get<double>();
  const double hi = v[1].get<double>();
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError(where + ": need finite lo < hi");
  return Interval(lo, hi);
}

}  // namespace

// --- descriptors --------------------------------------------------------------

ConvexFluxModel flux_model_from_json(const json& spec) {
  const std::string where = "flux";
  if (!spec.is_object()) throw ValidationError("flux: expected an object");
  if (!spec.contains("kind")) throw ValidationError("flux.kind: missing (burgers, power or table)");
  const std::string kind = get_string(spec, "kind", where);
  if (kind == "burgers") {
    const double M = get_real_or(spec, "M", 1.0, where);
    if (!(M > 0.0)) throw ValidationError("flux.M: must be positive");
    return ConvexFluxModel::burgers(M);
  }
  if (kind == "power") {
    const double alpha = get_real(spec, "alpha", where);
    Interval range(-1.0, 1.0);
    if (spec.contains("range")) {
      range = get_interval(spec.at("range"), "flux.range");
    } else if (spec.contains("M")) {
      const double M = get_real(spec, "M", where);
      if (!(M > 0.0)) throw ValidationError("flux.M: must be positive");
      range = Interval(-M, M);
    }
    return ConvexFluxModel::power(alpha, range);
  }
  if (kind == "table") {
    if (!spec.contains("a_values")) {
      throw ValidationError("flux.a_values: missing (tabulated f_values only serve front tracking)");
    }
    return ConvexFluxModel::table(get_real_array(spec, "u_nodes", where), get_real_array(spec, "a_values", where),
                                  get_real(spec, "p", where));
  }
  throw ValidationError("flux.kind: unknown kind '" + kind + "'");
}

PiecewiseAffineFlux polygonal_flux_from_json(const json& spec, int K) {
  if (spec.is_object() && spec.contains("f_values")) {
    return PiecewiseAffineFlux(get_real_array(spec, "u_nodes", "flux"), get_real_array(spec, "f_values", "flux"));
  }
  const auto model = flux_model_from_json(spec);
  return polygonalize_flux([&model](double u) { return model.flux(u); }, model.range(), K);
}

json load_json_argument(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '[')) {
      return json::parse(text_or_path);
    }
    std::ifstream in(text_or_path);
    if (!in) throw ValidationError("cannot open JSON file '" + text_or_path + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

PeriodicData periodic_sine(double amplitude, double period, double mean, std::size_t cells) {
  if (!(period > 0.0)) throw ValidationError("init.period: must be positive");
  if (cells < 2) throw ValidationError("init.cells: need at least two cells");
  const double w = 2.0 * std::numbers::pi / period;
  std::vector<double> edges(cells + 1);
  std::vector<double> values(cells);
  for (std::size_t i = 0; i <= cells; ++i) edges[i] = period * static_cast<double>(i) / static_cast<double>(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double dx = edges[i + 1] - edges[i];
    values[i] = mean + amplitude * (std::cos(w * edges[i]) - std::cos(w * edges[i + 1])) / (w * dx);
  }
  return {StepFunction::from_cells(std::move(edges), values, values.back(), values.front()), period};
}

StepFunction unbounded_oscillation(int n) {
  if (n < 1) throw ValidationError("unbounded oscillation: n must be >= 1");
  std::vector<double> edges;
  std::vector<double> z;
  double level = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = 0.01 * std::pow(static_cast<double>(k + 1), -1.01);
    level += a;
    z.push_back(level);
    level -= std::sqrt(a);
    z.push_back(level);
  }
  // z_0 = 0 on ]-1, 0], then z_m on ]m - 1, m].
  edges.push_back(-1.0);
  std::vector<double> cells{0.0};
  for (std::size_t m = 0; m <= z.size(); ++m) edges.push_back(static_cast<double>(m));
  cells.insert(cells.end(), z.begin(), z.end());
  return StepFunction::from_cells(std::move(edges), cells, 0.0, z.back());
}

std::vector<double> alternating_harmonic_values(int n, double t) {
  if (n < 1) throw ValidationError("alternating harmonic: n must be >= 1");
  std::vector<double> a(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (int p = 1; p <= n; ++p) {
    sum += (p % 2 == 0 ? 1.0 : -1.0) / std::pow(static_cast<double>(p), t);
    a[static_cast<std::size_t>(p - 1)] = sum;
  }
  // Cell m sits at ](m+1)^{-1}, m^{-1}], so m = n is leftmost.
  return {a.rbegin(), a.rend()};
}

InitialData initial_data_from_json(const json& spec, const std::filesystem::path& base_dir) {
  const std::string where = "init";
  if (!spec.is_object()) throw ValidationError("init: expected an object");
  const std::string kind = get_string(spec, "kind", where);
  InitialData d;
  if (kind == "riemann") {
    d.step = StepFunction({0.0}, {get_real(spec, "uL", where), get_real(spec, "uR", where)});
  } else if (kind == "bump") {
    const double amp = get_real_or(spec, "amplitude", 1.0, where);
    d.step = StepFunction({0.0, 1.0}, {0.0, amp, 0.0});
    d.compact = true;
  } else if (kind == "periodic-sine") {
    const double cells = get_real_or(spec, "cells", 256.0, where);
    if (!(cells >= 2.0) || cells != std::floor(cells)) throw ValidationError("init.cells: expected an integer >= 2");
    d.periodic = periodic_sine(get_real_or(spec, "amplitude", 1.0, where), get_real_or(spec, "period", 1.0, where),
                               get_real_or(spec, "mean", 0.0, where), static_cast<std::size_t>(cells));
    d.step = d.periodic->one_period;
  } else if (kind == "step_csv") {
    std::filesystem::path p = get_string(spec, "path", where);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    d.step = read_step_csv(p);
    d.compact = d.step.left_tail() == 0.0 && d.step.right_tail() == 0.0 && d.step.num_breakpoints() >= 2;
  } else if (kind == "example") {
    const std::string id = get_string(spec, "id", where);
    const double n = get_real_or(spec, "n", 10.0, where);
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6) throw ValidationError("init.n: expected an integer in [1, 1e6]");
    const int ni = static_cast<int>(n);
    if (id == "unbounded-oscillation") {
      d.step = unbounded_oscillation(ni);
    } else if (id == "alternating-harmonic") {
      const auto v = alternating_harmonic_values(ni, get_real_or(spec, "t", 0.5, where));
      std::vector<double> edges;
      for (int m = ni + 1; m >= 1; --m) edges.push_back(1.0 / m);
      d.step = StepFunction::from_cells(std::move(edges), v, 0.0, 0.0);
      d.compact = true;
    } else {
      throw ValidationError("init.id: unknown example '" + id + "' (unbounded-oscillation, alternating-harmonic)");
    }
  } else {
    throw ValidationError("init.kind: unknown kind '" + kind + "'");
  }
  return d;
}

// --- scenarios ----------------------------------------------------------------

Scenario scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
  const std::string where = "scenario";
  if (!doc.is_object()) throw ValidationError("scenario: expected an object");
  Scenario sc;
  sc.base_dir = base_dir;
  sc.name = doc.contains("name") ? get_string(doc, "name", where) : "scenario";
  sc.flux = require(doc, "flux", where);
  sc.init = require(doc, "init", where);
  if (doc.contains("s_grid")) sc.s_grid = get_real_array(doc, "s_grid", where);
  if (sc.s_grid.empty()) throw ValidationError("scenario.s_grid: must be nonempty");
  for (double s : sc.s_grid) {
    if (!(s > 0.0 && s <= 1.0)) throw ValidationError("scenario.s_grid: every s must lie in (0, 1]");
  }
  sc.times = get_real_array(doc, "times", where);
  if (sc.times.empty()) throw ValidationError("scenario.times: must be nonempty");
  for (std::size_t i = 0; i < sc.times.size(); ++i) {
    if (!(sc.times[i] > 0.0) || (i > 0 && !(sc.times[i] > sc.times[i - 1]))) {
      throw ValidationError("scenario.times: must be positive and strictly increasing");
    }
  }
  if (doc.contains("window")) sc.window = get_interval(doc.at("window"), "scenario.window");
  const std::string solver = doc.contains("solver") ? get_string(doc, "solver", where) : "ft";
  if (solver == "ft") {
    sc.solver = SolverKind::kFrontTracking;
  } else if (solver == "lo") {
    sc.solver = SolverKind::kLaxOleinik;
  } else if (solver == "both") {
    sc.solver = SolverKind::kBoth;
  } else {
    throw ValidationError("scenario.solver: expected ft, lo or both");
  }
  if (doc.contains("output_dir")) {
    sc.output_dir = get_string(doc, "output_dir", where);
    if (sc.output_dir.is_relative() && !base_dir.empty()) sc.output_dir = base_dir / sc.output_dir;
  }
  if (doc.contains("K")) {
    const double K = get_real(doc, "K", where);
    if (!(K >= 1.0) || K != std::floor(K) || K > 1e6) throw ValidationError("scenario.K: expected an integer >= 1");
    sc.K = static_cast<int>(K);
  }
  if (doc.contains("grid_n")) {
    const double n = get_real(doc, "grid_n", where);
    if (!(n >= 2.0) || n != std::floor(n) || n > 1e7) throw ValidationError("scenario.grid_n: expected an integer >= 2");
    sc.grid_n = static_cast<std::size_t>(n);
  }
  if (doc.contains("K_list")) {
    for (double K : get_real_array(doc, "K_list", where)) {
      if (!(K >= 1.0) || K != std::floor(K) || K > 1e6) throw ValidationError("scenario.K_list: expected integers >= 1");
      sc.K_list.push_back(static_cast<int>(K));
    }
  }
  // Fail early on malformed descriptors.
  (void)initial_data_from_json(sc.init, sc.base_dir);
  if (sc.solver != SolverKind::kFrontTracking) (void)flux_model_from_json(sc.flux);
  if (sc.solver != SolverKind::kLaxOleinik) (void)polygonal_flux_from_json(sc.flux, sc.K);
  return sc;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACBV_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

namespace {

std::vector<SExponent> exponents(const std::vector<double>& s_grid) {
  std::vector<SExponent> out;
  for (double s : s_grid) out.push_back(SExponent::from_s(s));
  return out;
}

LaxOleinikSolver make_lo_solver(const ConvexFluxModel& model, const InitialData& data) {
  if (data.periodic) return LaxOleinikSolver(model, *data.periodic);
  return LaxOleinikSolver(model, data.step);
}

GridFunction lo_profile(const LaxOleinikSolver& solver, double t, const Interval& window, std::size_t n) {
  return solver.evaluate(t, window.lo(), window.length() / static_cast<double>(n - 1), n).u;
}

std::string solution_name(std::size_t k, const char* prefix = "solution") {
  return std::string(prefix) + "_t" + std::to_string(k) + ".csv";
}

}  // namespace

std::vector<CrossValidationRow> compare_solvers(const Scenario& sc, const std::vector<int>& K_list) {
  const auto data = initial_data_from_json(sc.init, sc.base_dir);
  if (data.periodic) throw ValidationError("init: periodic data is not supported by front tracking");
  const auto model = flux_model_from_json(sc.flux);
  const auto solver = make_lo_solver(model, data);
  std::vector<GridFunction> reference;
  for (double t : sc.times) reference.push_back(lo_profile(solver, t, sc.window, sc.grid_n));
  std::vector<CrossValidationRow> rows;
  EvolveOptions opt;
  opt.s_grid = exponents(sc.s_grid);
  for (int K : K_list) {
    const auto flux = polygonal_flux_from_json(sc.flux, K);
    FrontTrackingState state(flux, data.step);
    for (std::size_t i = 0; i < sc.times.size(); ++i) {
      state = evolve(flux, state, sc.times[i], opt).state;
      const auto ft = sample_solution(state, sc.times[i], sc.window);
      rows.push_back({K, sc.times[i], l1_distance(ft, reference[i], sc.window)});
    }
  }
  return rows;
}

RunReport run_scenario(const Scenario& sc) {
  RunReport rep;
  rep.name = sc.name;
  rep.times = sc.times;
  rep.s_grid = sc.s_grid;
  const auto data = initial_data_from_json(sc.init, sc.base_dir);
  const auto sx = exponents(sc.s_grid);
  std::vector<std::pair<std::string, std::string>> files;

  const bool use_ft = sc.solver != SolverKind::kLaxOleinik;
  const bool use_lo = sc.solver != SolverKind::kFrontTracking;
  if (use_ft) {
    if (data.periodic) throw ValidationError("init: periodic data is not supported by front tracking");
    const auto flux = polygonal_flux_from_json(sc.flux, sc.K);
    EvolveOptions opt;
    opt.s_grid = sx;
    FrontTrackingState state(flux, data.step);
    std::vector<double> prev;
    for (std::size_t i = 0; i < sc.times.size(); ++i) {
      auto res = evolve(flux, state, sc.times[i], opt);
      state = std::move(res.state);
      rep.events.insert(rep.events.end(), res.events.begin(), res.events.end());
      const auto states = state.state_sequence();
      std::vector<double> row;
      for (const auto& s : sx) row.push_back(max_subsequence_variation(states, s).value);
      for (std::size_t j = 0; j < row.size() && !prev.empty(); ++j) {
        if (row[j] > prev[j] + 1e-10) {
          std::ostringstream os;
          os << "TV^s increased between t=" << sc.times[i - 1] << " and t=" << sc.times[i] << " for s=" << sc.s_grid[j]
             << ": " << prev[j] << " -> " << row[j];
          throw InvariantViolation(os.str());
        }
      }
      prev = row;
      rep.tvs_table.push_back(row);
      std::ostringstream sol;
      write_step_csv(sol, sample_solution(state, sc.times[i], sc.window));
      files.emplace_back(solution_name(i), sol.str());
    }
  }
  if (use_lo) {
    const auto model = flux_model_from_json(sc.flux);
    const auto solver = make_lo_solver(model, data);
    for (std::size_t i = 0; i < sc.times.size(); ++i) {
      const auto u = lo_profile(solver, sc.times[i], sc.window, sc.grid_n);
      if (!use_ft) {
        std::vector<double> row;
        for (const auto& s : sx) row.push_back(tvs_grid_lower_bound(u, s).tvs);
        rep.tvs_table.push_back(row);
      }
      std::ostringstream sol;
      write_grid_csv(sol, u);
      files.emplace_back(solution_name(i, use_ft ? "solution_lo" : "solution"), sol.str());
    }
    if (sc.times.size() >= 4 && (data.compact || data.periodic)) {
      rep.decay = decay_report(solver, sc.times, data.periodic ? DecayMode::kPeriodic : DecayMode::kCompact);
    }
  }
  if (sc.solver == SolverKind::kBoth) {
    rep.crossval = compare_solvers(sc, sc.K_list.empty() ? std::vector<int>{sc.K} : sc.K_list);
  }

  if (!sc.output_dir.empty()) {
    std::filesystem::create_directories(sc.output_dir);
    for (const auto& [name, content] : files) write_text_file(sc.output_dir / name, content);
    write_text_file(sc.output_dir / "tvs_table.csv", tvs_table_csv(rep));
    if (use_ft) write_text_file(sc.output_dir / "events.csv", events_csv(rep.events, sc.s_grid));
    if (rep.decay) write_text_file(sc.output_dir / "decay.csv", decay_csv(*rep.decay));
    if (!rep.crossval.empty()) {
      std::string cv = "K,t,l1_distance\n";
      for (const auto& r : rep.crossval) cv += std::to_string(r.K) + "," + format_double(r.t) + "," + format_double(r.l1) + "\n";
      write_text_file(sc.output_dir / "crossval.csv", cv);
    }
    json summary = {{"name", sc.name}, {"events", rep.events.size()}};
    if (rep.decay) {
      summary["fitted_exponent"] = rep.decay->fitted_exponent;
      summary["predicted_exponent"] = rep.decay->predicted_exponent;
    }
    write_text_file(sc.output_dir / "summary.json", summary.dump(2) + "\n");
  }
  return rep;
}

std::vector<RunReport> run_scenarios(const std::vector<Scenario>& scenarios) {
  std::vector<RunReport> out(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        out[i] = run_scenario(scenarios[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(1, scenarios.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// --- reference examples ---------------------------------------------------------

std::vector<ExampleRow> paper_examples() {
  std::vector<ExampleRow> rows;
  const auto add = [&rows](std::string ex, std::string what, double s, int n, double value, double ref,
                           std::string claim) {
    bool holds = false;
    const double slack = 1e-12 * std::max(1.0, std::abs(ref));
    if (claim == ">") holds = value > ref;
    if (claim == "<") holds = value < ref;
    if (claim == ">=") holds = value >= ref - slack;
    if (claim == "<=") holds = value <= ref + slack;
    rows.push_back({std::move(ex), std::move(what), s, n, value, ref, std::move(claim), holds});
  };
  const std::vector<int> levels{10, 100, 1000};

  // Ramp u(x) = x on [0, 1]: uniform refinement drives TV^s to 0 for s < 1.
  for (double s : {0.25, 0.5, 0.75}) {
    const auto sx = SExponent::from_s(s);
    double prev = tvs_on_values(std::vector<double>{0.0, 1.0}, sx);
    for (int n : levels) {
      std::vector<double> v(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
      const double val = tvs_on_values(v, sx);
      add("ramp", "TV^s on uniform subdivision vs coarser level", s, n, val, prev, "<");
      prev = val;
    }
  }

  // Monotone jumps a, b beat alternating jumps a, -b.
  for (double s : {0.25, 0.5, 0.75}) {
    const auto sx = SExponent::from_s(s);
    const double a = 1.0;
    const double b = 1.0;
    const StepFunction u({0.0, 1.0}, {0.0, a, a + b});
    const StepFunction v({0.0, 1.0}, {0.0, a, a - b});
    add("monotone-vs-alternating", "TV^s(monotone) vs TV^s(alternating)", s, 0, tvs_step_exact(u, sx).tvs,
        tvs_step_exact(v, sx).tvs, ">");
  }

  // Nested extremal subdivisions: the coarse one wins.
  for (double s : {0.25, 0.5, 0.75}) {
    const auto sx = SExponent::from_s(s);
    const double a = 1.0, b = 2.0, eps = 0.01;
    const std::vector<double> fine{0.0, a, a - eps, b};
    const std::vector<double> coarse{0.0, b};
    add("nested-extremal", "TV^s of coarse vs fine subdivision", s, 0, tvs_on_values(coarse, sx), tvs_on_values(fine, sx),
        ">");
  }

  // Unbounded oscillation: TV^s grows with the truncation level for every s.
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    const auto sx = SExponent::from_s(s);
    double prev = tvs_step_exact(unbounded_oscillation(1), sx).tvs;
    double first = 0.0;
    for (int n : levels) {
      const double val = tvs_step_exact(unbounded_oscillation(n), sx).tvs;
      add("unbounded-oscillation", "TV^s vs previous truncation", s, n, val, prev, ">");
      if (n == levels.front()) first = val;
      prev = val;
    }
    if (s == 0.5 || s == 1.0) add("unbounded-oscillation", "TV^s(n=1000) / TV^s(n=10)", s, 1000, prev / first, 10.0, ">=");
  }

  // Alternating harmonic partial sums: divergent at the exponent t, summable below it.
  {
    const double t = 0.5;
    const double below = 0.25;
    for (int n : levels) {
      const auto v = alternating_harmonic_values(n, t);
      double harmonic = 0.0;
      for (int p = 2; p <= n; ++p) harmonic += 1.0 / p;
      add("alternating-harmonic", "TV^t vs harmonic sum H_n - 1", t, n,
          max_subsequence_variation(v, SExponent::from_s(t)).value, harmonic, ">=");
      add("alternating-harmonic", "TV^s vs zeta(2) - 1", below, n,
          max_subsequence_variation(v, SExponent::from_s(below)).value, std::numbers::pi * std::numbers::pi / 6.0 - 1.0,
          "<");
    }
  }
  return rows;
}

std::string examples_csv(const std::vector<ExampleRow>& rows) {
  std::string out = "example,quantity,s,n,value,claim,reference,holds\n";
  for (const auto& r : rows) {
    out += r.example + "," + r.quantity + "," + format_double(r.s) + "," + std::to_string(r.n) + "," +
           format_double(r.value) + "," + r.claim + "," + format_double(r.reference) + "," + (r.holds ? "yes" : "no") +
           "\n";
  }
  return out;
}

// --- CSV artifacts --------------------------------------------------------------

std::string s_label(double s) { return "s" + std::to_string(static_cast<long>(std::lround(100.0 * s))); }

std::string tvs_table_csv(const RunReport& rep) {
  std::string out = "t";
  for (double s : rep.s_grid) out += "," + s_label(s);
  out += "\n";
  for (std::size_t i = 0; i < rep.tvs_table.size(); ++i) {
    out += format_double(rep.times[i]);
    for (double v : rep.tvs_table[i]) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string events_csv(const std::vector<EventRecord>& events, const std::vector<double>& s_grid) {
  std::string out = "t_star,x_star,fronts_before,fronts_after";
  for (double s : s_grid) out += ",tvs_before_" + s_label(s) + ",tvs_after_" + s_label(s);
  out += "\n";
  for (const auto& e : events) {
    out += format_double(e.t_star) + "," + format_double(e.x_star) + "," + std::to_string(e.fronts_before) + "," +
           std::to_string(e.fronts_after);
    for (std::size_t j = 0; j < s_grid.size(); ++j) {
      out += "," + format_double(e.tvs_before[j]) + "," + format_double(e.tvs_after[j]);
    }
    out += "\n";
  }
  return out;
}

std::string decay_csv(const DecayReport& rep) {
  std::string out = "t,sup_norm\n";
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    out += format_double(rep.times[i]) + "," + format_double(rep.sup_norms[i]) + "\n";
  }
  return out;
}

}  // namespace fracbv
