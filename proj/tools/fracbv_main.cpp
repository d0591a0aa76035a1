// fracbv command-line entry point.
// Exit codes: 0 success, 2 validation error, 3 invariant violation, 4 numerical failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fracbv/errors.hpp"
#include "fracbv/front_tracking.hpp"
#include "fracbv/harness.hpp"
#include "fracbv/io.hpp"
#include "fracbv/lax_oleinik.hpp"
#include "fracbv/variation.hpp"

using namespace fracbv;

namespace {

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_text_file(path, content);
  }
}

Interval parse_window(const std::string& text) {
  const auto v = parse_real_list(text, "--window");
  if (v.size() != 2) throw ValidationError("--window: expected a,b");
  if (!(v[0] < v[1])) throw ValidationError("--window: need a < b");
  return Interval(v[0], v[1]);
}

int run_tvs(const std::string& input, const std::string& s_list, bool plus, const std::string& witness_path) {
  const auto u = read_step_csv(input);
  const auto s_values = parse_real_list(s_list, "--s");
  std::ostringstream out;
  out << "s,tvs,seminorm" << (plus ? ",tvs_plus" : "") << '\n';
  std::ostringstream wit;
  wit << "s,x\n";
  for (double s : s_values) {
    const auto sx = SExponent::from_s(s);
    const auto rep = tvs_step_exact(u, sx);
    out << format_double(s) << ',' << format_double(rep.tvs) << ',' << format_double(rep.seminorm);
    if (plus) out << ',' << format_double(tvs_plus_step(u, sx));
    out << '\n';
    for (double x : rep.witness) wit << format_double(s) << ',' << format_double(x) << '\n';
  }
  std::cout << out.str();
  if (!witness_path.empty()) write_text_file(witness_path, wit.str());
  return 0;
}

int run_evolve(const std::string& flux_arg, int K, const std::string& init, double t, const std::string& window,
               const std::string& out_path, const std::string& events_path, const std::string& s_grid) {
  const auto flux = polygonal_flux_from_json(load_json_argument(flux_arg), K);
  const auto u0 = read_step_csv(init);
  EvolveOptions opt;
  const auto s_values = parse_real_list(s_grid, "--s-grid");
  for (double s : s_values) opt.s_grid.push_back(SExponent::from_s(s));
  auto res = evolve(flux, FrontTrackingState(flux, u0), t, opt);
  const Interval w = window.empty() ? Interval::whole_line() : parse_window(window);
  std::ostringstream sol;
  write_step_csv(sol, sample_solution(res.state, t, w));
  emit(out_path, sol.str());
  if (!events_path.empty()) write_text_file(events_path, events_csv(res.events, s_values));
  return 0;
}

int run_laxoleinik(const std::string& flux_arg, const std::string& init, double t, const std::string& grid,
                   const std::string& out_path, std::size_t scan_points, bool independent) {
  const auto model = flux_model_from_json(load_json_argument(flux_arg));
  const auto g = parse_real_list(grid, "--grid");
  if (g.size() != 3 || !(g[0] < g[1]) || !(g[2] >= 2.0) || g[2] != std::floor(g[2])) {
    throw ValidationError("--grid: expected a,b,n with a < b and integer n >= 2");
  }
  LaxOleinikOptions opt;
  opt.scan_points = scan_points;
  opt.independent_points = independent;
  opt.threads = worker_count();
  const LaxOleinikSolver solver(model, read_step_csv(init), opt);
  const auto n = static_cast<std::size_t>(g[2]);
  const auto ev = solver.evaluate(t, g[0], (g[1] - g[0]) / static_cast<double>(n - 1), n);
  std::ostringstream out;
  write_grid_csv(out, ev.u);
  emit(out_path, out.str());
  return 0;
}

int run_decay(const std::string& mode, const std::string& times, const std::string& out_path,
              const std::string& flux_arg, const std::string& init) {
  const auto model = flux_model_from_json(load_json_argument(flux_arg));
  const auto t = parse_real_list(times, "--times");
  DecayReport rep;
  if (mode == "compact") {
    const auto u0 = init.empty() ? StepFunction({0.0, 1.0}, {0.0, 1.0, 0.0}) : read_step_csv(init);
    rep = decay_report(LaxOleinikSolver(model, u0), t, DecayMode::kCompact);
  } else if (mode == "periodic") {
    const auto data = init.empty() ? periodic_sine(1.0, 1.0, 0.0, 256) : [&] {
      const auto u = read_step_csv(init);
      const auto b = u.breakpoints();
      if (b.size() < 2) throw ValidationError("--init: periodic data needs at least one cell");
      return PeriodicData{u, b.back() - b.front()};
    }();
    rep = decay_report(LaxOleinikSolver(model, data), t, DecayMode::kPeriodic);
  } else {
    throw ValidationError("--mode: expected compact or periodic");
  }
  emit(out_path, decay_csv(rep));
  std::cerr << "fitted_exponent " << format_double(rep.fitted_exponent) << " predicted_exponent "
            << format_double(rep.predicted_exponent) << '\n';
  return 0;
}

int run_experiment(const std::string& config) {
  const std::filesystem::path path(config);
  const json doc = load_json_argument(config);
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::vector<Scenario> scenarios;
  if (doc.is_object() && doc.contains("scenarios")) {
    if (!doc.at("scenarios").is_array()) throw ValidationError("scenarios: expected an array");
    for (const auto& s : doc.at("scenarios")) scenarios.push_back(scenario_from_json(s, base));
  } else {
    scenarios.push_back(scenario_from_json(doc, base));
  }
  const auto reports = run_scenarios(scenarios);
  for (const auto& r : reports) {
    std::cout << r.name << ": " << r.times.size() << " times, " << r.events.size() << " events";
    if (r.decay) std::cout << ", fitted decay exponent " << format_double(r.decay->fitted_exponent);
    std::cout << '\n';
  }
  return 0;
}

int run_examples(const std::string& out_path) {
  const auto rows = paper_examples();
  emit(out_path, examples_csv(rows));
  for (const auto& r : rows) {
    if (!r.holds) return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional bounded variation lab for scalar conservation laws"};
  app.require_subcommand(1);

  std::string input, s_list = "0.5", witness;
  bool plus = false;
  auto* tvs = app.add_subcommand("tvs", "Exact TV^s of a step function");
  tvs->add_option("--input", input, "step CSV")->required();
  tvs->add_option("--s", s_list, "exponent(s), comma separated");
  tvs->add_flag("--plus", plus, "also report the positive-increment variation");
  tvs->add_option("--witness", witness, "write the optimal subdivision here");

  std::string flux, init, window, out, events, s_grid = "0.25,0.5,0.75,1";
  double t = 1.0;
  int K = 64;
  auto* ev = app.add_subcommand("evolve", "Front tracking to time t");
  ev->add_option("--flux", flux, "flux JSON (file or inline)")->required();
  ev->add_option("--init", init, "step CSV")->required();
  ev->add_option("--t", t, "final time")->required();
  ev->add_option("--window", window, "a,b");
  ev->add_option("--out", out, "solution CSV (default stdout)");
  ev->add_option("--events", events, "event log CSV");
  ev->add_option("--s-grid", s_grid, "exponents for the event log");
  ev->add_option("--K", K, "polygonalization level for smooth flux kinds");

  std::string grid;
  std::size_t scan_points = 4096;
  bool independent = false;
  auto* lo = app.add_subcommand("laxoleinik", "Lax-Oleinik solution on a grid");
  lo->add_option("--flux", flux, "flux JSON (file or inline)")->required();
  lo->add_option("--init", init, "step CSV")->required();
  lo->add_option("--t", t, "time")->required();
  lo->add_option("--grid", grid, "a,b,n")->required();
  lo->add_option("--out", out, "solution CSV (default stdout)");
  lo->add_option("--scan-points", scan_points, "scan size for grid data");
  lo->add_flag("--independent", independent, "full search window per point (parallel)");

  std::string mode, times, decay_flux = R"({"kind":"power","alpha":2})";
  auto* dc = app.add_subcommand("decay", "Sup-norm decay and fitted exponent");
  dc->add_option("--mode", mode, "compact or periodic")->required();
  dc->add_option("--times", times, "t0,t1,...")->required();
  dc->add_option("--out", out, "decay CSV (default stdout)");
  dc->add_option("--flux", decay_flux, "flux JSON (default cubic)");
  dc->add_option("--init", init, "step CSV (default bump or sine)");

  std::string config;
  auto* ex = app.add_subcommand("experiment", "Run scenario config");
  ex->add_option("--config", config, "scenario JSON")->required();

  auto* pe = app.add_subcommand("paper-examples", "Reference example table");
  pe->add_option("--out", out, "CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*tvs) return run_tvs(input, s_list, plus, witness);
    if (*ev) return run_evolve(flux, K, init, t, window, out, events, s_grid);
    if (*lo) return run_laxoleinik(flux, init, t, grid, out, scan_points, independent);
    if (*dc) return run_decay(mode, times, out, decay_flux, init);
    if (*ex) return run_experiment(config);
    if (*pe) return run_examples(out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
