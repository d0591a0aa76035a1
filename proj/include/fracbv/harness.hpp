#ifndef FRACBV_HARNESS_HPP
#define FRACBV_HARNESS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracbv/front_tracking.hpp"
#include "fracbv/func_repr.hpp"
#include "fracbv/lax_oleinik.hpp"

namespace fracbv {

using nlohmann::json;

// --- flux and data descriptors ---------------------------------------------

/// {"kind":"burgers","M":1} | {"kind":"power","alpha":2,"range":[-1,1]} |
/// {"kind":"table","u_nodes":[...],"a_values":[...],"p":2}
ConvexFluxModel flux_model_from_json(const json& spec);

/// Polygonal flux for front tracking: {"u_nodes":[...],"f_values":[...]}
/// is used as is; any smooth model spec is interpolated at K + 1 nodes of
/// its state range.
PiecewiseAffineFlux polygonal_flux_from_json(const json& spec, int K);

/// Accepts inline JSON text or a path to a JSON file.
json load_json_argument(const std::string& text_or_path);

struct InitialData {
  StepFunction step = StepFunction::constant(0.0);
  std::optional<PeriodicData> periodic;
  bool compact = false;  // zero tails
};

/// {"kind":"riemann","uL":..,"uR":..} | {"kind":"bump","amplitude":1} |
/// {"kind":"periodic-sine","amplitude":..,"period":..,"mean":..,"cells":..} |
/// {"kind":"step_csv","path":..} | {"kind":"example","id":..,"n":..}
InitialData initial_data_from_json(const json& spec, const std::filesystem::path& base_dir = {});

/// Cell averages of mean + amplitude sin(2 pi x / period) over `cells`
/// equal cells of [0, period].
PeriodicData periodic_sine(double amplitude, double period, double mean, std::size_t cells);

// --- scenarios --------------------------------------------------------------

enum class SolverKind { kFrontTracking, kLaxOleinik, kBoth };

struct Scenario {
  std::string name;
  json flux;
  json init;
  std::vector<double> s_grid{0.25, 0.5, 0.75, 1.0};
  std::vector<double> times;
  Interval window{-2.0, 2.0};
  SolverKind solver = SolverKind::kFrontTracking;
  std::filesystem::path output_dir;
  std::filesystem::path base_dir;  // relative paths in init resolve here
  int K = 64;                      // flux polygonalization for front tracking
  std::size_t grid_n = 1024;       // evaluation grid for the Lax-Oleinik solver
  std::vector<int> K_list;         // cross-validation levels (default {K})
};

/// Validates every field; messages name the offending field.
Scenario scenario_from_json(const json& doc, const std::filesystem::path& base_dir = {});

struct CrossValidationRow {
  int K = 0;
  double t = 0.0;
  double l1 = 0.0;
};

struct RunReport {
  std::string name;
  std::vector<double> times;
  std::vector<double> s_grid;
  // tvs_table[i][j]: TV^s at times[i] for s_grid[j]. Exact for front
  // tracking, grid lower bound on the window for the Lax-Oleinik solver.
  std::vector<std::vector<double>> tvs_table;
  std::vector<EventRecord> events;
  std::optional<DecayReport> decay;
  std::vector<CrossValidationRow> crossval;
};

/// Runs one scenario and writes its artifacts when output_dir is set.
/// Throws InvariantViolation if an exact TV^s row increases in time.
RunReport run_scenario(const Scenario& sc);

/// Runs scenarios on a worker pool capped by FRACBV_THREADS.
std::vector<RunReport> run_scenarios(const std::vector<Scenario>& scenarios);

/// L1(window) distance between front tracking at each K and the
/// Lax-Oleinik solution, at every scenario time.
std::vector<CrossValidationRow> compare_solvers(const Scenario& sc, const std::vector<int>& K_list);

/// Worker count: FRACBV_THREADS if set and positive, else hardware threads.
unsigned worker_count();

// --- reference examples -----------------------------------------------------

struct ExampleRow {
  std::string example;
  std::string quantity;
  double s = 0.0;
  int n = 0;  // truncation level, 0 when not applicable
  double value = 0.0;
  double reference = 0.0;
  std::string claim;  // relation of value to reference, e.g. ">" or "<"
  bool holds = false;
};

/// Fixed table of the classical fractional-variation examples: refinement
/// collapse of the ramp, monotone versus alternating jumps, nested
/// extremal subdivisions, unbounded oscillation and the alternating
/// harmonic counterexample separating two exponents.
std::vector<ExampleRow> paper_examples();

/// Step data for the unbounded oscillation truncated after n up/down
/// pairs: z_{2k+1} = z_{2k} + a_k, z_{2k+2} = z_{2k+1} - sqrt(a_k),
/// a_k = 0.01 (k + 1)^{-1.01}, on cells ]m - 1, m].
StepFunction unbounded_oscillation(int n);

/// Cell values of the alternating harmonic counterexample on
/// ](m+1)^{-1}, m^{-1}], m = 1..n, listed left to right.
std::vector<double> alternating_harmonic_values(int n, double t);

std::string examples_csv(const std::vector<ExampleRow>& rows);

// --- CSV artifacts ------------------------------------------------------------

/// Column suffix for an exponent: s = 0.5 -> "s50".
std::string s_label(double s);
std::string tvs_table_csv(const RunReport& rep);
std::string events_csv(const std::vector<EventRecord>& events, const std::vector<double>& s_grid);
std::string decay_csv(const DecayReport& rep);

}  // namespace fracbv

#endif  // FRACBV_HARNESS_HPP
