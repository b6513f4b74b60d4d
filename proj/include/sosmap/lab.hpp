#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sosmap/boundary_law.hpp"
#include "sosmap/error.hpp"
#include "sosmap/map_core.hpp"
#include "sosmap/spectral.hpp"

namespace sosmap::lab {

using Json = nlohmann::ordered_json;

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitAssertion = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code) noexcept;

struct PresetExpectation {
  bool positive = false;  // no nonpositive iterate and no escape
  std::optional<std::size_t> first_nonpositive;
  std::size_t first_nonpositive_tolerance = 0;
  std::optional<Regime> regime;
};

// Thirteen named trajectory parameter sets.
struct Preset {
  std::string name;
  int k = 2;
  double h = 1.0;  // h(n) for n >= 1; h(0) = 1
  double tau = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  std::size_t n_steps = 0;
  PresetExpectation expected;

  ModelParams params() const;
};

const std::vector<Preset>& presets();
const Preset& find_preset(std::string_view name);

struct Assertion {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct PresetRun {
  Trajectory trajectory;
  std::vector<Assertion> assertions;
  Json report;
  bool ok() const;
};

PresetRun run_preset(const Preset& preset);

// --- formatting -----------------------------------------------------------

// 17 significant digits, '.' decimal separator, locale independent.
std::string format_double(double v);

void write_trajectory_csv(std::ostream& os, const Trajectory& t);
// Reads `step,x,y`; throws ParseError on malformed or empty input.
std::vector<State> read_trajectory_csv(std::istream& is);

Json params_json(const ModelParams& p);
Json trajectory_summary_json(const Trajectory& t);
Json spectral_json(const ModelParams& p);
Json invariant_set_json(const ModelParams& p, std::size_t grid_n);
Json verdict_json(const SeriesVerdict& v);

// --- configuration --------------------------------------------------------

// Flat `key = value` file; '#' starts a comment, values may be quoted.
std::map<std::string, std::string> parse_config(std::istream& is);
std::map<std::string, std::string> load_config(const std::string& path);

// constant:<h> | geometric[:<theta>] | family:<c>,<base>,<alpha> |
// table:<j>=<h>,...;default=<h>.  Bare `geometric` takes theta from the caller.
Field parse_field_spec(std::string_view spec, std::optional<double> theta = std::nullopt);

// Builds a field from h.kind / h.theta / h.value / h.c / h.base / h.alpha /
// h.table / h.default keys, or from a plain `h` value.
std::optional<Field> field_from_config(const std::map<std::string, std::string>& cfg);

// --- sweep ----------------------------------------------------------------

struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  double at(std::size_t i) const;
};

struct SweepSpec {
  int k = 2;
  double tau = 3.0;
  Field field = Field::constant(1.0);
  Range y0;
  Range x1;
  std::size_t n_steps = 1000;
  unsigned workers = 1;
};

struct SweepCell {
  double y0 = 0.0;
  double x1 = 0.0;
  bool admissible = false;
  std::optional<std::size_t> horizon;
  double max_abs = 0.0;
};

// Row-major over (y0, x1); the order is independent of `workers`.
std::vector<SweepCell> sweep(const SweepSpec& spec);
void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells, std::size_t n_steps);

// --- boundary laws --------------------------------------------------------

struct LawRequest {
  std::string kind = "left";  // left, right, symmetric, both, uniform
  double theta = 0.5;
  int k = 2;
  std::string field_spec = "geometric";
  double rho = 1.0;
  std::size_t trunc_n = 400;
  long imax = 5;
};

BoundaryLaw make_law(const LawRequest& req);
Json boundary_law_report(const LawRequest& req);

struct MeasureRequest {
  LawRequest law;
  int depth = 1;
  std::vector<long> spins;  // breadth-first; a single value fills every vertex
  LawCoordinates coords = LawCoordinates::Simplified;
};

Json measure_report(const MeasureRequest& req);

// --- plot data ------------------------------------------------------------

struct PlotPoint {
  double u = 0.0;
  double v = 0.0;
};

// Uniform scaling into [0,1]^2, centred; a degenerate cloud sits at (0.5, 0.5).
std::vector<PlotPoint> plot_points(const std::vector<State>& points);
void write_plot_data(std::ostream& os, const std::vector<PlotPoint>& pts);

}  // namespace sosmap::lab
