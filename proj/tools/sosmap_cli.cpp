// sosmap: command-line workbench for the SOS boundary-law recurrence.
//
//   sosmap preset fig13 --out results/
//   sosmap iterate --k 2 --tau 3 --h 1 --y0 0.5 --x1 1.48589 --steps 3000 --out fig1.csv
//   sosmap sweep --tau 3 --y0-range 0.1:2.5:50 --x1-range 0.1:2.5:50 --workers 4 --out grid.csv
//   sosmap spectral --k 3 --tau 4 --y0 1.2 --x1 0.8
//   sosmap boundary-law --kind symmetric --theta 0.5 --k 2 --field geometric --trunc 400

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sosmap/error.hpp"
#include "sosmap/geometry.hpp"
#include "sosmap/lab.hpp"

namespace {

using sosmap::Error;
using sosmap::ErrorCode;
using namespace sosmap::lab;

struct Common {
  std::optional<int> k;
  std::optional<double> tau;
  std::optional<double> theta;
  std::optional<std::string> h;
  std::optional<std::string> field;
  std::optional<double> y0;
  std::optional<double> x1;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> trunc;
  std::optional<std::string> out;
  std::optional<std::string> config;

  std::map<std::string, std::string> cfg;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--k", c.k, "Cayley tree order (k >= 2)");
  auto* tau = app->add_option("--tau", c.tau, "tau = theta + 1/theta (> 2)");
  auto* theta = app->add_option("--theta", c.theta, "theta; alternative to --tau");
  tau->excludes(theta);
  theta->excludes(tau);
  auto* h = app->add_option("--h", c.h, "constant field value h(n), n >= 1");
  auto* field = app->add_option("--field", c.field,
                                "field spec: constant:<h> | geometric:<theta> | geometric | family:<c>,<base>,<alpha> | "
                                "table:<j>=<h>,...;default=<h>");
  h->excludes(field);
  field->excludes(h);
  app->add_option("--y0", c.y0, "initial value u_{-1}");
  app->add_option("--x1", c.x1, "initial value u_1");
  app->add_option("--steps", c.steps, "number of iterations");
  app->add_option("--trunc", c.trunc, "series truncation N");
  app->add_option("--out", c.out, "output path");
  app->add_option("--config", c.config, "flat key = value configuration file");
}

std::optional<std::string> cfg_get(const Common& c, const char* key) {
  auto it = c.cfg.find(key);
  if (it == c.cfg.end()) return std::nullopt;
  return it->second;
}

double cfg_number(const std::string& v, const char* key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(key);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("config key ") + key + " is not a number: '" + v + "'");
  }
}

// Flags win over config values.
void merge_config(Common& c) {
  if (!c.config) return;
  c.cfg = load_config(*c.config);
  auto num = [&](const char* key) -> std::optional<double> {
    if (auto v = cfg_get(c, key)) return cfg_number(*v, key);
    return std::nullopt;
  };
  if (!c.k) {
    if (auto v = num("k")) c.k = static_cast<int>(*v);
  }
  if (!c.tau && !c.theta) {
    c.tau = num("tau");
    if (!c.tau) c.theta = num("theta");
  }
  if (!c.y0) c.y0 = num("y0");
  if (!c.x1) c.x1 = num("x1");
  if (!c.steps) {
    if (auto v = num("n_steps")) c.steps = static_cast<std::size_t>(*v);
  }
  if (!c.trunc) {
    if (auto v = num("trunc_n")) c.trunc = static_cast<std::size_t>(*v);
  }
  if (!c.out) c.out = cfg_get(c, "out");
}

int order(const Common& c) { return c.k.value_or(2); }

double tau_of(const Common& c) {
  if (c.tau) return *c.tau;
  if (c.theta) return sosmap::tau_from_theta(*c.theta);
  throw Error(ErrorCode::InvalidTau, "one of --tau or --theta is required");
}

sosmap::Field field_of(const Common& c, std::optional<double> theta = std::nullopt) {
  if (c.field) return parse_field_spec(*c.field, theta);
  if (c.h) return parse_field_spec(*c.h, theta);
  if (auto f = field_from_config(c.cfg)) return *f;
  return sosmap::Field::constant(1.0);
}

sosmap::ModelParams params_of(const Common& c) {
  const double tau = tau_of(c);
  if (!c.y0 || !c.x1) throw Error(ErrorCode::InvalidArgument, "--y0 and --x1 are required");
  return sosmap::make_params(order(c), tau, field_of(c, sosmap::theta_from_tau(tau)), *c.y0, *c.x1);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

// Writes to --out when given, otherwise to stdout.
void emit(const Common& c, const std::string& text) {
  if (c.out) {
    write_text(*c.out, text);
  } else {
    std::cout << text;
  }
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

Range parse_range(const std::string& s, const char* what) {
  std::istringstream is(s);
  std::string a, b, n;
  if (!std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, n)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must look like min:max:count");
  }
  try {
    return Range{std::stod(a), std::stod(b), static_cast<std::size_t>(std::stoul(n))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must look like min:max:count");
  }
}

int run_preset_cmd(const std::string& name, const Common& c) {
  if (name == "list") {
    for (const auto& p : presets()) std::cout << p.name << '\n';
    return kExitOk;
  }
  const Preset& preset = find_preset(name);
  const PresetRun run = run_preset(preset);
  const std::filesystem::path dir = c.out.value_or(".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create directory '" + dir.string() + "'");
  std::ostringstream csv;
  write_trajectory_csv(csv, run.trajectory);
  write_text((dir / (preset.name + ".csv")).string(), csv.str());
  write_text((dir / (preset.name + ".json")).string(), json_text(run.report));
  std::cout << json_text(run.report);
  if (!run.ok()) {
    for (const auto& a : run.assertions) {
      if (!a.ok) std::cerr << preset.name << ": " << a.name << " expected " << a.expected << ", got " << a.actual << '\n';
    }
    return kExitAssertion;
  }
  return kExitOk;
}

int run_iterate(const Common& c) {
  const auto p = params_of(c);
  const auto t = sosmap::iterate(p, c.steps.value_or(1000));
  std::ostringstream csv;
  write_trajectory_csv(csv, t);
  emit(c, csv.str());
  if (c.out) {
    Json j;
    j["params"] = params_json(p);
    j["trajectory"] = trajectory_summary_json(t);
    std::cout << json_text(j);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for SOS boundary laws on Cayley trees and the induced planar map"};
  // -h is taken by the field flag --h.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Common common;

  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "Run a named preset (fig1..fig13, or 'list')");
  preset->add_option("name", preset_name, "preset name")->required();
  add_common(preset, common);

  auto* iterate = app.add_subcommand("iterate", "Iterate the map from (x1, 1) and write step,x,y CSV");
  add_common(iterate, common);

  std::string y0_range, x1_range;
  unsigned workers = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Positivity-horizon raster over (y0, x1)");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("--y0-range", y0_range, "min:max:count")->required();
  sweep_cmd->add_option("--x1-range", x1_range, "min:max:count")->required();
  sweep_cmd->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 256u));

  auto* spectral = app.add_subcommand("spectral", "Fixed points, eigenvalues, regime and resonances");
  add_common(spectral, common);

  std::size_t grid_n = 100;
  auto* inv = app.add_subcommand("invariant-set", "Invariant-set scalars and grid invariance check");
  add_common(inv, common);
  inv->add_option("--grid", grid_n, "grid points per axis");

  LawRequest law;
  auto* bl = app.add_subcommand("boundary-law", "Closed-form boundary law: values, conditions, residuals");
  add_common(bl, common);
  bl->add_option("--kind", law.kind, "left, right, symmetric (rho = 1), both, uniform");
  bl->add_option("--rho", law.rho, "rho for --kind both");
  bl->add_option("--imax", law.imax, "report z_i for |i| <= imax");

  MeasureRequest measure;
  std::string spins = "0";
  std::string coords = "simplified";
  auto* ms = app.add_subcommand("measure", "Log cylinder measure on a finite Cayley subtree");
  add_common(ms, common);
  ms->add_option("--kind", measure.law.kind, "boundary-law kind");
  ms->add_option("--rho", measure.law.rho, "rho for --kind both");
  ms->add_option("--depth", measure.depth, "subtree depth (>= 1)");
  ms->add_option("--spins", spins, "comma-separated spins in breadth-first order, or one value for all");
  ms->add_option("--coords", coords, "simplified | original")->check(CLI::IsMember({"simplified", "original"}));

  std::string plot_in;
  auto* plot = app.add_subcommand("plot-data", "Scale a trajectory CSV into a unit viewport");
  add_common(plot, common);
  plot->add_option("--in", plot_in, "trajectory CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    merge_config(common);
    if (*preset) return run_preset_cmd(preset_name, common);
    if (*iterate) return run_iterate(common);
    if (*sweep_cmd) {
      SweepSpec s;
      s.k = order(common);
      s.tau = tau_of(common);
      s.field = field_of(common, sosmap::theta_from_tau(s.tau));
      s.y0 = parse_range(y0_range, "--y0-range");
      s.x1 = parse_range(x1_range, "--x1-range");
      s.n_steps = common.steps.value_or(1000);
      s.workers = workers;
      std::ostringstream csv;
      write_sweep_csv(csv, sosmap::lab::sweep(s), s.n_steps);
      emit(common, csv.str());
      return kExitOk;
    }
    if (*spectral) {
      emit(common, json_text(spectral_json(params_of(common))));
      return kExitOk;
    }
    if (*inv) {
      emit(common, json_text(invariant_set_json(params_of(common), grid_n)));
      return kExitOk;
    }
    if (*bl || *ms) {
      LawRequest& req = *bl ? law : measure.law;
      req.k = order(common);
      if (common.theta) {
        req.theta = *common.theta;
      } else if (common.tau) {
        req.theta = sosmap::theta_from_tau(*common.tau);
      } else if (auto t = cfg_get(common, "h.theta")) {
        req.theta = cfg_number(*t, "h.theta");
      }
      if (common.field) {
        req.field_spec = *common.field;
      } else if (common.h) {
        req.field_spec = *common.h;
      }
      if (common.trunc) req.trunc_n = *common.trunc;
      if (*bl) {
        emit(common, json_text(boundary_law_report(law)));
        return kExitOk;
      }
      measure.spins.clear();
      std::istringstream is(spins);
      for (std::string tok; std::getline(is, tok, ',');) {
        try {
          measure.spins.push_back(std::stol(tok));
        } catch (const std::exception&) {
          throw Error(ErrorCode::InvalidArgument, "bad spin '" + tok + "'");
        }
      }
      measure.coords = coords == "original" ? sosmap::LawCoordinates::Original : sosmap::LawCoordinates::Simplified;
      emit(common, json_text(measure_report(measure)));
      return kExitOk;
    }
    if (*plot) {
      std::ifstream in(plot_in);
      if (!in) throw Error(ErrorCode::IoError, "cannot open '" + plot_in + "'");
      std::ostringstream os;
      write_plot_data(os, plot_points(read_trajectory_csv(in)));
      emit(common, os.str());
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitInvalidInput;
}
