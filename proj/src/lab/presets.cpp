#include <algorithm>
#include <sstream>

#include "sosmap/error.hpp"
#include "sosmap/lab.hpp"

namespace sosmap::lab {

namespace {

Preset positive(std::string name, int k, double h, double tau, double y0, double x1, std::size_t n) {
  Preset p{std::move(name), k, h, tau, y0, x1, n, {}};
  p.expected.positive = true;
  return p;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> out;
  // Zero external field.
  out.push_back(positive("fig1", 2, 1.0, 3.0, 0.5, 1.48589, 3000));
  out.push_back(positive("fig2", 2, 1.0, 2.6, 0.8, 1.713, 10000));
  out.push_back(positive("fig3", 2, 1.0, 4.0, 1.5, 1.0, 10000));
  out.push_back(positive("fig4", 2, 1.0, 4.0, 1.5, 1.02, 10000));
  out.push_back(positive("fig5", 2, 1.0, 4.0, 1.5, 0.98, 10000));
  out.push_back(positive("fig6", 2, 1.0, 4.5, 1.2, 1.3, 10000));
  out.push_back(positive("fig7", 2, 1.0, 4.5, 1.2, 1.3, 500));
  out.push_back(positive("fig8", 2, 1.0, 4.5, 1.2, 1.3, 25));
  out.push_back(positive("fig9", 2, 1.0, 4.5, 1.2, 1.2838, 10000));
  out.push_back(positive("fig10", 2, 1.0, 5.5, 1.2, 1.1, 100));

  Preset fig11 = positive("fig11", 3, 1.0, 4.0, 1.2, 0.8, 500);
  fig11.expected.regime = Regime::DoubleMinusOne;
  out.push_back(fig11);

  // Nonzero field.
  out.push_back(positive("fig12", 2, 0.5, 3.0, 1.2, 0.6, 200));

  Preset fig13{"fig13", 2, 1.05, 3.0, 1.2, 0.6, 95, {}};
  fig13.expected.first_nonpositive = 93;
  fig13.expected.first_nonpositive_tolerance = 2;
  out.push_back(fig13);
  return out;
}

std::string describe_step(const std::optional<std::size_t>& s) {
  return s ? std::to_string(*s) : std::string("none");
}

}  // namespace

ModelParams Preset::params() const { return make_params(k, tau, Field::constant(h), y0, x1); }

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset& find_preset(std::string_view name) {
  const auto& all = presets();
  auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  if (it == all.end()) throw Error(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "'");
  return *it;
}

bool PresetRun::ok() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.ok; });
}

PresetRun run_preset(const Preset& preset) {
  const ModelParams p = preset.params();
  PresetRun run;
  run.trajectory = iterate(p, preset.n_steps);
  const Trajectory& t = run.trajectory;

  const auto& e = preset.expected;
  if (e.positive) {
    run.assertions.push_back({"positive", "first_nonpositive=none, escaped_at=none",
                              "first_nonpositive=" + describe_step(t.first_nonpositive) +
                                  ", escaped_at=" + describe_step(t.escaped_at),
                              !t.first_nonpositive && !t.escaped_at});
  }
  if (e.first_nonpositive) {
    const std::size_t lo = *e.first_nonpositive - e.first_nonpositive_tolerance;
    const std::size_t hi = *e.first_nonpositive + e.first_nonpositive_tolerance;
    const bool ok = t.first_nonpositive && *t.first_nonpositive >= lo && *t.first_nonpositive <= hi;
    run.assertions.push_back({"first_nonpositive",
                              std::to_string(*e.first_nonpositive) + " +- " +
                                  std::to_string(e.first_nonpositive_tolerance),
                              describe_step(t.first_nonpositive), ok});
  }
  std::optional<Regime> regime;
  if (p.constant_weight()) regime = classify(p, fixed_points(p).second).regime;
  if (e.regime) {
    run.assertions.push_back({"regime", std::string(to_string(*e.regime)),
                              regime ? std::string(to_string(*regime)) : "n/a", regime == e.regime});
  }

  Json r;
  r["preset"] = preset.name;
  r["params"] = {{"k", preset.k},        {"tau", preset.tau}, {"theta", p.theta()},
                 {"h", preset.h},        {"x0", 1.0},         {"y0", preset.y0},
                 {"x1", preset.x1},      {"n_steps", preset.n_steps}};
  r["coeff0"] = p.coeff0();
  r["trajectory"] = trajectory_summary_json(t);
  r["spectral"] = spectral_json(p);
  Json checks = Json::array();
  for (const auto& a : run.assertions) {
    checks.push_back({{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"ok", a.ok}});
  }
  r["assertions"] = checks;
  r["ok"] = run.ok();
  run.report = std::move(r);
  return run;
}

}  // namespace sosmap::lab
