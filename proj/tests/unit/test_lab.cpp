#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sosmap/error.hpp"
#include "sosmap/lab.hpp"

using namespace sosmap;
using namespace sosmap::lab;

TEST_CASE("preset table") {
  REQUIRE(presets().size() == 13);
  const auto& f2 = find_preset("fig2");
  CHECK(f2.tau == 2.6);
  CHECK(f2.y0 == 0.8);
  CHECK(f2.x1 == 1.713);
  const auto& f6 = find_preset("fig6");
  CHECK(f6.tau == 4.5);
  CHECK(f6.n_steps == 10000);
  const auto& f13 = find_preset("fig13");
  CHECK(f13.h == 1.05);
  CHECK(f13.expected.first_nonpositive == 93u);
  CHECK_THROWS_AS(find_preset("fig14"), Error);
}

TEST_CASE("preset report echoes the parameters") {
  const auto run = run_preset(find_preset("fig12"));
  CHECK(run.ok());
  const auto& r = run.report;
  CHECK(r["params"]["tau"].get<double>() == 3.0);
  CHECK(r["params"]["h"].get<double>() == 0.5);
  CHECK(r["params"]["y0"].get<double>() == 1.2);
  CHECK(r["params"]["x1"].get<double>() == 0.6);
  CHECK(r["params"]["n_steps"].get<std::size_t>() == 200);
  CHECK(r["trajectory"]["first_nonpositive"].is_null());

  const auto f11 = run_preset(find_preset("fig11"));
  CHECK(f11.report["spectral"]["regime"] == "DoubleMinusOne");
  CHECK(f11.trajectory.points.size() <= 501);
}

TEST_CASE("fig1 preset writes 3001 rows") {
  const auto run = run_preset(find_preset("fig1"));
  std::ostringstream os;
  write_trajectory_csv(os, run.trajectory);
  const std::string s = os.str();
  CHECK(std::count(s.begin(), s.end(), '\n') == 3002);
}

TEST_CASE("config parsing") {
  std::istringstream is("# experiment\nk = 3\ntau=4\n h.kind = \"table\" \nh.table = 0=1,1=2\nh.default = 1.5\n\n");
  const auto cfg = parse_config(is);
  CHECK(cfg.at("k") == "3");
  CHECK(cfg.at("tau") == "4");
  CHECK(cfg.at("h.kind") == "table");
  const auto f = field_from_config(cfg);
  REQUIRE(f);
  CHECK(f->value(1) == 2.0);
  CHECK(f->value(5) == 1.5);

  std::istringstream bad("k 3\n");
  CHECK_THROWS_AS(parse_config(bad), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/sosmap.cfg"), Error);
}

TEST_CASE("field specs") {
  CHECK(parse_field_spec("constant:1.05").value(3) == 1.05);
  CHECK(parse_field_spec("0.5").value(3) == 0.5);
  CHECK(parse_field_spec("geometric", 0.5).value(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(parse_field_spec("geometric:0.5").value(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(parse_field_spec("family:2,0.5,1").value(2) == doctest::Approx(0.5).epsilon(1e-14));
  const auto t = parse_field_spec("table:0=1,-1=0.5;default=2");
  CHECK(t.value(-1) == 0.5);
  CHECK(t.value(9) == 2.0);
  CHECK_THROWS_AS(parse_field_spec("geometric"), Error);
  CHECK_THROWS_AS(parse_field_spec("wave:1"), Error);
  CHECK_THROWS_AS(parse_field_spec("constant:x"), Error);
}

TEST_CASE("sweep grid order and admissibility") {
  SweepSpec s;
  s.tau = 3.0;
  s.y0 = {0.5, 2.5, 5};
  s.x1 = {0.5, 2.5, 4};
  s.n_steps = 200;
  const auto serial = sweep(s);
  s.workers = 4;
  const auto parallel = sweep(s);
  REQUIRE(serial.size() == 20);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].y0 == s.y0.at(i / 4));
    CHECK(serial[i].x1 == s.x1.at(i % 4));
    CHECK(serial[i].admissible == (serial[i].y0 + serial[i].x1 < 3.0));
    CHECK(serial[i].horizon == parallel[i].horizon);
    CHECK(serial[i].max_abs == parallel[i].max_abs);
    if (!serial[i].admissible) CHECK_FALSE(serial[i].horizon);
  }
  std::ostringstream a, b;
  write_sweep_csv(a, serial, 200);
  write_sweep_csv(b, parallel, 200);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("y0,x1,admissible,horizon,max_abs\n", 0) == 0);
}

TEST_CASE("single-cell sweeps") {
  SweepSpec s;
  s.tau = 3.0;
  s.field = Field::constant(0.5);
  s.y0 = {1.2, 1.2, 1};
  s.x1 = {0.6, 0.6, 1};
  s.n_steps = 200;
  const auto cells = sweep(s);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].admissible);
  CHECK_FALSE(cells[0].horizon);
  std::ostringstream os;
  write_sweep_csv(os, cells, 200);
  CHECK(os.str().find(",>=200,") != std::string::npos);
}

TEST_CASE("spectral report") {
  const auto j = spectral_json(make_params(2, 3.0, Field::constant(1.0), 0.5, 1.48589));
  const auto& p1 = j["fixed_points"][1];
  CHECK(p1["eigenvalues"][0]["re"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(p1["eigenvalues"][0]["im"].get<double>()) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(p1["eigenvalues"][0]["abs"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["regime"] == "ComplexUnitModulus");

  const auto s = spectral_json(make_params(2, 6.5, Field::constant(1.0), 1.2, 1.1));
  CHECK(s["regime"] == "RealSaddle");
}

TEST_CASE("boundary-law report") {
  LawRequest r;
  r.kind = "symmetric";
  const auto j = boundary_law_report(r);
  CHECK(j["valid"].get<bool>());
  bool saw_tau = false;
  for (const auto& c : j["conditions"]) {
    if (c["name"] == "rho_consistency") {
      saw_tau = true;
      CHECK(c["residual"].get<double>() == 0.0);
    }
  }
  CHECK(saw_tau);
  CHECK(j["normalisability"]["status"] == "Diverges");

  LawRequest left_law;
  const auto k = boundary_law_report(left_law);
  CHECK(k["valid"].get<bool>());
  CHECK(k["conditions"][0]["name"] == "left_divergent");
  CHECK(k["conditions"][0]["status"] == "Diverges");
  CHECK(k["conditions"][1]["status"] == "ConvergesTo");

  LawRequest hot;
  hot.kind = "right";
  hot.theta = 1.5;
  const auto h = boundary_law_report(hot);
  CHECK_FALSE(h["valid"].get<bool>());
  CHECK(h["verdict"] == "not a valid solution in this regime");
  CHECK(h["conditions"][1]["name"] == "right_divergent");
  CHECK(h["conditions"][1]["status"] == "ConvergesTo");

  LawRequest bad;
  bad.kind = "s9";
  CHECK_THROWS_AS(boundary_law_report(bad), Error);
}

TEST_CASE("plot data") {
  const std::vector<State> one{{2.0, 3.0}};
  const auto p = plot_points(one);
  REQUIRE(p.size() == 1);
  CHECK(p[0].u == 0.5);
  CHECK(p[0].v == 0.5);
  CHECK_THROWS_AS(plot_points({}), Error);

  const auto run = run_preset(find_preset("fig1"));
  const auto pts = plot_points(run.trajectory.points);
  CHECK(pts.size() == 3001);
  for (const auto& q : pts) {
    CHECK(q.u >= 0.0);
    CHECK(q.u <= 1.0);
    CHECK(q.v >= 0.0);
    CHECK(q.v <= 1.0);
  }
  // The fixed point sits inside the bounding box of the orbit.
  const double xs = 1.0 / 1.01411;
  double lo = 1e9, hi = -1e9;
  for (const auto& s : run.trajectory.points) {
    lo = std::min(lo, s.x);
    hi = std::max(hi, s.x);
  }
  CHECK(lo < xs);
  CHECK(xs < hi);

  std::istringstream empty("step,x,y\n");
  CHECK_THROWS_AS(read_trajectory_csv(empty), Error);
  std::ostringstream a, b;
  write_plot_data(a, pts);
  write_plot_data(b, plot_points(run.trajectory.points));
  CHECK(a.str() == b.str());
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::IoError) == kExitIo);
  CHECK(exit_code_for(ErrorCode::InvalidTau) == kExitInvalidInput);
  CHECK(exit_code_for(ErrorCode::ParseError) == kExitInvalidInput);
}
