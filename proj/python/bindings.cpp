#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sosmap/boundary_law.hpp"
#include "sosmap/error.hpp"
#include "sosmap/geometry.hpp"
#include "sosmap/lab.hpp"
#include "sosmap/map_core.hpp"
#include "sosmap/series.hpp"
#include "sosmap/spectral.hpp"

namespace py = pybind11;
using namespace sosmap;

namespace {

std::string str(std::string_view v) { return std::string(v); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the sosmap package";
#ifdef VERSION_INFO
#define SOSMAP_STR2(x) #x
#define SOSMAP_STR(x) SOSMAP_STR2(x)
  m.attr("__version__") = SOSMAP_STR(VERSION_INFO);
#endif

  py::register_exception<Error>(m, "SosmapError", PyExc_ValueError);

  m.attr("ESCAPE_BOUND") = kEscapeBound;

  py::enum_<Normalization>(m, "Normalization")
      .value("Probability", Normalization::Probability)
      .value("UnitAtZero", Normalization::UnitAtZero)
      .value("Raw", Normalization::Raw);
  py::enum_<Side>(m, "Side").value("Left", Side::Left).value("Right", Side::Right);

  py::class_<Field>(m, "Field")
      .def_static("constant", &Field::constant, py::arg("h"))
      .def_static("geometric_normalized", &Field::geometric_normalized, py::arg("theta"))
      .def_static("geometric_family", &Field::geometric_family, py::arg("c"), py::arg("base"), py::arg("alpha"))
      .def_static("table", &Field::table, py::arg("values"), py::arg("default_value"))
      .def_static(
          "parse", [](const std::string& spec, std::optional<double> theta) { return lab::parse_field_spec(spec, theta); },
          py::arg("spec"), py::arg("theta") = py::none())
      .def("normalized", &Field::normalized)
      .def_property_readonly("normalization", &Field::normalization)
      .def("raw", &Field::raw)
      .def("value", &Field::value)
      .def("log_value", &Field::log_value)
      .def("__call__", &Field::value)
      .def("is_symmetric", &Field::is_symmetric)
      .def("step_constant", &Field::step_constant)
      .def("__repr__", [](const Field& f) { return "Field(" + f.describe() + ")"; });

  py::class_<State>(m, "State")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return State{x, y}; }), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &State::x)
      .def_readwrite("y", &State::y)
      .def("__eq__", [](const State& a, const State& b) { return a == b; })
      .def("__iter__", [](const State& s) { return py::iter(py::make_tuple(s.x, s.y)); })
      .def("__repr__", [](const State& s) {
        std::ostringstream os;
        os.precision(17);
        os << "State(" << s.x << ", " << s.y << ")";
        return os.str();
      });

  py::class_<ModelParams>(m, "ModelParams")
      .def_property_readonly("k", &ModelParams::k)
      .def_property_readonly("tau", &ModelParams::tau)
      .def_property_readonly("theta", &ModelParams::theta)
      .def_property_readonly("field", &ModelParams::field)
      .def_property_readonly("y0", &ModelParams::y0)
      .def_property_readonly("x1", &ModelParams::x1)
      .def_property_readonly("coeff0", &ModelParams::coeff0)
      .def("weight", &ModelParams::weight);

  m.def("make_params", &make_params, py::arg("k"), py::arg("tau"), py::arg("field"), py::arg("y0"), py::arg("x1"));
  m.def("theta_from_tau", &theta_from_tau);
  m.def("tau_from_theta", &tau_from_theta);
  m.def("step_forward", &step_forward, py::arg("params"), py::arg("state"), py::arg("n") = 1);
  m.def("step_backward", &step_backward, py::arg("params"), py::arg("state"), py::arg("n") = 1);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("points", &Trajectory::points)
      .def_readonly("first_nonpositive", &Trajectory::first_nonpositive)
      .def_readonly("escaped_at", &Trajectory::escaped_at)
      .def_readonly("max_abs", &Trajectory::max_abs)
      .def("xs", [](const Trajectory& t) {
        std::vector<double> v;
        v.reserve(t.points.size());
        for (const auto& p : t.points) v.push_back(p.x);
        return v;
      })
      .def("__len__", [](const Trajectory& t) { return t.points.size(); });

  m.def("iterate", &iterate, py::arg("params"), py::arg("n_steps"), py::call_guard<py::gil_scoped_release>());
  m.def("positivity_horizon", &positivity_horizon, py::arg("params"), py::arg("n_max"));

  py::class_<FixedPoint>(m, "FixedPoint")
      .def_readonly("location", &FixedPoint::location)
      .def_property_readonly("label", [](const FixedPoint& f) { return str(to_string(f.label)); })
      .def_readonly("residual", &FixedPoint::residual);

  py::class_<SpectralReport>(m, "SpectralReport")
      .def_readonly("fixed_point", &SpectralReport::fixed_point)
      .def_readonly("eigenvalues", &SpectralReport::eigenvalues)
      .def_property_readonly("type_tag", [](const SpectralReport& r) { return str(to_string(r.type_tag)); })
      .def_property_readonly("regime",
                             [](const SpectralReport& r) -> std::optional<std::string> {
                               if (!r.regime) return std::nullopt;
                               return str(to_string(*r.regime));
                             })
      .def_property_readonly("resonances",
                             [](const SpectralReport& r) {
                               std::vector<std::string> v;
                               for (auto x : r.resonances) v.push_back(str(to_string(x)));
                               return v;
                             })
      .def_readonly("rotation_angle", &SpectralReport::rotation_angle)
      .def_readonly("complement_angle", &SpectralReport::complement_angle);

  m.def("fixed_points", &fixed_points);
  m.def("classify", &classify);
  m.def("jacobian", &jacobian);

  py::class_<InvariantSetSpec>(m, "InvariantSetSpec")
      .def_readonly("a", &InvariantSetSpec::a)
      .def_readonly("x_hat", &InvariantSetSpec::x_hat)
      .def_readonly("x_hat0", &InvariantSetSpec::x_hat0)
      .def_readonly("x_star_max", &InvariantSetSpec::x_star_max)
      .def_readonly("tau_upper", &InvariantSetSpec::tau_upper)
      .def_readonly("condition_ok", &InvariantSetSpec::condition_ok)
      .def("psi", &InvariantSetSpec::psi);

  py::class_<InvarianceCheck>(m, "InvarianceCheck")
      .def_readonly("samples", &InvarianceCheck::samples)
      .def_readonly("violations", &InvarianceCheck::violations)
      .def_readonly("worst_margin", &InvarianceCheck::worst_margin)
      .def_readonly("worst_point", &InvarianceCheck::worst_point);

  m.def("invariant_set", &invariant_set);
  m.def("contains", &contains);
  m.def("verify_invariance", &verify_invariance, py::arg("spec"), py::arg("params"), py::arg("grid_n") = 100);
  m.def("conjugacy_residual",
        [](const ModelParams& p, const std::vector<State>& s) { return conjugacy_residual(p, s); });

  py::class_<SeriesVerdict>(m, "SeriesVerdict")
      .def_property_readonly("status", [](const SeriesVerdict& v) { return str(to_string(v.status)); })
      .def_readonly("value", &SeriesVerdict::value)
      .def_readonly("terms_used", &SeriesVerdict::terms_used)
      .def_property_readonly("method", [](const SeriesVerdict& v) { return str(to_string(v.method)); });
  m.def("tail_series_verdict", &tail_series_verdict, py::arg("field"), py::arg("theta"), py::arg("exponent"),
        py::arg("side"));

  py::class_<BoundaryLaw>(m, "BoundaryLaw")
      .def_static("left_infinite", &BoundaryLaw::left_infinite)
      .def_static("right_infinite", &BoundaryLaw::right_infinite)
      .def_static("both_infinite", &BoundaryLaw::both_infinite)
      .def_property_readonly("kind", [](const BoundaryLaw& l) { return str(to_string(l.kind())); })
      .def_property_readonly("theta", &BoundaryLaw::theta)
      .def_property_readonly("k", &BoundaryLaw::k)
      .def_property_readonly("rho", &BoundaryLaw::rho)
      .def("z", &BoundaryLaw::z)
      .def("log_z", &BoundaryLaw::log_z);

  m.def("rho_residual", &rho_residual, py::arg("field"), py::arg("theta"), py::arg("k"), py::arg("rho"),
        py::arg("trunc_n"));
  m.def("transfer_q", &transfer_q, py::arg("k"), py::arg("theta"), py::arg("field"), py::arg("i"), py::arg("j"));
  m.def("solution_residual",
        [](const BoundaryLaw& law, long i, std::size_t n) { return verify_solution_ratio(law, i, n).residual; },
        py::arg("law"), py::arg("i"), py::arg("trunc_n"));
  m.def(
      "cylinder_log_measure",
      [](const BoundaryLaw& law, int depth, const std::vector<long>& config) {
        return cylinder_log_measure(CayleySubtree(law.k(), depth), law, config);
      },
      py::arg("law"), py::arg("depth"), py::arg("config"));
  m.def("subtree_size", &CayleySubtree::expected_vertex_count, py::arg("k"), py::arg("depth"));

  m.def("preset_names", [] {
    std::vector<std::string> v;
    for (const auto& p : lab::presets()) v.push_back(p.name);
    return v;
  });
  // JSON reports come back as text; the Python layer decodes them.
  m.def("_run_preset", [](const std::string& name) { return lab::run_preset(lab::find_preset(name)).report.dump(); });
  m.def("_spectral_json", [](const ModelParams& p) { return lab::spectral_json(p).dump(); });
  m.def("_boundary_law_json", [](const std::string& kind, double theta, int k, const std::string& field, double rho,
                                 std::size_t trunc_n, long imax) {
    lab::LawRequest r{kind, theta, k, field, rho, trunc_n, imax};
    return lab::boundary_law_report(r).dump();
  });
  m.def(
      "_sweep_csv",
      [](int k, double tau, const Field& field, std::tuple<double, double, std::size_t> y0,
         std::tuple<double, double, std::size_t> x1, std::size_t n_steps, unsigned workers) {
        lab::SweepSpec s;
        s.k = k;
        s.tau = tau;
        s.field = field;
        s.y0 = {std::get<0>(y0), std::get<1>(y0), std::get<2>(y0)};
        s.x1 = {std::get<0>(x1), std::get<1>(x1), std::get<2>(x1)};
        s.n_steps = n_steps;
        s.workers = workers;
        std::vector<lab::SweepCell> cells;
        {
          py::gil_scoped_release release;
          cells = lab::sweep(s);
        }
        std::ostringstream os;
        lab::write_sweep_csv(os, cells, n_steps);
        return os.str();
      });
}
