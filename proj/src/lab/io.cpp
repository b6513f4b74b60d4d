#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sosmap/error.hpp"
#include "sosmap/geometry.hpp"
#include "sosmap/lab.hpp"

namespace sosmap::lab {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view s, ErrorCode code, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(code, "cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

long parse_integer(std::string_view s, ErrorCode code, std::string_view what) {
  s = trim(s);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(code, "cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

Json optional_step(const std::optional<std::size_t>& s) { return s ? Json(*s) : Json(nullptr); }

Json complex_json(std::complex<double> z) {
  return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}};
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  return code == ErrorCode::IoError ? kExitIo : kExitInvalidInput;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << "step,x,y\n";
  for (std::size_t m = 0; m < t.points.size(); ++m) {
    os << m << ',' << format_double(t.points[m].x) << ',' << format_double(t.points[m].y) << '\n';
  }
}

std::vector<State> read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "step,x,y") {
    throw Error(ErrorCode::ParseError, "trajectory CSV must start with the header 'step,x,y'");
  }
  std::vector<State> pts;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 3) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 3 columns");
    }
    parse_integer(cols[0], ErrorCode::ParseError, "step");
    pts.push_back({parse_number(cols[1], ErrorCode::ParseError, "x"),
                   parse_number(cols[2], ErrorCode::ParseError, "y")});
  }
  if (pts.empty()) throw Error(ErrorCode::ParseError, "trajectory CSV has no rows");
  return pts;
}

Json params_json(const ModelParams& p) {
  return {{"k", p.k()},          {"tau", p.tau()}, {"theta", p.theta()}, {"field", p.field().describe()},
          {"y0", p.y0()},        {"x1", p.x1()},   {"coeff0", p.coeff0()}};
}

Json trajectory_summary_json(const Trajectory& t) {
  return {{"points", t.points.size()},
          {"first_nonpositive", optional_step(t.first_nonpositive)},
          {"escaped_at", optional_step(t.escaped_at)},
          {"max_abs", t.max_abs}};
}

Json spectral_json(const ModelParams& p) {
  Json out;
  out["params"] = params_json(p);
  const auto thr = regime_thresholds(p.k());
  out["thresholds"] = {{"tau_ns_upper", thr.tau_ns_upper}, {"tau_strong", thr.tau_strong}};
  if (!p.constant_weight()) {
    out["fixed_points"] = nullptr;
    out["note"] = "field depends on n; the map has no fixed points in the autonomous sense";
    return out;
  }
  const auto [p0, p1] = fixed_points(p);
  Json fps = Json::array();
  for (const FixedPoint& fp : {p0, p1}) {
    const SpectralReport r = classify(p, fp);
    Json e = Json::array();
    for (const auto& z : r.eigenvalues) e.push_back(complex_json(z));
    Json res = Json::array();
    for (Resonance s : r.resonances) res.push_back(std::string(to_string(s)));
    fps.push_back({{"label", std::string(to_string(fp.label))},
                   {"x", fp.location.x},
                   {"y", fp.location.y},
                   {"residual", fp.residual},
                   {"eigenvalues", e},
                   {"type", std::string(to_string(r.type_tag))},
                   {"regime", r.regime ? Json(std::string(to_string(*r.regime))) : Json(nullptr)},
                   {"resonances", res},
                   {"rotation_angle", r.rotation_angle ? Json(*r.rotation_angle) : Json(nullptr)},
                   {"complement_angle", r.complement_angle ? Json(*r.complement_angle) : Json(nullptr)}});
  }
  out["fixed_points"] = fps;
  out["regime"] = fps[1]["regime"];
  return out;
}

Json invariant_set_json(const ModelParams& p, std::size_t grid_n) {
  const InvariantSetSpec s = invariant_set(p);
  Json out;
  out["params"] = params_json(p);
  out["a"] = s.a;
  out["x_hat"] = s.x_hat;
  out["x_hat0"] = s.x_hat0;
  out["x_star_max"] = s.x_star_max;
  out["tau_upper"] = s.tau_upper;
  out["condition_ok"] = s.condition_ok;
  if (s.condition_ok && grid_n >= 2) {
    const auto chk = verify_invariance(s, p, grid_n);
    out["grid_n"] = grid_n;
    out["samples"] = chk.samples;
    out["violations"] = chk.violations;
    out["worst_margin"] = chk.worst_margin;
    out["worst_point"] = {chk.worst_point.x, chk.worst_point.y};
  }
  return out;
}

Json verdict_json(const SeriesVerdict& v) {
  return {{"status", std::string(to_string(v.status))},
          {"value", v.converges() ? Json(v.value) : Json(nullptr)},
          {"terms_used", v.terms_used},
          {"method", std::string(to_string(v.method))}};
}

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(s.substr(0, eq));
    auto value = trim(s.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": empty key");
    out[std::string(key)] = std::string(value);
  }
  return out;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
  return parse_config(in);
}

namespace {

Field parse_table(std::string_view body) {
  std::map<long, double> values;
  std::optional<double> def;
  for (auto group : split(body, ';')) {
    for (auto item : split(group, ',')) {
      if (item.empty()) continue;
      const auto sep = item.find_first_of("=:");
      if (sep == std::string_view::npos) throw Error(ErrorCode::InvalidFieldSpec, "table entry needs j=h");
      const auto key = trim(item.substr(0, sep));
      const double v = parse_number(item.substr(sep + 1), ErrorCode::InvalidFieldSpec, "table value");
      if (key == "default") {
        def = v;
      } else {
        values[parse_integer(key, ErrorCode::InvalidFieldSpec, "table index")] = v;
      }
    }
  }
  if (!def) throw Error(ErrorCode::InvalidFieldSpec, "table needs default=<h>");
  return Field::table(std::move(values), *def);
}

}  // namespace

Field parse_field_spec(std::string_view spec, std::optional<double> theta) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  const auto kind = spec.substr(0, colon);
  const auto body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (kind == "constant") return Field::constant(parse_number(body, ErrorCode::InvalidFieldSpec, "h"));
  if (kind == "geometric") {
    if (colon != std::string_view::npos) {
      return Field::geometric_normalized(parse_number(body, ErrorCode::InvalidFieldSpec, "theta"));
    }
    if (!theta) throw Error(ErrorCode::InvalidFieldSpec, "bare 'geometric' field needs theta");
    return Field::geometric_normalized(*theta);
  }
  if (kind == "family") {
    const auto parts = split(body, ',');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidFieldSpec, "family needs c,base,alpha");
    return Field::geometric_family(parse_number(parts[0], ErrorCode::InvalidFieldSpec, "c"),
                                   parse_number(parts[1], ErrorCode::InvalidFieldSpec, "base"),
                                   parse_number(parts[2], ErrorCode::InvalidFieldSpec, "alpha"));
  }
  if (kind == "table") return parse_table(body);
  // A bare number is a constant field.
  if (colon == std::string_view::npos) {
    return Field::constant(parse_number(spec, ErrorCode::InvalidFieldSpec, "field"));
  }
  throw Error(ErrorCode::InvalidFieldSpec, "unknown field kind '" + std::string(kind) + "'");
}

std::optional<Field> field_from_config(const std::map<std::string, std::string>& cfg) {
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = cfg.find(key);
    if (it == cfg.end()) return std::nullopt;
    return it->second;
  };
  auto num = [&](const char* key) {
    const auto v = get(key);
    if (!v) throw Error(ErrorCode::InvalidFieldSpec, std::string("missing config key ") + key);
    return parse_number(*v, ErrorCode::InvalidFieldSpec, key);
  };
  const auto kind = get("h.kind");
  if (!kind) {
    if (const auto h = get("h")) return parse_field_spec(*h);
    return std::nullopt;
  }
  if (*kind == "constant") return Field::constant(get("h.value") ? num("h.value") : num("h"));
  if (*kind == "geometric") return Field::geometric_normalized(num("h.theta"));
  if (*kind == "family") return Field::geometric_family(num("h.c"), num("h.base"), num("h.alpha"));
  if (*kind == "table") {
    std::string body = get("h.table").value_or("");
    if (const auto d = get("h.default")) body += ";default=" + *d;
    return parse_table(body);
  }
  throw Error(ErrorCode::InvalidFieldSpec, "unknown h.kind '" + *kind + "'");
}

std::vector<PlotPoint> plot_points(const std::vector<State>& points) {
  if (points.empty()) throw Error(ErrorCode::ParseError, "no points to scale");
  double xmin = points[0].x, xmax = points[0].x, ymin = points[0].y, ymax = points[0].y;
  for (const auto& s : points) {
    xmin = std::min(xmin, s.x);
    xmax = std::max(xmax, s.x);
    ymin = std::min(ymin, s.y);
    ymax = std::max(ymax, s.y);
  }
  const double span = std::max(xmax - xmin, ymax - ymin);
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  std::vector<PlotPoint> out;
  out.reserve(points.size());
  for (const auto& s : points) {
    if (span > 0.0) {
      out.push_back({0.5 + (s.x - cx) / span, 0.5 + (s.y - cy) / span});
    } else {
      out.push_back({0.5, 0.5});
    }
  }
  return out;
}

void write_plot_data(std::ostream& os, const std::vector<PlotPoint>& pts) {
  os << "u,v\n";
  char buf[64];
  for (const auto& p : pts) {
    auto [e1, ec1] = std::to_chars(buf, buf + sizeof buf, p.u, std::chars_format::fixed, 9);
    *e1++ = ',';
    auto [e2, ec2] = std::to_chars(e1, buf + sizeof buf, p.v, std::chars_format::fixed, 9);
    os << std::string_view(buf, static_cast<std::size_t>(e2 - buf)) << '\n';
  }
}

}  // namespace sosmap::lab
