#include <algorithm>
#include <cmath>

#include "sosmap/error.hpp"
#include "sosmap/lab.hpp"

namespace sosmap::lab {

namespace {

// Boundary laws are stated for probability fields; fall back to raw weights
// for fields that cannot be normalised (the verdicts only see ratios).
Field law_field(const LawRequest& req) {
  // For theta > 1 the geometric probability field decays like theta^(-(k+2)|j|).
  if (req.field_spec == "geometric" && req.theta > 1.0) {
    const double q = std::pow(req.theta, -(req.k + 2));
    return Field::geometric_family((1.0 - q) / (1.0 + q), req.theta, -(req.k + 2))
        .normalized(Normalization::Probability);
  }
  const Field f = parse_field_spec(req.field_spec, req.theta);
  try {
    return f.normalized(Normalization::Probability);
  } catch (const Error&) {
    return f;
  }
}

Json condition(std::string_view name, std::string_view series, const SeriesVerdict& v, SeriesStatus required) {
  Json c = verdict_json(v);
  c["name"] = std::string(name);
  c["series"] = std::string(series);
  c["required"] = std::string(to_string(required));
  c["ok"] = v.status == required;
  return c;
}

}  // namespace

BoundaryLaw make_law(const LawRequest& req) {
  Field f = law_field(req);
  const std::string& kind = req.kind;
  if (kind == "left") return BoundaryLaw::left_infinite(req.theta, req.k, std::move(f));
  if (kind == "right") return BoundaryLaw::right_infinite(req.theta, req.k, std::move(f));
  if (kind == "symmetric") return BoundaryLaw::both_infinite(req.theta, req.k, std::move(f), 1.0);
  if (kind == "both") return BoundaryLaw::both_infinite(req.theta, req.k, std::move(f), req.rho);
  if (kind == "uniform") {
    return BoundaryLaw::custom(req.theta, req.k, std::move(f), [](long) { return 0.0; });
  }
  throw Error(ErrorCode::InvalidArgument, "unknown boundary-law kind '" + kind + "'");
}

Json boundary_law_report(const LawRequest& req) {
  if (req.trunc_n < 10) throw Error(ErrorCode::InvalidArgument, "trunc_n must be at least 10");
  const BoundaryLaw law = make_law(req);
  const Field& f = law.field();
  const int k = req.k;
  const double theta = req.theta;

  Json out;
  out["kind"] = req.kind;
  out["law"] = std::string(to_string(law.kind()));
  out["theta"] = theta;
  out["k"] = k;
  out["field"] = f.describe();
  out["field_normalization"] = f.normalization() == Normalization::Probability ? "Probability" : "Raw";
  if (law.kind() == LawKind::BothInfinite) out["rho"] = law.rho();
  out["trunc_n"] = req.trunc_n;

  Json z = Json::array();
  for (long i = -req.imax; i <= req.imax; ++i) z.push_back({{"i", i}, {"z", law.z(i)}, {"log_z", law.log_z(i)}});
  out["z"] = z;

  Json conds = Json::array();
  bool valid = true;
  auto add = [&](Json c) {
    valid = valid && c["ok"].get<bool>();
    conds.push_back(std::move(c));
  };
  switch (law.kind()) {
    case LawKind::LeftInfinite:
      add(condition("left_divergent", "sum theta^(-j(k-1)) h(-j)", tail_series_verdict(f, theta, -(k - 1), Side::Left),
                    SeriesStatus::Diverges));
      add(condition("right_finite", "sum theta^(j(k+1)) h(j)", tail_series_verdict(f, theta, k + 1, Side::Right),
                    SeriesStatus::ConvergesTo));
      break;
    case LawKind::RightInfinite:
      add(condition("left_finite", "sum theta^(j(k+1)) h(-j)", tail_series_verdict(f, theta, k + 1, Side::Left),
                    SeriesStatus::ConvergesTo));
      add(condition("right_divergent", "sum theta^(-j(k-1)) h(j)", tail_series_verdict(f, theta, -(k - 1), Side::Right),
                    SeriesStatus::Diverges));
      break;
    case LawKind::BothInfinite: {
      const auto sc = split_divergence_check(f, theta, k);
      Json ls{{"name", "left_split"},
               {"holds", sc.left_split_holds},
               {"witness", sc.left_split_witness ? Json(*sc.left_split_witness) : Json(nullptr)},
               {"all", sc.left_split_all},
               {"ok", sc.left_split_holds}};
      Json rs{{"name", "right_split"},
               {"holds", sc.right_split_holds},
               {"witness", sc.right_split_witness ? Json(*sc.right_split_witness) : Json(nullptr)},
               {"all", sc.right_split_all},
               {"ok", sc.right_split_holds}};
      add(ls);
      add(rs);
      const double r = rho_residual(f, theta, k, law.rho(), req.trunc_n);
      add({{"name", "rho_consistency"},
           {"residual", r},
           {"tolerance", 1e-9 * std::max(1.0, law.rho())},
           {"ok", std::abs(r) <= 1e-9 * std::max(1.0, law.rho())}});
      break;
    }
    case LawKind::Custom:
      break;
  }
  out["conditions"] = conds;
  out["valid"] = valid;
  out["verdict"] = valid ? "solution" : "not a valid solution in this regime";

  Json checks = Json::array();
  double worst = 0.0;
  for (long i = -req.imax; i <= req.imax; ++i) {
    if (i == 0) continue;
    const auto c = verify_solution_ratio(law, i, req.trunc_n);
    const auto e = extrapolated_solution_ratio(law, i, req.trunc_n);
    worst = std::max(worst, c.residual);
    checks.push_back({{"i", i},
                      {"residual", c.residual},
                      {"ratio_estimate", c.ratio_estimate},
                      {"extrapolated_residual", e.residual}});
  }
  out["verification"] = checks;
  out["max_residual"] = worst;
  out["normalisability"] = verdict_json(normalisability_check(law, req.trunc_n));
  return out;
}

Json measure_report(const MeasureRequest& req) {
  const BoundaryLaw law = make_law(req.law);
  const CayleySubtree tree(req.law.k, req.depth);
  std::vector<long> config;
  if (req.spins.size() == 1) {
    config.assign(tree.vertex_count(), req.spins.front());
  } else {
    config = req.spins;
  }
  const double lm = cylinder_log_measure(tree, law, config, req.coords);
  Json out;
  out["law"] = std::string(to_string(law.kind()));
  out["theta"] = law.theta();
  out["k"] = law.k();
  out["field"] = law.field().describe();
  out["depth"] = req.depth;
  out["vertices"] = tree.vertex_count();
  out["coordinates"] = req.coords == LawCoordinates::Simplified ? "simplified" : "original";
  out["config"] = config;
  out["log_measure"] = lm;
  out["measure"] = std::exp(lm);
  return out;
}

}  // namespace sosmap::lab
