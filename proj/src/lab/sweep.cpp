#include <algorithm>
#include <ostream>
#include <thread>

#include "sosmap/error.hpp"
#include "sosmap/lab.hpp"

namespace sosmap::lab {

double Range::at(std::size_t i) const {
  if (count <= 1) return min;
  return min + (max - min) * (static_cast<double>(i) / static_cast<double>(count - 1));
}

namespace {

SweepCell evaluate(const SweepSpec& spec, double y0, double x1) {
  SweepCell cell{y0, x1, false, std::nullopt, 0.0};
  if (!(y0 > 0.0 && x1 > 0.0 && y0 + x1 < spec.tau)) return cell;
  cell.admissible = true;
  // Admissibility was checked above, so construction cannot fail here.
  const ModelParams p = make_params(spec.k, spec.tau, spec.field, y0, x1);
  const Trajectory t = iterate(p, spec.n_steps);
  cell.horizon = t.first_nonpositive ? t.first_nonpositive : t.escaped_at;
  cell.max_abs = t.max_abs;
  return cell;
}

}  // namespace

std::vector<SweepCell> sweep(const SweepSpec& spec) {
  if (spec.y0.count == 0 || spec.x1.count == 0) throw Error(ErrorCode::InvalidArgument, "sweep ranges are empty");
  // Validates k and tau once, up front.
  regime_thresholds(spec.k);
  if (!(spec.tau > 2.0)) throw Error(ErrorCode::InvalidTau, "tau must exceed 2");

  const std::size_t total = spec.y0.count * spec.x1.count;
  std::vector<SweepCell> cells(total);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t idx = begin; idx < total; idx += stride) {
      cells[idx] = evaluate(spec, spec.y0.at(idx / spec.x1.count), spec.x1.at(idx % spec.x1.count));
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(spec.workers, 1, total);
  if (workers == 1) {
    work(0, 1);
    return cells;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  return cells;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells, std::size_t n_steps) {
  os << "y0,x1,admissible,horizon,max_abs\n";
  for (const auto& c : cells) {
    os << format_double(c.y0) << ',' << format_double(c.x1) << ',' << (c.admissible ? 1 : 0) << ',';
    if (c.admissible) {
      os << (c.horizon ? std::to_string(*c.horizon) : ">=" + std::to_string(n_steps)) << ','
         << format_double(c.max_abs);
    } else {
      os << ',';
    }
    os << '\n';
  }
}

}  // namespace sosmap::lab
