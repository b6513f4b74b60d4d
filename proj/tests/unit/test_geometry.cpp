#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sosmap/error.hpp"
#include "sosmap/geometry.hpp"
#include "sosmap/spectral.hpp"

using namespace sosmap;

namespace {

ModelParams fig1() { return make_params(2, 3.0, Field::constant(1.0), 0.5, 1.48589); }

}  // namespace

TEST_CASE("invariant set scalars") {
  const auto s = invariant_set(fig1());
  CHECK(s.a == doctest::Approx(2.0 / 1.01411).epsilon(1e-14));
  CHECK(s.a == doctest::Approx(1.972173).epsilon(1e-6));
  CHECK(s.x_hat0 == doctest::Approx(3.0 / 1.01411).epsilon(1e-14));
  CHECK(s.x_hat0 == doctest::Approx(2.958259).epsilon(1e-6));
  CHECK(s.x_hat == doctest::Approx(1.479129).epsilon(1e-6));
  CHECK(s.x_star_max == doctest::Approx(2.0 / (2.0 * 1.01411)).epsilon(1e-14));
  CHECK(s.tau_upper == 5.0);
  CHECK(s.condition_ok);
  CHECK(s.a < s.x_hat0);

  const auto far = invariant_set(make_params(2, 5.5, Field::constant(1.0), 1.2, 1.1));
  CHECK_FALSE(far.condition_ok);
  CHECK_THROWS_AS(contains(far, {0.0, 0.0}), Error);

  const auto k3 = invariant_set(make_params(3, 3.0, Field::constant(1.0), 1.0, 1.0));
  CHECK(k3.tau_upper == doctest::Approx(1.0 + std::pow(3.0, 1.5) / 2.0).epsilon(1e-14));

  CHECK_THROWS_AS(invariant_set(make_params(2, 3.0, Field::geometric_normalized(0.4), 0.5, 0.5)), Error);
}

TEST_CASE("psi shape") {
  const auto s = invariant_set(fig1());
  CHECK(s.psi(0.0) == 0.0);
  CHECK(std::abs(s.psi(s.x_hat0)) < 1e-10);
  const int n = 1000;
  for (int i = 1; i < n; ++i) {
    const double x0 = s.x_hat0 * (i - 1) / n, x1 = s.x_hat0 * i / n;
    if (x1 <= s.x_hat) CHECK(s.psi(x1) > s.psi(x0));
    if (x0 >= s.x_hat) CHECK(s.psi(x1) < s.psi(x0));
    if (x1 < s.x_hat0) CHECK(s.psi(x1) > 0.0);
  }
}

TEST_CASE("psi(x) - x on [0, a]") {
  for (const auto& p : {fig1(), make_params(2, 3.0, Field::constant(0.5), 1.2, 0.6),
                        make_params(3, 3.2, Field::constant(1.0), 1.0, 1.0)}) {
    const auto s = invariant_set(p);
    REQUIRE(s.condition_ok);
    const double gap = s.psi(s.x_star_max) - s.x_star_max;
    CHECK(gap == doctest::Approx((s.tau - 1.0) * (s.k - 1.0) / s.k * s.x_star_max).epsilon(1e-9));
    CHECK(gap < s.a);
    for (int i = 0; i <= 1000; ++i) {
      const double x = s.a * i / 1000.0;
      CHECK(s.psi(x) - x >= -1e-9);
      CHECK(s.psi(x) - x <= gap + 1e-12);
    }
  }
}

TEST_CASE("membership") {
  const auto p = fig1();
  const auto s = invariant_set(p);
  CHECK(contains(s, {0.0, 0.0}));
  CHECK_FALSE(contains(s, {0.0, 0.1}));
  const double xs = fixed_points(p).second.location.x;
  CHECK(contains(s, {xs, xs}));
  CHECK_FALSE(contains(s, {s.a + 0.1, 0.0}));
  CHECK(contains(s, {s.a, s.psi(s.a)}));
}

TEST_CASE("the top corner of I maps outside I") {
  // psi(a) = a, so (a, a) lies on the upper boundary and maps to (0, a),
  // which needs y <= psi(0) = 0.
  const auto p = fig1();
  const auto s = invariant_set(p);
  CHECK(s.psi(s.a) == doctest::Approx(s.a).epsilon(1e-14));
  const State corner{s.a, s.psi(s.a)};
  CHECK(contains(s, corner));
  const State image = advance(p, corner, 1);
  CHECK(std::abs(image.x) < 1e-12);
  CHECK(image.y == s.a);
  CHECK_FALSE(contains(s, image));
  CHECK(membership_margin(s, image) == doctest::Approx(-s.a).epsilon(1e-9));
}

TEST_CASE("grid invariance check reports the violations") {
  const auto p = fig1();
  const auto s = invariant_set(p);
  const auto small = verify_invariance(s, p, 2);
  CHECK(small.samples == 4);
  CHECK(small.violations == 1);
  CHECK(small.worst_point == State{s.a, s.psi(s.a)});

  const auto grid = verify_invariance(s, p, 100);
  CHECK(grid.samples == 10000);
  CHECK(grid.violations > 0);
  CHECK(grid.worst_margin == doctest::Approx(-s.a).epsilon(1e-9));

  CHECK_THROWS_AS(verify_invariance(s, p, 1), Error);
}

TEST_CASE("conjugacy by coordinate swap") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const auto p = fig1();
  std::vector<State> pts(100);
  for (auto& s : pts) s = {u(rng), u(rng)};
  CHECK(conjugacy_residual(p, pts) < 1e-12);
  const State origin{0.0, 0.0};
  CHECK(conjugacy_residual(p, std::span<const State>(&origin, 1)) == 0.0);
  const State fp = fixed_points(p).second.location;
  CHECK(conjugacy_residual(p, std::span<const State>(&fp, 1)) < 1e-12);
  CHECK(swap_coordinates({1.0, 2.0}) == State{2.0, 1.0});
}
