#include <doctest.h>

#include <cmath>

#include "sosmap/error.hpp"
#include "sosmap/field.hpp"

using namespace sosmap;

TEST_CASE("geometric probability field") {
  const double t = 0.4;
  const auto f = Field::geometric_normalized(t).normalized(Normalization::Probability);
  double total = 0.0;
  for (long j = -200; j <= 200; ++j) total += f.value(j);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.value(3) == doctest::Approx((1 - t) / (1 + t) * t * t * t).epsilon(1e-14));
  CHECK(f.is_symmetric());
  CHECK_FALSE(f.step_constant());
}

TEST_CASE("geometric family normalisation") {
  const auto f = Field::geometric_family(3.0, 0.5, 2.0).normalized(Normalization::Probability);
  double total = 0.0;
  for (long j = -100; j <= 100; ++j) total += f.value(j);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(Field::geometric_family(1.0, 2.0, 1.0).normalized(Normalization::Probability), Error);
  CHECK_THROWS_AS(Field::constant(1.0).normalized(Normalization::Probability), Error);

  const auto flat = Field::geometric_family(2.0, 0.7, 0.0);
  REQUIRE(flat.step_constant());
  CHECK(*flat.step_constant() == 2.0);
}

TEST_CASE("unit-at-zero normalisation") {
  const auto f = Field::geometric_family(2.0, 3.0, 1.0).normalized(Normalization::UnitAtZero);
  CHECK(f.value(0) == 1.0);
  CHECK(f.value(2) == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(f.log_value(0) == 0.0);
}

TEST_CASE("table field") {
  const auto f = Field::table({{0, 1.0}, {-2, 0.3}}, 1.05);
  CHECK(f.value(0) == 1.0);
  CHECK(f.value(7) == 1.05);
  CHECK(f.value(-2) == 0.3);
  CHECK_FALSE(f.is_symmetric());
  REQUIRE(f.step_constant());
  CHECK(*f.step_constant() == 1.05);
  CHECK_FALSE(Field::table({{3, 2.0}}, 1.0).step_constant());
  CHECK_THROWS_AS(f.normalized(Normalization::Probability), Error);
}

TEST_CASE("invalid fields") {
  CHECK_THROWS_AS(Field::constant(0.0), Error);
  CHECK_THROWS_AS(Field::constant(-1.0), Error);
  CHECK_THROWS_AS(Field::geometric_normalized(1.0), Error);
  CHECK_THROWS_AS(Field::table({{1, -0.5}}, 1.0), Error);
  CHECK_THROWS_AS(Field::geometric_family(1.0, 0.0, 1.0), Error);
}
