#include <doctest.h>

#include <cmath>
#include <random>

#include "gcsie/geometry.hpp"

using namespace gcsie;

TEST_CASE("circle samples") {
  const Curve c = Curve::circle(1.0);
  CHECK(c.position(0.0).isApprox(Point2(1.0, 0.0)));
  CHECK(c.normal(0.0).isApprox(Point2(1.0, 0.0)));
  CHECK(c.speed(0.0) == doctest::Approx(1.0));
  for (double t : {0.0, 0.7, 2.0, 5.5}) CHECK(c.curvature(t) == doctest::Approx(1.0));

  const Curve c2 = Curve::circle(2.0);
  CHECK((c2.position(kPi / 2) - Point2(0.0, 2.0)).norm() < 1e-15);
  CHECK(c2.speed(kPi / 2) == doctest::Approx(2.0));
}

TEST_CASE("normal points outward on the circle") {
  const Curve c = Curve::circle(1.5);
  for (int j = 0; j < 64; ++j) {
    const double t = 2 * kPi * j / 64;
    CHECK(c.normal(t).dot(c.position(t)) > 0.0);
  }
}

TEST_CASE("kite samples") {
  const Curve k = Curve::kite();
  CHECK((k.position(0.0) - Point2(1.0, 0.0)).norm() < 1e-15);
  CHECK((k.position(kPi) - Point2(-1.0, 0.0)).norm() < 1e-14);
  double min_speed = 1e300;
  for (int j = 0; j < 10000; ++j) min_speed = std::min(min_speed, k.speed(2 * kPi * j / 10000));
  CHECK(min_speed > 0.1);
}

TEST_CASE("ellipse samples") {
  const Curve e = Curve::ellipse(1.0, 1.0);
  const Curve c = Curve::circle(1.0);
  for (double t : {0.0, 0.3, 1.9, 4.1}) {
    CHECK((e.position(t) - c.position(t)).norm() < 1e-15);
    CHECK((e.d2(t) - c.d2(t)).norm() < 1e-15);
  }
  const Curve e2 = Curve::ellipse(2.0, 1.0);
  CHECK((e2.position(0.0) - Point2(2.0, 0.0)).norm() < 1e-15);
  CHECK(e2.speed(0.0) == doctest::Approx(1.0));
  CHECK(e2.speed(kPi / 2) == doctest::Approx(2.0));
}

TEST_CASE("invalid curve parameters are rejected") {
  CHECK_THROWS_AS(Curve::circle(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Curve::circle(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Curve::ellipse(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Curve::ellipse(-2.0, 1.0), std::invalid_argument);
}

TEST_CASE("curves are 2pi periodic") {
  for (const Curve& c : {Curve::circle(1.3), Curve::ellipse(2.0, 0.5), Curve::kite()})
    for (double t : {0.1, 1.0, 3.0})
      CHECK((c.position(t + 2 * kPi) - c.position(t)).norm() < 1e-14);
}

// Fitted order of |x(t+h) - x(t) - h x'(t)| over random t; same for x' against x''.
TEST_CASE("derivatives are consistent with finite differences") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  std::vector<double> ts(1000);
  for (double& t : ts) t = u(gen);
  for (const Curve& c : {Curve::circle(1.0), Curve::ellipse(2.0, 1.0), Curve::kite()}) {
    auto max_err = [&](double h, bool second) {
      double m = 0.0;
      for (double t : ts) {
        const Point2 e = second ? Point2(c.d1(t + h) - c.d1(t) - h * c.d2(t))
                                : Point2(c.position(t + h) - c.position(t) - h * c.d1(t));
        m = std::max(m, e.norm());
      }
      return m;
    };
    for (bool second : {false, true}) {
      const double order = std::log2(max_err(1e-3, second) / max_err(5e-4, second));
      CAPTURE(c.name());
      CHECK(order >= 1.9);
    }
  }
}

TEST_CASE("grid nodes") {
  const NodeGrid g4 = grid(4);
  const std::vector<double> nodes = g4.nodes();
  REQUIRE(nodes.size() == 4);
  CHECK(nodes[0] == 0.0);
  CHECK(nodes[1] == doctest::Approx(kPi / 2));
  CHECK(nodes[2] == doctest::Approx(kPi));
  CHECK(nodes[3] == doctest::Approx(3 * kPi / 2));
  CHECK(grid(8).node(3) == doctest::Approx(3 * kPi / 4));
  const std::vector<double> n64 = grid(64).nodes();
  for (std::size_t j = 1; j < n64.size(); ++j) CHECK(n64[j] > n64[j - 1]);
  CHECK(n64.back() < 2 * kPi);
  CHECK_THROWS_AS(grid(7), std::invalid_argument);
  CHECK_THROWS_AS(grid(2), std::invalid_argument);
  CHECK_THROWS_AS(grid(0), std::invalid_argument);
}

TEST_CASE("normals are unit length at grid nodes") {
  for (const Curve& c : {Curve::circle(2.0), Curve::ellipse(2.0, 0.7), Curve::kite()}) {
    const CurveSamples s(c, grid(128));
    for (int j = 0; j < s.size(); ++j) CHECK(std::abs(s.normal.col(j).norm() - 1.0) < 1e-14);
  }
}
