#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helastic/errors.hpp"
#include "helastic/hyperbolic.hpp"

using namespace helastic;

namespace {

// Length of the geodesic from p to q by quadrature along the Euclidean
// half-circle (or vertical segment) that carries it.
double geodesic_length_by_quadrature(const HPoint& p, const HPoint& q) {
  const int m = 20000;  // Simpson panels, even
  auto simpson = [&](auto&& f, double a, double b) {
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
  };
  if (p.y1() == q.y1()) {
    return std::abs(simpson([](double y) { return 1.0 / y; }, p.y2(), q.y2()));
  }
  // center (c, 0) equidistant from p and q
  const double c = (q.y1() * q.y1() + q.y2() * q.y2() - p.y1() * p.y1() - p.y2() * p.y2()) / (2.0 * (q.y1() - p.y1()));
  const double a = std::atan2(p.y2(), p.y1() - c);
  const double b = std::atan2(q.y2(), q.y1() - c);
  // on the circle of radius r: speed r, height r sin(theta)
  return std::abs(simpson([](double th) { return 1.0 / std::sin(th); }, a, b));
}

}  // namespace

TEST_CASE("points of the half-plane") {
  CHECK_THROWS_AS(HPoint(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(HPoint(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(HPoint(0.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(HPoint(std::numeric_limits<double>::infinity(), 1.0), DomainError);
  const HPoint p(3.0, 0.5);
  CHECK(p.y1() == 3.0);
  CHECK(p.y2() == 0.5);
}

TEST_CASE("metric") {
  const HPoint p(0.0, 1.0);
  CHECK(inner(p, {p, 1.0, 0.0}, {p, 1.0, 0.0}) == doctest::Approx(1.0));
  const HPoint q(0.0, 2.0);
  CHECK(inner(q, {q, 1.0, 0.0}, {q, 1.0, 0.0}) == doctest::Approx(0.25));
  const HPoint r(3.0, 0.5);
  CHECK(inner(r, {r, 1.0, 0.0}, {r, 0.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(inner(p, {p, 1.0, 0.0}, {q, 1.0, 0.0}), ContractError);
  CHECK_THROWS_AS(inner(q, {p, 1.0, 0.0}, {p, 1.0, 0.0}), ContractError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const HPoint b(u(rng), 0.1 + std::abs(u(rng)));
    const TangentVec x{b, u(rng), u(rng)}, y{b, u(rng), u(rng)}, z{b, u(rng), u(rng)};
    const double a = u(rng);
    CHECK(inner(b, x, y) == doctest::Approx(inner(b, y, x)).epsilon(1e-14));
    const TangentVec ax_z{b, a * x.v1 + z.v1, a * x.v2 + z.v2};
    CHECK(inner(b, ax_z, y) == doctest::Approx(a * inner(b, x, y) + inner(b, z, y)).epsilon(1e-12));
    CHECK(inner(b, x, x) >= 0.0);
    CHECK(norm(x) == doctest::Approx(std::hypot(x.v1, x.v2) / b.y2()).epsilon(1e-15));
  }
  CHECK(norm({p, 0.0, 0.0}) == 0.0);
}

TEST_CASE("christoffel symbols") {
  for (const HPoint& p : {HPoint(0.0, 1.0), HPoint(5.0, 1.0)}) {
    const auto g = christoffel(p);
    CHECK(g[1][0][0] == 1.0);
    CHECK(g[0][0][1] == -1.0);
    CHECK(g[0][1][0] == -1.0);
    CHECK(g[1][1][1] == -1.0);
    CHECK(g[0][0][0] == 0.0);
    CHECK(g[0][1][1] == 0.0);
    CHECK(g[1][0][1] == 0.0);
    CHECK(g[1][1][0] == 0.0);
  }
  const auto g = christoffel(HPoint(0.0, 2.0));
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(g[k][i][j] == g[k][j][i]);
        CHECK((g[k][i][j] == 0.0 || std::abs(g[k][i][j]) == 0.5));
      }
    }
  }
}

TEST_CASE("covariant derivative along curves") {
  SUBCASE("vertical lines are geodesics") {
    for (double t : {-1.0, 0.0, 0.7}) {
      const HPoint f(0.0, std::exp(t));
      const TangentVec v{f, 0.0, std::exp(t)};
      const TangentVec a = covariant_derivative(f, v, v, {0.0, std::exp(t)});
      CHECK(a.v1 == doctest::Approx(0.0));
      CHECK(a.v2 == doctest::Approx(0.0));
      CHECK(a.base == f);
    }
  }
  SUBCASE("constant field along a horizontal line") {
    const HPoint f(0.3, 1.0);
    const TangentVec v{f, 1.0, 0.0};
    const TangentVec x{f, 1.0, 0.0};
    const TangentVec r = covariant_derivative(f, v, x, {0.0, 0.0});
    CHECK(r.v1 == 0.0);
    CHECK(r.v2 == 1.0);
  }
  SUBCASE("base mismatch") {
    const HPoint f(0.0, 1.0), g(0.0, 2.0);
    CHECK_THROWS_AS(covariant_derivative(f, {g, 1.0, 0.0}, {f, 1.0, 0.0}, {0.0, 0.0}), ContractError);
    CHECK_THROWS_AS(covariant_derivative(f, {f, 1.0, 0.0}, {g, 1.0, 0.0}, {0.0, 0.0}), ContractError);
  }
  SUBCASE("metric compatibility, second order in the step") {
    // f(t) = (cos t, 2 + sin t / 2), X = (t^2, 1 + t), Y = (sin t, cos 2t)
    auto f = [](double t) { return Vec2{std::cos(t), 2.0 + 0.5 * std::sin(t)}; };
    auto fd = [](double t) { return Vec2{-std::sin(t), 0.5 * std::cos(t)}; };
    auto X = [](double t) { return Vec2{t * t, 1.0 + t}; };
    auto Xd = [](double t) { return Vec2{2.0 * t, 1.0}; };
    auto Y = [](double t) { return Vec2{std::sin(t), std::cos(2.0 * t)}; };
    auto Yd = [](double t) { return Vec2{std::cos(t), -2.0 * std::sin(2.0 * t)}; };
    auto g = [&](double t) { return metric_inner(f(t).y, X(t), Y(t)); };
    const double t = 0.4;
    const double y2 = f(t).y;
    const double rhs = metric_inner(y2, covariant_derivative(y2, fd(t), X(t), Xd(t)), Y(t)) +
                       metric_inner(y2, X(t), covariant_derivative(y2, fd(t), Y(t), Yd(t)));
    std::vector<double> res;
    for (double h : {1e-2, 5e-3, 2.5e-3}) res.push_back(std::abs((g(t + h) - g(t - h)) / (2.0 * h) - rhs));
    for (std::size_t i = 0; i + 1 < res.size(); ++i) {
      const double order = std::log2(res[i] / res[i + 1]);
      CHECK(order >= 1.8);
      CHECK(order <= 2.2);
    }
  }
}

TEST_CASE("geodesic distance") {
  CHECK(geodesic_distance({0.0, 1.0}, {0.0, std::numbers::e}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(geodesic_distance({0.3, 0.7}, {0.3, 0.7}) == 0.0);
  CHECK(geodesic_distance({0.0, 1.0}, {1.0, 1.0}) == doctest::Approx(0.9624236501192069).epsilon(1e-14));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(-3.0, 3.0), y(0.05, 4.0);
  for (int k = 0; k < 30; ++k) {
    const HPoint p(x(rng), y(rng)), q(x(rng), y(rng)), r(x(rng), y(rng));
    const double d = geodesic_distance(p, q);
    CHECK(d == doctest::Approx(geodesic_length_by_quadrature(p, q)).epsilon(1e-9));
    CHECK(d == doctest::Approx(geodesic_distance(q, p)).epsilon(1e-14));
    CHECK(d > 0.0);
    CHECK(geodesic_distance(p, r) <= geodesic_distance(p, q) + geodesic_distance(q, r) + 1e-12);
    for (double s : {0.1, 3.0, 10.0}) {
      CHECK(geodesic_distance(dilate(p, s), dilate(q, s)) == doctest::Approx(d).epsilon(1e-12));
    }
    CHECK(geodesic_distance(translate_h(p, 2.5), translate_h(q, 2.5)) == doctest::Approx(d).epsilon(1e-12));
  }
  CHECK(geodesic_length_by_quadrature({0.0, 1.0}, {0.0, std::numbers::e}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("balls are Euclidean disks with sinh radius") {
  const HPoint c(0.4, 1.7);
  for (double rho : {0.1, 0.8, 2.0}) {
    const EuclideanDisk d = hyperbolic_ball(c, rho);
    CHECK(d.center.x == doctest::Approx(c.y1()));
    CHECK(d.center.y == doctest::Approx(c.y2() * std::cosh(rho)));
    CHECK(d.radius == doctest::Approx(c.y2() * std::sinh(rho)));
    for (int k = 0; k < 64; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 64.0;
      const HPoint boundary(d.center.x + d.radius * std::cos(th), d.center.y + d.radius * std::sin(th));
      CHECK(geodesic_distance(c, boundary) == doctest::Approx(rho).epsilon(1e-10));
      const HPoint inside(d.center.x + 0.5 * d.radius * std::cos(th), d.center.y + 0.5 * d.radius * std::sin(th));
      CHECK(geodesic_distance(c, inside) < rho);
    }
    // the cosh-radius disk reaches beyond the ball
    const HPoint top(d.center.x, d.center.y + c.y2() * std::cosh(rho));
    CHECK(geodesic_distance(c, top) > rho);
  }
  CHECK_THROWS_AS(hyperbolic_ball(c, -1.0), DomainError);
}

TEST_CASE("isometries of points") {
  const HPoint p(1.5, 0.25);
  CHECK(dilate(p, 1.0) == p);
  CHECK(dilate(p, 3.0) == HPoint(4.5, 0.75));
  CHECK_THROWS_AS(dilate(p, 0.0), DomainError);
  CHECK_THROWS_AS(dilate(p, -2.0), DomainError);
  CHECK(translate_h(translate_h(p, 2.0), -2.0).y1() == doctest::Approx(p.y1()).epsilon(1e-16));
  CHECK(translate_h(p, 2.0) == HPoint(-0.5, 0.25));
}
