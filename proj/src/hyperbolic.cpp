#include "helastic/hyperbolic.hpp"

#include <string>

#include "helastic/errors.hpp"

namespace helastic {

HPoint::HPoint(double y1, double y2) : y1_(y1), y2_(y2) {
  if (!(y2 > 0.0) || !std::isfinite(y2) || !std::isfinite(y1)) {
    throw DomainError("HPoint: y2 must be finite and > 0, got " + std::to_string(y2));
  }
}

double inner(const HPoint& p, const TangentVec& u, const TangentVec& v) {
  if (!(u.base == p) || !(v.base == p)) {
    throw ContractError("inner: tangent vectors are not based at the given point");
  }
  return metric_inner(p.y2(), u.components(), v.components());
}

double norm(const TangentVec& v) { return metric_norm(v.base.y2(), v.components()); }

ChristoffelSymbols christoffel(const HPoint& p) {
  const double inv = 1.0 / p.y2();
  ChristoffelSymbols g{};
  g[0][0][1] = g[0][1][0] = -inv;
  g[1][0][0] = inv;
  g[1][1][1] = -inv;
  return g;
}

TangentVec covariant_derivative(const HPoint& curve_point, const TangentVec& curve_velocity,
                                const TangentVec& X, const Vec2& dX) {
  if (!(curve_velocity.base == curve_point) || !(X.base == curve_point)) {
    throw ContractError("covariant_derivative: vectors are not based at the curve point");
  }
  const Vec2 r = covariant_derivative(curve_point.y2(), curve_velocity.components(), X.components(), dX);
  return {curve_point, r.x, r.y};
}

double geodesic_distance(const HPoint& p, const HPoint& q) {
  const double dx = q.y1() - p.y1();
  const double dy = q.y2() - p.y2();
  const double arg = (dx * dx + dy * dy) / (2.0 * p.y2() * q.y2());
  // acosh(1 + a) = log1p(a + sqrt(a (a + 2))) keeps precision for nearby points.
  return std::log1p(arg + std::sqrt(arg * (arg + 2.0)));
}

EuclideanDisk hyperbolic_ball(const HPoint& c, double rho) {
  if (!(rho >= 0.0)) throw DomainError("hyperbolic_ball: radius must be >= 0");
  return {{c.y1(), c.y2() * std::cosh(rho)}, c.y2() * std::sinh(rho)};
}

HPoint dilate(const HPoint& p, double r) {
  if (!(r > 0.0)) throw DomainError("dilate: factor must be > 0");
  return {r * p.y1(), r * p.y2()};
}

HPoint translate_h(const HPoint& p, double shift) { return {p.y1() - shift, p.y2()}; }

}  // namespace helastic
