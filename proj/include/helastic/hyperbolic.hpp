#pragma once

#include <array>
#include <cmath>

namespace helastic {

/// Plain pair of chart components. Used for tangent vectors whose base point is
/// implied by context (samples of a vector field along a curve).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double euclidean_norm(const Vec2& a) { return std::hypot(a.x, a.y); }

/// Point of the upper half-plane, y2 > 0.
class HPoint {
public:
  HPoint(double y1, double y2);

  double y1() const { return y1_; }
  double y2() const { return y2_; }
  Vec2 chart() const { return {y1_, y2_}; }

  friend bool operator==(const HPoint&, const HPoint&) = default;

private:
  double y1_;
  double y2_;
};

/// Tangent vector with an explicit base point.
struct TangentVec {
  HPoint base;
  double v1 = 0.0;
  double v2 = 0.0;

  Vec2 components() const { return {v1, v2}; }
};

// Metric g = (dy1^2 + dy2^2) / y2^2.
double inner(const HPoint& p, const TangentVec& u, const TangentVec& v);
double norm(const TangentVec& v);

/// Raw chart form of the metric, for hot loops over curve samples.
inline double metric_inner(double y2, const Vec2& u, const Vec2& v) { return dot(u, v) / (y2 * y2); }
inline double metric_norm(double y2, const Vec2& v) { return euclidean_norm(v) / y2; }

/// Gamma[k][i][j], zero-based indices (0 = y1, 1 = y2).
using ChristoffelSymbols = std::array<std::array<std::array<double, 2>, 2>, 2>;
ChristoffelSymbols christoffel(const HPoint& p);

/// Levi-Civita derivative of a field X along a curve with velocity `velocity`,
/// where `dX` holds the parameter derivatives of X's chart components.
TangentVec covariant_derivative(const HPoint& curve_point, const TangentVec& curve_velocity,
                                const TangentVec& X, const Vec2& dX);

/// Same as covariant_derivative on bare components at height y2.
inline Vec2 covariant_derivative(double y2, const Vec2& velocity, const Vec2& X, const Vec2& dX) {
  return {dX.x - (X.x * velocity.y + X.y * velocity.x) / y2,
          dX.y + (X.x * velocity.x - X.y * velocity.y) / y2};
}

double geodesic_distance(const HPoint& p, const HPoint& q);

struct EuclideanDisk {
  Vec2 center;
  double radius = 0.0;
};

/// Euclidean description of the closed hyperbolic ball of radius rho around c.
EuclideanDisk hyperbolic_ball(const HPoint& c, double rho);

// Isometries of the half-plane.
HPoint dilate(const HPoint& p, double r);
HPoint translate_h(const HPoint& p, double shift);

}  // namespace helastic
