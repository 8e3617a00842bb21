#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "helastic/differentiation.hpp"
#include "helastic/hyperbolic.hpp"

namespace helastic {

/// Closed curve sampled at x_i = i/N, i = 0..N-1, on S^1 = [0, 1).
/// N >= 16 and even; indexing through at() wraps around.
class DiscreteCurve {
public:
  static constexpr std::size_t kMinSamples = 16;

  explicit DiscreteCurve(std::vector<HPoint> points);

  std::size_t size() const { return points_.size(); }
  const HPoint& operator[](std::size_t i) const { return points_[i]; }
  const HPoint& at(long i) const;
  const std::vector<HPoint>& points() const { return points_; }

  std::vector<double> y1() const;
  std::vector<double> y2() const;

  friend bool operator==(const DiscreteCurve&, const DiscreteCurve&) = default;

private:
  std::vector<HPoint> points_;
};

DiscreteCurve dilate(const DiscreteCurve& c, double r);
DiscreteCurve translate_h(const DiscreteCurve& c, double shift);

/// Chart components of a vector field along a curve, one per sample. The base
/// point of entry i is sample i of the curve the field belongs to.
using VectorField = std::vector<Vec2>;

/// Deepest iterated normal derivative cached by build_geometry.
inline constexpr int kNablaPerpDepth = 4;

/// Minimum line element relative to the mean before a curve counts as non-immersed.
inline constexpr double kImmersionThreshold = 1e-8;

/// Per-sample geometry of a curve. Immutable once built.
struct CurveGeometry {
  DiffScheme scheme = DiffScheme::central2;
  std::vector<Vec2> position;    // f
  std::vector<Vec2> dfdx;        // d_x f (chart)
  std::vector<double> ds;        // |d_x f|_g, the line element per unit parameter
  VectorField tangent;           // d_s f, unit in g
  VectorField kappa;             // curvature vector
  std::vector<double> kappa_norm;
  std::vector<VectorField> nabla_perp_kappa;  // (nabla_s^perp)^m kappa, m = 0..kNablaPerpDepth

  std::size_t size() const { return position.size(); }
  double h() const { return 1.0 / static_cast<double>(position.size()); }
  double y2(std::size_t i) const { return position[i].y; }
  HPoint point(std::size_t i) const { return {position[i].x, position[i].y}; }
  TangentVec tangent_at(std::size_t i) const { return {point(i), tangent[i].x, tangent[i].y}; }
  TangentVec kappa_at(std::size_t i) const { return {point(i), kappa[i].x, kappa[i].y}; }
};

/// Throws ImmersionError if min ds < kImmersionThreshold * mean ds.
CurveGeometry build_geometry(const DiscreteCurve& c, DiffScheme scheme = DiffScheme::central2);

/// Parameter derivative d/dx of a scalar or vector field with the geometry's scheme.
std::vector<double> d_dx(const CurveGeometry& g, std::span<const double> u);
VectorField d_dx(const CurveGeometry& g, const VectorField& X);
/// Arclength derivative d/ds = |d_x f|_g^{-1} d/dx.
std::vector<double> d_ds(const CurveGeometry& g, std::span<const double> u);

/// nabla_{d_s f} X along the curve.
VectorField nabla_s(const CurveGeometry& g, const VectorField& X);
/// X minus its g-projection onto the unit tangent.
VectorField normal_part(const CurveGeometry& g, const VectorField& X);
/// nabla_s followed by removal of the tangential component.
VectorField nabla_s_perp(const CurveGeometry& g, const VectorField& X);
/// (nabla_s^perp)^m kappa: cached up to kNablaPerpDepth, iterated beyond.
VectorField nabla_perp_kappa(const CurveGeometry& g, int m);

/// Pointwise <X_i, Y_i>_g.
std::vector<double> pointwise_inner(const CurveGeometry& g, const VectorField& X, const VectorField& Y);

/// Periodic trapezoid: sum_i u_i ds_i / N.
double integrate(const CurveGeometry& g, std::span<const double> u);
/// L^2(ds) inner product of two fields.
double inner_l2(const CurveGeometry& g, const VectorField& X, const VectorField& Y);

double total_length(const CurveGeometry& g);
double total_abs_curvature(const CurveGeometry& g);

/// Resample so that the hyperbolic line element is constant. Uses the
/// trigonometric interpolant of the chart coordinates, so the curve itself
/// changes only by its (spectrally small) interpolation error.
DiscreteCurve reparametrize_constant_speed(const DiscreteCurve& c);

/// Trigonometric interpolation onto n uniform parameter samples.
DiscreteCurve resample_uniform(const DiscreteCurve& c, std::size_t n);

}  // namespace helastic
