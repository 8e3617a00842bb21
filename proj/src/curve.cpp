#include "helastic/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "helastic/errors.hpp"

namespace helastic {

DiscreteCurve::DiscreteCurve(std::vector<HPoint> points) : points_(std::move(points)) {
  if (points_.size() < kMinSamples || points_.size() % 2 != 0) {
    throw ContractError("DiscreteCurve: need an even number >= 16 of samples, got " +
                        std::to_string(points_.size()));
  }
}

const HPoint& DiscreteCurve::at(long i) const {
  const long n = static_cast<long>(points_.size());
  return points_[static_cast<std::size_t>(((i % n) + n) % n)];
}

std::vector<double> DiscreteCurve::y1() const {
  std::vector<double> out(points_.size());
  std::transform(points_.begin(), points_.end(), out.begin(), [](const HPoint& p) { return p.y1(); });
  return out;
}

std::vector<double> DiscreteCurve::y2() const {
  std::vector<double> out(points_.size());
  std::transform(points_.begin(), points_.end(), out.begin(), [](const HPoint& p) { return p.y2(); });
  return out;
}

DiscreteCurve dilate(const DiscreteCurve& c, double r) {
  std::vector<HPoint> pts;
  pts.reserve(c.size());
  for (const auto& p : c.points()) pts.push_back(dilate(p, r));
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve translate_h(const DiscreteCurve& c, double shift) {
  std::vector<HPoint> pts;
  pts.reserve(c.size());
  for (const auto& p : c.points()) pts.push_back(translate_h(p, shift));
  return DiscreteCurve(std::move(pts));
}

namespace {

void split(const VectorField& X, std::vector<double>& a, std::vector<double>& b) {
  a.resize(X.size());
  b.resize(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    a[i] = X[i].x;
    b[i] = X[i].y;
  }
}

void check_field(const CurveGeometry& g, const VectorField& X) {
  if (X.size() != g.size()) {
    throw ContractError("vector field has " + std::to_string(X.size()) + " samples, curve has " +
                        std::to_string(g.size()));
  }
}

}  // namespace

CurveGeometry build_geometry(const DiscreteCurve& c, DiffScheme scheme) {
  const std::size_t n = c.size();
  CurveGeometry g;
  g.scheme = scheme;
  const std::vector<double> y1 = c.y1();
  const std::vector<double> y2 = c.y2();
  const auto d1 = periodic_derivative(y1, 1, scheme);
  const auto d2 = periodic_derivative(y2, 1, scheme);
  const auto dd1 = periodic_derivative(y1, 2, scheme);
  const auto dd2 = periodic_derivative(y2, 2, scheme);

  g.position.resize(n);
  g.dfdx.resize(n);
  g.ds.resize(n);
  g.tangent.resize(n);
  g.kappa.resize(n);
  g.kappa_norm.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.position[i] = {y1[i], y2[i]};
    g.dfdx[i] = {d1[i], d2[i]};
    g.ds[i] = metric_norm(y2[i], g.dfdx[i]);
  }

  const double mean_ds = std::accumulate(g.ds.begin(), g.ds.end(), 0.0) / static_cast<double>(n);
  const auto [min_it, max_it] = std::minmax_element(g.ds.begin(), g.ds.end());
  if (!std::isfinite(mean_ds) || !std::isfinite(*max_it) || !(*min_it >= kImmersionThreshold * mean_ds) ||
      !(mean_ds > 0.0)) {
    throw ImmersionError("curve is not immersed: min ds = " + std::to_string(*min_it) +
                         ", mean ds = " + std::to_string(mean_ds));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double f2 = y2[i];
    const Vec2 fx = g.dfdx[i];
    const Vec2 fxx{dd1[i], dd2[i]};
    const double gam = g.ds[i];
    const Vec2 t = fx * (1.0 / gam);
    // d_x log|d_x f|_g, then d_s^2 f = (f'' - (log gamma)' f') / gamma^2
    const double dlog = dot(fx, fxx) / dot(fx, fx) - fx.y / f2;
    const Vec2 fss = (fxx - dlog * fx) * (1.0 / (gam * gam));
    g.tangent[i] = t;
    g.kappa[i] = {fss.x - 2.0 / f2 * t.x * t.y, fss.y + (t.x * t.x - t.y * t.y) / f2};
    g.kappa_norm[i] = metric_norm(f2, g.kappa[i]);
  }

  g.nabla_perp_kappa.reserve(kNablaPerpDepth + 1);
  g.nabla_perp_kappa.push_back(g.kappa);
  for (int m = 1; m <= kNablaPerpDepth; ++m) {
    g.nabla_perp_kappa.push_back(nabla_s_perp(g, g.nabla_perp_kappa.back()));
  }
  return g;
}

std::vector<double> d_dx(const CurveGeometry& g, std::span<const double> u) {
  if (u.size() != g.size()) throw ContractError("d_dx: grid mismatch");
  return periodic_derivative(u, 1, g.scheme);
}

VectorField d_dx(const CurveGeometry& g, const VectorField& X) {
  check_field(g, X);
  std::vector<double> a, b;
  split(X, a, b);
  const auto da = periodic_derivative(a, 1, g.scheme);
  const auto db = periodic_derivative(b, 1, g.scheme);
  VectorField out(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) out[i] = {da[i], db[i]};
  return out;
}

std::vector<double> d_ds(const CurveGeometry& g, std::span<const double> u) {
  auto out = d_dx(g, u);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= g.ds[i];
  return out;
}

VectorField nabla_s(const CurveGeometry& g, const VectorField& X) {
  VectorField dX = d_dx(g, X);
  for (std::size_t i = 0; i < X.size(); ++i) {
    dX[i] = covariant_derivative(g.y2(i), g.tangent[i], X[i], dX[i] * (1.0 / g.ds[i]));
  }
  return dX;
}

VectorField normal_part(const CurveGeometry& g, const VectorField& X) {
  check_field(g, X);
  VectorField out(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    out[i] = X[i] - metric_inner(g.y2(i), X[i], g.tangent[i]) * g.tangent[i];
  }
  return out;
}

VectorField nabla_s_perp(const CurveGeometry& g, const VectorField& X) { return normal_part(g, nabla_s(g, X)); }

VectorField nabla_perp_kappa(const CurveGeometry& g, int m) {
  if (m < 0) throw ContractError("nabla_perp_kappa: m must be >= 0");
  const int cached = static_cast<int>(g.nabla_perp_kappa.size()) - 1;
  if (m <= cached) return g.nabla_perp_kappa[static_cast<std::size_t>(m)];
  VectorField X = g.nabla_perp_kappa.back();
  for (int k = cached; k < m; ++k) X = nabla_s_perp(g, X);
  return X;
}

std::vector<double> pointwise_inner(const CurveGeometry& g, const VectorField& X, const VectorField& Y) {
  check_field(g, X);
  check_field(g, Y);
  std::vector<double> out(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) out[i] = metric_inner(g.y2(i), X[i], Y[i]);
  return out;
}

double integrate(const CurveGeometry& g, std::span<const double> u) {
  if (u.size() != g.size()) throw ContractError("integrate: grid mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * g.ds[i];
  return s * g.h();
}

double inner_l2(const CurveGeometry& g, const VectorField& X, const VectorField& Y) {
  return integrate(g, pointwise_inner(g, X, Y));
}

double total_length(const CurveGeometry& g) {
  return std::accumulate(g.ds.begin(), g.ds.end(), 0.0) * g.h();
}

double total_abs_curvature(const CurveGeometry& g) { return integrate(g, g.kappa_norm); }

DiscreteCurve reparametrize_constant_speed(const DiscreteCurve& c) {
  const std::size_t n = c.size();
  const auto y1 = c.y1();
  const auto y2 = c.y2();
  const FourierSeries f1(y1);
  const FourierSeries f2(y2);

  const auto d1 = periodic_derivative(y1, 1, DiffScheme::spectral);
  const auto d2 = periodic_derivative(y2, 1, DiffScheme::spectral);
  std::vector<double> speed(n);
  for (std::size_t i = 0; i < n; ++i) speed[i] = std::hypot(d1[i], d2[i]) / y2[i];
  const double mean = std::accumulate(speed.begin(), speed.end(), 0.0) / static_cast<double>(n);
  if (!(*std::min_element(speed.begin(), speed.end()) >= kImmersionThreshold * mean)) {
    throw ImmersionError("reparametrize_constant_speed: curve is not immersed");
  }
  const FourierSeries arclength_rate(speed);
  const double length = arclength_rate.mean();

  std::vector<HPoint> out;
  out.reserve(n);
  double x = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = length * static_cast<double>(k) / static_cast<double>(n);
    // s(x) is increasing; Newton with a bisection fallback on [lo, hi].
    double lo = (k == 0) ? 0.0 : x;
    double hi = 1.0;
    if (k == 0) {
      x = 0.0;
    } else {
      x = std::clamp(x + (target - arclength_rate.integral(x)) / std::max(arclength_rate(x), 1e-300), lo, hi);
      for (int it = 0; it < 100; ++it) {
        const double r = arclength_rate.integral(x) - target;
        if (r > 0.0) hi = x; else lo = x;
        if (std::abs(r) <= 1e-15 * length) break;
        const double rate = arclength_rate(x);
        double next = x - r / rate;
        if (!(rate > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
      }
    }
    out.emplace_back(f1(x), f2(x));
  }
  return DiscreteCurve(std::move(out));
}

DiscreteCurve resample_uniform(const DiscreteCurve& c, std::size_t n) {
  const auto y1 = c.y1();
  const auto y2 = c.y2();
  const FourierSeries f1(y1);
  const FourierSeries f2(y2);
  std::vector<HPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    out.emplace_back(f1(x), f2(x));
  }
  return DiscreteCurve(std::move(out));
}

}  // namespace helastic
