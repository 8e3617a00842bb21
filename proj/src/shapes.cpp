#include "helastic/shapes.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "helastic/curve_io.hpp"
#include "helastic/errors.hpp"

namespace helastic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CirclePoint {
  Vec2 position;
  Vec2 radial;  // Euclidean unit vector from the center
};

// Hyperbolic circle about (0, y0) of radius rho. In the disk model centered at
// the hyperbolic center it is |z| = tanh(rho/2) traversed at uniform angle,
// which the Cayley map carries to the half-plane at constant hyperbolic speed.
std::vector<CirclePoint> circle_points(double center_y, double radius, std::size_t n) {
  if (!(radius > 0.0) || !(center_y > radius) || !std::isfinite(center_y)) {
    throw ContractError("circle: need 0 < radius < center_y, got radius " + format_real(radius) +
                        ", center_y " + format_real(center_y));
  }
  const double y0 = std::sqrt(center_y * center_y - radius * radius);
  const double rho = std::asinh(radius / y0);
  const double q = std::tanh(rho / 2.0);
  std::vector<CirclePoint> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const std::complex<double> z = std::polar(q, th);
    const std::complex<double> w = y0 * std::complex<double>(0.0, 1.0) * (1.0 + z) / (1.0 - z);
    const Vec2 p{w.real(), w.imag()};
    const Vec2 r{p.x, p.y - center_y};
    out[i] = {p, r * (1.0 / euclidean_norm(r))};
  }
  return out;
}

DiscreteCurve checked_curve(std::vector<Vec2> pts) {
  std::vector<HPoint> hp;
  hp.reserve(pts.size());
  for (const auto& p : pts) {
    if (!(p.y > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ContractError("curve leaves the half-plane: sample (" + format_real(p.x) + ", " + format_real(p.y) + ")");
    }
    hp.emplace_back(p.x, p.y);
  }
  DiscreteCurve c(std::move(hp));
  try {
    (void)build_geometry(c);
  } catch (const ImmersionError& e) {
    throw ContractError(std::string("curve is not immersed: ") + e.what());
  }
  return c;
}

}  // namespace

DiscreteCurve make_circle(double center_y, double radius, std::size_t n, double center_x) {
  return make_perturbed_circle(center_y, radius, 0, 0.0, n, center_x);
}

DiscreteCurve make_perturbed_circle(double center_y, double radius, int mode, double amplitude, std::size_t n,
                                    double center_x) {
  if (n < DiscreteCurve::kMinSamples || n % 2 != 0) throw ContractError("curve: n must be even and >= 16");
  const auto base = circle_points(center_y, radius, n);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    const double bump = amplitude * std::sin(kTwoPi * mode * x);
    pts[i] = base[i].position + bump * base[i].radial + Vec2{center_x, 0.0};
  }
  return checked_curve(std::move(pts));
}

DiscreteCurve make_fourier_curve(const std::vector<FourierRow>& rows, std::size_t n) {
  if (rows.empty()) throw ContractError("fourier: empty coefficient list");
  if (n < DiscreteCurve::kMinSamples || n % 2 != 0) throw ContractError("curve: n must be even and >= 16");
  std::vector<Vec2> pts(n, Vec2{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    for (const auto& r : rows) {
      if (r.k < 0) throw ContractError("fourier: negative wavenumber");
      const double cs = std::cos(kTwoPi * r.k * x);
      const double sn = std::sin(kTwoPi * r.k * x);
      pts[i] += Vec2{r.a * cs + r.b * sn, r.c * cs + r.d * sn};
    }
  }
  return checked_curve(std::move(pts));
}

double critical_circle_radius(double center_y, double lambda) {
  if (!(lambda >= 0.0)) throw ContractError("critical_circle_radius: lambda must be >= 0");
  // |kappa| = center_y / radius = sqrt(2 (1 + lambda))
  return center_y / std::sqrt(2.0 * (1.0 + lambda));
}

nlohmann::json to_json(const CurveDescriptor& d) {
  nlohmann::json j{{"kind", d.kind}};
  if (d.kind == "file") {
    j["path"] = d.path;
  } else if (d.kind == "fourier") {
    auto rows = nlohmann::json::array();
    for (const auto& r : d.coefficients) rows.push_back({r.k, r.a, r.b, r.c, r.d});
    j["coefficients"] = rows;
  } else {
    j["center_x"] = d.center_x;
    j["center_y"] = d.center_y;
    j["radius"] = d.radius;
    if (d.kind == "perturbed_circle") {
      j["mode"] = d.mode;
      j["amplitude"] = d.amplitude;
    }
  }
  return j;
}

CurveDescriptor curve_descriptor_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ContractError("curve descriptor must be an object");
  CurveDescriptor d;
  try {
    d.kind = j.value("kind", d.kind);
    d.center_x = j.value("center_x", d.center_x);
    d.center_y = j.value("center_y", d.center_y);
    d.radius = j.value("radius", d.radius);
    d.mode = j.value("mode", d.mode);
    d.amplitude = j.value("amplitude", d.amplitude);
    d.path = j.value("path", d.path);
    if (j.contains("coefficients")) {
      for (const auto& row : j.at("coefficients")) {
        if (!row.is_array() || row.size() != 5) throw ContractError("fourier row must be [k, a, b, c, d]");
        d.coefficients.push_back({row[0].get<int>(), row[1].get<double>(), row[2].get<double>(),
                                  row[3].get<double>(), row[4].get<double>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("curve descriptor: ") + e.what());
  }
  return d;
}

DiscreteCurve make_curve(const CurveDescriptor& d, std::size_t n) {
  if (d.kind == "circle") return make_circle(d.center_y, d.radius, n, d.center_x);
  if (d.kind == "perturbed_circle") {
    return make_perturbed_circle(d.center_y, d.radius, d.mode, d.amplitude, n, d.center_x);
  }
  if (d.kind == "fourier") return make_fourier_curve(d.coefficients, n);
  if (d.kind == "file") {
    DiscreteCurve c = read_curve(d.path);
    return c.size() == n ? c : resample_uniform(c, n);
  }
  throw ContractError("unknown curve kind '" + d.kind + "'");
}

}  // namespace helastic
