#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "helastic/curve.hpp"

namespace helastic {

/// One Fourier row: y1 += a cos(2 pi k x) + b sin(2 pi k x), y2 += c cos(2 pi k x) + d sin(2 pi k x).
struct FourierRow {
  int k = 0;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  friend bool operator==(const FourierRow&, const FourierRow&) = default;
};

/// Euclidean circle with center (center_x, center_y), sampled at constant hyperbolic speed.
DiscreteCurve make_circle(double center_y, double radius, std::size_t n, double center_x = 0.0);

/// The circle above pushed radially (Euclidean) by amplitude * sin(2 pi mode x).
DiscreteCurve make_perturbed_circle(double center_y, double radius, int mode, double amplitude, std::size_t n,
                                    double center_x = 0.0);

DiscreteCurve make_fourier_curve(const std::vector<FourierRow>& rows, std::size_t n);

/// Euclidean circle radius whose hyperbolic curvature solves the stationarity equation for lambda,
/// centered on the y2-axis at height center_y.
double critical_circle_radius(double center_y, double lambda);

/// Initial-curve descriptor as stored in run manifests.
struct CurveDescriptor {
  std::string kind = "perturbed_circle";  // circle | perturbed_circle | fourier | file
  double center_x = 0.0;
  double center_y = 1.4142135623730951;
  double radius = 1.0;
  int mode = 3;
  double amplitude = 0.05;
  std::vector<FourierRow> coefficients;
  std::string path;
};

nlohmann::json to_json(const CurveDescriptor& d);
CurveDescriptor curve_descriptor_from_json(const nlohmann::json& j);

/// Builds the curve. Bad parameters (y2 <= 0, not immersed, unknown kind, empty
/// coefficient list) raise ContractError with a message.
DiscreteCurve make_curve(const CurveDescriptor& d, std::size_t n);

}  // namespace helastic
