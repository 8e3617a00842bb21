#pragma once

#include <string>

#include <json.hpp>

#include "helastic/curve.hpp"

namespace helastic {

/// Sectional curvature of the half-plane.
inline constexpr double kSectionalCurvature = -1.0;

struct EnergyReport {
  double elastic = 0.0;    // 1/2 int |kappa|^2 ds
  double penalized = 0.0;  // elastic + lambda * length
  double length = 0.0;
  double total_abs_curv = 0.0;
  double grad_l2 = 0.0;
  double lambda = 0.0;
};

nlohmann::json to_json(const EnergyReport& r);

/// L^2(ds) gradient of E_lambda sampled on the curve; normal by construction.
struct GradientField {
  VectorField values;
  double l2 = 0.0;
};

double elastic_energy(const CurveGeometry& g);
double penalized_energy(const CurveGeometry& g, double lambda);

/// (nabla_perp)^2 kappa + |kappa|^2 kappa / 2 + (s0 - lambda) kappa, normal part.
GradientField gradient(const CurveGeometry& g, double lambda, double s0 = kSectionalCurvature);

EnergyReport evaluate(const CurveGeometry& g, double lambda);
EnergyReport evaluate(const DiscreteCurve& c, double lambda, DiffScheme scheme);

/// Willmore energy of the surface obtained by rotating the curve about the y1-axis.
/// The integrand is written for an arbitrary parametrization, so no resampling
/// is needed; derivatives use the given scheme.
double willmore_of_revolution(const DiscreteCurve& c, DiffScheme scheme = DiffScheme::spectral);

struct WillmoreDiagnostic {
  double willmore = 0.0;
  double elastic = 0.0;
  double willmore_over_elastic = 0.0;     // pi for the 1/2-normalized elastic energy
  double unhalved_over_willmore = 0.0;    // int |kappa|^2 ds / W
  double stated_constant = 0.0;           // 2/pi, the constant printed alongside the unhalved energy
  double discrepancy = 0.0;               // unhalved_over_willmore - stated_constant
};

WillmoreDiagnostic willmore_diagnostic(const DiscreteCurve& c, DiffScheme scheme = DiffScheme::spectral);

/// (int |kappa|_g^p ds)^(1/p); p = infinity gives the sample maximum.
double lp_norm_kappa(const CurveGeometry& g, double p);
/// sqrt(sum_{j <= k} ||(nabla_perp)^j kappa||^2_{L^2}).
double sobolev_norm_kappa(const CurveGeometry& g, int k);

/// Length lower bound (2 pi)^2 / (2 E0) from Cauchy-Schwarz and Fenchel.
double fenchel_length_lower_bound(double energy_bound);

}  // namespace helastic
