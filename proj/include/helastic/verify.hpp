#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "helastic/curve.hpp"

namespace helastic {

/// A curve and its exact time derivative at one instant.
struct FamilySample {
  DiscreteCurve curve;
  VectorField velocity;  // d_t f in chart components
};

/// Closed-form time-dependent curve with analytic velocity.
struct SyntheticFamily {
  std::string name;
  bool purely_normal = false;  // tangential speed vanishes identically
  std::function<FamilySample(std::size_t n, double t)> sample;
};

SyntheticFamily stationary_circle();
SyntheticFamily translating_circle(double speed = 0.3);
/// (R(t) sin theta, c + R(t) cos theta), R(t) = 1 + rate t, c = 2.
SyntheticFamily breathing_circle(double rate = 0.1);
/// Radial wobble of a circle whose amplitude changes in time; has tangential speed.
SyntheticFamily fourier_wobble();

SyntheticFamily translated(const SyntheticFamily& f, double shift);
SyntheticFamily dilated(const SyntheticFamily& f, double r);

struct VerifyGrid {
  std::size_t n = 256;
  double h = 1.0e-5;
  DiffScheme scheme = DiffScheme::spectral;
};

/// max_i |FD_t |d_x f|_g - (d_s phi - <V, kappa>) |d_x f|_g|.
double check_line_element_evolution(const SyntheticFamily& f, double t, const VerifyGrid& grid);

/// Normal and full curvature evolution against their right-hand sides; the
/// larger max-sample g-norm of the two residuals.
double check_kappa_evolution(const SyntheticFamily& f, double t, const VerifyGrid& grid, double s0 = -1.0);

/// |LHS - RHS| of d/dt 1/2 int |kappa|^2 + int |(nabla_perp)^2 kappa|^2 = int <Y, kappa> - 1/2 int <V, kappa> |kappa|^2
/// with Y = nabla_perp_t kappa + (nabla_perp)^4 kappa. Requires a purely normal family.
double check_integration_identity(const SyntheticFamily& f, double t, const VerifyGrid& grid);

/// Same identity with the tangential term 1/2 int d_s phi |kappa|^2 added to the right,
/// for three curves of a trajectory at times t0 < t1 < t2, sharing one parametrization;
/// velocity and time derivatives come from the non-uniform three-point stencil.
struct TimedCurve {
  const DiscreteCurve& curve;
  double t;
};
double check_integration_identity_trajectory(TimedCurve before, TimedCurve now, TimedCurve after,
                                             DiffScheme scheme = DiffScheme::spectral);

struct FirstVariationResult {
  double max_rel_err = 0.0;         // |fd - an| / (||G|| ||V||)
  double max_rel_err_pointwise = 0.0;  // |fd - an| / max(|fd|, |an|)
  int directions = 0;
};

/// Central differences of E_lambda along random smooth normal fields against <G, V>_{L^2(ds)}.
FirstVariationResult check_first_variation(const DiscreteCurve& c, double lambda, int trials, std::uint64_t seed,
                                           DiffScheme scheme = DiffScheme::spectral);
/// Same comparison for a single given direction.
FirstVariationResult check_first_variation(const DiscreteCurve& c, double lambda, const VectorField& direction,
                                           DiffScheme scheme = DiffScheme::spectral);

/// Random smooth normal field: Fourier modes 0..3 with normal coefficients, times the unit normal.
VectorField random_normal_field(const CurveGeometry& g, std::uint64_t seed);

/// Random Fourier perturbation of the circle (0, sqrt 2), radius 1 (modes 2..4, amplitudes <= 0.05).
DiscreteCurve random_smooth_curve(std::size_t n, std::uint64_t seed);

/// max over samples of the residuals of
///   nabla_s kappa = nabla_perp kappa - |kappa|^2 T
///   nabla_s^2 kappa = (nabla_perp)^2 kappa - 3 <nabla_perp kappa, kappa> T - |kappa|^2 kappa
double check_perp_vs_full_derivative(const DiscreteCurve& c, DiffScheme scheme = DiffScheme::spectral);

/// Orders log2(r_k / r_{k+1}) of successive residuals under halving.
std::vector<double> convergence_orders(std::span<const double> residuals);

struct VerifyReport {
  nlohmann::json records = nlohmann::json::array();
  bool all_pass = true;
};

/// Every check on the catalogue at the default grid plus the step-halving studies.
VerifyReport run_verification_suite(std::size_t n = 256, double h = 1.0e-5);

}  // namespace helastic
