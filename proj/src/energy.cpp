#include "helastic/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "helastic/errors.hpp"

namespace helastic {

nlohmann::json to_json(const EnergyReport& r) {
  return {{"elastic", r.elastic},     {"penalized", r.penalized},
          {"length", r.length},       {"total_abs_curv", r.total_abs_curv},
          {"grad_l2", r.grad_l2},     {"lambda", r.lambda}};
}

double elastic_energy(const CurveGeometry& g) {
  std::vector<double> k2(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) k2[i] = g.kappa_norm[i] * g.kappa_norm[i];
  return 0.5 * integrate(g, k2);
}

double penalized_energy(const CurveGeometry& g, double lambda) {
  if (!(lambda >= 0.0)) throw ContractError("penalized_energy: lambda must be >= 0");
  return elastic_energy(g) + lambda * total_length(g);
}

GradientField gradient(const CurveGeometry& g, double lambda, double s0) {
  const VectorField& k = g.nabla_perp_kappa[0];
  const VectorField& k2 = g.nabla_perp_kappa[2];
  VectorField raw(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double kk = g.kappa_norm[i] * g.kappa_norm[i];
    raw[i] = k2[i] + (0.5 * kk + s0 - lambda) * k[i];
  }
  GradientField out{normal_part(g, raw), 0.0};
  out.l2 = std::sqrt(inner_l2(g, out.values, out.values));
  return out;
}

EnergyReport evaluate(const CurveGeometry& g, double lambda) {
  EnergyReport r;
  r.lambda = lambda;
  r.elastic = elastic_energy(g);
  r.length = total_length(g);
  r.penalized = r.elastic + lambda * r.length;
  r.total_abs_curv = total_abs_curvature(g);
  r.grad_l2 = gradient(g, lambda).l2;
  return r;
}

EnergyReport evaluate(const DiscreteCurve& c, double lambda, DiffScheme scheme) {
  return evaluate(build_geometry(c, scheme), lambda);
}

double willmore_of_revolution(const DiscreteCurve& c, DiffScheme scheme) {
  const auto y1 = c.y1();
  const auto y2 = c.y2();
  const auto d1 = periodic_derivative(y1, 1, scheme);
  const auto d2 = periodic_derivative(y2, 1, scheme);
  const auto dd1 = periodic_derivative(y1, 2, scheme);
  const auto dd2 = periodic_derivative(y2, 2, scheme);
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double speed = std::hypot(d1[i], d2[i]);
    if (!(speed > 0.0)) throw ImmersionError("willmore_of_revolution: zero speed sample");
    // principal curvatures of the surface: profile curvature and the rotational one
    const double profile = -(d1[i] * dd2[i] - d2[i] * dd1[i]) / (speed * speed * speed);
    const double rotational = d1[i] / (speed * y2[i]);
    const double mean2 = (profile + rotational) * (profile + rotational);
    sum += mean2 * y2[i] * speed;
  }
  return std::numbers::pi / 2.0 * sum / static_cast<double>(c.size());
}

WillmoreDiagnostic willmore_diagnostic(const DiscreteCurve& c, DiffScheme scheme) {
  WillmoreDiagnostic d;
  d.willmore = willmore_of_revolution(c, scheme);
  d.elastic = elastic_energy(build_geometry(c, scheme));
  d.willmore_over_elastic = d.willmore / d.elastic;
  d.unhalved_over_willmore = 2.0 * d.elastic / d.willmore;
  d.stated_constant = 2.0 / std::numbers::pi;
  d.discrepancy = d.unhalved_over_willmore - d.stated_constant;
  return d;
}

double lp_norm_kappa(const CurveGeometry& g, double p) {
  if (!(p >= 1.0)) throw ContractError("lp_norm_kappa: p must be in [1, inf]");
  if (std::isinf(p)) return *std::max_element(g.kappa_norm.begin(), g.kappa_norm.end());
  std::vector<double> u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = std::pow(g.kappa_norm[i], p);
  return std::pow(integrate(g, u), 1.0 / p);
}

double sobolev_norm_kappa(const CurveGeometry& g, int k) {
  if (k < 0) throw ContractError("sobolev_norm_kappa: k must be >= 0");
  double sum = 0.0;
  VectorField X = g.nabla_perp_kappa[0];
  for (int j = 0; j <= k; ++j) {
    if (j > 0) X = (j < static_cast<int>(g.nabla_perp_kappa.size())) ? g.nabla_perp_kappa[static_cast<std::size_t>(j)]
                                                                      : nabla_s_perp(g, X);
    sum += inner_l2(g, X, X);
  }
  return std::sqrt(sum);
}

double fenchel_length_lower_bound(double energy_bound) {
  if (!(energy_bound > 0.0)) throw DomainError("fenchel_length_lower_bound: energy bound must be > 0");
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * two_pi / (2.0 * energy_bound);
}

}  // namespace helastic
