#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "helastic/energy.hpp"
#include "helastic/errors.hpp"
#include "helastic/shapes.hpp"
#include "helastic/verify.hpp"

using namespace helastic;

namespace {

constexpr double pi = std::numbers::pi;

// Circle of Euclidean radius r centered at height a is the hyperbolic circle of
// radius rho with sinh rho = r / sqrt(a^2 - r^2), cosh rho = a / sqrt(a^2 - r^2),
// geodesic curvature coth rho and length 2 pi sinh rho.
struct CircleOracle {
  double sinh_rho, cosh_rho;
  CircleOracle(double a, double r) : sinh_rho(r / std::sqrt(a * a - r * r)), cosh_rho(a / std::sqrt(a * a - r * r)) {}
  double length() const { return 2.0 * pi * sinh_rho; }
  double elastic() const { return pi * cosh_rho * cosh_rho / sinh_rho; }
  double curvature() const { return cosh_rho / sinh_rho; }
};

// Willmore energy of the torus of revolution with tube radius r and core radius a.
double torus_willmore(double a, double r) { return pi * pi * a * a / (r * std::sqrt(a * a - r * r)); }

DiscreteCurve displaced(const DiscreteCurve& c, const VectorField& v, double eps) {
  std::vector<HPoint> pts;
  for (std::size_t i = 0; i < c.size(); ++i) pts.emplace_back(c[i].y1() + eps * v[i].x, c[i].y2() + eps * v[i].y);
  return DiscreteCurve(std::move(pts));
}

double max_abs(const DiscreteCurve& c) {
  double m = 0.0;
  for (const auto& p : c.points()) m = std::max({m, std::abs(p.y1()), std::abs(p.y2())});
  return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("energies of circles") {
  const DiscreteCurve clifford = make_circle(std::sqrt(2.0), 1.0, 256);
  const CurveGeometry g = build_geometry(clifford);
  CHECK(elastic_energy(g) == doctest::Approx(2.0 * pi).epsilon(0).scale(0).epsilon(1e-3 / (2.0 * pi)));
  CHECK(std::abs(elastic_energy(g) - 2.0 * pi) <= 1e-3);
  CHECK(std::abs(total_length(g) - 2.0 * pi) <= 1e-3);
  for (auto [a, r] : {std::pair{2.0, 1.0}, {1.3, 0.4}, {5.0, 4.5}}) {
    const CircleOracle o(a, r);
    const CurveGeometry gc = build_geometry(make_circle(a, r, 256));
    CHECK(std::abs(elastic_energy(gc) - o.elastic()) <= 1e-3 * o.elastic());
    CHECK(std::abs(total_length(gc) - o.length()) <= 1e-3 * o.length());
    const CurveGeometry gs = build_geometry(make_circle(a, r, 256), DiffScheme::spectral);
    CHECK(elastic_energy(gs) == doctest::Approx(o.elastic()).epsilon(1e-10));
    CHECK(total_length(gs) == doctest::Approx(o.length()).epsilon(1e-10));
  }
}

TEST_CASE("penalized energy and report") {
  const CurveGeometry g = build_geometry(random_smooth_curve(128, 4));
  CHECK(penalized_energy(g, 0.0) == elastic_energy(g));
  for (double lambda : {0.1, 1.0, 7.5}) {
    CHECK(penalized_energy(g, lambda) == doctest::Approx(elastic_energy(g) + lambda * total_length(g)).epsilon(1e-15));
    const EnergyReport r = evaluate(g, lambda);
    CHECK(r.penalized == doctest::Approx(r.elastic + lambda * r.length).epsilon(1e-15));
    CHECK(r.elastic > 0.0);
    CHECK(r.lambda == lambda);
    CHECK(r.total_abs_curv == total_abs_curvature(g));
    CHECK(r.grad_l2 == doctest::Approx(gradient(g, lambda).l2).epsilon(1e-15));
    const auto j = to_json(r);
    for (const char* key : {"elastic", "penalized", "length", "total_abs_curv", "grad_l2", "lambda"}) CHECK(j.contains(key));
  }
  CHECK_THROWS_AS(penalized_energy(g, -1.0), ContractError);
}

TEST_CASE("dilation and translation invariance of the energies") {
  const DiscreteCurve c = random_smooth_curve(256, 9);
  const EnergyReport base = evaluate(c, 0.3, DiffScheme::spectral);
  for (double r : {0.1, 3.0, 5.0, 10.0}) {
    const EnergyReport d = evaluate(dilate(c, r), 0.3, DiffScheme::spectral);
    CHECK(d.elastic == doctest::Approx(base.elastic).epsilon(1e-12));
    CHECK(d.penalized == doctest::Approx(base.penalized).epsilon(1e-12));
    CHECK(d.length == doctest::Approx(base.length).epsilon(1e-12));
    CHECK(d.total_abs_curv == doctest::Approx(base.total_abs_curv).epsilon(1e-12));
    CHECK(d.grad_l2 == doctest::Approx(base.grad_l2).epsilon(1e-10));
  }
  const EnergyReport t = evaluate(translate_h(c, 12.5), 0.3, DiffScheme::spectral);
  CHECK(t.elastic == doctest::Approx(base.elastic).epsilon(1e-12));
  CHECK(t.length == doctest::Approx(base.length).epsilon(1e-12));
}

TEST_CASE("critical circles have vanishing gradient") {
  for (double lambda : {0.0, 0.1, 0.5, 1.0, 3.0}) {
    const double a = std::sqrt(2.0);
    const double r = critical_circle_radius(a, lambda);
    const CurveGeometry g = build_geometry(make_circle(a, r, 256), DiffScheme::spectral);
    // |kappa|^2 = 2 (1 + lambda) is the stationarity condition on circles
    CHECK(CircleOracle(a, r).curvature() == doctest::Approx(std::sqrt(2.0 * (1.0 + lambda))).epsilon(1e-14));
    const GradientField gr = gradient(g, lambda);
    CHECK(gr.l2 <= 1e-4);
    // off the critical radius the gradient is O(1)
    const CurveGeometry off = build_geometry(make_circle(a, 1.2 * r, 256), DiffScheme::spectral);
    CHECK(gradient(off, lambda).l2 > 1e-2);
  }
  const CurveGeometry g = build_geometry(make_circle(std::sqrt(2.0), 1.0, 256), DiffScheme::spectral);
  CHECK(gradient(g, 0.0).l2 <= 1e-4);
}

TEST_CASE("gradient on circles matches the radial formula") {
  // On a circle |kappa| = k is constant, so G = (k^2 / 2 + s0 - lambda) kappa.
  const double a = 2.0, r = 1.0, lambda = 0.25;
  const CircleOracle o(a, r);
  const CurveGeometry g = build_geometry(make_circle(a, r, 128), DiffScheme::spectral);
  for (double s0 : {-1.0, 0.0, 1.0}) {
    const GradientField gr = gradient(g, lambda, s0);
    const double k = o.curvature();
    const double amp = std::abs(0.5 * k * k + s0 - lambda) * k;
    CHECK(gr.l2 == doctest::Approx(amp * std::sqrt(o.length())).epsilon(1e-10));
  }
}

TEST_CASE("gradient is normal") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CurveGeometry g = build_geometry(random_smooth_curve(128, seed), DiffScheme::spectral);
    const GradientField gr = gradient(g, 0.4);
    const auto t = pointwise_inner(g, gr.values, g.tangent);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(t[i]) <= 1e-12 * (1.0 + gr.l2));
  }
}

TEST_CASE("first variation against central differences of the energy") {
  // Independent of the verify module: FD of E_lambda by direct evaluation.
  const double lambda = 0.3;
  double worst = 0.0;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const DiscreteCurve c = random_smooth_curve(128, seed);
    const CurveGeometry g = build_geometry(c, DiffScheme::spectral);
    const GradientField gr = gradient(g, lambda);
    for (std::uint64_t d = 0; d < 5; ++d) {
      const VectorField v = random_normal_field(g, 1000 * seed + d);
      const double eps = 1e-5 * (1.0 + max_abs(c));
      const double fd = (evaluate(displaced(c, v, eps), lambda, DiffScheme::spectral).penalized -
                         evaluate(displaced(c, v, -eps), lambda, DiffScheme::spectral).penalized) /
                        (2.0 * eps);
      const double an = inner_l2(g, gr.values, v);
      worst = std::max(worst, rel(fd, an));
    }
  }
  CHECK(worst <= 1e-4);
}

TEST_CASE("gradient equivariance") {
  const DiscreteCurve c = random_smooth_curve(128, 21);
  const CurveGeometry g = build_geometry(c);
  const GradientField gr = gradient(g, 0.7);
  std::vector<double> norm0(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) norm0[i] = metric_norm(g.y2(i), gr.values[i]);
  const double max0 = *std::max_element(norm0.begin(), norm0.end());
  for (double r : {0.1, 3.0, 10.0}) {
    const CurveGeometry d = build_geometry(dilate(c, r));
    const GradientField gd = gradient(d, 0.7);
    CHECK(gd.l2 == doctest::Approx(gr.l2).epsilon(1e-12));
    for (std::size_t i = 0; i < g.size(); ++i) {
      // relative to the size of the field
      CHECK(std::abs(metric_norm(d.y2(i), gd.values[i]) - norm0[i]) <= 1e-10 * max0);
      // chart components scale by r
      CHECK(metric_norm(d.y2(i), gd.values[i] - r * gr.values[i]) <= 1e-10 * max0);
    }
  }
  // Spectral fourth derivatives amplify the rounding of r * f pointwise, so
  // the spectral gradient is compared under an exactly representable dilation.
  const CurveGeometry gs = build_geometry(c, DiffScheme::spectral);
  const GradientField grs = gradient(gs, 0.7);
  const GradientField gds = gradient(build_geometry(dilate(c, 2.0), DiffScheme::spectral), 0.7);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(gds.values[i].x == 2.0 * grs.values[i].x);
    CHECK(gds.values[i].y == 2.0 * grs.values[i].y);
  }
  CHECK(gradient(build_geometry(dilate(c, 3.0), DiffScheme::spectral), 0.7).l2 == doctest::Approx(grs.l2).epsilon(1e-12));

  const auto argmax = [](const CurveGeometry& geo, const GradientField& f) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < geo.size(); ++i) {
      if (metric_norm(geo.y2(i), f.values[i]) > metric_norm(geo.y2(best), f.values[best])) best = i;
    }
    return best;
  };
  const std::size_t i0 = argmax(g, gr);
  for (double p : {-3.0, 0.5, 40.0}) {
    const CurveGeometry t = build_geometry(translate_h(c, p), DiffScheme::spectral);
    CHECK(argmax(t, gradient(t, 0.7)) == i0);
  }
}

TEST_CASE("Willmore energy of the surface of revolution") {
  const DiscreteCurve clifford = make_circle(std::sqrt(2.0), 1.0, 512);
  const double w = willmore_of_revolution(clifford);
  CHECK(std::abs(w - 2.0 * pi * pi) <= 1e-2);
  CHECK(w == doctest::Approx(torus_willmore(std::sqrt(2.0), 1.0)).epsilon(1e-10));
  for (auto [a, r] : {std::pair{2.0, 1.0}, {3.0, 0.5}, {1.1, 1.0}}) {
    CHECK(willmore_of_revolution(make_circle(a, r, 512)) == doctest::Approx(torus_willmore(a, r)).epsilon(1e-8));
    CHECK(willmore_of_revolution(make_circle(a, r, 512), DiffScheme::central2) ==
          doctest::Approx(torus_willmore(a, r)).epsilon(1e-3));
  }
  // the integrand does not depend on the parametrization
  const DiscreteCurve off_speed = make_perturbed_circle(std::sqrt(2.0), 1.0, 0, 0.0, 512);
  CHECK(willmore_of_revolution(off_speed) == doctest::Approx(w).epsilon(1e-10));

  const DiscreteCurve c = random_smooth_curve(256, 8);
  const double wc = willmore_of_revolution(c);
  CHECK(wc > 0.0);
  for (double r : {0.1, 3.0, 10.0}) CHECK(willmore_of_revolution(dilate(c, r)) == doctest::Approx(wc).epsilon(1e-10));
  // translation along the axis of revolution moves the surface rigidly
  CHECK(willmore_of_revolution(translate_h(c, 2.0)) == doctest::Approx(wc).epsilon(1e-12));
}

TEST_CASE("Willmore and elastic energy are proportional") {
  const WillmoreDiagnostic d = willmore_diagnostic(make_circle(std::sqrt(2.0), 1.0, 512));
  CHECK(std::abs(d.elastic - 2.0 * pi) <= 1e-3);
  CHECK(std::abs(d.willmore - 2.0 * pi * pi) <= 1e-2);
  CHECK(std::abs(d.willmore_over_elastic - pi) <= 1e-3);
  CHECK(d.stated_constant == doctest::Approx(2.0 / pi).epsilon(1e-15));
  CHECK(d.unhalved_over_willmore == doctest::Approx(2.0 * d.elastic / d.willmore).epsilon(1e-15));
  CHECK(d.discrepancy == doctest::Approx(d.unhalved_over_willmore - d.stated_constant).epsilon(1e-15));
  // W = pi E holds for every curve symmetric about the y2 axis
  for (std::uint64_t seed : {2u, 5u}) {
    const DiscreteCurve c = make_perturbed_circle(1.8, 0.9, 2, 0.04 * static_cast<double>(seed), 512);
    const WillmoreDiagnostic e = willmore_diagnostic(c);
    CHECK(e.willmore_over_elastic == doctest::Approx(pi).epsilon(1e-8));
  }
}

TEST_CASE("norms of the curvature") {
  // Each further normal derivative amplifies rounding by about pi N, so the
  // circle check stays at a coarse grid and the cached depth.
  const CurveGeometry circle = build_geometry(make_circle(2.0, 1.0, 64), DiffScheme::spectral);
  const double l2 = lp_norm_kappa(circle, 2.0);
  for (int k = 0; k <= kNablaPerpDepth; ++k) CHECK(sobolev_norm_kappa(circle, k) == doctest::Approx(l2).epsilon(1e-10));
  const CircleOracle o(2.0, 1.0);
  CHECK(lp_norm_kappa(circle, std::numeric_limits<double>::infinity()) == doctest::Approx(o.curvature()).epsilon(1e-10));
  CHECK(lp_norm_kappa(circle, 1.0) == doctest::Approx(o.curvature() * o.length()).epsilon(1e-10));

  const DiscreteCurve c = random_smooth_curve(256, 31);
  const CurveGeometry g = build_geometry(c, DiffScheme::spectral);
  CHECK(std::pow(lp_norm_kappa(g, 2.0), 2) == doctest::Approx(2.0 * elastic_energy(g)).epsilon(1e-13));
  CHECK(lp_norm_kappa(g, 1.0) == doctest::Approx(total_abs_curvature(g)).epsilon(1e-13));
  CHECK(sobolev_norm_kappa(g, 0) == doctest::Approx(lp_norm_kappa(g, 2.0)).epsilon(1e-14));
  for (int k = 1; k <= 6; ++k) {
    const double sk = sobolev_norm_kappa(g, k);
    const double dk = std::sqrt(inner_l2(g, nabla_perp_kappa(g, k), nabla_perp_kappa(g, k)));
    CHECK(sk * sk == doctest::Approx(std::pow(sobolev_norm_kappa(g, k - 1), 2) + dk * dk).epsilon(1e-12));
  }
  for (double r : {0.1, 3.0, 10.0}) {
    const CurveGeometry d = build_geometry(dilate(c, r), DiffScheme::spectral);
    for (double p : {1.0, 2.0, 3.5, std::numeric_limits<double>::infinity()}) {
      CHECK(lp_norm_kappa(d, p) == doctest::Approx(lp_norm_kappa(g, p)).epsilon(1e-10));
    }
    for (int k = 0; k <= 4; ++k) CHECK(sobolev_norm_kappa(d, k) == doctest::Approx(sobolev_norm_kappa(g, k)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(lp_norm_kappa(g, 0.5), ContractError);
  CHECK_THROWS_AS(sobolev_norm_kappa(g, -1), ContractError);
}

TEST_CASE("interpolation inequality for the first normal derivative") {
  // ||grad k||^2 = -<grad^2 k, k> <= ||grad^2 k|| ||k|| <= ||k||_{W22} ||k||, so the
  // ratio with exponent 1/2 is at most 1 on every closed curve.
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const DiscreteCurve c = random_smooth_curve(256, 500 + seed);
    const CurveGeometry g = build_geometry(c, DiffScheme::spectral);
    const VectorField d1 = nabla_perp_kappa(g, 1), d2 = nabla_perp_kappa(g, 2);
    const double n1 = std::sqrt(inner_l2(g, d1, d1));
    CHECK(n1 * n1 == doctest::Approx(-inner_l2(g, d2, g.kappa)).epsilon(1e-8));
    const double ratio = n1 / (std::sqrt(sobolev_norm_kappa(g, 2)) * std::sqrt(lp_norm_kappa(g, 2.0)));
    worst = std::max(worst, ratio);
    CHECK(total_length(g) >= fenchel_length_lower_bound(elastic_energy(g)));
    for (double r : {0.1, 10.0}) {
      const CurveGeometry d = build_geometry(dilate(c, r), DiffScheme::spectral);
      const VectorField e1 = nabla_perp_kappa(d, 1);
      const double dr = std::sqrt(inner_l2(d, e1, e1)) / (std::sqrt(sobolev_norm_kappa(d, 2)) * std::sqrt(lp_norm_kappa(d, 2.0)));
      CHECK(dr == doctest::Approx(ratio).epsilon(1e-8));
    }
  }
  CHECK(worst <= 1.0);
  CHECK(worst > 0.0);
}

TEST_CASE("Fenchel bounds") {
  CHECK(fenchel_length_lower_bound(2.0 * pi) == doctest::Approx(pi).epsilon(1e-15));
  double prev = std::numeric_limits<double>::infinity();
  for (double e : {0.5, 1.0, 2.0, 10.0, 100.0}) {
    const double b = fenchel_length_lower_bound(e);
    CHECK(b < prev);
    prev = b;
  }
  CHECK_THROWS_AS(fenchel_length_lower_bound(0.0), DomainError);
  CHECK_THROWS_AS(fenchel_length_lower_bound(-1.0), DomainError);

  std::vector<DiscreteCurve> curves{make_circle(std::sqrt(2.0), 1.0, 256), make_circle(10.0, 9.99, 256),
                                    make_circle(1.0, 0.01, 256), make_perturbed_circle(2.0, 1.0, 5, 0.2, 256)};
  for (std::uint64_t seed = 0; seed < 10; ++seed) curves.push_back(random_smooth_curve(256, seed));
  curves.push_back(make_fourier_curve({{1, 0.0, 1.0, 0.3, 0.0}, {0, 0.0, 0.0, 2.0, 0.0}, {2, 0.2, 0.0, 0.0, 0.1}}, 256));
  for (const auto& c : curves) {
    const CurveGeometry g = build_geometry(c, DiffScheme::spectral);
    CHECK(total_abs_curvature(g) >= 2.0 * pi * (1.0 - 1e-2));
    CHECK(total_length(g) >= fenchel_length_lower_bound(elastic_energy(g)));
    // Cauchy-Schwarz form of the same bound
    CHECK(total_abs_curvature(g) <= std::sqrt(total_length(g) * 2.0 * elastic_energy(g)) * (1.0 + 1e-12));
  }
}
