#include "helastic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "helastic/energy.hpp"
#include "helastic/errors.hpp"
#include "helastic/shapes.hpp"

namespace helastic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double theta(std::size_t i, std::size_t n) { return kTwoPi * static_cast<double>(i) / static_cast<double>(n); }

FamilySample radial_family(std::size_t n, double center, auto radius, auto radius_dt) {
  std::vector<HPoint> pts;
  VectorField vel(n);
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = theta(i, n);
    const double r = radius(th);
    const double rt = radius_dt(th);
    pts.emplace_back(r * std::sin(th), center + r * std::cos(th));
    vel[i] = {rt * std::sin(th), rt * std::cos(th)};
  }
  return {DiscreteCurve(std::move(pts)), std::move(vel)};
}

// Three geometries around one instant plus the weights of the first-derivative stencil.
struct TimeStencil {
  CurveGeometry before, now, after;
  double w_before, w_now, w_after;
  VectorField velocity;

  double d_dt(double b, double n, double a) const { return w_before * b + w_now * n + w_after * a; }
  Vec2 d_dt(const Vec2& b, const Vec2& n, const Vec2& a) const { return w_before * b + w_now * n + w_after * a; }
};

TimeStencil synthetic_stencil(const SyntheticFamily& f, double t, const VerifyGrid& grid) {
  if (!(grid.h > 0.0)) throw ContractError("time step must be > 0");
  FamilySample mid = f.sample(grid.n, t);
  return {build_geometry(f.sample(grid.n, t - grid.h).curve, grid.scheme), build_geometry(mid.curve, grid.scheme),
          build_geometry(f.sample(grid.n, t + grid.h).curve, grid.scheme),
          -0.5 / grid.h, 0.0, 0.5 / grid.h, std::move(mid.velocity)};
}

struct Split {
  VectorField normal;
  std::vector<double> phi;
};

Split decompose(const CurveGeometry& g, const VectorField& velocity) {
  Split s{VectorField(g.size()), std::vector<double>(g.size())};
  for (std::size_t i = 0; i < g.size(); ++i) {
    s.phi[i] = metric_inner(g.y2(i), velocity[i], g.tangent[i]);
    s.normal[i] = velocity[i] - s.phi[i] * g.tangent[i];
  }
  return s;
}

// nabla_{d_t} kappa at the middle time: time derivative of the chart components
// corrected by the connection along d_t f.
VectorField nabla_t_kappa(const TimeStencil& st) {
  const CurveGeometry& g = st.now;
  VectorField out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec2 kt = st.d_dt(st.before.kappa[i], g.kappa[i], st.after.kappa[i]);
    out[i] = covariant_derivative(g.y2(i), st.velocity[i], g.kappa[i], kt);
  }
  return out;
}

double max_norm(const CurveGeometry& g, const VectorField& r) {
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, metric_norm(g.y2(i), r[i]));
  return m;
}

double integration_residual(const TimeStencil& st) {
  const CurveGeometry& g = st.now;
  const Split sp = decompose(g, st.velocity);
  auto half_energy = [](const CurveGeometry& c) { return elastic_energy(c); };
  const double d_energy = st.d_dt(half_energy(st.before), half_energy(g), half_energy(st.after));
  const VectorField& k = g.kappa;
  const VectorField& k2 = g.nabla_perp_kappa[2];
  const VectorField& k4 = g.nabla_perp_kappa[4];
  const VectorField kt_perp = normal_part(g, nabla_t_kappa(st));
  VectorField y(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) y[i] = kt_perp[i] + k4[i];

  const auto dphi = d_ds(g, sp.phi);
  std::vector<double> vk_k2(g.size()), dphi_k2(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double kk = g.kappa_norm[i] * g.kappa_norm[i];
    vk_k2[i] = metric_inner(g.y2(i), sp.normal[i], k[i]) * kk;
    dphi_k2[i] = dphi[i] * kk;
  }
  const double lhs = d_energy + inner_l2(g, k2, k2);
  const double rhs = inner_l2(g, y, k) - 0.5 * integrate(g, vk_k2) + 0.5 * integrate(g, dphi_k2);
  return std::abs(lhs - rhs);
}

}  // namespace

SyntheticFamily stationary_circle() {
  return {"stationary_circle", true, [](std::size_t n, double) {
            return radial_family(n, 2.0, [](double) { return 1.0; }, [](double) { return 0.0; });
          }};
}

SyntheticFamily translating_circle(double speed) {
  return {"translating_circle", false, [speed](std::size_t n, double t) {
            FamilySample s = radial_family(n, 2.0, [](double) { return 1.0; }, [](double) { return 0.0; });
            s.curve = translate_h(s.curve, -speed * t);
            for (auto& v : s.velocity) v = {speed, 0.0};
            return s;
          }};
}

SyntheticFamily breathing_circle(double rate) {
  return {"breathing_circle", true, [rate](std::size_t n, double t) {
            return radial_family(n, 2.0, [&](double) { return 1.0 + rate * t; }, [&](double) { return rate; });
          }};
}

SyntheticFamily fourier_wobble() {
  return {"fourier_wobble", false, [](std::size_t n, double t) {
            return radial_family(
                n, 2.0, [&](double th) { return 1.0 + 0.1 * std::sin(3.0 * th) + 0.05 * t * std::cos(2.0 * th); },
                [&](double th) { return 0.05 * std::cos(2.0 * th); });
          }};
}

SyntheticFamily translated(const SyntheticFamily& f, double shift) {
  return {f.name, f.purely_normal, [f, shift](std::size_t n, double t) {
            FamilySample s = f.sample(n, t);
            s.curve = translate_h(s.curve, shift);
            return s;
          }};
}

SyntheticFamily dilated(const SyntheticFamily& f, double r) {
  return {f.name, f.purely_normal, [f, r](std::size_t n, double t) {
            FamilySample s = f.sample(n, t);
            s.curve = dilate(s.curve, r);
            for (auto& v : s.velocity) v = r * v;
            return s;
          }};
}

double check_line_element_evolution(const SyntheticFamily& f, double t, const VerifyGrid& grid) {
  const TimeStencil st = synthetic_stencil(f, t, grid);
  const CurveGeometry& g = st.now;
  const Split sp = decompose(g, st.velocity);
  const auto dphi = d_ds(g, sp.phi);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double lhs = st.d_dt(st.before.ds[i], g.ds[i], st.after.ds[i]);
    const double rhs = (dphi[i] - metric_inner(g.y2(i), sp.normal[i], g.kappa[i])) * g.ds[i];
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double check_kappa_evolution(const SyntheticFamily& f, double t, const VerifyGrid& grid, double s0) {
  const TimeStencil st = synthetic_stencil(f, t, grid);
  const CurveGeometry& g = st.now;
  const Split sp = decompose(g, st.velocity);
  const VectorField full_lhs = nabla_t_kappa(st);
  const VectorField perp_lhs = normal_part(g, full_lhs);
  const VectorField dv = nabla_s_perp(g, sp.normal);
  const VectorField ddv = nabla_s_perp(g, dv);
  const VectorField dk = nabla_s(g, g.kappa);
  const VectorField& dk_perp = g.nabla_perp_kappa[1];
  VectorField full_res(g.size()), perp_res(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double y2 = g.y2(i);
    const Vec2 common = ddv[i] + metric_inner(y2, sp.normal[i], g.kappa[i]) * g.kappa[i] + s0 * sp.normal[i];
    const Vec2 full_rhs = common - metric_inner(y2, dv[i], g.kappa[i]) * g.tangent[i] + sp.phi[i] * dk[i];
    const Vec2 perp_rhs = common + sp.phi[i] * dk_perp[i];
    full_res[i] = full_lhs[i] - full_rhs;
    perp_res[i] = perp_lhs[i] - perp_rhs;
  }
  return std::max(max_norm(g, full_res), max_norm(g, perp_res));
}

double check_integration_identity(const SyntheticFamily& f, double t, const VerifyGrid& grid) {
  if (!f.purely_normal) {
    throw ContractError("integration identity needs a purely normal family, '" + f.name + "' moves tangentially");
  }
  return integration_residual(synthetic_stencil(f, t, grid));
}

double check_integration_identity_trajectory(TimedCurve before, TimedCurve now, TimedCurve after, DiffScheme scheme) {
  const double a = now.t - before.t;
  const double b = after.t - now.t;
  if (!(a > 0.0) || !(b > 0.0)) throw ContractError("trajectory times must increase");
  if (before.curve.size() != now.curve.size() || after.curve.size() != now.curve.size()) {
    throw ContractError("trajectory curves must share one grid");
  }
  TimeStencil st{build_geometry(before.curve, scheme), build_geometry(now.curve, scheme),
                 build_geometry(after.curve, scheme), -b / (a * (a + b)), (b - a) / (a * b), a / (b * (a + b)),
                 VectorField(now.curve.size())};
  for (std::size_t i = 0; i < now.curve.size(); ++i) {
    st.velocity[i] = st.d_dt(before.curve[i].chart(), now.curve[i].chart(), after.curve[i].chart());
  }
  return integration_residual(st);
}

VectorField random_normal_field(const CurveGeometry& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> coeff(0.0, 1.0);
  std::vector<double> amp(g.size(), 0.0);
  for (int k = 0; k < 4; ++k) {
    const double a = coeff(rng);
    const double b = coeff(rng);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(g.size());
      amp[i] += a * std::cos(kTwoPi * k * x) + b * std::sin(kTwoPi * k * x);
    }
  }
  VectorField v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = amp[i] * Vec2{-g.tangent[i].y, g.tangent[i].x};
  return v;
}

DiscreteCurve random_smooth_curve(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-0.05, 0.05);
  std::vector<std::array<double, 2>> modes;
  for (int k = 2; k <= 4; ++k) modes.push_back({coeff(rng), coeff(rng)});
  std::vector<HPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = theta(i, n);
    double r = 1.0;
    for (int k = 2; k <= 4; ++k) {
      const auto& m = modes[static_cast<std::size_t>(k - 2)];
      r += m[0] * std::cos(k * th) + m[1] * std::sin(k * th);
    }
    pts.emplace_back(r * std::sin(th), std::numbers::sqrt2 + r * std::cos(th));
  }
  return DiscreteCurve(std::move(pts));
}

FirstVariationResult check_first_variation(const DiscreteCurve& c, double lambda, const VectorField& direction,
                                           DiffScheme scheme) {
  const CurveGeometry g = build_geometry(c, scheme);
  if (direction.size() != c.size()) throw ContractError("first variation: direction has the wrong size");
  const GradientField grad = gradient(g, lambda);
  double fmax = 0.0;
  for (const auto& p : c.points()) fmax = std::max({fmax, std::abs(p.y1()), std::abs(p.y2())});
  const double eps = 1.0e-5 * (1.0 + fmax);
  auto shifted = [&](double e) {
    std::vector<HPoint> pts;
    pts.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      pts.emplace_back(c[i].y1() + e * direction[i].x, c[i].y2() + e * direction[i].y);
    }
    return penalized_energy(build_geometry(DiscreteCurve(std::move(pts)), scheme), lambda);
  };
  const double fd = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
  const double an = inner_l2(g, grad.values, direction);
  const double scale = grad.l2 * std::sqrt(inner_l2(g, direction, direction));
  FirstVariationResult r;
  r.directions = 1;
  const double diff = std::abs(fd - an);
  r.max_rel_err = scale > 0.0 ? diff / scale : diff;
  const double mag = std::max(std::abs(fd), std::abs(an));
  r.max_rel_err_pointwise = mag > 0.0 ? diff / mag : diff;
  return r;
}

FirstVariationResult check_first_variation(const DiscreteCurve& c, double lambda, int trials, std::uint64_t seed,
                                           DiffScheme scheme) {
  if (trials < 1) throw ContractError("first variation: trials must be >= 1");
  const CurveGeometry g = build_geometry(c, scheme);
  FirstVariationResult worst;
  for (int k = 0; k < trials; ++k) {
    const auto r = check_first_variation(c, lambda, random_normal_field(g, seed + static_cast<std::uint64_t>(k)), scheme);
    worst.max_rel_err = std::max(worst.max_rel_err, r.max_rel_err);
    worst.max_rel_err_pointwise = std::max(worst.max_rel_err_pointwise, r.max_rel_err_pointwise);
    ++worst.directions;
  }
  return worst;
}

double check_perp_vs_full_derivative(const DiscreteCurve& c, DiffScheme scheme) {
  const CurveGeometry g = build_geometry(c, scheme);
  const VectorField dk = nabla_s(g, g.kappa);
  const VectorField ddk = nabla_s(g, dk);
  const VectorField& p1 = g.nabla_perp_kappa[1];
  const VectorField& p2 = g.nabla_perp_kappa[2];
  VectorField r1(g.size()), r2(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double y2 = g.y2(i);
    const double kk = g.kappa_norm[i] * g.kappa_norm[i];
    r1[i] = dk[i] - (p1[i] - kk * g.tangent[i]);
    r2[i] = ddk[i] - (p2[i] - 3.0 * metric_inner(y2, p1[i], g.kappa[i]) * g.tangent[i] - kk * g.kappa[i]);
  }
  return std::max(max_norm(g, r1), max_norm(g, r2));
}

std::vector<double> convergence_orders(std::span<const double> residuals) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < residuals.size(); ++i) out.push_back(std::log2(residuals[i] / residuals[i + 1]));
  return out;
}

namespace {

struct Suite {
  VerifyReport report;

  void record(nlohmann::json rec, double residual, double threshold) {
    const bool pass = std::isfinite(residual) && residual <= threshold;
    rec["residual"] = residual;
    rec["threshold"] = threshold;
    rec["pass"] = pass;
    report.all_pass = report.all_pass && pass;
    report.records.push_back(std::move(rec));
  }

  void record_orders(nlohmann::json rec, const std::vector<double>& residuals, double lo, double hi) {
    const auto orders = convergence_orders(residuals);
    bool pass = true;
    for (double o : orders) pass = pass && o >= lo && o <= hi;
    rec["residuals"] = residuals;
    rec["orders"] = orders;
    rec["order_range"] = {lo, hi};
    rec["pass"] = pass;
    report.all_pass = report.all_pass && pass;
    report.records.push_back(std::move(rec));
  }
};

}  // namespace

VerifyReport run_verification_suite(std::size_t n, double h) {
  Suite s;
  const VerifyGrid grid{n, h, DiffScheme::spectral};
  auto base = [&](const char* check, const SyntheticFamily& f) {
    return nlohmann::json{{"check", check}, {"family", f.name}, {"n", grid.n}, {"h", grid.h},
                          {"scheme", std::string(to_string(grid.scheme))}};
  };

  const auto stationary = stationary_circle();
  const auto translating = translating_circle();
  const auto breathing = breathing_circle();
  const auto wobble = fourier_wobble();

  s.record(base("line_element_evolution", translating), check_line_element_evolution(translating, 0.0, grid), 1e-8);
  s.record(base("line_element_evolution", breathing), check_line_element_evolution(breathing, 0.0, grid), 1e-6);
  s.record(base("line_element_evolution", wobble), check_line_element_evolution(wobble, 0.0, grid), 1e-5);
  s.record(base("kappa_evolution", stationary), check_kappa_evolution(stationary, 0.0, grid), 1e-10);
  s.record(base("kappa_evolution", breathing), check_kappa_evolution(breathing, 0.0, grid), 1e-5);
  s.record(base("kappa_evolution", wobble), check_kappa_evolution(wobble, 0.0, grid), 1e-5);
  s.record(base("integration_identity", stationary), check_integration_identity(stationary, 0.0, grid), 1e-10);
  s.record(base("integration_identity", breathing), check_integration_identity(breathing, 0.0, grid), 1e-5);

  const std::vector<double> steps{0.04, 0.02, 0.01, 0.005};
  auto study = [&](const char* check, const SyntheticFamily& f, auto fn) {
    std::vector<double> res;
    for (double hh : steps) res.push_back(fn(f, 0.0, VerifyGrid{grid.n, hh, grid.scheme}));
    nlohmann::json rec = base(check, f);
    rec["h"] = steps;
    rec["study"] = "time_step";
    s.record_orders(std::move(rec), res, 1.8, 2.2);
  };
  study("line_element_evolution", breathing, check_line_element_evolution);
  study("kappa_evolution", breathing, [](const SyntheticFamily& f, double t, const VerifyGrid& g) {
    return check_kappa_evolution(f, t, g);
  });
  study("kappa_evolution", wobble, [](const SyntheticFamily& f, double t, const VerifyGrid& g) {
    return check_kappa_evolution(f, t, g);
  });
  study("integration_identity", breathing, check_integration_identity);

  {
    const DiscreteCurve circle = make_circle(std::numbers::sqrt2, 1.0, 128);
    const CurveGeometry g = build_geometry(circle, DiffScheme::spectral);
    VectorField dir(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(g.size());
      dir[i] = std::sin(kTwoPi * 2.0 * x) * Vec2{-g.tangent[i].y, g.tangent[i].x};
    }
    const auto r = check_first_variation(circle, 0.3, dir);
    // <G, V> vanishes by symmetry here, so the error is measured against ||G|| ||V||
    s.record({{"check", "first_variation"}, {"family", "circle_sin2_normal"}, {"n", 128}, {"lambda", 0.3},
              {"error_measure", "normalized"}},
             r.max_rel_err, 1e-4);
  }
  {
    FirstVariationResult worst;
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto r = check_first_variation(random_smooth_curve(128, 1000 + k), 0.3, 5, 7000 + 10 * k);
      worst.max_rel_err = std::max(worst.max_rel_err, r.max_rel_err);
      worst.max_rel_err_pointwise = std::max(worst.max_rel_err_pointwise, r.max_rel_err_pointwise);
      worst.directions += r.directions;
    }
    s.record({{"check", "first_variation"}, {"family", "random_fourier_curves"}, {"n", 128}, {"lambda", 0.3},
              {"directions", worst.directions}, {"error_measure", "relative"},
              {"max_rel_err_normalized", worst.max_rel_err}},
             worst.max_rel_err_pointwise, 1e-4);
  }

  s.record({{"check", "perp_vs_full_derivative"}, {"family", "circle"}, {"n", grid.n}},
           check_perp_vs_full_derivative(make_circle(2.0, 1.0, grid.n)), 1e-6);
  s.record({{"check", "perp_vs_full_derivative"}, {"family", "random_fourier_curve"}, {"n", grid.n}},
           check_perp_vs_full_derivative(random_smooth_curve(grid.n, 42)), 1e-5);
  {
    std::vector<double> res;
    const std::vector<std::size_t> sizes{128, 256, 512, 1024};
    for (std::size_t m : sizes) res.push_back(check_perp_vs_full_derivative(random_smooth_curve(m, 42), DiffScheme::central2));
    s.record_orders({{"check", "perp_vs_full_derivative"}, {"family", "random_fourier_curve"}, {"study", "grid"},
                     {"n", sizes}, {"scheme", "central2"}},
                    res, 1.8, 2.2);
  }
  return s.report;
}

}  // namespace helastic
