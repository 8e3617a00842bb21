#include "helastic/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helastic/banded.hpp"
#include "helastic/curve_io.hpp"
#include "helastic/errors.hpp"

namespace helastic {

void FlowConfig::validate() const {
  auto fail = [](const std::string& m) { throw ContractError("flow config: " + m); };
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda must be a finite value >= 0");
  if (n_samples < DiscreteCurve::kMinSamples || n_samples % 2 != 0) fail("n must be even and >= 16");
  if (!(dt_init >= 0.0) || !std::isfinite(dt_init)) fail("dt must be > 0 (or 0 for automatic)");
  if (!(t_end > 0.0)) fail("t_end must be > 0");
  if (dt_init > t_end) fail("dt must not exceed t_end");
  if (!(grad_tol > 0.0)) fail("grad_tol must be > 0");
  if (redistribute_every < 0) fail("redistribute_every must be >= 0");
  if (!(max_dt_growth >= 1.0) || !std::isfinite(max_dt_growth)) fail("max_dt_growth must be >= 1");
  if (!(y2_floor > 0.0)) fail("y2_floor must be > 0");
  if (snapshot_every < 0) fail("snapshot_every must be >= 0");
  if (max_steps <= 0) fail("max_steps must be > 0");
  if (!(energy_slack >= 0.0)) fail("energy_slack must be >= 0");
  if (!(dt_min > 0.0)) fail("dt_min must be > 0");
}

nlohmann::json to_json(const FlowConfig& c) {
  return {{"lambda", c.lambda},
          {"n_samples", c.n_samples},
          {"dt_init", c.dt_init},
          {"t_end", c.t_end},
          {"grad_tol", c.grad_tol},
          {"redistribute_every", c.redistribute_every},
          {"energy_backtrack", c.energy_backtrack},
          {"max_dt_growth", c.max_dt_growth},
          {"scheme", std::string(to_string(c.scheme))},
          {"y2_floor", c.y2_floor},
          {"snapshot_every", c.snapshot_every},
          {"max_steps", c.max_steps},
          {"energy_slack", c.energy_slack},
          {"dt_min", c.dt_min}};
}

FlowConfig flow_config_from_json(const nlohmann::json& j, FlowConfig c) {
  if (!j.is_object()) throw ContractError("flow config must be an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "lambda") c.lambda = v.get<double>();
      else if (key == "n_samples" || key == "n") c.n_samples = v.get<std::size_t>();
      else if (key == "dt_init" || key == "dt") c.dt_init = v.get<double>();
      else if (key == "t_end") c.t_end = v.get<double>();
      else if (key == "grad_tol") c.grad_tol = v.get<double>();
      else if (key == "redistribute_every") c.redistribute_every = v.get<int>();
      else if (key == "energy_backtrack") c.energy_backtrack = v.get<bool>();
      else if (key == "max_dt_growth") c.max_dt_growth = v.get<double>();
      else if (key == "scheme") c.scheme = parse_diff_scheme(v.get<std::string>());
      else if (key == "y2_floor") c.y2_floor = v.get<double>();
      else if (key == "snapshot_every") c.snapshot_every = v.get<int>();
      else if (key == "max_steps") c.max_steps = v.get<long>();
      else if (key == "energy_slack") c.energy_slack = v.get<double>();
      else if (key == "dt_min") c.dt_min = v.get<double>();
      else throw ContractError("flow config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("flow config: ") + e.what());
  }
  return c;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::grad_tol: return "grad_tol";
    case Termination::t_end: return "t_end";
    case Termination::max_steps: return "max_steps";
    case Termination::error: return "error";
  }
  return "unknown";
}

FlowError::FlowError(const std::string& what, FlowState last_good, std::vector<LogEntry> log)
    : std::runtime_error(what), last_good_(std::move(last_good)), log_(std::move(log)) {}

FlowState make_state(const DiscreteCurve& c, const FlowConfig& cfg, double t) {
  const CurveGeometry g = build_geometry(c, cfg.scheme);
  GradientField grad = gradient(g, cfg.lambda);
  FlowState s{t, c, {}, cfg.dt_init, 0, 0, 0, 0, std::move(grad.values), 0.0};
  s.report.lambda = cfg.lambda;
  s.report.elastic = elastic_energy(g);
  s.report.length = total_length(g);
  s.report.penalized = s.report.elastic + cfg.lambda * s.report.length;
  s.report.total_abs_curv = total_abs_curvature(g);
  s.report.grad_l2 = grad.l2;
  if (!(s.dt > 0.0)) {
    const double h = s.report.length / static_cast<double>(c.size());
    s.dt = 1.0e-4 * h * h;
  }
  return s;
}

namespace {

// The spectral gradient's leading symbol exceeds that of the five-point
// fourth difference by (pi/2)^4 at the Nyquist mode; the implicit part is
// scaled up to match so that the highest modes stay damped.
double implicit_scale(DiffScheme s) {
  if (s == DiffScheme::spectral) {
    const double q = std::numbers::pi / 2.0;
    return q * q * q * q;
  }
  return 1.0;
}

enum class TrialOutcome { accepted, energy_increase, boundary, immersion, non_finite };

struct Trial {
  TrialOutcome outcome;
  std::optional<FlowState> state;
  std::string detail;
};

Trial try_step(const FlowState& s, const FlowConfig& cfg, double dt) {
  const std::size_t n = s.curve.size();
  const auto y1 = s.curve.y1();
  const auto y2 = s.curve.y2();
  const auto d1 = periodic_derivative(y1, 1, cfg.scheme);
  const auto d2 = periodic_derivative(y2, 1, cfg.scheme);

  // (A^{-1} + dt c D4) delta = -dt A^{-1} G, A = diag(y2^4 / |f'|_e^4)
  const double nn = static_cast<double>(n);
  const double stiff = dt * implicit_scale(cfg.scheme) * nn * nn * nn * nn;
  std::vector<std::array<double, 5>> rows(n);
  std::vector<double> inv_a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sp2 = d1[i] * d1[i] + d2[i] * d2[i];
    const double y2sq = y2[i] * y2[i];
    inv_a[i] = (sp2 * sp2) / (y2sq * y2sq);
    rows[i] = {stiff, -4.0 * stiff, 6.0 * stiff + inv_a[i], -4.0 * stiff, stiff};
  }
  const CyclicPentadiagonal system(std::move(rows));
  std::vector<double> r1(n), r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    r1[i] = -dt * inv_a[i] * s.gradient[i].x;
    r2[i] = -dt * inv_a[i] * s.gradient[i].y;
  }
  const auto delta1 = system.solve(r1);
  const auto delta2 = system.solve(r2);

  double dev2 = 0.0, grad2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 g = s.gradient[i];
    const Vec2 e{delta1[i] / dt + g.x, delta2[i] / dt + g.y};
    const double w = std::hypot(d1[i], d2[i]) / (y2[i] * y2[i] * y2[i]);  // ds / y2^2
    dev2 += w * dot(e, e);
    grad2 += w * dot(g, g);
  }
  const double deviation = grad2 > 0.0 ? std::sqrt(dev2 / grad2) : 0.0;

  std::vector<HPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = y1[i] + delta1[i];
    const double b = y2[i] + delta2[i];
    if (!std::isfinite(a) || !std::isfinite(b)) return {TrialOutcome::non_finite, std::nullopt, "non-finite sample"};
    if (!(b > cfg.y2_floor)) {
      return {TrialOutcome::boundary, std::nullopt,
              "sample " + std::to_string(i) + " reached y2 = " + format_real(b) + " below the floor"};
    }
    pts.emplace_back(a, b);
  }
  try {
    FlowState next = make_state(DiscreteCurve(std::move(pts)), cfg, s.t + dt);
    next.implicit_deviation = deviation;
    if (!std::isfinite(next.report.penalized) || !std::isfinite(next.report.grad_l2)) {
      return {TrialOutcome::non_finite, std::nullopt, "non-finite energy"};
    }
    if (next.report.penalized > s.report.penalized + cfg.energy_slack) {
      return {TrialOutcome::energy_increase, std::move(next), "energy increase"};
    }
    return {TrialOutcome::accepted, std::move(next), {}};
  } catch (const ImmersionError& e) {
    return {TrialOutcome::immersion, std::nullopt, e.what()};
  }
}

}  // namespace

FlowState step(const FlowState& state, const FlowConfig& cfg) {
  double dt = std::min(state.dt, cfg.t_end - state.t);
  const bool clamped = dt < state.dt;
  long rejected = 0;
  for (;;) {
    if (!(dt >= cfg.dt_min)) {
      throw StiffnessError("time step underflow: dt = " + format_real(dt) + " after " + std::to_string(rejected) +
                           " rejections at t = " + format_real(state.t));
    }
    Trial trial = try_step(state, cfg, dt);
    if (!cfg.energy_backtrack && trial.outcome != TrialOutcome::accepted) {
      switch (trial.outcome) {
        case TrialOutcome::energy_increase: trial.outcome = TrialOutcome::accepted; break;
        case TrialOutcome::boundary: throw BoundaryError(trial.detail);
        case TrialOutcome::immersion: throw ImmersionError(trial.detail);
        default: throw StiffnessError(trial.detail);
      }
    }
    if (trial.outcome == TrialOutcome::accepted) {
      FlowState next = std::move(*trial.state);
      next.steps_accepted = state.steps_accepted + 1;
      next.steps_rejected = state.steps_rejected + rejected;
      next.redistributions = state.redistributions;
      next.redistributions_skipped = state.redistributions_skipped;
      next.dt = clamped && rejected == 0 ? state.dt : dt * cfg.max_dt_growth;
      return next;
    }
    ++rejected;
    dt *= 0.5;
  }
}

FlowState redistribute(const FlowState& state, const FlowConfig& cfg) {
  FlowState out = state;
  try {
    FlowState trial = make_state(reparametrize_constant_speed(state.curve), cfg, state.t);
    if (trial.report.penalized <= state.report.penalized + cfg.energy_slack) {
      out.curve = std::move(trial.curve);
      out.report = trial.report;
      out.gradient = std::move(trial.gradient);
      ++out.redistributions;
      return out;
    }
  } catch (const ImmersionError&) {
  }
  ++out.redistributions_skipped;
  return out;
}

FlowResult run(const FlowConfig& cfg, const DiscreteCurve& initial, const FlowObserver& on_accept) {
  cfg.validate();
  if (initial.size() != cfg.n_samples) {
    throw ContractError("flow: initial curve has " + std::to_string(initial.size()) + " samples, config asks for " +
                        std::to_string(cfg.n_samples));
  }
  FlowState state = make_state(initial, cfg);
  FlowResult result{{state}, {{0.0, 0.0, state.report, 0.0}}, state, Termination::t_end};
  try {
    for (;;) {
      if (detect_critical(state.report, cfg.grad_tol)) {
        result.termination = Termination::grad_tol;
        break;
      }
      if (state.t >= cfg.t_end) {
        result.termination = Termination::t_end;
        break;
      }
      if (state.steps_accepted >= cfg.max_steps) {
        result.termination = Termination::max_steps;
        break;
      }
      const double t0 = state.t;
      state = step(state, cfg);
      result.log.push_back({state.t, state.t - t0, state.report, state.implicit_deviation});
      if (cfg.redistribute_every > 0 && state.steps_accepted % cfg.redistribute_every == 0) {
        state = redistribute(state, cfg);
      }
      if (on_accept) on_accept(state);
      if (cfg.snapshot_every > 0 && state.steps_accepted % cfg.snapshot_every == 0) {
        result.snapshots.push_back(state);
      }
    }
  } catch (const std::runtime_error& e) {
    throw FlowError(e.what(), state, std::move(result.log));
  }
  if (result.snapshots.back().steps_accepted != state.steps_accepted) result.snapshots.push_back(state);
  result.final_state = state;
  return result;
}

Normalized normalize_subconvergence(const DiscreteCurve& c, double base_length) {
  if (!(base_length > 0.0)) throw DomainError("normalize_subconvergence: base length must be > 0");
  std::vector<double> y1 = c.y1();
  std::vector<double> sorted = y1;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(y1[i] - median) < std::abs(y1[best] - median)) best = i;
  }
  const double shift = c[best].y1();
  const double scale = 2.0 * base_length / c[best].y2();
  return {dilate(translate_h(c, shift), scale), shift, scale};
}

bool detect_critical(const EnergyReport& r, double tol) {
  if (!(tol > 0.0)) throw ContractError("detect_critical: tol must be > 0");
  return r.grad_l2 < tol;
}

}  // namespace helastic
