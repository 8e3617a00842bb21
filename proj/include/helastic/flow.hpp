#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "helastic/curve.hpp"
#include "helastic/energy.hpp"

namespace helastic {

struct FlowConfig {
  double lambda = 0.1;
  std::size_t n_samples = 256;
  double dt_init = 0.0;  // 0 selects 1e-4 * (L / N)^2 from the initial curve
  double t_end = 1.0e3;
  double grad_tol = 1.0e-5;
  int redistribute_every = 200;  // accepted steps between constant-speed resamplings, 0 = never
  bool energy_backtrack = true;
  double max_dt_growth = 1.1;
  DiffScheme scheme = DiffScheme::spectral;
  double y2_floor = 1.0e-12;
  int snapshot_every = 0;  // accepted steps between stored snapshots, 0 = first and last only
  long max_steps = 2'000'000;
  double energy_slack = 1.0e-10;
  double dt_min = 1.0e-14;

  /// Throws ContractError on inconsistent settings.
  void validate() const;
};

nlohmann::json to_json(const FlowConfig& c);
/// Starts from `base` and overrides the keys present in j.
FlowConfig flow_config_from_json(const nlohmann::json& j, FlowConfig base = {});

struct FlowState {
  double t = 0.0;
  DiscreteCurve curve;
  EnergyReport report;
  double dt = 0.0;
  long steps_accepted = 0;
  long steps_rejected = 0;
  long redistributions = 0;
  long redistributions_skipped = 0;
  VectorField gradient;  // at `curve`, reused by the next step
  /// ||delta / dt + G|| / ||G|| for the step that produced this state: how far
  /// the implicit solve moved the update away from an explicit gradient step.
  double implicit_deviation = 0.0;
};

/// Evaluates report and gradient for a curve at time t.
FlowState make_state(const DiscreteCurve& c, const FlowConfig& cfg, double t = 0.0);

/// One row of the energy log, written after every accepted step.
struct LogEntry {
  double t = 0.0;
  double dt = 0.0;  // step that produced this row; 0 for the initial row
  EnergyReport report;
  double implicit_deviation = 0.0;
};

enum class Termination { grad_tol, t_end, max_steps, error };
std::string_view to_string(Termination t);

/// Raised by run(); carries the last accepted state and the log up to it.
class FlowError : public std::runtime_error {
public:
  FlowError(const std::string& what, FlowState last_good, std::vector<LogEntry> log);
  const FlowState& last_good() const { return last_good_; }
  const std::vector<LogEntry>& log() const { return log_; }

private:
  FlowState last_good_;
  std::vector<LogEntry> log_;
};

/// Advances by one accepted step. With backtracking, rejected trials (energy
/// increase, y2 below the floor, lost immersion) halve dt and retry.
/// Throws StiffnessError once dt < dt_min; without backtracking the failure
/// is thrown directly (BoundaryError / ImmersionError).
FlowState step(const FlowState& state, const FlowConfig& cfg);

/// Constant-speed resampling, kept only if E_lambda does not rise beyond the slack.
FlowState redistribute(const FlowState& state, const FlowConfig& cfg);

struct FlowResult {
  std::vector<FlowState> snapshots;  // initial, every snapshot_every accepted steps, final
  std::vector<LogEntry> log;
  FlowState final_state;
  Termination termination = Termination::t_end;
};

using FlowObserver = std::function<void(const FlowState&)>;

FlowResult run(const FlowConfig& cfg, const DiscreteCurve& initial, const FlowObserver& on_accept = {});

struct Normalized {
  DiscreteCurve curve;
  double shift = 0.0;    // horizontal translation subtracted
  double scale = 1.0;    // dilation factor applied after the translation
};

/// Horizontal translation and dilation placing the sample closest to the
/// median y1 at (0, 2 * base_length).
Normalized normalize_subconvergence(const DiscreteCurve& c, double base_length);

bool detect_critical(const EnergyReport& r, double tol);

}  // namespace helastic
