// Command-line driver: flows, initial curves, the verification suite and
// plot-ready reports.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "helastic/config.hpp"
#include "helastic/curve_io.hpp"
#include "helastic/energy.hpp"
#include "helastic/errors.hpp"
#include "helastic/flow.hpp"
#include "helastic/shapes.hpp"
#include "helastic/verify.hpp"

namespace fs = std::filesystem;
using namespace helastic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitRuntime = 3;

struct CurveFlags {
  std::optional<std::string> kind;
  std::optional<double> center_x, center_y, radius, amplitude;
  std::optional<int> mode;
  std::optional<std::string> file;
  std::vector<double> coefficients;  // flattened rows of five
};

void add_curve_flags(CLI::App* app, CurveFlags& f) {
  app->add_option("--curve", f.kind, "circle | perturbed_circle | fourier | random | file");
  app->add_option("--center-x", f.center_x, "horizontal center of the circle");
  app->add_option("--center-y", f.center_y, "vertical center of the circle");
  app->add_option("--radius", f.radius, "Euclidean radius of the circle");
  app->add_option("--mode", f.mode, "wavenumber of the radial perturbation");
  app->add_option("--amplitude", f.amplitude, "amplitude of the radial perturbation");
  app->add_option("--curve-file", f.file, "initial curve (.json or .csv); implies --curve file");
  app->add_option("--coefficients", f.coefficients, "fourier rows k,a,b,c,d flattened")->delimiter(',');
}

void apply_curve_flags(const CurveFlags& f, CurveDescriptor& d) {
  if (f.kind) d.kind = *f.kind;
  if (f.file) {
    d.kind = "file";
    d.path = *f.file;
  }
  if (f.center_x) d.center_x = *f.center_x;
  if (f.center_y) d.center_y = *f.center_y;
  if (f.radius) d.radius = *f.radius;
  if (f.mode) d.mode = *f.mode;
  if (f.amplitude) d.amplitude = *f.amplitude;
  if (!f.coefficients.empty()) {
    if (f.coefficients.size() % 5 != 0) throw ContractError("--coefficients needs groups of five numbers");
    d.coefficients.clear();
    for (std::size_t i = 0; i < f.coefficients.size(); i += 5) {
      d.coefficients.push_back({static_cast<int>(f.coefficients[i]), f.coefficients[i + 1], f.coefficients[i + 2],
                                f.coefficients[i + 3], f.coefficients[i + 4]});
    }
  }
}

DiscreteCurve build_initial(const RunConfig& rc) {
  if (rc.curve.kind == "random") return random_smooth_curve(rc.flow.n_samples, rc.seed);
  return make_curve(rc.curve, rc.flow.n_samples);
}

std::string energy_log_csv(const std::vector<LogEntry>& log) {
  std::string out = "t,elastic,penalized,length,tac,grad_l2\n";
  for (const auto& e : log) {
    out += format_real(e.t) + "," + format_real(e.report.elastic) + "," + format_real(e.report.penalized) + "," +
           format_real(e.report.length) + "," + format_real(e.report.total_abs_curv) + "," +
           format_real(e.report.grad_l2) + "\n";
  }
  return out;
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "t_%020.10f.json", t);
  return buf;
}

// ---- flow ------------------------------------------------------------------

struct FlowFlags {
  std::optional<std::string> config;
  std::optional<double> lambda, dt, t_end, grad_tol, max_dt_growth;
  std::optional<std::size_t> n;
  std::optional<int> snapshot_every, redistribute_every;
  std::optional<long> max_steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scheme;
  bool no_backtrack = false;
  std::string out = "flow_out";
  std::vector<double> sweep;
  CurveFlags curve;
};

RunConfig resolve_run_config(const FlowFlags& f) {
  RunConfig rc;
  if (f.config) rc = run_config_from_json(load_config_file(*f.config), rc);
  FlowConfig& c = rc.flow;
  if (f.lambda) c.lambda = *f.lambda;
  if (f.n) c.n_samples = *f.n;
  if (f.dt) {
    if (!(*f.dt > 0.0)) throw ContractError("--dt must be > 0");
    c.dt_init = *f.dt;
  }
  if (f.t_end) c.t_end = *f.t_end;
  if (f.grad_tol) c.grad_tol = *f.grad_tol;
  if (f.max_dt_growth) c.max_dt_growth = *f.max_dt_growth;
  if (f.snapshot_every) c.snapshot_every = *f.snapshot_every;
  if (f.redistribute_every) c.redistribute_every = *f.redistribute_every;
  if (f.max_steps) c.max_steps = *f.max_steps;
  if (f.scheme) c.scheme = parse_diff_scheme(*f.scheme);
  if (f.no_backtrack) c.energy_backtrack = false;
  if (f.seed) rc.seed = *f.seed;
  apply_curve_flags(f.curve, rc.curve);
  c.validate();
  return rc;
}

struct RunOutcome {
  int exit_code = kExitOk;
  std::string message;
};

RunOutcome run_one(const RunConfig& rc, const fs::path& out_dir) {
  fs::create_directories(out_dir / "snapshots");
  nlohmann::json manifest = to_json(rc);
  manifest["tool"] = "helastic";
  manifest["tool_version"] = std::string(tool_version());
  manifest["build"] = std::string(build_info());

  const DiscreteCurve initial = build_initial(rc);
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](const std::vector<LogEntry>& log, const std::string& termination) {
    manifest["termination"] = termination;
    manifest["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text_file(out_dir / "energy_log.csv", energy_log_csv(log));
    write_text_file(out_dir / "run_manifest.json", manifest.dump(2) + "\n");
  };

  try {
    const FlowResult r = run(rc.flow, initial);
    for (const auto& s : r.snapshots) write_curve(s.curve, out_dir / "snapshots" / snapshot_name(s.t));
    manifest["final_report"] = to_json(r.final_state.report);
    manifest["final_time"] = r.final_state.t;
    manifest["steps_accepted"] = r.final_state.steps_accepted;
    manifest["steps_rejected"] = r.final_state.steps_rejected;
    manifest["redistributions"] = r.final_state.redistributions;
    manifest["redistributions_skipped"] = r.final_state.redistributions_skipped;
    finish(r.log, std::string(to_string(r.termination)));
    return {kExitOk, std::string(to_string(r.termination))};
  } catch (const FlowError& e) {
    write_curve(e.last_good().curve, out_dir / "snapshots" / snapshot_name(e.last_good().t));
    write_curve(e.last_good().curve, out_dir / "last_good.json");
    manifest["error"] = e.what();
    manifest["final_report"] = to_json(e.last_good().report);
    manifest["final_time"] = e.last_good().t;
    finish(e.log(), "error");
    return {kExitRuntime, e.what()};
  }
}

int cmd_flow(const FlowFlags& f) {
  const RunConfig rc = resolve_run_config(f);
  const fs::path out(f.out);
  if (f.sweep.empty()) {
    const RunOutcome r = run_one(rc, out);
    std::cerr << "flow: " << r.message << "\n";
    return r.exit_code;
  }

  std::vector<RunConfig> jobs;
  for (double lam : f.sweep) {
    RunConfig job = rc;
    job.flow.lambda = lam;
    job.flow.validate();
    jobs.push_back(job);
  }
  std::vector<RunOutcome> results(jobs.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::min<std::size_t>(jobs.size(), std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          try {
            results[i] = run_one(jobs[i], out / ("lambda_" + format_real(jobs[i].flow.lambda)));
          } catch (const std::exception& e) {
            results[i] = {kExitRuntime, e.what()};
          }
        }
      });
    }
  }
  int code = kExitOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::cerr << "flow lambda=" << format_real(jobs[i].flow.lambda) << ": " << results[i].message << "\n";
    code = std::max(code, results[i].exit_code);
  }
  return code;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(std::size_t n, double h, const std::optional<std::string>& out) {
  if (n < DiscreteCurve::kMinSamples || n % 2 != 0) throw ContractError("--n must be even and >= 16");
  if (!(h >= 1e-7 && h <= 1e-3)) throw ContractError("--fd-step must lie in [1e-7, 1e-3]");
  const VerifyReport r = run_verification_suite(n, h);
  const nlohmann::json doc{{"all_pass", r.all_pass}, {"records", r.records}};
  const std::string text = doc.dump(2) + "\n";
  if (out) {
    write_text_file(*out, text);
  } else {
    std::cout << text;
  }
  for (const auto& rec : r.records) {
    if (!rec.at("pass").get<bool>()) std::cerr << "verify: FAILED " << rec.dump() << "\n";
  }
  return r.all_pass ? kExitOk : kExitVerifyFailed;
}

// ---- report ----------------------------------------------------------------

struct LogRow {
  double t, penalized, grad_l2;
};

std::vector<LogRow> read_energy_log(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::getline(in, line);
  if (line != "t,elastic,penalized,length,tac,grad_l2") throw ContractError("unexpected energy log header");
  std::vector<LogRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 6) throw ContractError("energy log row must have six columns");
    rows.push_back({v[0], v[2], v[5]});
  }
  if (rows.empty()) throw ContractError("energy log is empty");
  return rows;
}

int cmd_report(const std::string& dir, const std::optional<std::string>& out_opt,
               const std::optional<double>& base_length) {
  const fs::path run_dir(dir);
  const fs::path out = out_opt ? fs::path(*out_opt) : run_dir / "report";
  const auto rows = read_energy_log(run_dir / "energy_log.csv");

  std::vector<fs::path> snaps;
  for (const auto& e : fs::directory_iterator(run_dir / "snapshots")) {
    if (e.path().extension() == ".json") snaps.push_back(e.path());
  }
  if (snaps.empty()) throw ContractError("no snapshots in " + (run_dir / "snapshots").string());
  std::sort(snaps.begin(), snaps.end());
  const DiscreteCurve final_curve = read_curve(snaps.back());

  const double l0 = base_length ? *base_length : fenchel_length_lower_bound(rows.front().penalized);
  const Normalized norm = normalize_subconvergence(final_curve, l0);

  fs::create_directories(out);
  std::string energy = "t,penalized\n", grad = "t,grad_l2\n";
  for (const auto& r : rows) {
    energy += format_real(r.t) + "," + format_real(r.penalized) + "\n";
    grad += format_real(r.t) + "," + format_real(r.grad_l2) + "\n";
  }
  write_text_file(out / "energy.csv", energy);
  write_text_file(out / "gradient.csv", grad);
  write_text_file(out / "normalized_final_curve.csv", serialize_curve_csv(norm.curve));
  const nlohmann::json meta{{"source_snapshot", snaps.back().filename().string()},
                            {"base_length", l0},
                            {"shift", norm.shift},
                            {"scale", norm.scale}};
  write_text_file(out / "normalization.json", meta.dump(2) + "\n");
  return kExitOk;
}

// ---- make-curve ------------------------------------------------------------

int cmd_make_curve(const CurveFlags& f, std::size_t n, std::uint64_t seed, const std::optional<std::string>& out) {
  CurveDescriptor d;
  apply_curve_flags(f, d);
  const DiscreteCurve c = d.kind == "random" ? random_smooth_curve(n, seed) : make_curve(d, n);
  if (out) {
    write_curve(c, *out);
  } else {
    std::cout << serialize_curve_json(c);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic flow of closed curves in the hyperbolic half-plane"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()) + " (" + std::string(build_info()) + ")");

  FlowFlags ff;
  auto* flow = app.add_subcommand("flow", "run the gradient flow of the penalized elastic energy");
  flow->add_option("--config", ff.config, "run file (.toml or .json; run_manifest.json works too)");
  flow->add_option("--lambda", ff.lambda, "length penalty");
  flow->add_option("--n", ff.n, "samples per curve");
  flow->add_option("--dt", ff.dt, "initial time step");
  flow->add_option("--t-end", ff.t_end, "final time");
  flow->add_option("--grad-tol", ff.grad_tol, "stop once the gradient L2 norm drops below this");
  flow->add_option("--max-dt-growth", ff.max_dt_growth, "time step growth per accepted step");
  flow->add_option("--snapshot-every", ff.snapshot_every, "accepted steps between snapshots");
  flow->add_option("--redistribute-every", ff.redistribute_every, "accepted steps between resamplings");
  flow->add_option("--max-steps", ff.max_steps, "accepted step budget");
  flow->add_option("--scheme", ff.scheme, "spectral | central2");
  flow->add_option("--seed", ff.seed, "seed for random initial curves");
  flow->add_flag("--no-backtrack", ff.no_backtrack, "accept every step regardless of energy");
  flow->add_option("--out", ff.out, "output directory")->capture_default_str();
  flow->add_option("--sweep", ff.sweep, "run these lambda values in parallel")->delimiter(',');
  add_curve_flags(flow, ff.curve);

  std::size_t vn = 256;
  double vh = 1e-5;
  std::optional<std::string> vout;
  auto* verify = app.add_subcommand("verify", "run the identity checks and write a JSON report");
  verify->add_option("--n", vn, "samples per curve")->capture_default_str();
  verify->add_option("--fd-step", vh, "time step of the finite differences")->capture_default_str();
  verify->add_option("--out", vout, "report file (stdout if omitted)");

  std::string rdir;
  std::optional<std::string> rout;
  std::optional<double> rbase;
  auto* report = app.add_subcommand("report", "plot-ready CSV from a flow output directory");
  report->add_option("--dir", rdir, "flow output directory")->required();
  report->add_option("--out", rout, "report directory (default DIR/report)");
  report->add_option("--base-length", rbase, "length scale of the normalization (default: Fenchel bound)");

  CurveFlags mf;
  std::size_t mn = 256;
  std::uint64_t mseed = 0;
  std::optional<std::string> mout;
  auto* make = app.add_subcommand("make-curve", "write an initial curve");
  add_curve_flags(make, mf);
  make->add_option("--n", mn, "samples")->capture_default_str();
  make->add_option("--seed", mseed, "seed for --curve random");
  make->add_option("--out", mout, "output file (.json or .csv; stdout JSON if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (*flow) return cmd_flow(ff);
    if (*verify) return cmd_verify(vn, vh, vout);
    if (*report) return cmd_report(rdir, rout, rbase);
    if (*make) return cmd_make_curve(mf, mn, mseed, mout);
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
