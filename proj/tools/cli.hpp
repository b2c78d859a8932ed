#pragma once

// Subcommands of the `toboggan` executable. Kept in a header so the test
// suite can drive them with in-memory streams.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "toboggan/toboggan.hpp"

namespace toboggan::cli {

enum ExitCode : int {
  kOk = 0,
  kNumericFailure = 1,
  kNoRoots = 2,
  kUsage = 64,
};

inline constexpr const char* kFormatLine = "# format: 1\n";

/// Energies and eps values are printed with 10 significant digits.
inline std::string num(double v) { return fmt::format("{:.10g}", v); }

struct RunConfig {
  double epsilon = 0.0;
  int lambda = 0;
  double eps_from = 0.0;
  double eps_to = 0.0;
  double eps_step = 0.05;
  int n_max = 6;
  std::optional<double> e_min;
  std::optional<double> e_max;
  double e_step = 0.01;
  double dt = IntegratorConfig{}.dt;
  double renorm = IntegratorConfig{}.renorm_threshold;
  double tail_extent = 10.0;
  double grid_step = 0.05;
  double tol = 1e-10;
  double max_jump = TrackConfig{}.max_jump;
  int samples = 2001;
  bool with_potential = false;
  bool refine = true;
  unsigned jobs = default_jobs();
  std::string output;
  std::string ep_output;
  std::string format = "csv";

  SolverConfig solver() const {
    SolverConfig s;
    s.integrator.dt = dt;
    s.integrator.renorm_threshold = renorm;
    s.tail_extent = tail_extent;
    s.grid_step = grid_step;
    s.tol = tol;
    s.jobs = jobs;
    return s;
  }

  std::optional<EnergyWindow> window() const {
    if (!e_min && !e_max) return std::nullopt;
    EnergyWindow w = EnergyWindow::for_levels(n_max);
    if (e_min) w.lo = *e_min;
    if (e_max) w.hi = *e_max;
    return w;
  }
};

namespace detail {

/// Writes to the -o path if one was given, else to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot open output file " + path);
      out_ = file_.get();
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

inline nlohmann::json ep_json(const ExceptionalPoint& ep) {
  return {{"eps_lo", ep.eps_lo},
          {"eps_hi", ep.eps_hi},
          {"eps_star", ep.eps_star},
          {"energy_star", ep.energy_star},
          {"pair", {ep.pair.first, ep.pair.second}},
          {"status", to_string(ep.status)}};
}

}  // namespace detail

inline int cmd_solve(const RunConfig& rc, std::ostream& out) {
  const EigenResult r = real_eigenvalues(rc.epsilon, rc.lambda, rc.n_max, rc.window(), rc.solver());
  detail::Sink sink(rc.output, out);
  if (rc.format == "json") {
    nlohmann::json j = {{"format", 1},
                        {"epsilon", rc.epsilon},
                        {"lambda", rc.lambda},
                        {"found", r.found},
                        {"energies", r.energies}};
    *sink << j.dump(2) << '\n';
  } else {
    *sink << kFormatLine << "epsilon,lambda,index,energy\n";
    for (std::size_t i = 0; i < r.energies.size(); ++i) {
      *sink << num(rc.epsilon) << ',' << rc.lambda << ',' << i << ',' << num(r.energies[i]) << '\n';
    }
  }
  return r.energies.empty() ? kNoRoots : kOk;
}

struct SweepOutput {
  TrackResult tracked;
  std::vector<ExceptionalPoint> exceptional;
};

/// Sweep, track and (optionally) refine every merge candidate.
inline SweepOutput run_sweep(const RunConfig& rc, std::ostream* partial = nullptr) {
  const SolverConfig cfg = rc.solver();
  SpectralTable table = sweep(rc.eps_from, rc.eps_to, rc.eps_step, rc.lambda, rc.n_max, rc.window(), cfg,
                              [&](const SpectralColumn& col, const EigenResult& res) {
                                if (!partial) return;
                                for (std::size_t i = 0; i < res.energies.size(); ++i) {
                                  *partial << num(col.epsilon) << ',' << rc.lambda << ',' << i << ','
                                           << num(res.energies[i]) << ",\n";
                                }
                                partial->flush();
                              });
  SweepOutput so;
  so.tracked = track(table, TrackConfig{rc.max_jump});
  for (const auto& cand : merge_candidates(so.tracked)) {
    ExceptionalPoint ep;
    ep.pair = cand.pair;
    ep.eps_lo = std::min(cand.eps_present, cand.eps_absent);
    ep.eps_hi = std::max(cand.eps_present, cand.eps_absent);
    ep.eps_star = 0.5 * (ep.eps_lo + ep.eps_hi);
    ep.energy_star = 0.5 * (cand.energy_lo + cand.energy_hi);
    if (rc.refine) {
      try {
        ep = locate_exceptional(rc.lambda, cand, cfg);
      } catch (const PredicateNoisy&) {
        // keep the bracketed estimate
      }
    }
    so.exceptional.push_back(ep);
  }
  return so;
}

inline int cmd_sweep(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  // Validate the range before any file is touched.
  (void)epsilon_grid(rc.eps_from, rc.eps_to, rc.eps_step, rc.lambda);

  std::unique_ptr<std::ofstream> partial;
  const std::string partial_path = rc.output.empty() ? "" : rc.output + ".partial";
  if (!partial_path.empty() && rc.format == "csv") {
    partial = std::make_unique<std::ofstream>(partial_path);
    *partial << kFormatLine << "epsilon,lambda,index,energy,branch\n";
  }
  const SweepOutput so = run_sweep(rc, partial.get());

  nlohmann::json eps_json = nlohmann::json::array();
  for (const auto& ep : so.exceptional) eps_json.push_back(detail::ep_json(ep));

  detail::Sink sink(rc.output, out);
  if (rc.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : so.tracked.table.rows) {
      rows.push_back({{"epsilon", r.epsilon}, {"lambda", r.lambda}, {"index", r.index},
                      {"energy", r.energy}, {"branch", r.branch}});
    }
    *sink << nlohmann::json{{"format", 1}, {"rows", rows}, {"exceptional_points", eps_json}}.dump(2) << '\n';
  } else {
    *sink << kFormatLine << "epsilon,lambda,index,energy,branch\n";
    for (const auto& r : so.tracked.table.rows) {
      *sink << num(r.epsilon) << ',' << r.lambda << ',' << r.index << ',' << num(r.energy) << ','
            << r.branch << '\n';
    }
    std::string ep_path = rc.ep_output;
    if (ep_path.empty() && !rc.output.empty()) {
      std::filesystem::path p(rc.output);
      ep_path = (p.parent_path() / (p.stem().string() + "_ep.json")).string();
    }
    if (!ep_path.empty()) {
      std::ofstream ep_file(ep_path);
      ep_file << eps_json.dump(2) << '\n';
    }
  }
  if (partial) {
    partial.reset();
    std::filesystem::remove(partial_path);
  }
  for (const auto& c : so.tracked.table.columns) {
    if (!c.ok) err << "eps=" << num(c.epsilon) << ": " << c.error << '\n';
  }
  for (const auto& a : so.tracked.ambiguities) err << a << '\n';
  return so.tracked.table.rows.empty() ? kNoRoots : kOk;
}

inline int cmd_mismatch(const RunConfig& rc, std::ostream& out) {
  const double lo = rc.e_min.value_or(0.0);
  const double hi = rc.e_max.value_or(10.0);
  if (!(lo < hi) || !(rc.e_step > 0.0)) throw InvalidArgument("mismatch: need emin < emax and step > 0");
  const SolverConfig cfg = rc.solver();
  const Shooter shooter({rc.lambda, 1.0, rc.tail_extent}, PotentialSpec{rc.epsilon}, cfg.integrator);
  const auto n = static_cast<long>(std::floor((hi - lo) / rc.e_step + 1e-9));
  std::vector<MismatchResult> res(static_cast<std::size_t>(n) + 1);
  parallel_for(res.size(), rc.jobs, [&](std::size_t k) {
    res[k] = shooter.mismatch(std::min(hi, lo + rc.e_step * static_cast<double>(k)));
  });
  detail::Sink sink(rc.output, out);
  *sink << kFormatLine << "energy,F,normalized,logmag\n";
  for (const auto& r : res) {
    *sink << num(r.E) << ',' << num(r.F) << ',' << num(r.normalized) << ',' << num(r.logmag) << '\n';
  }
  return kOk;
}

inline int cmd_contour(const RunConfig& rc, std::ostream& out) {
  const ContourSpec spec{rc.lambda, 1.0, rc.tail_extent};
  spec.validate();
  if (rc.samples < 2) throw InvalidArgument("contour: samples must be >= 2");
  const auto [t0, t1] = endpoints(spec);
  detail::Sink sink(rc.output, out);
  *sink << kFormatLine << "t,re_x,im_x,theta";
  if (rc.with_potential) *sink << ",re_v,im_v";
  *sink << '\n';
  const PotentialSpec pspec{rc.epsilon};
  for (int k = 0; k < rc.samples; ++k) {
    const double t = k + 1 == rc.samples ? t1 : t0 + (t1 - t0) * k / (rc.samples - 1);
    const ContourPoint p = point(spec, t);
    *sink << num(p.t) << ',' << num(p.x.real()) << ',' << num(p.x.imag()) << ',' << num(p.theta);
    if (rc.with_potential) {
      const complex v = value(pspec, p);
      *sink << ',' << num(v.real()) << ',' << num(v.imag());
    }
    *sink << '\n';
  }
  return kOk;
}

inline int cmd_perturb(const RunConfig& rc, std::ostream& out) {
  if (rc.n_max < 0) throw InvalidArgument("perturb: n must be non-negative");
  detail::Sink sink(rc.output, out);
  *sink << kFormatLine << "n,base,slope,energy\n";
  for (int n = 0; n <= rc.n_max; ++n) {
    const FirstOrderCoefficient c = first_order_coefficient(n);
    *sink << n << ',' << num(c.base) << ',' << num(c.slope) << ',' << num(first_order_energy(n, rc.epsilon))
          << '\n';
  }
  return kOk;
}

/// Parses argv and dispatches. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real spectra of x^2 (ix)^eps on tobogganic contours", "toboggan"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda,-l", rc.lambda, "Winding number of the contour")->check(CLI::NonNegativeNumber);
    sub->add_option("--tail", rc.tail_extent, "|Re x| reached by the straight tails")->capture_default_str();
    sub->add_option("-o,--output", rc.output, "Output file (default: stdout)");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--dt", rc.dt, "RK4 step in the contour parameter")->capture_default_str();
    sub->add_option("--renorm", rc.renorm, "Renormalisation threshold")->capture_default_str();
    sub->add_option("--grid-step", rc.grid_step, "Energy grid step for bracketing")->capture_default_str();
    sub->add_option("--tol", rc.tol, "Bisection tolerance in energy")->capture_default_str();
    sub->add_option("--emin", rc.e_min, "Lower edge of the energy window");
    sub->add_option("--emax", rc.e_max, "Upper edge of the energy window");
    sub->add_option("--jobs,-j", rc.jobs, "Worker threads (env TOBOGGAN_JOBS)")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Real eigenvalues for one (epsilon, lambda)");
  solve->add_option("--epsilon,-e", rc.epsilon, "Exponent epsilon in (-1, 2)")->required();
  solve->add_option("--n", rc.n_max, "Number of lowest real eigenvalues")->capture_default_str();
  solve->add_option("--format", rc.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_common(solve);
  add_solver(solve);

  auto* sw = app.add_subcommand("sweep", "Real spectra over an epsilon range with branch tracking");
  sw->add_option("--from", rc.eps_from, "First epsilon")->required();
  sw->add_option("--to", rc.eps_to, "Last epsilon")->required();
  sw->add_option("--step", rc.eps_step, "Epsilon step")->capture_default_str();
  sw->add_option("--n", rc.n_max, "Number of lowest real eigenvalues per epsilon")->capture_default_str();
  sw->add_option("--max-jump", rc.max_jump, "Largest energy change for branch continuation")
      ->capture_default_str();
  sw->add_option("--ep-out", rc.ep_output, "Exceptional-point JSON (default: <output>_ep.json)");
  sw->add_flag("!--no-refine", rc.refine, "Report merge brackets without refining them");
  sw->add_option("--format", rc.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  add_common(sw);
  add_solver(sw);

  auto* mm = app.add_subcommand("mismatch", "Dump the shooting mismatch F(E) over an energy range");
  mm->add_option("--epsilon,-e", rc.epsilon, "Exponent epsilon in (-1, 2)")->required();
  mm->add_option("--estep", rc.e_step, "Energy step")->capture_default_str();
  add_common(mm);
  add_solver(mm);

  auto* ct = app.add_subcommand("contour", "Dump the sampled contour (t, x, theta[, V])");
  ct->add_option("--samples", rc.samples, "Number of samples")->capture_default_str();
  ct->add_option("--epsilon,-e", rc.epsilon, "Also emit V(x) for this epsilon")
      ->each([&](const std::string&) { rc.with_potential = true; });
  add_common(ct);

  auto* pt = app.add_subcommand("perturb", "First-order energies for levels 0..n");
  pt->add_option("--n", rc.n_max, "Highest level index")->required();
  pt->add_option("--epsilon,-e", rc.epsilon, "Exponent epsilon")->required();
  pt->add_option("-o,--output", rc.output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(rc, out);
    if (*sw) return cmd_sweep(rc, out, err);
    if (*mm) return cmd_mismatch(rc, out);
    if (*ct) return cmd_contour(rc, out);
    if (*pt) return cmd_perturb(rc, out);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kUsage;
}

}  // namespace toboggan::cli
