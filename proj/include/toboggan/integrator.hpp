#pragma once

// Fixed-step RK4 shooting along a contour.
//
// With psi(t) = psi(x(t)) and dpsi = dpsi/dx the equation -psi'' + (V - E) psi = 0
// becomes the first-order system
//
//   d psi  / dt = x'(t) dpsi
//   d dpsi / dt = x'(t) (V(t) - E) psi
//
// which only needs a C^1 path. Two solutions start at t = 0 from
// (psi, dpsi) = (0, 1) and (1, 0) and share one coefficient table. Each is
// divided by a positive real factor when it grows past the renormalisation
// threshold; the logs of those factors are accumulated so signs and phases
// are never disturbed.

#include <cmath>
#include <complex>
#include <vector>

#include "toboggan/contour.hpp"
#include "toboggan/errors.hpp"
#include "toboggan/potential.hpp"

namespace toboggan {

struct IntegratorConfig {
  double dt = 1e-3;
  double renorm_threshold = 1e100;
  // Divide dt by 4 when eps exceeds kTightenAbove; solutions near eps = 2
  // decay slowly and lose digits at the default step.
  bool auto_tighten = true;

  static constexpr double kMaxStep = 0.01;
  static constexpr double kTightenAbove = 1.6;

  void validate() const {
    if (!(dt > 0.0) || dt > kMaxStep) throw InvalidArgument("integrator: dt must lie in (0, 0.01]");
    if (!(renorm_threshold > 1.0) || !std::isfinite(renorm_threshold)) {
      throw InvalidArgument("integrator: renorm_threshold must be finite and > 1");
    }
  }

  double effective_step(const PotentialSpec& pspec) const noexcept {
    return (auto_tighten && pspec.epsilon > kTightenAbove) ? dt / 4 : dt;
  }
};

struct StateVector {
  complex psi;
  complex dpsi;
};

struct SolutionPair {
  StateVector s1{{0.0, 0.0}, {1.0, 0.0}};
  StateVector s2{{1.0, 0.0}, {0.0, 0.0}};
  double logscale1 = 0.0;
  double logscale2 = 0.0;
  double t = 0.0;
};

/// psi1 dpsi2 - dpsi1 psi2 with the accumulated scales restored. Equals -1
/// for an exact solution. Overflows once the two log-scales sum past ~709.
inline complex wronskian(const SolutionPair& pair) {
  const complex w = pair.s1.psi * pair.s2.dpsi - pair.s1.dpsi * pair.s2.psi;
  return w * std::exp(pair.logscale1 + pair.logscale2);
}

/// |W + 1| relative to the size of the products that cancel in W, so the
/// result stays meaningful once the solutions have grown by many orders of
/// magnitude. Computed in renormalised scale.
inline double relative_wronskian_drift(const SolutionPair& pair) {
  const double unit = std::exp(-(pair.logscale1 + pair.logscale2));  // -1 in this scale
  const complex a = pair.s1.psi * pair.s2.dpsi;
  const complex b = pair.s1.dpsi * pair.s2.psi;
  const double mag = std::max(std::abs(a) + std::abs(b), unit);
  return std::abs(a - b + unit) / mag;
}

/// Coefficients x'(t) and x'(t) V(t) tabulated on an RK4 grid from t = 0 to
/// t_target, with grid nodes placed on the circle/tail junction so no step
/// straddles the kink in x''. Built once per (contour, eps, step) and reused
/// for every energy.
class PathTable {
 public:
  struct Coeff {
    complex dx;
    complex dxv;
  };

  PathTable(const ContourSpec& spec, const PotentialSpec& pspec, double t_target, double dt)
      : t_target_(t_target) {
    spec.validate();
    if (!(dt > 0.0)) throw InvalidArgument("PathTable: dt must be positive");
    const double sgn = t_target >= 0.0 ? 1.0 : -1.0;
    const double reach = std::abs(t_target);
    const double tj = spec.junction();

    auto coeff_at = [&](double t) {
      const ContourPoint p = point(spec, t);
      return Coeff{p.dx, p.dx * value(pspec, p)};
    };
    auto add_segment = [&](double a, double b) {
      if (b <= a) return;
      const auto n = static_cast<long>(std::ceil((b - a) / dt - 1e-9));
      const double h = (b - a) / static_cast<double>(n);
      for (long k = 0; k < n; ++k) {
        const double t0 = a + h * static_cast<double>(k);
        steps_.push_back(sgn * h);
        mids_.push_back(coeff_at(sgn * (t0 + h / 2)));
        nodes_.push_back(coeff_at(sgn * (k + 1 == n ? b : t0 + h)));
      }
    };

    nodes_.push_back(coeff_at(0.0));
    if (reach <= tj) {
      add_segment(0.0, reach);
    } else {
      add_segment(0.0, tj);
      add_segment(tj, reach);
    }
  }

  /// Table reaching the contour end on the side of `direction` (+1 or -1).
  static PathTable to_end(const ContourSpec& spec, const PotentialSpec& pspec, int direction, double dt) {
    const auto [lo, hi] = endpoints(spec);
    return PathTable(spec, pspec, direction >= 0 ? hi : lo, dt);
  }

  double t_target() const noexcept { return t_target_; }
  std::size_t size() const noexcept { return steps_.size(); }

  /// Advances one solution from t = 0 to t_target at energy E, dividing it
  /// by |state| whenever that exceeds renorm_threshold and adding the log
  /// of the divisor to `logscale`.
  StateVector advance(StateVector y, double E, double& logscale, double renorm_threshold = 1e100) const {
    const double limit2 = renorm_threshold * renorm_threshold;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
      const double h = steps_[k];
      const Coeff& c0 = nodes_[k];
      const Coeff& cm = mids_[k];
      const Coeff& c1 = nodes_[k + 1];
      const complex g0 = c0.dxv - c0.dx * E;
      const complex gm = cm.dxv - cm.dx * E;
      const complex g1 = c1.dxv - c1.dx * E;
      const complex k1p = c0.dx * y.dpsi;
      const complex k1d = g0 * y.psi;
      const complex k2p = cm.dx * (y.dpsi + 0.5 * h * k1d);
      const complex k2d = gm * (y.psi + 0.5 * h * k1p);
      const complex k3p = cm.dx * (y.dpsi + 0.5 * h * k2d);
      const complex k3d = gm * (y.psi + 0.5 * h * k2p);
      const complex k4p = c1.dx * (y.dpsi + h * k3d);
      const complex k4d = g1 * (y.psi + h * k3p);
      y.psi += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      y.dpsi += (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);

      const double m2 = std::max(std::norm(y.psi), std::norm(y.dpsi));
      if (!std::isfinite(m2)) {
        throw NonFiniteState("integrator: non-finite state (step too large or eps out of range)");
      }
      if (m2 > limit2) {
        const double m = std::sqrt(m2);
        y.psi /= m;
        y.dpsi /= m;
        logscale += std::log(m);
      }
    }
    return y;
  }

  /// Both shooting solutions at energy E, taken to t_target.
  SolutionPair propagate(double E, double renorm_threshold = 1e100) const {
    SolutionPair pair;
    pair.s1 = advance(pair.s1, E, pair.logscale1, renorm_threshold);
    pair.s2 = advance(pair.s2, E, pair.logscale2, renorm_threshold);
    pair.t = t_target_;
    return pair;
  }

 private:
  double t_target_;
  std::vector<double> steps_;
  std::vector<Coeff> nodes_;  // size() + 1 entries
  std::vector<Coeff> mids_;
};

/// Propagates the shooting pair from t = 0 to the contour end in `direction`.
inline SolutionPair propagate(const ContourSpec& spec, const PotentialSpec& pspec, double E,
                              int direction, const IntegratorConfig& cfg = {}) {
  cfg.validate();
  pspec.validate_for_solver();
  if (!std::isfinite(E)) throw InvalidArgument("propagate: energy must be finite");
  const auto table = PathTable::to_end(spec, pspec, direction, cfg.effective_step(pspec));
  return table.propagate(E, cfg.renorm_threshold);
}

/// Same, but stopping at an arbitrary parameter value.
inline SolutionPair propagate_to(const ContourSpec& spec, const PotentialSpec& pspec, double E,
                                 double t_target, const IntegratorConfig& cfg = {}) {
  cfg.validate();
  pspec.validate_for_solver();
  if (!std::isfinite(E)) throw InvalidArgument("propagate: energy must be finite");
  const PathTable table(spec, pspec, t_target, cfg.effective_step(pspec));
  return table.propagate(E, cfg.renorm_threshold);
}

}  // namespace toboggan
