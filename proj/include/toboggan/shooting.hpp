#pragma once

// Eigenvalue conditions built from the shooting pair.
//
// At the right end x+ the decaying combination a psi1 + b psi2 must vanish.
// For a PT-symmetric eigenfunction a is imaginary and b real, so the
// condition reduces to the real function
//
//   F(E) = Re[ conj(psi1(x+)) psi2(x+) ] = 0.
//
// The full two-ended determinant psi1(x+) psi2(x-) - psi1(x-) psi2(x+) is
// kept as a cross-check; for real E it equals 2 F.

#include <cmath>
#include <complex>
#include <optional>

#include "toboggan/contour.hpp"
#include "toboggan/integrator.hpp"
#include "toboggan/potential.hpp"

namespace toboggan {

struct MismatchResult {
  double E = 0.0;
  double F = 0.0;          // renormalised scale
  double logmag = 0.0;     // F_true = F * exp(logmag)
  double normalized = 0.0; // F / (|psi1| |psi2|), a cosine in [-1, 1]
};

struct DetResult {
  double E = 0.0;
  complex det;          // renormalised scale
  double logmag = 0.0;  // det_true = det * exp(logmag)
};

namespace detail {

inline MismatchResult reduce(double E, const SolutionPair& pair, int direction) {
  // psi(-t) = conj-reflection of psi(t) flips the sign of Re[conj(psi1) psi2],
  // so the left end is reported with the opposite orientation.
  const double orient = direction >= 0 ? 1.0 : -1.0;
  MismatchResult r;
  r.E = E;
  r.F = orient * std::real(std::conj(pair.s1.psi) * pair.s2.psi);
  r.logmag = pair.logscale1 + pair.logscale2;
  const double mag = std::abs(pair.s1.psi) * std::abs(pair.s2.psi);
  r.normalized = mag > 0.0 ? r.F / mag : 0.0;
  return r;
}

}  // namespace detail

/// Reusable mismatch evaluator for one (contour, eps, integrator) setup.
/// Tables for the two directions are built on first use; the object is
/// immutable afterwards and safe to share between threads once warmed.
class Shooter {
 public:
  Shooter(const ContourSpec& spec, const PotentialSpec& pspec, const IntegratorConfig& cfg = {})
      : spec_(spec), pspec_(pspec), cfg_(cfg) {
    spec_.validate();
    pspec_.validate_for_solver();
    cfg_.validate();
    plus_.emplace(PathTable::to_end(spec_, pspec_, +1, cfg_.effective_step(pspec_)));
  }

  const ContourSpec& contour() const noexcept { return spec_; }
  const PotentialSpec& potential() const noexcept { return pspec_; }
  const IntegratorConfig& integrator() const noexcept { return cfg_; }

  SolutionPair propagate(double E, int direction = +1) const {
    if (!std::isfinite(E)) throw InvalidArgument("mismatch: energy must be finite");
    return table(direction).propagate(E, cfg_.renorm_threshold);
  }

  /// F(E) evaluated at the end selected by `direction` (+1 by default).
  MismatchResult mismatch(double E, int direction = +1) const {
    return detail::reduce(E, propagate(E, direction), direction);
  }

  DetResult det_mismatch(double E) const {
    const SolutionPair p = propagate(E, +1);
    const SolutionPair m = propagate(E, -1);
    const double la = p.logscale1 + m.logscale2;
    const double lb = m.logscale1 + p.logscale2;
    const double top = std::max(la, lb);
    DetResult r;
    r.E = E;
    r.det = p.s1.psi * m.s2.psi * std::exp(la - top) - m.s1.psi * p.s2.psi * std::exp(lb - top);
    r.logmag = top;
    return r;
  }

  /// Builds the left-end table; call before sharing across threads if
  /// direction -1 will be used.
  void warm_both() const { (void)table(-1); }

 private:
  const PathTable& table(int direction) const {
    if (direction >= 0) return *plus_;
    if (!minus_) minus_.emplace(PathTable::to_end(spec_, pspec_, -1, cfg_.effective_step(pspec_)));
    return *minus_;
  }

  ContourSpec spec_;
  PotentialSpec pspec_;
  IntegratorConfig cfg_;
  std::optional<PathTable> plus_;
  mutable std::optional<PathTable> minus_;
};

inline MismatchResult mismatch(double E, const ContourSpec& spec, const PotentialSpec& pspec,
                               const IntegratorConfig& cfg = {}, int direction = +1) {
  return Shooter(spec, pspec, cfg).mismatch(E, direction);
}

inline DetResult det_mismatch(double E, const ContourSpec& spec, const PotentialSpec& pspec,
                              const IntegratorConfig& cfg = {}) {
  return Shooter(spec, pspec, cfg).det_mismatch(E);
}

}  // namespace toboggan
