#pragma once

// V(x) = x^2 (ix)^eps evaluated on the sheet selected by the contour's
// continuous argument theta:
//
//   log(ix) = ln|x| + i (theta + pi/2)
//   V       = exp[(2 + eps)(ln|x| + i theta) + i eps pi/2]
//
// With theta(0) = -pi/2 this gives V(-i) = -1 for every eps. No branch cut
// is stored; the contour never crosses the positive imaginary axis between
// neighbouring samples, which is where the cut would sit.
//
// The mirrored potential x^2 (-ix)^eps on the complex-conjugate contour is
// the reflection x -> -conj(x) of this problem and has the same spectrum, so
// it is not modelled separately.

#include <cmath>
#include <complex>
#include <numbers>

#include "toboggan/contour.hpp"
#include "toboggan/errors.hpp"

namespace toboggan {

struct PotentialSpec {
  double epsilon = 0.0;

  /// Open interval of eps where horizontal tails are admissible for the solver.
  static constexpr double kMinEpsilon = -1.0;
  static constexpr double kMaxEpsilon = 2.0;

  bool solver_range() const noexcept { return epsilon > kMinEpsilon && epsilon < kMaxEpsilon; }

  void validate_for_solver() const {
    if (!std::isfinite(epsilon) || !solver_range()) {
      throw InvalidArgument("potential: epsilon must lie in (-1, 2) for the shooting solver");
    }
  }
};

struct PotentialSample {
  double t = 0.0;
  complex value;
};

inline complex value(const PotentialSpec& pspec, const ContourPoint& p) {
  const double r = std::abs(p.x);
  if (r == 0.0) throw DomainError("potential: evaluated at the branch point x = 0");
  const double eps = pspec.epsilon;
  const double mod = (2.0 + eps) * std::log(r);
  const double arg = (2.0 + eps) * p.theta + eps * std::numbers::pi / 2;
  return std::exp(mod) * complex{std::cos(arg), std::sin(arg)};
}

inline PotentialSample sample(const PotentialSpec& pspec, const ContourSpec& spec, double t) {
  return {t, value(pspec, point(spec, t))};
}

/// Checks V(-t) = conj(V(t)) (relative tolerance) on `samples` points of
/// [0, t_max] for an arbitrary path.
template <typename Path>
bool verify_pt_potential(const PotentialSpec& pspec, const Path& path, double t_max, int samples,
                         double rel_tol = 1e-12) {
  if (samples < 2) throw InvalidArgument("verify_pt_potential: samples must be >= 2");
  for (int k = 0; k < samples; ++k) {
    const double t = t_max * k / (samples - 1);
    const complex a = value(pspec, path(t));
    const complex b = value(pspec, path(-t));
    const double scale = std::max(std::abs(a), 1.0);
    if (std::abs(b - std::conj(a)) > rel_tol * scale) return false;
  }
  return true;
}

inline bool verify_pt_potential(const PotentialSpec& pspec, const ContourSpec& spec, int samples,
                                double rel_tol = 1e-12) {
  return verify_pt_potential(
      pspec, [&](double t) { return point(spec, t); }, endpoints(spec).second, samples, rel_tol);
}

}  // namespace toboggan
