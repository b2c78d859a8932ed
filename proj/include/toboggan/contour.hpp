#pragma once

// Tobogganic integration contours for x^2 (ix)^eps.
//
// The path is a unit circle centred on the branch point, traversed lambda
// times, closed off by two horizontal tails. The parameter t = 0 sits at
// x = -i on the principal sheet and the path obeys x(-t) = -conj(x(t)).
//
//   |t| <= lambda*pi :  x = -i e^{it}            theta = -pi/2 + t
//   |t| >  lambda*pi :  x = (-1)^lambda (s - i)  s = t - lambda*pi*sgn(t)
//
// theta is the argument of x continued along the path (never reduced mod
// 2 pi); it selects the Riemann sheet of (ix)^eps. On a tail the ratio
// x / x_junction = 1 + i s stays in the right half plane, so the principal
// argument of that ratio is the continuous increment from the junction.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "toboggan/errors.hpp"

namespace toboggan {

using complex = std::complex<double>;

struct ContourSpec {
  int winding = 0;            // lambda
  double radius = 1.0;        // only the unit circle is supported
  double tail_extent = 10.0;  // |Re x| reached at both ends

  static constexpr double kMinTailExtent = 5.0;

  void validate() const {
    if (winding < 0) throw InvalidArgument("contour: winding number must be non-negative");
    if (radius != 1.0) throw InvalidArgument("contour: only unit radius is supported");
    if (!(tail_extent >= kMinTailExtent) || !std::isfinite(tail_extent)) {
      throw InvalidArgument("contour: tail_extent must be >= " + std::to_string(kMinTailExtent));
    }
  }

  /// Parameter value |t| where the circle meets the tails.
  double junction() const noexcept { return winding * std::numbers::pi; }
};

struct ContourPoint {
  double t = 0.0;
  complex x;
  complex dx;          // dx/dt, unit modulus
  double theta = 0.0;  // continuous arg x
};

inline ContourPoint point(const ContourSpec& spec, double t) {
  constexpr double pi = std::numbers::pi;
  const double tj = spec.junction();
  ContourPoint p;
  p.t = t;
  if (std::abs(t) <= tj) {
    const complex e{std::cos(t), std::sin(t)};
    p.x = complex{0.0, -1.0} * e;
    p.dx = e;
    p.theta = -pi / 2 + t;
    return p;
  }
  const double sgn = t > 0 ? 1.0 : -1.0;
  const double s = t - tj * sgn;
  const double orient = (spec.winding % 2 == 0) ? 1.0 : -1.0;
  p.x = orient * complex{s, -1.0};
  p.dx = complex{orient, 0.0};
  p.theta = -pi / 2 + tj * sgn + std::atan(s);
  return p;
}

/// Parameter values (t-, t+) of the two ends, where |Re x| = tail_extent.
inline std::pair<double, double> endpoints(const ContourSpec& spec) {
  const double t = spec.junction() + spec.tail_extent;
  return {-t, t};
}

/// Checks x(-t) = -conj(x(t)) and theta(-t) = -pi - theta(t) on `samples`
/// uniformly spaced t in [0, t+]. `path` maps t to a ContourPoint.
template <typename Path>
bool verify_pt_geometry(const Path& path, double t_max, int samples, double tol = 1e-12) {
  if (samples < 2) throw InvalidArgument("verify_pt_geometry: samples must be >= 2");
  for (int k = 0; k < samples; ++k) {
    const double t = t_max * k / (samples - 1);
    const ContourPoint a = path(t);
    const ContourPoint b = path(-t);
    if (std::abs(b.x + std::conj(a.x)) > tol) return false;
    if (std::abs(b.theta + std::numbers::pi + a.theta) > tol) return false;
  }
  return true;
}

inline bool verify_pt_geometry(const ContourSpec& spec, int samples, double tol = 1e-12) {
  return verify_pt_geometry([&](double t) { return point(spec, t); }, endpoints(spec).second,
                            samples, tol);
}

}  // namespace toboggan
