#pragma once

// Grid bracketing and bisection for a real function of one variable.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "toboggan/errors.hpp"
#include "toboggan/parallel.hpp"

namespace toboggan {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

struct RootConfig {
  double e_min = -2.0;
  double e_max = 18.0;
  double grid_step = 0.05;
  double tol = 1e-10;
  // A grid point is flagged when |f| there is below flat_threshold times the
  // larger of its two neighbours and no sign change surrounds it.
  double flat_threshold = 0.1;

  void validate() const {
    if (!(e_min < e_max)) throw InvalidArgument("rootfind: e_min must be below e_max");
    if (!(grid_step > 0.0) || !(grid_step < e_max - e_min)) {
      throw InvalidArgument("rootfind: grid_step must be positive and smaller than the window");
    }
    if (!(tol > 0.0)) throw InvalidArgument("rootfind: tol must be positive");
    if (!(flat_threshold > 0.0)) throw InvalidArgument("rootfind: flat_threshold must be positive");
  }

  std::vector<double> grid() const {
    const auto n = static_cast<long>(std::ceil((e_max - e_min) / grid_step - 1e-9));
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k) g[static_cast<std::size_t>(k)] = std::min(e_min + grid_step * k, e_max);
    return g;
  }
};

struct ScanResult {
  std::vector<Bracket> brackets;
  std::vector<double> flags;  // grid abscissae of near-tangential minima of |f|
};

/// Brackets and flags from precomputed samples f(xs[k]) = fs[k].
inline ScanResult scan_samples(const std::vector<double>& xs, const std::vector<double>& fs,
                               double flat_threshold) {
  ScanResult out;
  const std::size_t n = xs.size();
  auto positive = [](double v) { return v > 0.0; };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double a = fs[k];
    const double b = fs[k + 1];
    if (a == 0.0 || b == 0.0) continue;
    if (positive(a) != positive(b)) out.brackets.push_back({xs[k], xs[k + 1], a, b});
  }
  // Exact zeros on the grid: widen to the neighbours when they straddle it.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (fs[k] != 0.0) continue;
    const double a = fs[k - 1];
    const double b = fs[k + 1];
    if (a != 0.0 && b != 0.0 && positive(a) != positive(b)) {
      out.brackets.push_back({xs[k - 1], xs[k + 1], a, b});
    } else {
      out.flags.push_back(xs[k]);
    }
  }
  std::sort(out.brackets.begin(), out.brackets.end(),
            [](const Bracket& l, const Bracket& r) { return l.lo < r.lo; });

  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double here = std::abs(fs[k]);
    const double left = std::abs(fs[k - 1]);
    const double right = std::abs(fs[k + 1]);
    if (fs[k] == 0.0) continue;
    if (!(here <= left && here <= right)) continue;
    if (positive(fs[k - 1]) != positive(fs[k]) || positive(fs[k + 1]) != positive(fs[k])) continue;
    if (here < flat_threshold * std::max(left, right)) out.flags.push_back(xs[k]);
  }
  std::sort(out.flags.begin(), out.flags.end());
  return out;
}

/// Evaluates f on the uniform grid of `cfg` (using up to `jobs` threads) and
/// returns every sign-change bracket plus flagged tangential minima.
template <typename F>
ScanResult scan(const F& f, const RootConfig& cfg, unsigned jobs = 1) {
  cfg.validate();
  const std::vector<double> xs = cfg.grid();
  std::vector<double> fs(xs.size());
  parallel_for(xs.size(), jobs, [&](std::size_t k) { fs[k] = f(xs[k]); });
  return scan_samples(xs, fs, cfg.flat_threshold);
}

/// Bisects a sign-change bracket until its width is at most tol.
template <typename F>
double bisect(const F& f, Bracket b, double tol) {
  if (!(b.f_lo * b.f_hi < 0.0) || !(b.lo < b.hi)) {
    throw BracketInvalid("bisect: bracket [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) +
                         "] has no sign change");
  }
  if (!(tol > 0.0)) throw InvalidArgument("bisect: tol must be positive");
  while (b.hi - b.lo > tol) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;  // interval at machine resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (b.f_lo > 0.0)) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  return 0.5 * (b.lo + b.hi);
}

struct RootsResult {
  std::vector<double> roots;  // ascending
  std::vector<double> flags;
};

/// scan + bisect. Brackets are refined concurrently when jobs > 1.
template <typename F>
RootsResult find_roots(const F& f, const RootConfig& cfg, unsigned jobs = 1) {
  ScanResult s = scan(f, cfg, jobs);
  RootsResult out;
  out.roots.resize(s.brackets.size());
  parallel_for(s.brackets.size(), jobs,
               [&](std::size_t k) { out.roots[k] = bisect(f, s.brackets[k], cfg.tol); });
  std::sort(out.roots.begin(), out.roots.end());
  out.flags = std::move(s.flags);
  return out;
}

}  // namespace toboggan
