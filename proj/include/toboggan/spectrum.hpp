#pragma once

// Real spectra over eps for a fixed winding number, branch tracking across a
// sweep, and localisation of the exceptional points where two real branches
// merge.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toboggan/contour.hpp"
#include "toboggan/errors.hpp"
#include "toboggan/integrator.hpp"
#include "toboggan/parallel.hpp"
#include "toboggan/potential.hpp"
#include "toboggan/rootfind.hpp"
#include "toboggan/shooting.hpp"

namespace toboggan {

struct EnergyWindow {
  double lo = -2.0;
  double hi = 18.0;

  static EnergyWindow for_levels(int n_max) { return {-2.0, 2.0 * n_max + 6.0}; }
};

struct SolverConfig {
  IntegratorConfig integrator;
  double tail_extent = 10.0;
  double grid_step = 0.05;
  double tol = 1e-10;
  double flat_threshold = 0.1;
  // Upper bound for automatic window growth, as a multiple of the initial
  // window's upper edge.
  double window_growth_cap = 3.0;
  // Flagged tangential minima are re-scanned on a grid this many times finer.
  int flag_refinement = 20;
  unsigned jobs = 1;

  void validate() const {
    integrator.validate();
    ContourSpec{0, 1.0, tail_extent}.validate();
    if (!(grid_step > 0.0)) throw InvalidArgument("solver: grid_step must be positive");
    if (!(tol > 0.0)) throw InvalidArgument("solver: tol must be positive");
    if (!(window_growth_cap >= 1.0)) throw InvalidArgument("solver: window_growth_cap must be >= 1");
    if (flag_refinement < 2) throw InvalidArgument("solver: flag_refinement must be >= 2");
  }
};

struct EigenResult {
  double epsilon = 0.0;
  int lambda = 0;
  std::vector<double> energies;  // lowest min(n_max, found), ascending
  int found = 0;                 // real roots located in the scanned window
  std::vector<double> all_roots; // every root in the scanned window
  std::vector<double> flags;     // unresolved near-tangential minima
  EnergyWindow scanned;
};

namespace detail {

/// Roots of the shooting mismatch on [lo, hi], with flagged cells re-scanned
/// on a finer grid so that nearly degenerate pairs are split.
inline RootsResult roots_on(const Shooter& shooter, double lo, double hi, const SolverConfig& cfg,
                            unsigned jobs) {
  auto f = [&](double E) { return shooter.mismatch(E).normalized; };
  RootConfig rc;
  rc.e_min = lo;
  rc.e_max = hi;
  rc.grid_step = std::min(cfg.grid_step, 0.5 * (hi - lo));
  rc.tol = cfg.tol;
  rc.flat_threshold = cfg.flat_threshold;
  RootsResult r = find_roots(f, rc, jobs);

  std::vector<double> unresolved;
  for (double flag : r.flags) {
    RootConfig fine = rc;
    fine.e_min = std::max(lo, flag - rc.grid_step);
    fine.e_max = std::min(hi, flag + rc.grid_step);
    fine.grid_step = (fine.e_max - fine.e_min) / (2.0 * cfg.flag_refinement);
    const RootsResult extra = find_roots(f, fine, 1);
    if (extra.roots.empty()) {
      unresolved.push_back(flag);
      continue;
    }
    for (double e : extra.roots) {
      const bool dup = std::any_of(r.roots.begin(), r.roots.end(),
                                   [&](double known) { return std::abs(known - e) < 10 * cfg.tol; });
      if (!dup) r.roots.push_back(e);
    }
  }
  std::sort(r.roots.begin(), r.roots.end());
  r.flags = std::move(unresolved);
  return r;
}

}  // namespace detail

/// Lowest real eigenvalues for one (eps, lambda). The window grows upwards
/// (doubling its width, capped at window_growth_cap * hi) until n_max roots
/// are found. Fewer roots than requested is a valid answer.
inline EigenResult real_eigenvalues(double epsilon, int lambda, int n_max,
                                    std::optional<EnergyWindow> window = std::nullopt,
                                    const SolverConfig& cfg = {}) {
  cfg.validate();
  if (n_max < 1) throw InvalidArgument("real_eigenvalues: n_max must be >= 1");
  const PotentialSpec pspec{epsilon};
  pspec.validate_for_solver();
  const EnergyWindow w = window.value_or(EnergyWindow::for_levels(n_max));
  if (!(w.lo < w.hi)) throw InvalidArgument("real_eigenvalues: empty energy window");

  const Shooter shooter({lambda, 1.0, cfg.tail_extent}, pspec, cfg.integrator);
  EigenResult out;
  out.epsilon = epsilon;
  out.lambda = lambda;
  out.scanned = {w.lo, w.lo};

  const double cap = w.hi > 0.0 ? std::max(w.hi, w.hi * cfg.window_growth_cap) : w.hi;
  double lo = w.lo;
  double hi = w.hi;
  while (true) {
    RootsResult r = detail::roots_on(shooter, lo, hi, cfg, cfg.jobs);
    out.all_roots.insert(out.all_roots.end(), r.roots.begin(), r.roots.end());
    out.flags.insert(out.flags.end(), r.flags.begin(), r.flags.end());
    out.scanned.hi = hi;
    if (static_cast<int>(out.all_roots.size()) >= n_max || hi >= cap) break;
    const double width = hi - out.scanned.lo;
    lo = hi;
    hi = std::min(cap, hi + width);
  }
  std::sort(out.all_roots.begin(), out.all_roots.end());
  out.found = static_cast<int>(out.all_roots.size());
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(n_max), out.all_roots.size());
  out.energies.assign(out.all_roots.begin(), out.all_roots.begin() + static_cast<long>(keep));
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SpectralRow {
  double epsilon = 0.0;
  int lambda = 0;
  int index = 0;  // ordinal by energy within the column
  double energy = 0.0;
  int branch = -1;  // assigned by track()
};

struct SpectralColumn {
  double epsilon = 0.0;
  bool ok = true;
  std::string error;
  int found = 0;
  std::vector<double> window_roots;  // roots inside the base window
  std::vector<double> flags;
};

struct SpectralTable {
  int lambda = 0;
  int n_max = 0;
  EnergyWindow window;  // base window shared by all columns
  std::vector<SpectralColumn> columns;
  std::vector<SpectralRow> rows;  // grouped by column, ascending energy

  std::vector<const SpectralRow*> column_rows(double epsilon) const {
    std::vector<const SpectralRow*> out;
    for (const auto& r : rows) {
      if (r.epsilon == epsilon) out.push_back(&r);
    }
    return out;
  }
};

/// Smallest eps accepted for lambda >= 2; closer to -1 the tails stop
/// decaying fast enough for those contours.
inline constexpr double kLowestEpsilonHighWinding = -0.8;

inline std::vector<double> epsilon_grid(double from, double to, double step, int lambda) {
  if (!(step > 0.0) || !(from <= to) || !std::isfinite(from) || !std::isfinite(to)) {
    throw InvalidArgument("sweep: need from <= to and step > 0");
  }
  const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
  std::vector<double> grid;
  for (long k = 0; k <= n; ++k) {
    // Round to the step's decimal resolution so printed columns are stable.
    const double e = std::round((from + step * k) * 1e9) / 1e9;
    if (!(e > PotentialSpec::kMinEpsilon && e < PotentialSpec::kMaxEpsilon)) {
      throw InvalidArgument("sweep: eps range must lie inside (-1, 2)");
    }
    if (lambda >= 2 && e < kLowestEpsilonHighWinding) continue;
    grid.push_back(e);
  }
  return grid;
}

/// Real spectra over an eps grid. Each column runs independently (in
/// parallel up to cfg.jobs); a failing column is recorded, not fatal.
/// `on_column` (if given) is called in grid order as columns complete.
template <typename OnColumn>
SpectralTable sweep(double eps_from, double eps_to, double eps_step, int lambda, int n_max,
                    std::optional<EnergyWindow> window, const SolverConfig& cfg,
                    OnColumn&& on_column) {
  cfg.validate();
  if (n_max < 1) throw InvalidArgument("sweep: n_max must be >= 1");
  ContourSpec{lambda, 1.0, cfg.tail_extent}.validate();
  const std::vector<double> grid = epsilon_grid(eps_from, eps_to, eps_step, lambda);
  const EnergyWindow base = window.value_or(EnergyWindow::for_levels(n_max));

  std::vector<EigenResult> results(grid.size());
  std::vector<SpectralColumn> columns(grid.size());
  SolverConfig inner = cfg;
  inner.jobs = 1;

  std::mutex emit_mutex;
  std::vector<bool> done(grid.size(), false);
  std::size_t emitted = 0;
  parallel_for(grid.size(), cfg.jobs, [&](std::size_t k) {
    SpectralColumn col;
    col.epsilon = grid[k];
    try {
      results[k] = real_eigenvalues(grid[k], lambda, n_max, base, inner);
      col.found = results[k].found;
      col.flags = results[k].flags;
      for (double e : results[k].all_roots) {
        if (e >= base.lo && e <= base.hi) col.window_roots.push_back(e);
      }
    } catch (const Error& e) {
      col.ok = false;
      col.error = e.what();
    }
    columns[k] = std::move(col);
    std::lock_guard lock(emit_mutex);
    done[k] = true;
    while (emitted < grid.size() && done[emitted]) {
      on_column(columns[emitted], results[emitted]);
      ++emitted;
    }
  });

  SpectralTable table;
  table.lambda = lambda;
  table.n_max = n_max;
  table.window = base;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (columns[k].ok) {
      const auto& es = results[k].energies;
      for (std::size_t i = 0; i < es.size(); ++i) {
        table.rows.push_back({grid[k], lambda, static_cast<int>(i), es[i], -1});
      }
    }
    table.columns.push_back(std::move(columns[k]));
  }
  return table;
}

inline SpectralTable sweep(double eps_from, double eps_to, double eps_step, int lambda, int n_max,
                           std::optional<EnergyWindow> window = std::nullopt,
                           const SolverConfig& cfg = {}) {
  return sweep(eps_from, eps_to, eps_step, lambda, n_max, window, cfg,
               [](const SpectralColumn&, const EigenResult&) {});
}

/// Adjacent ok-columns whose in-window root count changes by an odd number
/// with no root within `edge_margin` of either window edge. Conjugate-pair
/// complexification only ever changes the count by two; a root that close to
/// an edge may simply have left the window. The default margin is the
/// tracker's largest accepted step.
inline std::vector<std::pair<double, double>> parity_violations(const SpectralTable& table,
                                                                double edge_margin = 1.0) {
  std::vector<std::pair<double, double>> out;
  auto near_edge = [&](const SpectralColumn& c) {
    return std::any_of(c.window_roots.begin(), c.window_roots.end(), [&](double e) {
      return e - table.window.lo < edge_margin || table.window.hi - e < edge_margin;
    });
  };
  const SpectralColumn* prev = nullptr;
  for (const auto& c : table.columns) {
    if (!c.ok) {
      prev = nullptr;
      continue;
    }
    if (prev) {
      const auto diff = static_cast<long>(c.window_roots.size()) -
                        static_cast<long>(prev->window_roots.size());
      if (diff % 2 != 0 && !near_edge(c) && !near_edge(*prev)) {
        out.emplace_back(prev->epsilon, c.epsilon);
      }
    }
    prev = &c;
  }
  return out;
}

/// Odd steps from parity_violations that survive a recount of both columns
/// on the window with its upper edge raised by `extension`. A fast level that
/// crossed the original edge is caught by the wider window; a missed or
/// spurious root is not.
inline std::vector<std::pair<double, double>> confirmed_parity_violations(const SpectralTable& table,
                                                                          const SolverConfig& cfg = {},
                                                                          double extension = 5.0,
                                                                          double edge_margin = 1.0) {
  SolverConfig fixed = cfg;
  fixed.window_growth_cap = 1.0;
  const EnergyWindow wide{table.window.lo, table.window.hi + extension};
  auto count = [&](double eps) {
    return real_eigenvalues(eps, table.lambda, std::numeric_limits<int>::max(), wide, fixed).found;
  };
  std::vector<std::pair<double, double>> out;
  for (const auto& step : parity_violations(table, edge_margin)) {
    if ((count(step.first) - count(step.second)) % 2 != 0) out.push_back(step);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Branch tracking

struct TrackConfig {
  // Largest energy change accepted between neighbouring eps columns.
  double max_jump = 1.0;
};

struct Branch {
  int id = 0;
  double eps_first = 0.0;
  double eps_last = 0.0;
  std::size_t first_column = 0;
  std::size_t last_column = 0;
  // Set when the branch stops before the final column / starts after the first.
  bool ends = false;
  bool starts = false;
};

struct TrackResult {
  SpectralTable table;  // rows carry branch ids
  std::vector<Branch> branches;
  std::vector<std::string> ambiguities;
};

namespace detail {

/// Order-preserving minimum-cost alignment of two ascending energy lists.
/// Returns for each element of `a` the matched index in `b` or -1.
inline std::vector<int> align(const std::vector<double>& a, const std::vector<double>& b,
                              double max_jump, bool& ambiguous) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double gap = max_jump;
  std::vector<std::vector<double>> cost(m + 1, std::vector<double>(n + 1, inf));
  cost[0][0] = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (i > 0) cost[i][j] = std::min(cost[i][j], cost[i - 1][j] + gap);
      if (j > 0) cost[i][j] = std::min(cost[i][j], cost[i][j - 1] + gap);
      if (i > 0 && j > 0) {
        const double d = std::abs(a[i - 1] - b[j - 1]);
        if (d <= max_jump) cost[i][j] = std::min(cost[i][j], cost[i - 1][j - 1] + d);
      }
    }
  }
  std::vector<int> match(m, -1);
  ambiguous = false;
  std::size_t i = m;
  std::size_t j = n;
  constexpr double slack = 1e-12;
  while (i > 0 || j > 0) {
    int options = 0;
    bool diag = false;
    bool up = false;
    if (i > 0 && j > 0) {
      const double d = std::abs(a[i - 1] - b[j - 1]);
      if (d <= max_jump && std::abs(cost[i - 1][j - 1] + d - cost[i][j]) <= slack) {
        diag = true;
        ++options;
      }
    }
    if (i > 0 && std::abs(cost[i - 1][j] + gap - cost[i][j]) <= slack) {
      up = true;
      ++options;
    }
    const bool left = j > 0 && std::abs(cost[i][j - 1] + gap - cost[i][j]) <= slack;
    if (left) ++options;
    if (options > 1) ambiguous = true;
    // Ties resolve towards matching, which keeps labels in energy order.
    if (diag) {
      match[i - 1] = static_cast<int>(j - 1);
      --i;
      --j;
    } else if (up) {
      --i;
    } else {
      --j;
    }
  }
  return match;
}

}  // namespace detail

/// Assigns branch ids by nearest-energy continuation between consecutive
/// ok-columns. A branch ends when it has no partner in the next column.
inline TrackResult track(const SpectralTable& table, const TrackConfig& tcfg = {}) {
  TrackResult out;
  out.table = table;
  std::vector<std::vector<std::size_t>> by_col;  // row indices per ok column
  std::vector<std::size_t> col_of;               // column index for each entry of by_col
  {
    std::map<double, std::size_t> col_index;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (table.columns[c].ok) col_index[table.columns[c].epsilon] = c;
    }
    std::map<std::size_t, std::vector<std::size_t>> grouped;
    for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
      grouped[col_index.at(out.table.rows[r].epsilon)].push_back(r);
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (!table.columns[c].ok) continue;
      col_of.push_back(c);
      auto it = grouped.find(c);
      by_col.push_back(it == grouped.end() ? std::vector<std::size_t>{} : it->second);
    }
  }
  if (by_col.empty()) return out;

  auto energies = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> e;
    for (auto r : idx) e.push_back(out.table.rows[r].energy);
    return e;
  };
  auto open_branch = [&](std::size_t k, std::size_t row) {
    Branch b;
    b.id = static_cast<int>(out.branches.size());
    b.first_column = b.last_column = col_of[k];
    b.eps_first = b.eps_last = out.table.rows[row].epsilon;
    b.starts = k > 0;
    out.branches.push_back(b);
    out.table.rows[row].branch = b.id;
  };

  for (auto r : by_col[0]) open_branch(0, r);
  for (std::size_t k = 1; k < by_col.size(); ++k) {
    bool ambiguous = false;
    const auto m = detail::align(energies(by_col[k - 1]), energies(by_col[k]), tcfg.max_jump, ambiguous);
    if (ambiguous) {
      std::ostringstream msg;
      msg << "ambiguous continuation between eps=" << table.columns[col_of[k - 1]].epsilon
          << " and eps=" << table.columns[col_of[k]].epsilon << "; kept energy order";
      out.ambiguities.push_back(msg.str());
    }
    std::vector<bool> taken(by_col[k].size(), false);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const int id = out.table.rows[by_col[k - 1][i]].branch;
      if (m[i] < 0) {
        out.branches[static_cast<std::size_t>(id)].ends = true;
        continue;
      }
      const std::size_t row = by_col[k][static_cast<std::size_t>(m[i])];
      taken[static_cast<std::size_t>(m[i])] = true;
      out.table.rows[row].branch = id;
      auto& b = out.branches[static_cast<std::size_t>(id)];
      b.last_column = col_of[k];
      b.eps_last = out.table.rows[row].epsilon;
    }
    for (std::size_t j = 0; j < by_col[k].size(); ++j) {
      if (!taken[j]) open_branch(k, by_col[k][j]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exceptional points

struct ExceptionalCandidate {
  std::pair<int, int> pair;
  double eps_present = 0.0;  // last eps where both branches exist
  double eps_absent = 0.0;   // neighbouring eps where both are gone
  double energy_lo = 0.0;    // pair energies at eps_present
  double energy_hi = 0.0;
};

enum class EpStatus { bracketed, refined };

struct ExceptionalPoint {
  double eps_star = 0.0;
  double energy_star = 0.0;
  std::pair<int, int> pair{-1, -1};
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  EpStatus status = EpStatus::bracketed;
};

/// Pairs of branches that stop (or start) together between neighbouring
/// columns with no surviving branch between them. Truncation by n_max at
/// the top of a full column is not reported.
inline std::vector<ExceptionalCandidate> merge_candidates(const TrackResult& tr) {
  std::vector<ExceptionalCandidate> out;
  const auto& cols = tr.table.columns;
  std::vector<std::size_t> ok;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].ok) ok.push_back(c);
  }
  auto rows_at = [&](double eps) {
    std::vector<const SpectralRow*> rs = tr.table.column_rows(eps);
    std::sort(rs.begin(), rs.end(), [](auto* a, auto* b) { return a->energy < b->energy; });
    return rs;
  };
  auto scan_pairs = [&](std::size_t here, std::size_t there, bool ending) {
    const auto rs = rows_at(cols[here].epsilon);
    const auto other = rows_at(cols[there].epsilon);
    const bool other_full = static_cast<int>(other.size()) >= tr.table.n_max;
    const bool here_full = static_cast<int>(rs.size()) >= tr.table.n_max;
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
      const auto& b1 = tr.branches[static_cast<std::size_t>(rs[i]->branch)];
      const auto& b2 = tr.branches[static_cast<std::size_t>(rs[i + 1]->branch)];
      const bool gone1 = ending ? (b1.last_column == here && b1.ends) : (b1.first_column == here && b1.starts);
      const bool gone2 = ending ? (b2.last_column == here && b2.ends) : (b2.first_column == here && b2.starts);
      if (!gone1 || !gone2) continue;
      // Rows pushed out of (or into) a full column by n_max are not merges.
      const bool at_top = i + 2 >= rs.size();
      if (at_top && here_full && other_full) continue;
      out.push_back({{b1.id, b2.id}, cols[here].epsilon, cols[there].epsilon, rs[i]->energy,
                     rs[i + 1]->energy});
      ++i;
    }
  };
  for (std::size_t k = 0; k + 1 < ok.size(); ++k) {
    scan_pairs(ok[k], ok[k + 1], true);
    scan_pairs(ok[k + 1], ok[k], false);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::min(a.eps_present, a.eps_absent) < std::min(b.eps_present, b.eps_absent);
  });
  return out;
}

/// Roots near `centre` at one eps, scanned on a fine grid; the window is
/// [centre - half_width, centre + half_width].
inline std::vector<double> local_roots(double epsilon, int lambda, double centre, double half_width,
                                       const SolverConfig& cfg) {
  const Shooter shooter({lambda, 1.0, cfg.tail_extent}, PotentialSpec{epsilon}, cfg.integrator);
  SolverConfig fine = cfg;
  fine.grid_step = cfg.grid_step / 5;
  return detail::roots_on(shooter, centre - half_width, centre + half_width, fine, cfg.jobs).roots;
}

/// Bisection in eps on "the pair is still real" until the bracket is at most
/// `eps_tol` wide. Presence is judged by the number of real roots in a
/// window around the pair: it must not drop below the count at eps_present.
inline ExceptionalPoint locate_exceptional(int lambda, const ExceptionalCandidate& cand,
                                           const SolverConfig& cfg = {}, double eps_tol = 1e-3) {
  cfg.validate();
  const double centre = 0.5 * (cand.energy_lo + cand.energy_hi);
  const double half = std::max(0.75, 1.5 * (cand.energy_hi - cand.energy_lo));

  std::vector<std::pair<double, std::size_t>> raw;
  auto count_at = [&](double eps) {
    const auto n = local_roots(eps, lambda, centre, half, cfg).size();
    raw.emplace_back(eps, n);
    return n;
  };
  auto dump_raw = [&] {
    std::ostringstream os;
    for (const auto& [e, n] : raw) os << e << ':' << n << ' ';
    return os.str();
  };

  const std::size_t n_present = count_at(cand.eps_present);
  const std::size_t n_absent = count_at(cand.eps_absent);
  if (n_present < 2 || n_absent >= n_present) {
    throw PredicateNoisy("locate_exceptional: pair not present at one end and absent at the other",
                         dump_raw());
  }
  auto present = [&](double eps) { return count_at(eps) >= n_present; };

  double yes = cand.eps_present;
  double no = cand.eps_absent;
  while (std::abs(yes - no) > eps_tol) {
    const double mid = 0.5 * (yes + no);
    (present(mid) ? yes : no) = mid;
  }

  // The predicate must switch exactly once across the original bracket.
  constexpr int kProbe = 4;
  std::vector<bool> pattern{true};
  for (int k = 1; k <= kProbe; ++k) {
    const double e = cand.eps_present + (cand.eps_absent - cand.eps_present) * k / (kProbe + 1);
    pattern.push_back(present(e));
  }
  pattern.push_back(false);
  int switches = 0;
  for (std::size_t k = 1; k < pattern.size(); ++k) switches += pattern[k] != pattern[k - 1];
  if (switches != 1) {
    throw PredicateNoisy("locate_exceptional: pair presence flips more than once in the bracket",
                         dump_raw());
  }

  ExceptionalPoint ep;
  ep.pair = cand.pair;
  ep.eps_lo = std::min(yes, no);
  ep.eps_hi = std::max(yes, no);
  ep.eps_star = 0.5 * (yes + no);
  ep.status = EpStatus::refined;
  const auto roots = local_roots(yes, lambda, centre, half, cfg);
  double best_gap = std::numeric_limits<double>::infinity();
  ep.energy_star = centre;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    if (roots[i + 1] - roots[i] < best_gap) {
      best_gap = roots[i + 1] - roots[i];
      ep.energy_star = 0.5 * (roots[i] + roots[i + 1]);
    }
  }
  return ep;
}

inline const char* to_string(EpStatus s) { return s == EpStatus::refined ? "refined" : "bracketed"; }

}  // namespace toboggan
