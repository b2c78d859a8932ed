#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "toboggan/integrator.hpp"

using namespace toboggan;
using Catch::Matchers::WithinAbs;
constexpr double pi = std::numbers::pi;

namespace {

double rel_diff(complex a, complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

complex absolute(complex v, double logscale) { return v * std::exp(logscale); }

}  // namespace

TEST_CASE("initial Wronskian is -1", "[integrator]") {
  const SolutionPair fresh;
  CHECK(wronskian(fresh) == complex{-1.0, 0.0});
}

TEST_CASE("zero initial state stays zero", "[integrator]") {
  for (int lambda : {0, 1, 2}) {
    const auto table = PathTable::to_end({lambda}, {0.7}, +1, 1e-3);
    double ls = 0.0;
    const StateVector y = table.advance({{0, 0}, {0, 0}}, 3.0, ls);
    CHECK(y.psi == complex{0, 0});
    CHECK(y.dpsi == complex{0, 0});
    CHECK(ls == 0.0);
  }
}

TEST_CASE("endpoint values match the adaptive step-doubling reference", "[integrator][oracle]") {
  // Straight contour t - i with the principal power evaluated independently.
  const double eps = GENERATE(0.0, 0.5, -0.4);
  const double E = 0.5;
  const double T = 10.0;
  auto coeff = [&](double t) {
    const complex x{t, -1.0};
    return std::pair<complex, complex>{complex{1.0, 0.0}, x * x * std::pow(complex{0, 1} * x, eps)};
  };
  const oracle::State r1 = oracle::adaptive_reference(coeff, E, {{0, 0}, {1, 0}}, 0.0, T);
  const oracle::State r2 = oracle::adaptive_reference(coeff, E, {{1, 0}, {0, 0}}, 0.0, T);
  // Global RK4 error scales as dt^4: 1e-3 leaves ~1e-8, a quarter of it ~1e-10.
  for (const auto& [dt, tol] : {std::pair{1e-3, 1e-7}, std::pair{2.5e-4, 1e-9}}) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    const SolutionPair pair = propagate({0, 1.0, T}, {eps}, E, +1, cfg);
    CHECK(rel_diff(absolute(pair.s1.psi, pair.logscale1), r1.psi) < tol);
    CHECK(rel_diff(absolute(pair.s1.dpsi, pair.logscale1), r1.dpsi) < tol);
    CHECK(rel_diff(absolute(pair.s2.psi, pair.logscale2), r2.psi) < tol);
    CHECK(rel_diff(absolute(pair.s2.dpsi, pair.logscale2), r2.dpsi) < tol);
  }
}

TEST_CASE("Wronskian is conserved where the solutions stay moderate", "[integrator][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> eps_dist(-0.95, 1.95);
  std::uniform_real_distribution<double> e_dist(-2.0, 15.0);
  std::uniform_int_distribution<int> lam_dist(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const int lambda = lam_dist(rng);
    const double eps = eps_dist(rng);
    const double E = e_dist(rng);
    const ContourSpec s{lambda};
    // The circle plus one unit of tail in each direction.
    for (double t : {s.junction() + 1.0, -(s.junction() + 1.0)}) {
      const SolutionPair p = propagate_to(s, {eps}, E, t);
      INFO("lambda=" << lambda << " eps=" << eps << " E=" << E << " t=" << t);
      CHECK(std::abs(wronskian(p) + 1.0) < 1e-8);
    }
    // At the ends only the drift relative to the cancelling products is
    // resolvable in double precision.
    const SolutionPair end = propagate(s, {eps}, E, +1);
    CHECK(relative_wronskian_drift(end) < 1e-8);
  }
}

TEST_CASE("PT reflection of the shooting pair", "[integrator][property]") {
  for (int lambda : {0, 1, 2}) {
    for (double eps : {-0.5, 0.3, 1.2}) {
      const double E = 2.7;
      const ContourSpec s{lambda};
      const double t = s.junction() + 4.0;
      const SolutionPair p = propagate_to(s, {eps}, E, t);
      const SolutionPair m = propagate_to(s, {eps}, E, -t);
      INFO("lambda=" << lambda << " eps=" << eps);
      CHECK(rel_diff(absolute(m.s2.psi, m.logscale2), std::conj(absolute(p.s2.psi, p.logscale2))) < 1e-9);
      CHECK(rel_diff(absolute(m.s1.psi, m.logscale1), -std::conj(absolute(p.s1.psi, p.logscale1))) < 1e-9);
      CHECK(rel_diff(absolute(m.s1.dpsi, m.logscale1), std::conj(absolute(p.s1.dpsi, p.logscale1))) < 1e-9);
      CHECK(rel_diff(absolute(m.s2.dpsi, m.logscale2), -std::conj(absolute(p.s2.dpsi, p.logscale2))) < 1e-9);
    }
  }
}

TEST_CASE("RK4 converges at fourth order", "[integrator][property]") {
  for (int lambda : {0, 1}) {
    const ContourSpec s{lambda, 1.0, 5.0};
    const PotentialSpec v{0.4};
    auto end_psi = [&](double dt) {
      IntegratorConfig cfg;
      cfg.dt = dt;
      const SolutionPair p = propagate(s, v, 2.0, +1, cfg);
      return absolute(p.s2.psi, p.logscale2);
    };
    const complex a = end_psi(8e-3);
    const complex b = end_psi(4e-3);
    const complex c = end_psi(2e-3);
    const double ratio = std::abs(a - b) / std::abs(b - c);
    INFO("lambda=" << lambda << " ratio=" << ratio);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
  }
}

TEST_CASE("renormalisation preserves phases and stays bounded", "[integrator]") {
  const ContourSpec s{1};
  IntegratorConfig loose;
  loose.renorm_threshold = 1e300;
  IntegratorConfig tight;
  tight.renorm_threshold = 1e10;
  const SolutionPair a = propagate(s, {0.5}, 4.0, +1, loose);
  const SolutionPair b = propagate(s, {0.5}, 4.0, +1, tight);
  CHECK(b.logscale2 > 0.0);
  CHECK(std::max(std::abs(b.s2.psi), std::abs(b.s2.dpsi)) <= 1e10 * 1.000001);
  CHECK(rel_diff(absolute(b.s2.psi, b.logscale2), absolute(a.s2.psi, a.logscale2)) < 1e-10);
  CHECK(std::abs(std::arg(b.s1.psi) - std::arg(a.s1.psi)) < 1e-10);
}

TEST_CASE("integrator errors", "[integrator]") {
  IntegratorConfig bad;
  bad.dt = 0.02;
  CHECK_THROWS_AS(propagate({0}, {0.0}, 1.0, +1, bad), InvalidArgument);
  CHECK_THROWS_AS(propagate({0}, {2.5}, 1.0, +1), InvalidArgument);
  CHECK_THROWS_AS(propagate({0}, {0.0}, std::nan(""), +1), InvalidArgument);
  CHECK_THROWS_AS(propagate({0}, {0.0}, 1e300, +1), NonFiniteState);
}

TEST_CASE("step is tightened close to eps = 2", "[integrator]") {
  const IntegratorConfig cfg;
  CHECK(cfg.effective_step({1.5}) == cfg.dt);
  CHECK(cfg.effective_step({1.7}) == cfg.dt / 4);
}

TEST_CASE("junction is a grid node", "[integrator]") {
  // 0.3 does not divide pi; the two segments get separate step sizes.
  const PathTable table({1, 1.0, 5.0}, {0.2}, pi + 5.0, 0.3);
  CHECK(table.size() == static_cast<std::size_t>(std::ceil(pi / 0.3) + std::ceil(5.0 / 0.3)));
}
