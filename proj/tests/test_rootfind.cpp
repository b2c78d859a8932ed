#include <catch_amalgamated.hpp>

#include "toboggan/rootfind.hpp"
#include "toboggan/shooting.hpp"

using namespace toboggan;
using Catch::Matchers::WithinAbs;

namespace {

RootConfig window(double lo, double hi, double step) {
  RootConfig c;
  c.e_min = lo;
  c.e_max = hi;
  c.grid_step = step;
  return c;
}

}  // namespace

TEST_CASE("simple sign change is bracketed", "[rootfind]") {
  const ScanResult r = scan([](double e) { return e * e - 4.0; }, window(0, 5, 0.5));
  REQUIRE(r.brackets.size() == 1);
  CHECK(r.brackets[0].lo < 2.0);
  CHECK(r.brackets[0].hi >= 2.0);
  CHECK(r.flags.empty());
}

TEST_CASE("tangential zero is flagged, not bracketed", "[rootfind]") {
  const ScanResult r = scan([](double e) { return (e - 2.0) * (e - 2.0); }, window(0, 5, 0.5));
  CHECK(r.brackets.empty());
  REQUIRE(r.flags.size() == 1);
  CHECK_THAT(r.flags[0], WithinAbs(2.0, 0.5));

  // Off-grid double root.
  const ScanResult s = scan([](double e) { return (e - 2.2) * (e - 2.2); }, window(0, 5, 0.5));
  CHECK(s.brackets.empty());
  REQUIRE(s.flags.size() == 1);
  CHECK_THAT(s.flags[0], WithinAbs(2.2, 0.5));
}

TEST_CASE("exact zero on a grid node is still bracketed", "[rootfind]") {
  const ScanResult r = scan([](double e) { return e - 2.0; }, window(0, 5, 0.5));
  REQUIRE(r.brackets.size() == 1);
  CHECK(r.brackets[0].lo == 1.5);
  CHECK(r.brackets[0].hi == 2.5);
}

TEST_CASE("bisection", "[rootfind]") {
  auto lin = [](double e) { return e - 3.0; };
  CHECK_THAT(bisect(lin, {2, 4, lin(2), lin(4)}, 1e-10), WithinAbs(3.0, 1e-10));
  auto cubic = [](double e) { return e * e * e - 8.0; };
  CHECK_THAT(bisect(cubic, {1, 3, cubic(1), cubic(3)}, 1e-12), WithinAbs(2.0, 1e-12));
  CHECK_THROWS_AS(bisect(lin, {4, 5, lin(4), lin(5)}, 1e-10), BracketInvalid);
  CHECK_THROWS_AS(bisect(lin, {3, 4, 0.0, lin(4)}, 1e-10), BracketInvalid);
}

TEST_CASE("harmonic mismatch has six brackets below 12", "[rootfind]") {
  const Shooter s({0}, {0.0});
  auto f = [&](double e) { return s.mismatch(e).normalized; };
  const ScanResult coarse = scan(f, window(0, 12, 0.05));
  REQUIRE(coarse.brackets.size() == 6);

  // Brute-force oracle: a ten times finer grid sees the same sign changes.
  const ScanResult fine = scan(f, window(0, 12, 0.005));
  REQUIRE(fine.brackets.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(coarse.brackets[k].lo <= fine.brackets[k].lo);
    CHECK(coarse.brackets[k].hi >= fine.brackets[k].hi);
    CHECK_THAT(0.5 * (fine.brackets[k].lo + fine.brackets[k].hi), WithinAbs(2.0 * k + 1.0, 0.01));
  }
  const double root = bisect(f, coarse.brackets[2], 1e-10);
  CHECK_THAT(root, WithinAbs(5.0, 1e-5));
}

TEST_CASE("refining the grid never loses a simple root", "[rootfind][property]") {
  const Shooter s({0}, {0.0});
  auto f = [&](double e) { return s.mismatch(e).normalized; };
  std::vector<double> previous;
  for (double step : {0.4, 0.2, 0.1, 0.05}) {
    const RootsResult r = find_roots(f, window(0.1, 8.3, step));
    for (double known : previous) {
      const bool kept = std::any_of(r.roots.begin(), r.roots.end(),
                                    [&](double e) { return std::abs(e - known) < 1e-8; });
      CHECK(kept);
    }
    CHECK(std::is_sorted(r.roots.begin(), r.roots.end()));
    previous = r.roots;
  }
  CHECK(previous.size() == 4);
}

TEST_CASE("parallel scan matches serial scan", "[rootfind]") {
  auto f = [](double e) { return std::sin(3.0 * e); };
  const RootsResult a = find_roots(f, window(0, 10, 0.05), 1);
  const RootsResult b = find_roots(f, window(0, 10, 0.05), 4);
  CHECK(a.roots == b.roots);
}

TEST_CASE("root config validation", "[rootfind]") {
  CHECK_THROWS_AS(window(1, 1, 0.1).validate(), InvalidArgument);
  CHECK_THROWS_AS(window(0, 1, 2.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(window(0, 1, -0.1).validate(), InvalidArgument);
}
