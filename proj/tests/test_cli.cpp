#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using Catch::Matchers::WithinAbs;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "toboggan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = toboggan::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("solve prints oscillator levels", "[cli]") {
  const Run r = invoke({"solve", "--epsilon", "0", "--n", "3", "-j", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# format: 1\n", 0) == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"epsilon", "lambda", "index", "energy"});
  for (int n = 0; n < 3; ++n) CHECK_THAT(std::stod(rows[static_cast<std::size_t>(n) + 1][3]), WithinAbs(2 * n + 1, 1e-6));
}

TEST_CASE("solve json and eps near the top of the range", "[cli]") {
  const Run r = invoke({"solve", "-e", "1.9", "--n", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["format"] == 1);
  REQUIRE(j["energies"].size() == 2);
  CHECK(j["energies"][0].get<double>() > 1.0);
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(invoke({}).code == 64);
  CHECK(invoke({"solve"}).code == 64);
  CHECK(invoke({"solve", "-e", "2.5"}).code == 64);
  CHECK(invoke({"sweep", "--from", "0.5", "--to", "0.1"}).code == 64);
  CHECK(invoke({"solve", "-e", "0", "--dt", "0.5"}).code == 64);
  CHECK(invoke({"solve", "-e", "0", "--format", "xml"}).code == 64);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("no roots in window exits with 2", "[cli]") {
  const Run r = invoke({"solve", "-e", "0", "--emin", "-2", "--emax", "0.3"});
  CHECK(r.code == 2);
}

TEST_CASE("contour dump", "[cli]") {
  const Run r = invoke({"contour", "-l", "1", "--samples", "5"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"t", "re_x", "im_x", "theta"});
  CHECK_THAT(std::stod(rows[1][0]), WithinAbs(-(std::acos(-1.0) + 10.0), 1e-7));
  CHECK_THAT(std::stod(rows[3][0]), WithinAbs(0.0, 1e-12));
  CHECK_THAT(std::stod(rows[3][2]), WithinAbs(-1.0, 1e-12));

  const Run v = invoke({"contour", "-l", "2", "--samples", "3", "-e", "0.5"});
  REQUIRE(v.code == 0);
  const auto vrows = csv(v.out);
  REQUIRE(vrows[0].size() == 6);
  CHECK_THAT(std::stod(vrows[1][0]), WithinAbs(-(2 * std::acos(-1.0) + 10.0), 1e-7));
  CHECK_THAT(std::stod(vrows[2][4]), WithinAbs(-1.0, 1e-12));
}

TEST_CASE("mismatch dump changes sign at the oscillator levels", "[cli]") {
  const Run r = invoke({"mismatch", "-e", "0", "--emin", "0", "--emax", "8", "--estep", "0.1"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  int changes = 0;
  for (std::size_t k = 2; k < rows.size(); ++k) {
    if ((std::stod(rows[k][1]) > 0) != (std::stod(rows[k - 1][1]) > 0)) ++changes;
    CHECK(std::abs(std::stod(rows[k][2])) <= 1.0);
  }
  CHECK(changes == 4);
}

TEST_CASE("perturb", "[cli]") {
  const Run r = invoke({"perturb", "--n", "3", "-e", "0.2"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK_THAT(std::stod(rows[4][3]), WithinAbs(7.0 + 0.1 * toboggan::digamma(2.5), 1e-8));
}

TEST_CASE("sweep writes rows, exceptional points and no partial file", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path() / "toboggan_cli_test";
  std::filesystem::create_directories(dir);
  const auto out = (dir / "s.csv").string();
  const Run r = invoke({"sweep", "--from", "0", "--to", "0.2", "--step", "0.1", "--n", "2", "-o", out});
  REQUIRE(r.code == 0);
  std::ifstream f(out);
  std::stringstream body;
  body << f.rdbuf();
  const auto rows = csv(body.str());
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].back() == "branch");
  CHECK(std::filesystem::exists(dir / "s_ep.json"));
  CHECK_FALSE(std::filesystem::exists(out + ".partial"));
  std::ifstream ep(dir / "s_ep.json");
  CHECK(nlohmann::json::parse(ep).is_array());
  std::filesystem::remove_all(dir);
}

TEST_CASE("output is byte-identical across runs and thread counts", "[cli]") {
  const Run a = invoke({"solve", "-e", "0.5", "-l", "1", "--n", "4", "-j", "1"});
  const Run b = invoke({"solve", "-e", "0.5", "-l", "1", "--n", "4", "-j", "3"});
  const Run c = invoke({"solve", "-e", "0.5", "-l", "1", "--n", "4", "-j", "1"});
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}
