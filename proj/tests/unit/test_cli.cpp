#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "starklft/cli/commands.hpp"
#include "starklft/cli/config.hpp"
#include "starklft/errors.hpp"

using namespace starklft;
using namespace starklft::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("starklft_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const int rc = std::system((std::string(STARKLFT_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("config round trip") {
  RunConfig c;
  CHECK(RunConfig::parse(c.render()) == c);
  c.F = 1.234567890123e-6;
  c.delta.reset();
  c.n = 28.5;
  c.l_prime_top = 19;
  c.cutoff = {matching::CutoffShape::gaussian, 33.3, 2.0};
  c.grid_r = {10, 80, 101};
  c.out = "some/dir";
  c.method = MethodSelector::glft;
  c.precision = Precision::standard;
  CHECK(RunConfig::parse(c.render()) == c);
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.F = 1e-6;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.delta.reset();
  CHECK_NOTHROW(c.validate());
  c.l = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  CHECK_THROWS_AS(Axis::parse("1:2"), DomainError);
  CHECK_THROWS_AS(Axis::parse("3:2:5"), DomainError);
  CHECK_THROWS_AS(RunConfig::parse("colour=blue\n"), DomainError);
}

TEST_CASE("resolved defaults and presets") {
  const RunConfig r = RunConfig{}.resolved();
  CHECK(r.l_prime_top == 13);
  CHECK(r.cutoff.scale == doctest::Approx(42.0));
  const RunConfig f2 = figure_preset(2);
  CHECK(f2.n == 28.5);
  CHECK(f2.grid_r.hi == 80.0);
  CHECK(*f2.delta == 1.3);
  CHECK_THROWS(figure_preset(3));
}

TEST_CASE("header records both field and delta") {
  const std::string h = RunConfig{}.header();
  CHECK(h.find("# delta=1.3\n") != std::string::npos);
  CHECK(h.find("# derived_F=6.6844576076840") != std::string::npos);
}

TEST_CASE("exit codes for errors") {
  CHECK(exit_code_for(PlateauError("x")) == exit_plateau);
  CHECK(exit_code_for(DomainError("x")) == exit_config);
  CHECK(exit_code_for(PoleError("x")) == exit_config);
  CHECK(exit_code_for(ConvergenceError("x")) == exit_solver);
}

TEST_CASE("channels command") {
  const auto dir = scratch("channels");
  CHECK(run("channels --n 10.5 --m 1 --delta 1.3 --kmax 40 --out " + dir.string()) == 0);
  const std::string text = slurp(dir / "channels.csv");
  std::istringstream is(text);
  std::string line;
  int rows = 0;
  bool header_done = false;
  while (std::getline(is, line)) {
    if (line[0] == '#') continue;
    if (!header_done) {
      header_done = true;
      continue;
    }
    ++rows;
  }
  CHECK(rows == 40);
  CHECK(text.find("# derived_F=6.6844576") != std::string::npos);
}

TEST_CASE("command line errors") {
  CHECK(run("channels --F 1e-6 --delta 1.3") == exit_config);
  CHECK(run("channels --n -2") == exit_config);
  CHECK(run("figure --which 3") == exit_config);
  CHECK(run("") == exit_config);
}

TEST_CASE("gamma command writes both methods and fails on a missing plateau") {
  const auto dir = scratch("gamma");
  CHECK(run("gamma --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "gamma_uom.csv"));
  CHECK(fs::exists(dir / "gamma_glft.csv"));
  CHECK(slurp(dir / "gamma_summary.json").find("equivalence") != std::string::npos);
  const std::string first = slurp(dir / "gamma_uom.csv");
  CHECK(run("gamma --out " + dir.string()) == 0);
  CHECK(slurp(dir / "gamma_uom.csv") == first);
  CHECK(run("gamma --method uom --cutoff-shape sharp --out " + dir.string()) == exit_plateau);
}
