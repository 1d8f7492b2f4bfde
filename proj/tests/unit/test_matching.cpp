#include <doctest.h>

#include <cmath>
#include <sstream>

#include "starklft/cli/commands.hpp"
#include "starklft/matching/matching.hpp"

using namespace starklft;
using namespace starklft::matching;
using coulomb::QuantumContext;

namespace {

QuantumContext fig1() { return QuantumContext::from_delta(10.5, 1, 1.3); }

// Channels reaching the tail of the widest default ladder rung for p = 4.
const std::vector<stark::StarkChannelT<quad>>& fig1_channels() {
  static const auto ch = [] {
    const auto c = fig1();
    CutoffSpec w = default_cutoff(c);
    w.power = 4.0;
    w.scale = default_scale_ladder(w.scale).back();
    return stark::solve_channels_extended(c, stark::count_channels_below(c, w.support(1e-80)) + 3);
  }();
  return ch;
}

double max_rel(const GammaMatrix& a, const GammaMatrix& b, int top) {
  double worst = 0.0;
  const int m = a.ctx.m;
  for (int l = m; l <= top; ++l) {
    double row = 0.0;
    for (int lp = m; lp <= top; ++lp) row = std::max(row, std::fabs(b(l, lp)));
    for (int lp = m; lp <= top; ++lp) {
      worst = std::max(worst, std::fabs(a(l, lp) - b(l, lp)) / std::max(std::fabs(b(l, lp)), 1e-4 * row));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("cutoff weights") {
  for (auto shape : {CutoffShape::gaussian, CutoffShape::exponential_power}) {
    for (double p : {2.0, 4.0, 8.0}) {
      const CutoffSpec c{shape, 30.0, p};
      CHECK(c(0.0) > 0.99);
      CHECK(c(0.0) <= 1.0);
      double prev = 1.0;
      for (double z = 0.5; z < 400.0; z += 0.5) {
        CHECK(c(z) <= prev);
        prev = c(z);
      }
      CHECK(c(300.01) < 1e-12);
      CHECK(c(c.support(1e-30)) <= 1e-30 * 1.0001);
    }
  }
  const CutoffSpec sharp{CutoffShape::sharp, 10.0, 1.0};
  CHECK(sharp(10.0) == 1.0);
  CHECK(sharp(10.1) == 0.0);
}

TEST_CASE("gaussian equals exponential-power with p = 2") {
  const CutoffSpec g{CutoffShape::gaussian, 17.0, 8.0};
  const CutoffSpec e{CutoffShape::exponential_power, 17.0, 2.0};
  for (double z : {1.0, 9.0, 25.0}) CHECK(g(z) == doctest::Approx(e(z)).epsilon(1e-14));
}

TEST_CASE("cutoff names round trip") {
  for (auto s : {CutoffShape::gaussian, CutoffShape::exponential_power, CutoffShape::sharp}) {
    CHECK(parse_cutoff_shape(to_string(s)) == s);
  }
  CHECK_THROWS(parse_cutoff_shape("box"));
}

TEST_CASE("default cutoff and ladder") {
  const auto d = default_cutoff(fig1());
  CHECK(d.scale == doctest::Approx(42.0));
  CHECK(d.power == 8.0);
  const auto ladder = default_scale_ladder(42.0);
  REQUIRE(ladder.size() == 7);
  CHECK(ladder[3] == doctest::Approx(42.0));
  CHECK(ladder[4] / ladder[3] == doctest::Approx(1.25));
}

TEST_CASE("plateau scan at the first figure parameters") {
  const auto c = fig1();
  const int top = c.m + 6;
  const auto cut = default_cutoff(c);
  const auto uom = plateau_gamma(c, fig1_channels(), top, GammaMethod::uom, cut);
  const auto glft = plateau_gamma(c, fig1_channels(), top, GammaMethod::glft, cut);
  REQUIRE(uom.ok);
  REQUIRE(glft.ok);

  SUBCASE("scan structure") {
    CHECK(uom.matrices.size() == uom.scales.size());
    CHECK(uom.reliable[uom.chosen]);
    CHECK(uom.max_change[uom.chosen] < 0.01);
    CHECK(uom.result().rounding_bound(1e-4, top) < 1e-6);
  }
  SUBCASE("methods agree") {
    CHECK(cli::frobenius_deviation(glft.result(), uom.result(), top) < 1e-2);
  }
  SUBCASE("composite matches the chosen matrix where both are converged") {
    for (int lp = c.m; lp <= top; ++lp) {
      CHECK(std::isfinite(uom.composite(3, lp)));
      CHECK(uom.composite(3, lp) == doctest::Approx(uom.result()(3, lp)).epsilon(1e-3));
    }
  }
  SUBCASE("independent of the cutoff exponent and scale") {
    CutoffSpec p4 = cut;
    p4.power = 4.0;
    const auto s4 = plateau_gamma(c, fig1_channels(), top, GammaMethod::uom, p4);
    CHECK(max_rel(s4.result(), uom.result(), top) < 1e-2);
    const auto at = [&](double f) {
      return gamma_matrices(c, fig1_channels(), top, GammaMethod::uom, cut, {cut.scale * f}).front();
    };
    CHECK(max_rel(at(0.8), uom.result(), top) < 1e-2);
    CHECK(max_rel(at(1.25), uom.result(), top) < 1e-2);
  }
}

TEST_CASE("symmetric cutoff entries are finite and channel count suffices") {
  const auto c = fig1();
  const CutoffSpec cut = default_cutoff(c);
  const int need = channels_needed(fig1_channels(), cut);
  CHECK(need > 0);
  CHECK(need <= int(fig1_channels().size()));
}

TEST_CASE("field normalization radius") {
  CHECK(reference_radius(QuantumContext::from_delta(10.5, 1, 1.3)) == 30.0);
  CHECK(reference_radius(QuantumContext::from_delta(28.5, 1, 1.3)) == 40.0);
}

TEST_CASE("region guard") {
  const auto c = fig1();
  const auto ch = stark::solve_channels(c, 30);
  const coulomb::FieldGrid far({60.0}, {0.0});
  CHECK_THROWS_AS(channel_field(c, ch, 3, far), RegionError);
}

TEST_CASE("difference statistics") {
  const auto c = fig1();
  const coulomb::FieldGrid grid(coulomb::FieldGrid::linspace(10, 26, 5), coulomb::FieldGrid::linspace(-0.5, 0.5, 3));
  const auto exact = exact_irregular_field(c, 3, grid);
  auto shifted = exact;
  const auto st0 = compare_with_exact(c, exact, exact, 3, grid, 30.0);
  CHECK(st0.sup == 0.0);
  for (auto& v : shifted) v += 1e-3 * std::fabs(st0.reference);
  const auto st = compare_with_exact(c, shifted, exact, 3, grid, 30.0);
  CHECK(st.sup == doctest::Approx(1e-3));
  CHECK(st.q50 == doctest::Approx(1e-3));
  CHECK(st.counted == grid.size());
  REQUIRE(st.slices.size() == 3);
  CHECK(st.slices[1].costheta == doctest::Approx(0.0));
}

TEST_CASE("gamma export header") {
  GammaMatrix g;
  g.ctx = fig1();
  g.l_top = 2;
  g.entries = {1, 2, 3, 4};
  g.rounding = {0, 0, 0, 0};
  std::ostringstream os;
  write_gamma(os, g, "# n=10.5\n");
  CHECK(os.str().rfind("# n=10.5\n", 0) == 0);
}
