#include <doctest.h>

#include <cmath>

#include "starklft/coulomb/coulomb.hpp"
#include "starklft/lft/lft.hpp"
#include "starklft/specfun/legendre.hpp"

using namespace starklft;
using coulomb::QuantumContext;

namespace {

QuantumContext fig1() { return QuantumContext::from_delta(10.5, 1, 1.3); }

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

// Reference values below come from 40-digit mpmath evaluations.

TEST_CASE("context from delta and field") {
  const auto c = fig1();
  CHECK(rel(c.F, 6.6844576076840411146e-6) < 1e-15);
  const auto d = QuantumContext::from_field(10.5, 1, c.F);
  CHECK(rel(d.delta, 1.3) < 1e-14);
  CHECK(c.energy() == doctest::Approx(-0.5 / 110.25));
}

TEST_CASE("parabolic coordinates round trip") {
  double xi = 0, eta = 0, r = 0, ct = 0;
  coulomb::to_parabolic(12.0, 0.3, xi, eta);
  CHECK(xi == doctest::Approx(15.6));
  CHECK(eta == doctest::Approx(8.4));
  coulomb::from_parabolic(xi, eta, r, ct);
  CHECK(r == doctest::Approx(12.0));
  CHECK(ct == doctest::Approx(0.3));
}

TEST_CASE("field grid flags small eta") {
  const coulomb::FieldGrid g({10.0, 20.0}, {-0.5, 0.0, 0.998});
  REQUIRE(g.size() == 6);
  CHECK(g.nodes()[2].flagged);
  CHECK_FALSE(g.nodes()[1].flagged);
  CHECK(g.nodes()[4].eta == doctest::Approx(20.0));
  CHECK(g.min_unflagged_eta() == doctest::Approx(10.0));
}

TEST_CASE("spherical radial functions") {
  const auto c = fig1();
  CHECK(rel(coulomb::radial_regular_F(c, 3, 7.0), 0.042382903031192690467) < 1e-12);
  CHECK(rel(coulomb::radial_regular_F(c, 3, 25.0), -0.015815618184421164686) < 1e-12);
  CHECK(rel(coulomb::radial_irregular_G(c, 3, 7.0), -235843.68377042400273) < 1e-11);
  CHECK(rel(coulomb::radial_irregular_G(c, 3, 25.0), -51856.117704936506102) < 1e-11);
  CHECK(rel(coulomb::radial_irregular_G_log(c, 3, 25.0).value(), -51856.117704936506102) < 1e-11);
}

TEST_CASE("parabolic functions") {
  const auto c = fig1();
  CHECK(rel(coulomb::parabolic_regular_f(c, 2.37, 12.0), -0.0083391707441545173227) < 1e-11);
  CHECK(rel(coulomb::parabolic_irregular_g(c, 6.13, 20.0), -101.48931493948207537) < 1e-11);
}

TEST_CASE("normalization constants") {
  const auto c = fig1();
  CHECK(rel(coulomb::wronskian_W(c, 3).value(), -246259.3936770423795) < 1e-13);
  CHECK(rel(coulomb::wronskian_W(c, 1).value(), -299029.26375069431796) < 1e-13);
  CHECK(rel(coulomb::norm_Nlm<double>(3, 1), 0.29166666666666666667) < 1e-15);
  CHECK(rel(coulomb::norm_Nn1(c, 4), 0.6900655593423542178) < 1e-14);
}

TEST_CASE("A at l = m") {
  CHECK(lft::a_matrix<double>(0, 3.3, 1.7, 0) == doctest::Approx(1.0));
  CHECK(lft::a_matrix<double>(1, 2.0, 6.5, 1) == doctest::Approx(-1.0));
  CHECK(lft::a_matrix<double>(2, 0.4, 5.1, 2) == doctest::Approx(4.0 * 2.0 / 24.0));
}

TEST_CASE("A approaches its large-nu form") {
  for (int l = 1; l <= 6; ++l) {
    const auto dev = [l](double nu) {
      return std::fabs(lft::a_matrix<double>(1, nu, 10.5 - nu - 2.0, l) / lft::a_matrix_asymptotic(nu, l, 1) - 1.0);
    };
    CHECK(dev(400.0 * l) < 0.02);
    CHECK(dev(4000.0 * l) <= 0.11 * dev(400.0 * l) + 1e-13);
  }
  CHECK(lft::a_matrix_asymptotic(7.0, 3, 1) < 0.0);
  CHECK(lft::a_matrix_asymptotic(7.0, 1, 1) == doctest::Approx(-1.0));
  CHECK(lft::a_matrix_asymptotic(7.0, 4, 1) > 0.0);
}

TEST_CASE("A in binary64 and binary128 agree") {
  for (int l = 1; l <= 12; ++l) {
    const double d = lft::a_matrix<double>(1, 3.71, 5.79, l);
    const quad q = lft::a_matrix<quad>(1, quad(3.71), quad(5.79), l);
    CHECK(std::fabs(d - double(q)) <= 1e-12 * std::fabs(double(q)) + 1e-300);
  }
}

TEST_CASE("omega") {
  const auto c = fig1();
  CHECK(rel(lft::omega(c, 6.13), 48.990887538480035179) < 1e-12);
  CHECK(rel(lft::omega(c, -0.4), -2.4476558810491562997) < 1e-12);
  CHECK_THROWS_AS((void)lft::omega(c, 3.0), PoleError);
}

TEST_CASE("regular LFT identity") {
  const coulomb::FieldGrid grid(coulomb::FieldGrid::linspace(1, 20, 12), coulomb::FieldGrid::linspace(-0.95, 0.95, 13));
  for (int m : {0, 1}) {
    const auto c = QuantumContext::from_delta(10.5, m, 1.3);
    for (double nu : {0.0, 2.0, 2.37}) {
      CHECK(lft::regular_lft_identity_residual(c, nu, grid, 40).sup_relative < 1e-8);
    }
  }
}

TEST_CASE("regular LFT identity detects a flipped A") {
  const auto c = fig1();
  const double nu = 2.37, mu = 10.5 - nu - 2.0;
  double worst = 0.0, scale = 0.0;
  for (double r : {4.0, 9.0, 15.0}) {
    for (double ct : {-0.6, 0.1, 0.7}) {
      double xi = 0, eta = 0;
      coulomb::to_parabolic(r, ct, xi, eta);
      const double lhs = coulomb::parabolic_regular_f(c, nu, xi) * coulomb::parabolic_regular_f(c, mu, eta);
      double sum = 0.0;
      for (int l = 1; l <= 40; ++l) {
        const double a = lft::a_matrix(c, nu, mu, l) * (l == 2 ? -1.0 : 1.0);
        sum += a * specfun::legendre_p(l, 1, ct) * coulomb::radial_regular_F(c, l, r);
      }
      worst = std::max(worst, std::fabs(lhs - sum));
      scale = std::max(scale, std::fabs(lhs));
    }
  }
  CHECK(worst / scale > 1e-3);
}

TEST_CASE("exact irregular expansion") {
  const auto c = fig1();
  const coulomb::FieldGrid grid(coulomb::FieldGrid::linspace(5, 40, 8), coulomb::FieldGrid::linspace(-0.9, 0.9, 9));
  for (int l : {1, 3}) CHECK(lft::exact_irregular_identity_residual(c, l, grid).sup_relative < 1e-6);
}

TEST_CASE("B vanishes nowhere for half-integer n") {
  const auto c = fig1();
  for (int n1 = 0; n1 < 20; ++n1) CHECK_FALSE(lft::b_matrix(c, 3, n1).is_zero());
}

TEST_CASE("radial Coulomb equation") {
  for (double n : {10.5, 28.5}) {
    const auto c = QuantumContext::from_delta(n, 1, 1.3);
    for (int l : {1, 3, 6}) {
      for (double r = 1.0; r <= 3.0 * n; r *= 1.7) {
        const double h = 2e-3 * r;
        for (auto fn : {coulomb::radial_regular_F, coulomb::radial_irregular_G}) {
          const double f0 = fn(c, l, r), f1 = fn(c, l, r + h), f_1 = fn(c, l, r - h);
          const double f2 = fn(c, l, r + 2 * h), f_2 = fn(c, l, r - 2 * h);
          const double d2 = (-f2 + 16 * f1 - 30 * f0 + 16 * f_1 - f_2) / (12 * h * h);
          const double d1 = (-f2 + 8 * f1 - 8 * f_1 + f_2) / (12 * h);
          const double pot = 2.0 / r - 1.0 / (n * n) - l * (l + 1) / (r * r);
          const double scale = std::fabs(d2) + std::fabs(2.0 / r * d1) + std::fabs(pot * f0);
          CHECK(std::fabs(d2 + 2.0 / r * d1 + pot * f0) <= 1e-6 * scale);
        }
      }
    }
  }
}

TEST_CASE("Wronskian constant") {
  // r^2 (F G' - F' G) is r-independent; its ratio to W_l is one global constant.
  double ratio = 0.0;
  for (double n : {10.5, 17.3, 28.5}) {
    const auto c = QuantumContext::from_delta(n, 1, 1.3);
    for (int l : {1, 2, 4}) {
      for (double r = n / 2; r <= 3 * n; r += n / 2) {
        const double h = 1e-4 * r;
        const double F = coulomb::radial_regular_F(c, l, r), G = coulomb::radial_irregular_G(c, l, r);
        const double dF = (coulomb::radial_regular_F(c, l, r + h) - coulomb::radial_regular_F(c, l, r - h)) / (2 * h);
        const double dG = (coulomb::radial_irregular_G(c, l, r + h) - coulomb::radial_irregular_G(c, l, r - h)) / (2 * h);
        const double q = r * r * (F * dG - dF * G) / coulomb::wronskian_W(c, l).value();
        if (ratio == 0.0) ratio = q;
        CHECK(q == doctest::Approx(ratio).epsilon(1e-6));
      }
    }
  }
  CHECK(ratio == doctest::Approx(-1.0).epsilon(1e-6));
}
