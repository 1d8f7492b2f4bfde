#include <doctest.h>

#include <cmath>
#include <sstream>

#include "starklft/stark/stark.hpp"

using namespace starklft;
using coulomb::QuantumContext;

TEST_CASE("channel bookkeeping") {
  const auto c = QuantumContext::from_delta(10.5, 1, 1.3);
  const auto ch = stark::solve_channels(c, 30);
  REQUIRE(ch.size() == 30);
  for (std::size_t i = 0; i < ch.size(); ++i) {
    CHECK(ch[i].k == int(i) + 1);
    CHECK(ch[i].nu == doctest::Approx(c.n * ch[i].beta - 1.0).epsilon(1e-14));
    CHECK(ch[i].nu + ch[i].mu == doctest::Approx(c.n - c.m - 1));
    CHECK(ch[i].c > 0.0);
    if (i > 0) CHECK(ch[i].beta > ch[i - 1].beta);
  }
}

TEST_CASE("zero-field degeneration") {
  const auto c = QuantumContext::from_field(10.5, 1, 1e-12);
  const auto ch = stark::solve_channels(c, 10);
  for (const auto& s : ch) {
    CHECK(std::fabs(s.nu - (s.k - 1)) < 1e-6);
    const double N = coulomb::norm_Nn1(c, s.k - 1);
    CHECK(std::fabs(s.c * s.c - N * N) < 1e-4);
  }
}

TEST_CASE("shooting cross-check") {
  const auto c = QuantumContext::from_delta(10.5, 1, 1.3);
  const auto ch = stark::solve_channels(c, 6);
  for (int k : {1, 3, 6}) {
    const auto s = stark::shoot_channel(c, k);
    CHECK(s.nodes == k - 1);
    CHECK(std::fabs(s.beta - ch[k - 1].beta) < 1e-6);
  }
}

TEST_CASE("extended channels refine the binary64 ones") {
  const auto c = QuantumContext::from_delta(10.5, 1, 1.3);
  const auto d = stark::solve_channels(c, 12);
  const auto q = stark::solve_channels_extended(c, 12);
  for (int i = 0; i < 12; ++i) {
    CHECK(std::fabs(double(q[i].nu) - d[i].nu) < 1e-9 * (1 + d[i].nu));
    CHECK(std::fabs(double(q[i].c) / d[i].c - 1.0) < 1e-8);
  }
}

TEST_CASE("near-origin coefficient by least squares") {
  const auto c = QuantumContext::from_delta(10.5, 1, 1.3);
  const auto ch = stark::solve_channels(c, 3);
  const auto fit = stark::channel_match_c(c, ch[2], 0.5, 5.0);
  CHECK(fit.residual < 1e-3);
  CHECK(std::fabs(fit.c / ch[2].c - 1.0) < 1e-3);
}

TEST_CASE("channel counting") {
  const auto c = QuantumContext::from_delta(10.5, 1, 1.3);
  const auto ch = stark::solve_channels(c, 40);
  const int k = stark::count_channels_below(c, 20.0);
  REQUIRE(k < 40);
  CHECK(ch[k - 1].nu < 20.0);
  CHECK(ch[k].nu >= 20.0);
}

TEST_CASE("channel table format") {
  const auto c = QuantumContext::from_delta(10.5, 1, 1.3);
  std::ostringstream os;
  stark::write_channel_table(os, stark::solve_channels(c, 4));
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  std::getline(is, line);
  CHECK(line == "k,beta,nu,mu,c,fit_residual");
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 4);
}
