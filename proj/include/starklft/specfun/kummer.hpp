#pragma once

#include <span>
#include <vector>

#include "starklft/specfun/signed_log.hpp"

namespace starklft::specfun {

// Kummer's function M(a, b, x) = 1F1(a; b; x) for b > 0, x >= 0.
double kummer_m(double a, double b, double x);

// Tricomi's function U(a, b, x) for integer b >= 1 and x > 0.
double tricomi_u(double a, int b, double x);

// ln|U| with sign; never overflows for large |a|.
SignedLogValue tricomi_u_log(double a, int b, double x);

// Gamma(a) U(a, b, x) in log form (a must not be a nonpositive integer).
SignedLogValue gamma_tricomi_u_log(double a, int b, double x);

// Batched evaluation over ascending abscissae. One pass of the Kummer ODE
// serves every point, which is far cheaper than independent calls when |a| is
// large and the plain power series is useless.
std::vector<SignedLogValue> kummer_m_table(double a, double b, std::span<const double> xs);
std::vector<SignedLogValue> tricomi_u_table(double a, int b, std::span<const double> xs);

namespace detail {

struct SeriesResult {
  double value = 0;  // for U: Gamma(a) U
  double loss = 0;   // sum |terms| / |value|
  bool ok = false;
};

SeriesResult m_power_series(double a, double b, double x);
// Gamma(a) U(a, b, x) from the logarithmic-case expansion at integer b.
SeriesResult u_log_series(double a, int b, double x);
// Asymptotic U(a,b,x) ~ x^-a sum ...; value is the sum, caller applies x^-a.
SeriesResult u_asymptotic_sum(double a, double b, double x);

}  // namespace detail

}  // namespace starklft::specfun
