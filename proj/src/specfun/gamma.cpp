#include "starklft/specfun/gamma.hpp"

#include <array>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

namespace starklft::specfun {

template <RealScalar T>
bool near_nonpositive_integer(T x, T tol) {
  if (x > tol) return false;
  return num::abs(x - num::round(x)) <= tol;
}

template <RealScalar T>
SignedLog<T> log_gamma_signed(T x) {
  if (near_nonpositive_integer<T>(x, T(1e-12))) {
    throw PoleError("log_gamma_signed: argument is a nonpositive integer");
  }
  if constexpr (std::same_as<T, double>) {
    int sign = 1;
    const double lg = boost::math::lgamma(x, &sign);
    return SignedLog<double>::from_log(lg, sign);
  } else {
    const quad lg = lgammaq(x);
    int sign = 1;
    if (x < 0) {
      // Gamma is negative on (-1,0), (-3,-2), ...
      const long long fl = static_cast<long long>(floorq(x));
      sign = (fl % 2 == 0) ? 1 : -1;
    }
    return SignedLog<quad>::from_log(lg, sign);
  }
}

namespace {

// Bernoulli numbers B_2k / (2k) as exact fractions, for the asymptotic series of psi.
constexpr std::array<std::array<double, 2>, 12> kB2kOver2k = {{{1, 12},
                                                             {-1, 120},
                                                             {1, 252},
                                                             {-1, 240},
                                                             {1, 132},
                                                             {-691, 32760},
                                                             {1, 12},
                                                             {-3617, 8160},
                                                             {43867, 14364},
                                                             {-174611, 6600},
                                                             {854513, 3036},
                                                             {-236364091, 65520}}};

template <RealScalar T>
T digamma_positive(T x) {
  // Shift upward until the asymptotic series is accurate to working precision.
  const T shift_to = std::same_as<T, quad> ? T(40) : T(12);
  T acc = 0;
  while (x < shift_to) {
    acc -= T(1) / x;
    x += T(1);
  }
  const T inv2 = T(1) / (x * x);
  T series = 0;
  T pw = inv2;
  const int terms = std::same_as<T, quad> ? 12 : 7;
  for (int k = 0; k < terms; ++k) {
    series += T(kB2kOver2k[k][0]) / T(kB2kOver2k[k][1]) * pw;
    pw *= inv2;
  }
  return acc + num::log(x) - T(0.5) / x - series;
}

}  // namespace

template <RealScalar T>
T digamma(T x) {
  if (near_nonpositive_integer<T>(x, T(1e-12))) {
    throw PoleError("digamma: argument is a nonpositive integer");
  }
  if (x < T(0.5)) {
    // psi(x) = psi(1-x) - pi cot(pi x); reduce the cot argument first.
    const T pi = num::pi<T>();
    const T frac = x - num::floor(x);
    return digamma_positive<T>(T(1) - x) - pi / num::tan(pi * frac);
  }
  return digamma_positive<T>(x);
}

template <RealScalar T>
T log_factorial(int k) {
  if (k < 0) throw DomainError("log_factorial: negative argument");
  if (k < 2) return T(0);
  if constexpr (std::same_as<T, double>) {
    return boost::math::lgamma(static_cast<double>(k) + 1.0);
  } else {
    return lgammaq(static_cast<quad>(k) + 1);
  }
}

template <RealScalar T>
SignedLog<T> falling_factorial(T x, int p) {
  SignedLog<T> out = SignedLog<T>::one();
  for (int i = 0; i < p; ++i) {
    const T f = x - T(i);
    if (f == T(0)) return SignedLog<T>::zero();
    out.log_abs += num::log(num::abs(f));
    if (f < 0) out.sign = -out.sign;
  }
  return out;
}

template SignedLog<double> log_gamma_signed<double>(double);
template SignedLog<quad> log_gamma_signed<quad>(quad);
template double digamma<double>(double);
template quad digamma<quad>(quad);
template double log_factorial<double>(int);
template quad log_factorial<quad>(int);
template SignedLog<double> falling_factorial<double>(double, int);
template SignedLog<quad> falling_factorial<quad>(quad, int);
template bool near_nonpositive_integer<double>(double, double);
template bool near_nonpositive_integer<quad>(quad, quad);

}  // namespace starklft::specfun
