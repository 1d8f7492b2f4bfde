#pragma once

#include "starklft/numeric.hpp"
#include "starklft/specfun/signed_log.hpp"

namespace starklft::specfun {

// ln|Gamma(x)| and sign(Gamma(x)). Throws PoleError at nonpositive integers.
template <RealScalar T>
SignedLog<T> log_gamma_signed(T x);

// psi(x) = Gamma'(x)/Gamma(x). Throws PoleError at nonpositive integers.
template <RealScalar T>
T digamma(T x);

// ln(k!) for k >= 0.
template <RealScalar T>
T log_factorial(int k);

// x (x-1) ... (x-p+1), exact zero when x is an integer in [0, p).
template <RealScalar T>
SignedLog<T> falling_factorial(T x, int p);

// True when x lies within tol of a nonpositive integer.
template <RealScalar T>
bool near_nonpositive_integer(T x, T tol);

extern template SignedLog<double> log_gamma_signed<double>(double);
extern template SignedLog<quad> log_gamma_signed<quad>(quad);
extern template double digamma<double>(double);
extern template quad digamma<quad>(quad);
extern template double log_factorial<double>(int);
extern template quad log_factorial<quad>(int);
extern template SignedLog<double> falling_factorial<double>(double, int);
extern template SignedLog<quad> falling_factorial<quad>(quad, int);
extern template bool near_nonpositive_integer<double>(double, double);
extern template bool near_nonpositive_integer<quad>(quad, quad);

}  // namespace starklft::specfun
