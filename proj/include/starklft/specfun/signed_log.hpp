#pragma once

#include <limits>
#include <string>

#include "starklft/errors.hpp"
#include "starklft/numeric.hpp"

namespace starklft::specfun {

// A real number stored as sign * exp(log_abs). Zero is sign 0 with
// log_abs = -inf. Products and quotients never overflow; conversion back to a
// plain real reports overflow instead of returning inf.
template <RealScalar T>
struct SignedLog {
  T log_abs = -std::numeric_limits<T>::infinity();
  int sign = 0;

  static SignedLog zero() { return {}; }
  static SignedLog one() { return {T(0), 1}; }
  static SignedLog from_log(T log_abs, int sign) {
    if (sign == 0) return zero();
    return {log_abs, sign > 0 ? 1 : -1};
  }
  static SignedLog from_value(T x) {
    if (x == T(0)) return zero();
    return {num::log(num::abs(x)), x < 0 ? -1 : 1};
  }

  bool is_zero() const { return sign == 0; }

  SignedLog operator-() const { return {log_abs, -sign}; }

  SignedLog& operator*=(const SignedLog& o) {
    if (sign == 0 || o.sign == 0) return *this = zero();
    log_abs += o.log_abs;
    sign *= o.sign;
    return *this;
  }
  SignedLog& operator/=(const SignedLog& o) {
    if (o.sign == 0) throw PoleError("SignedLog: division by zero");
    if (sign == 0) return *this;
    log_abs -= o.log_abs;
    sign *= o.sign;
    return *this;
  }
  friend SignedLog operator*(SignedLog a, const SignedLog& b) { return a *= b; }
  friend SignedLog operator/(SignedLog a, const SignedLog& b) { return a /= b; }

  SignedLog& operator*=(T x) { return *this *= from_value(x); }
  friend SignedLog operator*(SignedLog a, T x) { return a *= x; }

  // Plain value; throws RangeError if it does not fit T. Underflow to zero is
  // allowed only when allow_underflow is set.
  T value(bool allow_underflow = true) const;

  // Same as value() but for the other scalar type.
  double to_double(bool allow_underflow = true) const;
};

using SignedLogValue = SignedLog<double>;

template <RealScalar T>
T SignedLog<T>::value(bool allow_underflow) const {
  if (sign == 0) return T(0);
  constexpr T max_log = std::same_as<T, quad> ? T(11356.0) : T(709.78);
  constexpr T min_log = std::same_as<T, quad> ? T(-11355.0) : T(-708.39);
  if (log_abs > max_log) throw RangeError("SignedLog: value overflows the floating range");
  if (log_abs < min_log) {
    if (!allow_underflow) throw RangeError("SignedLog: value underflows the floating range");
    return T(0);
  }
  const T v = num::exp(log_abs);
  return sign > 0 ? v : -v;
}

template <RealScalar T>
double SignedLog<T>::to_double(bool allow_underflow) const {
  SignedLog<double> d{static_cast<double>(log_abs), sign};
  if (sign == 0) d = SignedLog<double>::zero();
  return d.value(allow_underflow);
}

template <RealScalar To, RealScalar From>
SignedLog<To> convert(const SignedLog<From>& x) {
  if (x.sign == 0) return SignedLog<To>::zero();
  return {static_cast<To>(x.log_abs), x.sign};
}

}  // namespace starklft::specfun
