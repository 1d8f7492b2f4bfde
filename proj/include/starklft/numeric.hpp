#pragma once

// Scalar plumbing shared by every module: the binary128 extended type, thin
// overload sets that let templates call the right math routine for double and
// quad, and a compensated accumulator.

#include <cmath>
#include <concepts>
#include <numbers>
#include <string>

extern "C" {
#include <quadmath.h>
}

namespace starklft {

using quad = __float128;

template <typename T>
concept RealScalar = std::same_as<T, double> || std::same_as<T, quad>;

namespace num {

inline double abs(double x) { return std::fabs(x); }
inline double log(double x) { return std::log(x); }
inline double exp(double x) { return std::exp(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double tan(double x) { return std::tan(x); }
inline double floor(double x) { return std::floor(x); }
inline double round(double x) { return std::round(x); }
inline double lgamma_abs(double x) { return std::lgamma(x); }

inline quad abs(quad x) { return fabsq(x); }
inline quad log(quad x) { return logq(x); }
inline quad exp(quad x) { return expq(x); }
inline quad sqrt(quad x) { return sqrtq(x); }
inline quad sin(quad x) { return sinq(x); }
inline quad cos(quad x) { return cosq(x); }
inline quad tan(quad x) { return tanq(x); }
inline quad floor(quad x) { return floorq(x); }
inline quad round(quad x) { return roundq(x); }

template <RealScalar T>
constexpr T pi() {
  if constexpr (std::same_as<T, quad>) {
    return M_PIq;
  } else {
    return std::numbers::pi;
  }
}

template <RealScalar T>
constexpr T epsilon() {
  if constexpr (std::same_as<T, quad>) {
    return FLT128_EPSILON;
  } else {
    return 0x1p-52;
  }
}

// Renders a quad with 36 significant digits (used by tests and diagnostics).
std::string to_string(quad x);
// "%.12g" for exports; "%.17g" where the text must round-trip.
std::string format12(double x);
std::string format17(double x);

}  // namespace num

// Neumaier's variant of Kahan summation: robust even when a new term is
// larger in magnitude than the running sum.
template <RealScalar T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (num::abs(sum_) >= num::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += num::abs(x);
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }
  // Sum of |terms|; value()/abs_total() measures cancellation.
  T abs_total() const { return abs_sum_; }

 private:
  T sum_ = 0;
  T comp_ = 0;
  T abs_sum_ = 0;
};

}  // namespace starklft
