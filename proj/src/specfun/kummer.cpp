#include "starklft/specfun/kummer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "starklft/specfun/gamma.hpp"

namespace starklft::specfun {

namespace detail {

SeriesResult m_power_series(double a, double b, double x) {
  SeriesResult r;
  if (std::fabs(a) * x > 60.0 || x > 60.0) return r;
  CompensatedSum<double> s;
  double t = 1.0;
  s.add(t);
  for (int k = 0; k < 4000; ++k) {
    t *= (a + k) * x / ((b + k) * (k + 1));
    if (t == 0.0) break;
    s.add(t);
    const bool decreasing = std::fabs((a + k + 1) * x) < 0.5 * (b + k + 1) * (k + 2);
    if (decreasing && std::fabs(t) < 1e-17 * std::fabs(s.value())) break;
  }
  r.value = s.value();
  if (r.value == 0.0) return r;
  r.loss = s.abs_total() / std::fabs(r.value);
  r.ok = r.loss < 1e4;
  return r;
}

SeriesResult u_log_series(double a, int b, double x) {
  SeriesResult r;
  const int n = b - 1;
  if (std::fabs(a) * x > 40.0 || x > 40.0) return r;
  if (near_nonpositive_integer(a, 0.0)) return r;
  constexpr double euler = std::numbers::egamma;

  CompensatedSum<double> sum;
  // Singular part: sum_{k=1}^{n} (k-1)! (1-a+k)_{n-k} / (n-k)! x^-k.
  for (int k = 1; k <= n; ++k) {
    double c = std::exp(log_factorial<double>(k - 1) - log_factorial<double>(n - k));
    for (int i = 0; i < n - k; ++i) c *= (1.0 - a + k + i);
    sum.add(c * std::pow(x, -k));
  }

  // Log part, scaled by (-1)^(n+1) (a-n)_n / n!.
  double pref = (n % 2 == 0) ? -1.0 : 1.0;
  for (int i = 0; i < n; ++i) pref *= (a - n + i);
  pref /= std::exp(log_factorial<double>(n));
  if (pref != 0.0) {
    const double lx = std::log(x);
    double psi_a = digamma(a);
    double h1 = 0.0;  // H_k
    double hn = 0.0;  // H_{n+k}
    for (int i = 1; i <= n; ++i) hn += 1.0 / i;
    double t = 1.0;  // (a)_k / ((n+1)_k k!) x^k
    for (int k = 0; k < 4000; ++k) {
      const double bracket = lx + psi_a - (-euler + h1) - (-euler + hn);
      const double term = pref * t * bracket;
      sum.add(term);
      const bool decreasing = std::fabs((a + k) * x) < 0.5 * (n + 1 + k) * (k + 1);
      if (decreasing && k > 2 && std::fabs(term) < 1e-17 * std::fabs(sum.value())) break;
      t *= (a + k) * x / ((n + 1.0 + k) * (k + 1.0));
      psi_a += 1.0 / (a + k);
      h1 += 1.0 / (k + 1);
      hn += 1.0 / (n + k + 1);
      if (t == 0.0) break;
    }
  }
  r.value = sum.value();
  if (r.value == 0.0) return r;
  r.loss = sum.abs_total() / std::fabs(r.value);
  r.ok = r.loss < 1e4;
  return r;
}

SeriesResult u_asymptotic_sum(double a, double b, double x) {
  SeriesResult r;
  CompensatedSum<double> s;
  double t = 1.0;
  s.add(t);
  double prev = 1.0;
  for (int k = 0; k < 2000; ++k) {
    t *= -(a + k) * (a - b + 1 + k) / ((k + 1) * x);
    if (t == 0.0) {
      r.ok = true;
      break;
    }
    if (std::fabs(t) > std::fabs(prev) && k > std::fabs(a) + std::fabs(a - b + 1)) break;
    s.add(t);
    prev = t;
    if (std::fabs(t) < 1e-17 * std::fabs(s.value())) {
      r.ok = true;
      break;
    }
  }
  r.value = s.value();
  r.loss = r.value == 0.0 ? 0.0 : s.abs_total() / std::fabs(r.value);
  if (r.loss > 1e3) r.ok = false;
  return r;
}

}  // namespace detail

namespace {

using detail::SeriesResult;

// Solution of x y'' + (b - x) y' - a y = 0 carried as (y, y') * exp(log_scale).
struct OdeState {
  double x = 0;
  double y = 0;
  double dy = 0;
  double log_scale = 0;

  SignedLogValue value() const {
    SignedLogValue v = SignedLogValue::from_value(y);
    if (!v.is_zero()) v.log_abs += log_scale;
    return v;
  }
  void renormalize() {
    const double s = std::max(std::fabs(y), std::fabs(dy));
    if (s == 0.0 || !std::isfinite(s)) throw ConvergenceError("Kummer ODE: state collapsed");
    if (s > 1e50 || s < 1e-50) {
      y /= s;
      dy /= s;
      log_scale += std::log(s);
    }
  }
};

// Local wavenumber bound of the Liouville-normal form; limits the step so the
// Taylor series converges within a few dozen terms.
double step_limit(double a, double b, double x) {
  const double kappa = std::sqrt(0.25 + std::fabs(a - 0.5 * b) / x + 0.25 * b * b / (x * x));
  return std::min(0.5 * x, 2.0 / kappa);
}

bool taylor_step(double a, double b, OdeState& s, double h) {
  const double x0 = s.x;
  double e0 = s.y;
  double e1 = s.dy * h;
  double ysum = e0 + e1;
  double dsum = e1;  // h * y'
  for (int j = 0; j < 400; ++j) {
    const double e2 = ((a + j) * e0 * h * h - (j + 1.0) * (j + b - x0) * e1 * h) /
                      (x0 * (j + 1.0) * (j + 2.0));
    ysum += e2;
    dsum += (j + 2.0) * e2;
    e0 = e1;
    e1 = e2;
    const double scale = std::fabs(ysum) + std::fabs(dsum);
    if (j > 2 && (std::fabs(e0) + std::fabs(e1)) * (j + 3) <= 1e-17 * scale) {
      s.x = x0 + h;
      s.y = ysum;
      s.dy = dsum / h;
      s.renormalize();
      return true;
    }
  }
  return false;
}

void advance(double a, double b, OdeState& s, double target) {
  int guard = 0;
  while (s.x != target) {
    if (++guard > 10000000) throw ConvergenceError("Kummer ODE: too many steps");
    double h = target - s.x;
    double lim = step_limit(a, b, s.x);
    if (std::fabs(h) > lim) h = std::copysign(lim, h);
    while (!taylor_step(a, b, s, h)) {
      h *= 0.5;
      if (std::fabs(h) < 1e-12 * s.x) throw ConvergenceError("Kummer ODE: step underflow");
    }
    if (std::fabs(target - s.x) < 1e-15 * std::fabs(target)) s.x = target;
  }
}

bool is_integer(double a) { return a == std::round(a); }

// (-1)^j j! L_j^(alpha)(x), i.e. U(-j, alpha+1, x).
SignedLogValue u_polynomial(int j, double alpha, double x) {
  double l0 = 1.0;
  double l1 = 1.0 + alpha - x;
  double log_scale = 0.0;
  if (j == 0) return SignedLogValue::one();
  for (int k = 1; k < j; ++k) {
    const double l2 = ((2.0 * k + 1.0 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
    const double s = std::fabs(l1);
    if (s > 1e100) {
      l0 /= s;
      l1 /= s;
      log_scale += std::log(s);
    }
  }
  SignedLogValue v = SignedLogValue::from_value(l1);
  if (v.is_zero()) return v;
  v.log_abs += log_scale + log_factorial<double>(j);
  if (j % 2 != 0) v.sign = -v.sign;
  return v;
}

SignedLogValue u_asymptotic_log(double a, int b, double x, bool& ok) {
  const SeriesResult r = detail::u_asymptotic_sum(a, b, x);
  ok = r.ok && r.value != 0.0;
  SignedLogValue v = SignedLogValue::from_value(r.value);
  if (!v.is_zero()) v.log_abs -= a * std::log(x);
  return v;
}

// Gamma(a) U from the log series, converted to ln|U|.
SignedLogValue u_series_log(double a, int b, double x, bool& ok) {
  const SeriesResult r = detail::u_log_series(a, b, x);
  ok = r.ok;
  if (!ok) return {};
  return SignedLogValue::from_value(r.value) / log_gamma_signed(a);
}

void check_ascending(std::span<const double> xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] >= xs[i - 1])) throw DomainError("abscissae must be ascending");
  }
}

}  // namespace

std::vector<SignedLogValue> kummer_m_table(double a, double b, std::span<const double> xs) {
  if (!(b > 0.0)) throw DomainError("kummer_m: b must be positive");
  check_ascending(xs);
  std::vector<SignedLogValue> out(xs.size());
  OdeState st;
  bool have_state = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (x < 0.0 || !std::isfinite(x)) throw DomainError("kummer_m: x must be finite and >= 0");
    if (x == 0.0) {
      out[i] = SignedLogValue::one();
      continue;
    }
    if (!have_state) {
      const SeriesResult r = detail::m_power_series(a, b, x);
      if (r.ok) {
        out[i] = SignedLogValue::from_value(r.value);
        continue;
      }
      // Start the ODE where the series is harmless.
      const double xs0 = std::min(x, 0.5 / (1.0 + std::fabs(a)));
      const SeriesResult m0 = detail::m_power_series(a, b, xs0);
      const SeriesResult m1 = detail::m_power_series(a + 1, b + 1, xs0);
      if (!m0.ok || !m1.ok) throw ConvergenceError("kummer_m: cannot start ODE integration");
      st = OdeState{xs0, m0.value, a / b * m1.value, 0.0};
      st.renormalize();
      have_state = true;
    }
    advance(a, b, st, x);
    out[i] = st.value();
  }
  return out;
}

std::vector<SignedLogValue> tricomi_u_table(double a, int b, std::span<const double> xs) {
  if (b < 1) throw DomainError("tricomi_u: b must be a positive integer");
  check_ascending(xs);
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("tricomi_u: x must be positive");
  }
  std::vector<SignedLogValue> out(xs.size());
  if (xs.empty()) return out;

  // Terminating cases.
  if (is_integer(a) && a <= 0.0) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = u_polynomial(static_cast<int>(-a), b - 1.0, xs[i]);
    return out;
  }
  if (is_integer(a) && a <= b - 1) {
    const int j = b - 1 - static_cast<int>(a);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      SignedLogValue v = u_polynomial(j, 1.0 - b, xs[i]);
      if (!v.is_zero()) v.log_abs += (1.0 - b) * std::log(xs[i]);
      out[i] = v;
    }
    return out;
  }

  // Direct expansions first; whatever is left is integrated inward.
  std::vector<bool> done(xs.size(), false);
  double x_need_max = 0.0;
  double x_need_min = 0.0;
  for (std::size_t i = xs.size(); i-- > 0;) {
    const double x = xs[i];
    bool ok = false;
    if (x >= 20.0) {
      out[i] = u_asymptotic_log(a, b, x, ok);
    }
    if (!ok) out[i] = u_series_log(a, b, x, ok);
    done[i] = ok;
    if (!ok) {
      if (x_need_max == 0.0) x_need_max = x;
      x_need_min = x;
    }
  }
  if (x_need_max == 0.0) return out;

  OdeState st;
  const bool guided_start = a > 40.0 && a > b;
  double norm_x = 0.0;
  if (!guided_start) {
    double X = std::max(x_need_max, 20.0);
    bool ok = false;
    bool ok1 = false;
    SignedLogValue u0;
    SignedLogValue u1;
    for (int it = 0; it < 200; ++it) {
      u0 = u_asymptotic_log(a, b, X, ok);
      if (ok) u1 = u_asymptotic_log(a + 1, b + 1, X, ok1);
      if (ok && ok1) break;
      X *= 1.25;
    }
    if (!ok || !ok1) throw ConvergenceError("tricomi_u: no asymptotic starting point");
    // U' = -a U(a+1, b+1, x)
    const SignedLogValue du = u1 * (-a);
    st.x = X;
    st.log_scale = u0.log_abs;
    st.y = u0.sign;
    st.dy = du.is_zero() ? 0.0 : du.sign * std::exp(du.log_abs - u0.log_abs);
  } else {
    // Unknown normalization: start from the decaying WKB slope beyond the last
    // point, far enough that the growing solution has been damped away.
    auto kappa = [&](double x) {
      const double k2 = 0.25 + (a - 0.5 * b) / x + (b * b - 2.0 * b) / (4.0 * x * x);
      return std::sqrt(std::max(k2, 0.0));
    };
    double X = x_need_max;
    double damp = 0.0;
    while (damp < 45.0) {
      const double dx = std::max(0.05 * X, 1e-3);
      damp += 2.0 * kappa(X + 0.5 * dx) * dx;
      X += dx;
    }
    st.x = X;
    st.y = 1.0;
    st.dy = -0.5 * b / X + 0.5 - kappa(X);
    norm_x = std::min(x_need_min, 0.25 / a);
  }

  for (std::size_t i = xs.size(); i-- > 0;) {
    if (done[i]) continue;
    advance(a, b, st, xs[i]);
    out[i] = st.value();
  }

  if (guided_start) {
    bool ok = false;
    SignedLogValue ref;
    for (int it = 0; it < 60 && !ok; ++it) {
      advance(a, b, st, norm_x);
      ref = u_series_log(a, b, norm_x, ok);
      norm_x *= 0.5;
    }
    if (!ok) throw ConvergenceError("tricomi_u: normalization series failed");
    const SignedLogValue scale = ref / st.value();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!done[i]) out[i] *= scale;
    }
  }
  return out;
}

double kummer_m(double a, double b, double x) {
  const double xs[1] = {x};
  return kummer_m_table(a, b, xs)[0].value();
}

SignedLogValue tricomi_u_log(double a, int b, double x) {
  const double xs[1] = {x};
  return tricomi_u_table(a, b, xs)[0];
}

double tricomi_u(double a, int b, double x) { return tricomi_u_log(a, b, x).value(); }

SignedLogValue gamma_tricomi_u_log(double a, int b, double x) {
  return tricomi_u_log(a, b, x) * log_gamma_signed(a);
}

}  // namespace starklft::specfun
