#pragma once

#include <vector>

#include "starklft/coulomb/coulomb.hpp"
#include "starklft/errors.hpp"
#include "starklft/specfun/gamma.hpp"

namespace starklft::lft {

using coulomb::FieldGrid;
using coulomb::QuantumContext;
using specfun::SignedLog;
using specfun::SignedLogValue;

namespace detail {

// Log of the factorial part shared by A and A-breve at summation index p.
template <RealScalar T>
T log_coefficient(int l, int m, int p) {
  using specfun::log_factorial;
  return T(l) * num::log(T(2)) + log_factorial<T>(l - m) + log_factorial<T>(l) - log_factorial<T>(2 * l) -
         log_factorial<T>(l - p) - log_factorial<T>(l - m - p) - log_factorial<T>(m + p) - log_factorial<T>(p);
}

template <RealScalar T>
T term_value(const SignedLog<T>& t) {
  if (t.is_zero()) return T(0);
  if (t.log_abs > T(700)) throw RangeError("LFT matrix term exceeds the floating range");
  return t.value();
}

template <RealScalar T>
T condition(const CompensatedSum<T>& sum) {
  const T v = num::abs(sum.value());
  return v > T(0) ? sum.abs_total() / v : T(1);
}

}  // namespace detail

// Regular-solution LFT matrix A_{nu mu, l}. Gamma ratios are falling
// factorials, so poles of the denominator Gammas give exact zero terms.
// `condition`, if given, receives sum |terms| / |A|.
template <RealScalar T>
T a_matrix(int m, T nu, T mu, int l, T* condition = nullptr) {
  if (l < m || m < 0) throw DomainError("a_matrix: need 0 <= m <= l");
  CompensatedSum<T> sum;
  const T lm2 = T(2) * specfun::log_factorial<T>(m);
  for (int p = 0; p <= l - m; ++p) {
    SignedLog<T> t = SignedLog<T>::from_log(detail::log_coefficient<T>(l, m, p) + lm2, ((p + m) % 2 == 0) ? 1 : -1);
    t *= specfun::falling_factorial<T>(nu, p);
    t *= specfun::falling_factorial<T>(mu, l - m - p);
    sum.add(detail::term_value(t));
  }
  if (condition) *condition = detail::condition(sum);
  return sum.value();
}

// Leading large-nu form of A along mu = n - nu - m - 1:
// (-1)^l nu^{l-m} 2^l (m!)^2 / (l! (l+m)!).
double a_matrix_asymptotic(double nu, int l, int m);

// A-breve: the digamma-weighted companion of A.
template <RealScalar T>
T a_breve_matrix(int m, T nu, T mu, int l, T* condition = nullptr) {
  if (l < m || m < 0) throw DomainError("a_breve_matrix: need 0 <= m <= l");
  CompensatedSum<T> sum;
  for (int p = 0; p <= l - m; ++p) {
    const int s = l - m - p;
    SignedLog<T> t = SignedLog<T>::from_log(detail::log_coefficient<T>(l, m, p), ((p + m) % 2 == 0) ? 1 : -1);
    t *= specfun::falling_factorial<T>(nu, p);
    t *= specfun::falling_factorial<T>(mu + T(m), l - p);
    if (t.is_zero()) continue;
    const T psi = specfun::digamma<T>(-mu + T(s)) - specfun::digamma<T>(T(1 + m + s)) - specfun::digamma<T>(T(1 + s));
    t *= psi;
    sum.add(detail::term_value(t));
  }
  if (condition) *condition = detail::condition(sum);
  return sum.value();
}

// Omega(mu) = Gamma(1+m+mu)/Gamma(1+mu) [(psi(1+m+mu) + psi(1+mu) - 2 ln n)/2 + pi cot(pi mu)].
template <RealScalar T>
T omega(T n, int m, T mu) {
  const T frac = mu - num::floor(mu);
  if (frac < T(1e-12) || frac > T(1) - T(1e-12)) throw PoleError("omega: integer mu");
  const T pi = num::pi<T>();
  const T bracket = (specfun::digamma<T>(T(1 + m) + mu) + specfun::digamma<T>(T(1) + mu) - T(2) * num::log(n)) / T(2) +
                    pi / num::tan(pi * frac);
  return specfun::falling_factorial<T>(mu + T(m), m).value() * bracket;
}

// Checked double-precision entry points mirroring the module operations.
double a_matrix(const QuantumContext& ctx, double nu, double mu, int l);
double a_breve_matrix(const QuantumContext& ctx, double nu, double mu, int l);
double omega(const QuantumContext& ctx, double mu);

// B_{l,n1} = W_l / (m! N_lm) A_{n1 n2, l} N_{n1}^2 Gamma(-n2), n2 = n - n1 - m - 1.
SignedLogValue b_matrix(const QuantumContext& ctx, int l, int n1);

struct ResidualField {
  std::vector<double> lhs;       // per grid node
  std::vector<double> residual;  // lhs - truncated expansion
  double lhs_scale = 0;          // sup |lhs| over unflagged nodes
  double sup_relative = 0;       // sup |residual| / lhs_scale over unflagged nodes
  int terms = 0;                 // l_max or n1_max actually used
};

// f_nu(xi) f_mu(eta) - sum_{l=m}^{l_max} A P_l^m F_l.
ResidualField regular_lft_identity_residual(const QuantumContext& ctx, double nu, const FieldGrid& grid,
                                            int l_max);

// P_l^m G_l - sum_{n1=0}^{n1_max} B f_{n1} g_{n2}; n1_max = 0 selects it automatically.
ResidualField exact_irregular_identity_residual(const QuantumContext& ctx, int l, const FieldGrid& grid,
                                                int n1_max = 0);

// Per-node values of sum_{n1} B f g (used by the residual and by diagnostics).
std::vector<double> irregular_expansion(const QuantumContext& ctx, int l, const FieldGrid& grid, int n1_max);

// Number of n1 terms needed for the irregular expansion to converge at eta.
int irregular_terms_needed(const QuantumContext& ctx, int l, double eta_min);

}  // namespace starklft::lft
