#include "starklft/lft/lft.hpp"

#include <algorithm>
#include <cmath>

#include "starklft/specfun/kummer.hpp"
#include "starklft/specfun/legendre.hpp"

namespace starklft::lft {

namespace {

void check_pair(const QuantumContext& ctx, double nu, double mu) {
  const double want = ctx.n - nu - ctx.m - 1.0;
  if (std::fabs(mu - want) > 1e-9 * std::max(1.0, std::fabs(ctx.n) + std::fabs(nu))) {
    throw DomainError("mu must equal n - nu - m - 1");
  }
}

double max_unflagged_abs(const FieldGrid& grid, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!grid.nodes()[i].flagged) s = std::max(s, std::fabs(v[i]));
  }
  return s;
}

void finish(ResidualField& out, const FieldGrid& grid) {
  out.lhs_scale = max_unflagged_abs(grid, out.lhs);
  const double rs = max_unflagged_abs(grid, out.residual);
  out.sup_relative = out.lhs_scale > 0.0 ? rs / out.lhs_scale : rs;
}

}  // namespace

double a_matrix_asymptotic(double nu, int l, int m) {
  using specfun::log_factorial;
  if (l < m || m < 0) throw DomainError("a_matrix_asymptotic: need 0 <= m <= l");
  const double mag = std::exp(l * std::log(2.0) + 2.0 * log_factorial<double>(m) - log_factorial<double>(l) -
                              log_factorial<double>(l + m));
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(nu, l - m) * mag;
}

double a_matrix(const QuantumContext& ctx, double nu, double mu, int l) {
  check_pair(ctx, nu, mu);
  return a_matrix<double>(ctx.m, nu, mu, l);
}

double a_breve_matrix(const QuantumContext& ctx, double nu, double mu, int l) {
  check_pair(ctx, nu, mu);
  return a_breve_matrix<double>(ctx.m, nu, mu, l);
}

double omega(const QuantumContext& ctx, double mu) { return omega<double>(ctx.n, ctx.m, mu); }

SignedLogValue b_matrix(const QuantumContext& ctx, int l, int n1) {
  if (n1 < 0) throw DomainError("b_matrix: n1 must be >= 0");
  const double n2 = ctx.n - n1 - ctx.m - 1.0;
  const SignedLogValue gam = specfun::log_gamma_signed(-n2);
  const double nn = coulomb::norm_Nn1(ctx, n1);
  SignedLogValue out = coulomb::wronskian_W(ctx, l);
  out /= SignedLogValue::from_log(specfun::log_factorial<double>(ctx.m), 1);
  out /= SignedLogValue::from_value(coulomb::norm_Nlm<double>(l, ctx.m));
  out *= SignedLogValue::from_value(a_matrix<double>(ctx.m, double(n1), n2, l));
  out *= SignedLogValue::from_value(nn * nn);
  return out * gam;
}

ResidualField regular_lft_identity_residual(const QuantumContext& ctx, double nu, const FieldGrid& grid,
                                            int l_max) {
  if (l_max < ctx.m) throw DomainError("l_max < m");
  const double mu = ctx.n - nu - ctx.m - 1.0;
  const auto& rs = grid.r_values();
  const auto& cs = grid.costheta_values();
  const int l_ext = l_max + 5;
  // F_l(r) for every radius.
  std::vector<std::vector<double>> Fl(rs.size(), std::vector<double>(l_ext + 1, 0.0));
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (int l = ctx.m; l <= l_ext; ++l) Fl[i][l] = coulomb::radial_regular_F(ctx, l, rs[i]);
  }
  std::vector<double> A(l_ext + 1, 0.0);
  for (int l = ctx.m; l <= l_ext; ++l) A[l] = a_matrix<double>(ctx.m, nu, mu, l);

  ResidualField out, ext;
  out.lhs.resize(grid.size());
  out.residual.resize(grid.size());
  ext.lhs.resize(grid.size());
  ext.residual.resize(grid.size());
  for (std::size_t ir = 0; ir < rs.size(); ++ir) {
    for (std::size_t ic = 0; ic < cs.size(); ++ic) {
      const std::size_t idx = ir * cs.size() + ic;
      const auto& nd = grid.nodes()[idx];
      const double lhs = coulomb::parabolic_regular_f(ctx, nu, nd.xi) * coulomb::parabolic_regular_f(ctx, mu, nd.eta);
      CompensatedSum<double> s;
      double at_lmax = 0.0;
      for (int l = ctx.m; l <= l_ext; ++l) {
        s.add(A[l] * specfun::legendre_p(l, ctx.m, nd.costheta) * Fl[ir][l]);
        if (l == l_max) at_lmax = s.value();
      }
      out.lhs[idx] = ext.lhs[idx] = lhs;
      out.residual[idx] = lhs - at_lmax;
      ext.residual[idx] = lhs - s.value();
    }
  }
  finish(out, grid);
  finish(ext, grid);
  out.terms = l_max;
  // Only meaningful above the rounding floor.
  if (out.sup_relative > 1e-11 && std::fabs(out.sup_relative - ext.sup_relative) > 0.1 * out.sup_relative) {
    throw ConvergenceError("regular LFT expansion not converged at l_max");
  }
  return out;
}

int irregular_terms_needed(const QuantumContext& ctx, int l, double eta_min) {
  if (!(eta_min > 0.0)) throw DomainError("irregular expansion needs eta > 0");
  const double y = eta_min / ctx.n;
  // Terms fall off like n1^(l+1) exp(-2 sqrt(n1 y)).
  double N = ctx.n + 10.0;
  for (int it = 0; it < 200; ++it) {
    if (2.0 * std::sqrt(N * y) - (l + 1.0) * std::log(N) >= 40.0) break;
    N *= 1.1;
  }
  return static_cast<int>(std::ceil(N));
}

std::vector<double> irregular_expansion(const QuantumContext& ctx, int l, const FieldGrid& grid, int n1_max) {
  const int m = ctx.m;
  const double n = ctx.n;
  const int b = m + 1;
  // Node-independent factor W/(m! N_lm) A N^2 for every n1.
  SignedLogValue pre = coulomb::wronskian_W(ctx, l);
  pre /= SignedLogValue::from_log(specfun::log_factorial<double>(m), 1);
  pre /= SignedLogValue::from_value(coulomb::norm_Nlm<double>(l, m));
  std::vector<SignedLogValue> coef(n1_max + 1);
  for (int j = 0; j <= n1_max; ++j) {
    const double nn = coulomb::norm_Nn1(ctx, j);
    coef[j] = pre * SignedLogValue::from_value(a_matrix<double>(m, double(j), n - j - m - 1.0, l) * nn * nn);
  }
  // First lattice index with a = j + m + 1 - n > 0.
  int j_ref = 0;
  while (j_ref + m + 1.0 - n <= 0.0) ++j_ref;

  std::vector<double> out(grid.size(), 0.0);
  std::vector<SignedLogValue> V(n1_max + 1);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto& nd = grid.nodes()[idx];
    const double x = nd.xi / n;
    const double y = nd.eta / n;
    if (!(y > 0.0)) throw DomainError("irregular expansion needs eta > 0");

    // V(a) = Gamma(a) U(a, m+1, y) on the lattice a_j = j + m + 1 - n.
    for (int j = 0; j < std::min(j_ref, n1_max + 1); ++j) {
      V[j] = specfun::gamma_tricomi_u_log(j + m + 1.0 - n, b, y);
    }
    if (j_ref <= n1_max) {
      // Miller backward recurrence; Gamma(a) U is the minimal solution as a grows.
      const double a_max = n1_max + m + 1.0 - n;
      const double root = std::sqrt(a_max) + 10.0 / std::sqrt(y);
      const int j_top = std::max(n1_max + 5, static_cast<int>(std::ceil(root * root - (m + 1.0 - n))));
      double v_next = 0.0;
      double v_cur = 1e-300;
      double log_scale = 0.0;
      for (int j = j_top; j > j_ref; --j) {
        const double a = j + m + 1.0 - n;
        const double v_prev = ((2.0 * a - b + y) * v_cur - (a - b + 1.0) * v_next) / (a - 1.0);
        v_next = v_cur;
        v_cur = v_prev;
        if (std::fabs(v_cur) > 1e250) {
          v_cur *= 1e-250;
          v_next *= 1e-250;
          log_scale += 250.0 * std::log(10.0);
        }
        if (j - 1 <= n1_max) {
          SignedLogValue s = SignedLogValue::from_value(v_cur);
          s.log_abs += log_scale;
          V[j - 1] = s;
        }
      }
      const SignedLogValue ref = specfun::gamma_tricomi_u_log(j_ref + m + 1.0 - n, b, y);
      const SignedLogValue scale = ref / V[j_ref];
      for (int j = j_ref; j <= n1_max; ++j) V[j] *= scale;
    }

    // M(-n1, m+1, x) by its (stable) forward recurrence in n1.
    const SignedLogValue pf = SignedLogValue::from_log(0.5 * m * (std::log(x) + std::log(y)) - 0.5 * (x + y), 1);
    CompensatedSum<double> sum;
    double m_prev = 0.0;
    double m_cur = 1.0;
    double m_log = 0.0;
    for (int j = 0; j <= n1_max; ++j) {
      if (j > 0) {
        const double k = j - 1;
        const double m_new = ((2.0 * k + b - x) * m_cur - k * m_prev) / (k + b);
        m_prev = m_cur;
        m_cur = m_new;
        if (std::fabs(m_cur) > 1e200) {
          m_cur *= 1e-200;
          m_prev *= 1e-200;
          m_log += 200.0 * std::log(10.0);
        }
      }
      SignedLogValue mv = SignedLogValue::from_value(m_cur);
      if (mv.is_zero()) continue;
      mv.log_abs += m_log;
      const SignedLogValue t = coef[j] * mv * V[j] * pf;
      sum.add(t.value());
    }
    out[idx] = sum.value();
  }
  return out;
}

ResidualField exact_irregular_identity_residual(const QuantumContext& ctx, int l, const FieldGrid& grid,
                                                int n1_max) {
  if (l < ctx.m) throw DomainError("l < m");
  if (ctx.n == std::round(ctx.n)) throw DomainError("irregular expansion needs non-integer n");
  const bool automatic = n1_max <= 0;
  if (automatic) n1_max = irregular_terms_needed(ctx, l, grid.min_unflagged_eta());

  ResidualField out;
  out.lhs.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& nd = grid.nodes()[i];
    out.lhs[i] = specfun::legendre_p(l, ctx.m, nd.costheta) * coulomb::radial_irregular_G(ctx, l, nd.r);
  }
  const double scale = max_unflagged_abs(grid, out.lhs);

  // Tail test: dropping the last 20% of terms must change the sum by less
  // than a tenth of the 1e-6 target; the rounding floor of the sum sits near
  // 1e-8, so a tighter test would never pass. Automatic mode keeps extending.
  for (int attempt = 0;; ++attempt) {
    const std::vector<double> full = irregular_expansion(ctx, l, grid, n1_max);
    const int shorter = static_cast<int>(std::floor(0.8 * n1_max));
    const std::vector<double> part = irregular_expansion(ctx, l, grid, shorter);
    double tail = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!grid.nodes()[i].flagged) tail = std::max(tail, std::fabs(full[i] - part[i]));
    }
    if (tail <= 1e-7 * scale) {
      out.residual.resize(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) out.residual[i] = out.lhs[i] - full[i];
      finish(out, grid);
      out.terms = n1_max;
      return out;
    }
    if (!automatic || attempt >= 3) throw ConvergenceError("irregular expansion tail not converged");
    n1_max *= 2;
  }
}

}  // namespace starklft::lft
