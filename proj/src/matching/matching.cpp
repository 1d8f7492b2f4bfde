#include "starklft/matching/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "starklft/errors.hpp"
#include "starklft/lft/lft.hpp"
#include "starklft/specfun/gamma.hpp"
#include "starklft/specfun/kummer.hpp"
#include "starklft/specfun/legendre.hpp"

namespace starklft::matching {

double CutoffSpec::support(double eps) const {
  const double t = -std::log(eps);
  switch (shape) {
    case CutoffShape::gaussian:
      return scale * std::sqrt(t);
    case CutoffShape::exponential_power:
      return scale * std::pow(t, 1.0 / power);
    case CutoffShape::sharp:
      return scale;
  }
  return scale;
}

CutoffSpec default_cutoff(const QuantumContext& ctx) {
  CutoffSpec c;
  c.shape = CutoffShape::exponential_power;
  c.power = 8.0;
  c.scale = 4.0 * ctx.n;
  return c;
}

std::string to_string(CutoffShape s) {
  switch (s) {
    case CutoffShape::gaussian:
      return "gaussian";
    case CutoffShape::exponential_power:
      return "exponential-power";
    case CutoffShape::sharp:
      return "sharp";
  }
  return "?";
}

CutoffShape parse_cutoff_shape(const std::string& s) {
  if (s == "gaussian") return CutoffShape::gaussian;
  if (s == "exponential-power" || s == "ep") return CutoffShape::exponential_power;
  if (s == "sharp") return CutoffShape::sharp;
  throw DomainError("unknown cutoff shape: " + s);
}

double GammaMatrix::rounding_bound(double floor, int top) const {
  const int m = ctx.m;
  const int hi = top < 0 ? l_top : std::min(top, l_top);
  double worst = 0.0;
  for (int l = m; l <= hi; ++l) {
    double row = 0.0;
    for (int lp = m; lp <= hi; ++lp) row = std::max(row, std::fabs((*this)(l, lp)));
    for (int lp = m; lp <= hi; ++lp) {
      const double ref = std::max(std::fabs((*this)(l, lp)), floor * row);
      const double err = rounding[(l - m) * dim() + (lp - m)];
      worst = std::max(worst, ref > 0.0 ? err / ref : HUGE_VAL);
    }
  }
  return worst;
}

std::string to_string(GammaMethod m) { return m == GammaMethod::uom ? "uom" : "glft"; }

SignedLogValue upsilon(const QuantumContext& ctx, const StarkChannel& ch, int l) {
  const int m = ctx.m;
  const SignedLogValue W = coulomb::wronskian_W(ctx, l);
  const double a = lft::a_matrix(ctx, ch.nu, ch.mu, l);
  SignedLogValue out = W / SignedLogValue::from_value(std::tgamma(m + 1.0) * coulomb::norm_Nlm<double>(l, m));
  out *= SignedLogValue::from_value(a);
  out *= SignedLogValue::from_value(ch.c);
  out *= specfun::log_gamma_signed(-ch.mu);
  return out;
}

namespace {

// Terms grow like nu^(l + l'), so the weight has to be far below double epsilon
// before the tail is negligible.
constexpr double kTailWeight = 1e-80;

template <RealScalar T>
int used_channels(const std::vector<StarkChannelT<T>>& channels, double nu_limit) {
  int k = 0;
  while (k < static_cast<int>(channels.size()) && static_cast<double>(channels[k].nu) <= nu_limit) ++k;
  if (k == static_cast<int>(channels.size())) {
    throw ConvergenceError("channel set does not reach the cutoff tail");
  }
  return k + 1;
}

// Per-index factors for one family of (nu, mu, weight-carrier) rows.
template <RealScalar T>
struct RowFactors {
  std::vector<T> z;                // cutoff variable
  std::vector<T> norm2;            // N^2 or c^2
  std::vector<std::vector<T>> a;   // a[l - m][row]
  std::vector<std::vector<T>> x;   // A-breve or Omega * A, [l' - m][row]
  std::vector<std::vector<T>> ka;  // cancellation in a, same layout
  std::vector<std::vector<T>> kx;
};

template <RealScalar T>
RowFactors<T> make_rows(const QuantumContext& ctx, int l_top, GammaMethod method, const std::vector<T>& nus,
                        const std::vector<T>& norm2) {
  const int m = ctx.m;
  const int dim = l_top - m + 1;
  const T n = T(ctx.n);
  RowFactors<T> rf;
  rf.z = nus;
  rf.norm2 = norm2;
  rf.a.assign(dim, std::vector<T>(nus.size()));
  rf.x.assign(dim, std::vector<T>(nus.size()));
  rf.ka.assign(dim, std::vector<T>(nus.size()));
  rf.kx.assign(dim, std::vector<T>(nus.size()));
  for (std::size_t i = 0; i < nus.size(); ++i) {
    const T nu = nus[i];
    const T mu = n - nu - T(m + 1);
    const T om = method == GammaMethod::glft ? lft::omega<T>(n, m, mu) : T(0);
    for (int l = m; l <= l_top; ++l) {
      T ka = 1, kx = 1;
      const T a = lft::a_matrix<T>(m, nu, mu, l, &ka);
      rf.a[l - m][i] = a;
      rf.ka[l - m][i] = ka;
      if (method == GammaMethod::uom) {
        rf.x[l - m][i] = lft::a_breve_matrix<T>(m, nu, mu, l, &kx);
        rf.kx[l - m][i] = kx;
      } else {
        rf.x[l - m][i] = om * a;
        rf.kx[l - m][i] = ka;
      }
    }
  }
  return rf;
}

}  // namespace

template <RealScalar T>
int channels_needed(const std::vector<StarkChannelT<T>>& channels, const CutoffSpec& cutoff) {
  return used_channels(channels, cutoff.support(kTailWeight));
}

template <RealScalar T>
std::vector<GammaMatrix> gamma_matrices(const QuantumContext& ctx, const std::vector<StarkChannelT<T>>& channels,
                                        int l_top, GammaMethod method, const CutoffSpec& shape,
                                        const std::vector<double>& scales) {
  const int m = ctx.m;
  if (l_top < m) throw DomainError("gamma: l_top < m");
  if (scales.empty()) throw DomainError("gamma: no cutoff scale");
  if (std::fabs(ctx.n - std::round(ctx.n)) < 1e-9) throw PoleError("gamma: integer n");
  CutoffSpec widest = shape;
  widest.scale = *std::max_element(scales.begin(), scales.end());
  const int K = channels_needed(channels, widest);
  const int n1_max = static_cast<int>(std::floor(static_cast<double>(channels[K - 1].nu)));
  const T n = T(ctx.n);

  std::vector<T> snu(K), sc2(K), cnu(n1_max + 1), cn2(n1_max + 1);
  for (int k = 0; k < K; ++k) {
    snu[k] = channels[k].nu;
    sc2[k] = channels[k].c * channels[k].c;
  }
  for (int j = 0; j <= n1_max; ++j) {
    cnu[j] = T(j);
    const T N = coulomb::norm_Nn1<T>(n, m, j);
    cn2[j] = N * N;
  }
  const RowFactors<T> stark = make_rows<T>(ctx, l_top, method, snu, sc2);
  const RowFactors<T> coul = make_rows<T>(ctx, l_top, method, cnu, cn2);

  const int dim = l_top - m + 1;
  std::vector<GammaMatrix> out;
  for (double s : scales) {
    CutoffSpec cut = shape;
    cut.scale = s;
    GammaMatrix g;
    g.method = method;
    g.cutoff = cut;
    g.ctx = ctx;
    g.l_top = l_top;
    g.channels_used = K;
    g.n1_max = n1_max;
    g.entries.assign(dim * dim, 0.0);
    g.rounding.assign(dim * dim, 0.0);
    auto weights = [&](const RowFactors<T>& rf) {
      std::vector<T> w(rf.z.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = cut.weight<T>(rf.z[i]) * rf.norm2[i];
      return w;
    };
    const std::vector<T> ws = weights(stark), wc = weights(coul);
    for (int l = m; l <= l_top; ++l) {
      const T pref_log = coulomb::wronskian_W<T>(n, l).log_abs - num::log(coulomb::norm_Nlm<T>(l, m)) -
                         (method == GammaMethod::glft ? T(2) * specfun::log_factorial<T>(m) : T(0));
      const int pref_sign = coulomb::wronskian_W<T>(n, l).sign;
      for (int lp = m; lp <= l_top; ++lp) {
        CompensatedSum<T> sum;
        T err = 0;
        auto accumulate = [&](const RowFactors<T>& rf, const std::vector<T>& w, T sign) {
          for (std::size_t i = 0; i < w.size(); ++i) {
            const T t = w[i] * rf.a[l - m][i] * rf.x[lp - m][i];
            sum.add(sign * t);
            err += num::abs(t) * (T(1) + rf.ka[l - m][i] + rf.kx[lp - m][i]);
          }
        };
        accumulate(coul, wc, T(1));
        accumulate(stark, ws, T(-1));
        // Truncation: the last few retained terms bound what is left out.
        T tail = 0;
        for (std::size_t i = ws.size() > 3 ? ws.size() - 3 : 0; i < ws.size(); ++i)
          tail = std::max(tail, num::abs(ws[i] * stark.a[l - m][i] * stark.x[lp - m][i]));
        for (std::size_t i = wc.size() > 3 ? wc.size() - 3 : 0; i < wc.size(); ++i)
          tail = std::max(tail, num::abs(wc[i] * coul.a[l - m][i] * coul.x[lp - m][i]));
        const T v = T(pref_sign) * num::exp(pref_log) * sum.value();
        g.at(l, lp) = static_cast<double>(v);
        g.rounding[(l - m) * dim + (lp - m)] =
            static_cast<double>(num::exp(pref_log) * (err * num::epsilon<T>() + T(10) * tail));
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

template std::vector<GammaMatrix> gamma_matrices<double>(const QuantumContext&,
                                                         const std::vector<StarkChannelT<double>>&, int,
                                                         GammaMethod, const CutoffSpec&, const std::vector<double>&);
template std::vector<GammaMatrix> gamma_matrices<quad>(const QuantumContext&, const std::vector<StarkChannelT<quad>>&,
                                                       int, GammaMethod, const CutoffSpec&,
                                                       const std::vector<double>&);
template int channels_needed<double>(const std::vector<StarkChannelT<double>>&, const CutoffSpec&);
template int channels_needed<quad>(const std::vector<StarkChannelT<quad>>&, const CutoffSpec&);

double gamma_uom(const QuantumContext& ctx, const std::vector<StarkChannel>& channels, int l, int lp,
                 const CutoffSpec& cutoff) {
  const int top = std::max(l, lp);
  return gamma_matrices<double>(ctx, channels, top, GammaMethod::uom, cutoff, {cutoff.scale})[0](l, lp);
}

double gamma_glft(const QuantumContext& ctx, const std::vector<StarkChannel>& channels, int l, int lp,
                  const CutoffSpec& cutoff) {
  const int top = std::max(l, lp);
  return gamma_matrices<double>(ctx, channels, top, GammaMethod::glft, cutoff, {cutoff.scale})[0](l, lp);
}

std::vector<double> default_scale_ladder(double scale) {
  std::vector<double> s;
  for (int j = -3; j <= 3; ++j) s.push_back(scale * std::pow(1.25, j));
  return s;
}

template <RealScalar T>
PlateauScan plateau_gamma(const QuantumContext& ctx, const std::vector<StarkChannelT<T>>& channels, int l_top,
                          GammaMethod method, const CutoffSpec& cutoff, const PlateauOptions& opt) {
  PlateauScan scan;
  scan.scales = opt.scales.empty() ? default_scale_ladder(cutoff.scale) : opt.scales;
  if (scan.scales.size() < 2) throw DomainError("plateau scan needs at least two scales");
  scan.matrices = gamma_matrices<T>(ctx, channels, l_top, method, cutoff, scan.scales);
  const int m = ctx.m;
  const int top = std::min(l_top, opt.check_top < 0 ? m + 6 : opt.check_top);
  const std::size_t S = scan.scales.size();
  scan.max_change.assign(S, HUGE_VAL);
  scan.reliable.assign(S, false);
  for (std::size_t i = 0; i < S; ++i) {
    scan.reliable[i] = scan.matrices[i].rounding_bound(opt.floor, top) < opt.rounding_limit;
    if (i == 0) continue;
    const GammaMatrix& a = scan.matrices[i - 1];
    const GammaMatrix& b = scan.matrices[i];
    double worst = 0.0;
    for (int l = m; l <= top; ++l) {
      double row = 0.0;
      for (int lp = m; lp <= top; ++lp) row = std::max(row, std::fabs(b(l, lp)));
      for (int lp = m; lp <= top; ++lp) {
        const double ref = std::max(std::fabs(b(l, lp)), opt.floor * row);
        if (ref == 0.0) continue;
        worst = std::max(worst, std::fabs(b(l, lp) - a(l, lp)) / ref);
      }
    }
    scan.max_change[i] = worst;
  }
  for (std::size_t i = S; i-- > 1;) {
    if (scan.reliable[i] && scan.reliable[i - 1]) {
      scan.chosen = static_cast<int>(i);
      break;
    }
  }
  scan.composite = scan.matrices.back();
  scan.composite_scale.assign(scan.composite.entries.size(), -1);
  for (int l = m; l <= l_top; ++l) {
    for (int lp = m; lp <= l_top; ++lp) {
      const std::size_t e = (l - m) * scan.composite.dim() + (lp - m);
      scan.composite.entries[e] = std::nan("");
      for (std::size_t i = S; i-- > 0;) {
        const GammaMatrix& g = scan.matrices[i];
        if (g.error(l, lp) < opt.rounding_limit * std::fabs(g(l, lp))) {
          scan.composite.entries[e] = g(l, lp);
          scan.composite.rounding[e] = g.error(l, lp);
          scan.composite_scale[e] = static_cast<int>(i);
          break;
        }
      }
    }
  }
  if (scan.chosen < 0) {
    scan.chosen = 0;
    scan.ok = false;
    return scan;
  }
  scan.ok = scan.max_change[scan.chosen] < opt.tolerance;
  return scan;
}

template PlateauScan plateau_gamma<double>(const QuantumContext&, const std::vector<StarkChannelT<double>>&, int,
                                           GammaMethod, const CutoffSpec&, const PlateauOptions&);
template PlateauScan plateau_gamma<quad>(const QuantumContext&, const std::vector<StarkChannelT<quad>>&, int,
                                         GammaMethod, const CutoffSpec&, const PlateauOptions&);

namespace {

void check_region(const QuantumContext& ctx, const FieldGrid& grid) {
  if (ctx.F <= 0.0) return;
  const double limit = 0.5 * std::cbrt(1.0 / ctx.F);
  for (double r : grid.r_values()) {
    if (r > limit) throw RegionError("grid radius beyond the near-Coulomb region");
  }
}

// Sorted unique abscissae and the index of each node value in them.
struct Abscissae {
  std::vector<double> x;
  std::vector<int> index;
};

Abscissae unique_sorted(const std::vector<double>& v) {
  Abscissae a;
  a.x = v;
  std::sort(a.x.begin(), a.x.end());
  a.x.erase(std::unique(a.x.begin(), a.x.end()), a.x.end());
  a.index.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    a.index[i] = static_cast<int>(std::lower_bound(a.x.begin(), a.x.end(), v[i]) - a.x.begin());
  }
  return a;
}

}  // namespace

int field_channels_estimate(const QuantumContext& ctx, const FieldGrid& grid) {
  const double eta = grid.min_unflagged_eta();
  // Channel terms fall off like exp(-2 sqrt(nu eta / n)).
  return static_cast<int>(std::ceil(400.0 * ctx.n / eta));
}

std::vector<double> channel_field(const QuantumContext& ctx, const std::vector<StarkChannel>& channels, int l,
                                  const FieldGrid& grid, FieldSumInfo* info) {
  check_region(ctx, grid);
  const int m = ctx.m;
  const auto& nodes = grid.nodes();
  const std::size_t N = nodes.size();
  std::vector<double> xi(N), eta(N);
  for (std::size_t i = 0; i < N; ++i) {
    xi[i] = nodes[i].xi / ctx.n;
    eta[i] = nodes[i].flagged ? HUGE_VAL : nodes[i].eta / ctx.n;
  }
  Abscissae ax = unique_sorted(xi);
  Abscissae ae = unique_sorted(eta);
  if (!ae.x.empty() && std::isinf(ae.x.back())) ae.x.pop_back();
  const double half_m = 0.5 * m;
  std::vector<double> lx(ax.x.size()), le(ae.x.size());
  for (std::size_t i = 0; i < ax.x.size(); ++i) {
    lx[i] = ax.x[i] > 0.0 ? half_m * std::log(ax.x[i]) - 0.5 * ax.x[i] : (m == 0 ? 0.0 : -HUGE_VAL);
  }
  for (std::size_t i = 0; i < ae.x.size(); ++i) le[i] = half_m * std::log(ae.x[i]) - 0.5 * ae.x[i];

  const SignedLogValue pref =
      coulomb::wronskian_W(ctx, l) / SignedLogValue::from_value(std::tgamma(m + 1.0) * coulomb::norm_Nlm<double>(l, m));
  std::vector<CompensatedSum<double>> acc(N);
  std::vector<double> recent;
  const int window = 20;
  double scale = 0.0;
  int used = 0;
  double tail = HUGE_VAL;
  for (const StarkChannel& ch : channels) {
    const double a = lft::a_matrix<double>(m, ch.nu, ch.mu, l);
    ++used;
    if (a == 0.0) continue;
    SignedLogValue coef = pref * SignedLogValue::from_value(a) * SignedLogValue::from_value(ch.c * ch.c) *
                          specfun::log_gamma_signed(-ch.mu);
    const auto M = specfun::kummer_m_table(-ch.nu, m + 1.0, ax.x);
    const auto U = specfun::tricomi_u_table(-ch.mu, m + 1, ae.x);
    double biggest = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (nodes[i].flagged) continue;
      const SignedLogValue& f = M[ax.index[i]];
      const SignedLogValue& g = U[ae.index[i]];
      if (f.is_zero() || g.is_zero() || std::isinf(lx[ax.index[i]])) continue;
      const double lg = coef.log_abs + f.log_abs + g.log_abs + lx[ax.index[i]] + le[ae.index[i]];
      if (lg < -745.0) continue;
      if (lg > 709.0) throw RangeError("channel term overflow");
      const double t = coef.sign * f.sign * g.sign * std::exp(lg);
      acc[i].add(t);
      biggest = std::max(biggest, std::fabs(t));
    }
    for (std::size_t i = 0; i < N; ++i) scale = std::max(scale, std::fabs(acc[i].value()));
    recent.push_back(biggest);
    if (static_cast<int>(recent.size()) >= window) {
      tail = *std::max_element(recent.end() - window, recent.end()) / scale;
      if (tail < 1e-13) break;
    }
  }
  if (info) {
    info->channels = used;
    info->tail = tail;
    info->rounding.assign(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) info->rounding[i] = acc[i].abs_total() * num::epsilon<double>();
  }
  if (tail > 1e-8) throw ConvergenceError("channel sum not converged at the smallest eta");
  std::vector<double> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i] = nodes[i].flagged ? std::nan("") : acc[i].value();
  return out;
}

std::vector<double> matched_irregular_field(const QuantumContext& ctx, const std::vector<double>& channel_part,
                                            const GammaMatrix& gamma, int l, int lp_top, const FieldGrid& grid) {
  const int m = ctx.m;
  if (lp_top > gamma.l_top) throw DomainError("matched field: l' beyond the gamma matrix");
  const auto& nodes = grid.nodes();
  std::vector<double> out(channel_part);
  const auto& rs = grid.r_values();
  const auto& cs = grid.costheta_values();
  for (int lp = m; lp <= lp_top; ++lp) {
    const double g = gamma(l, lp);
    std::vector<double> Fr(rs.size()), P(cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) Fr[i] = coulomb::radial_regular_F(ctx, lp, rs[i]);
    for (std::size_t j = 0; j < cs.size(); ++j) P[j] = specfun::legendre_p(lp, m, cs[j]);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out[i] -= g * P[i % cs.size()] * Fr[i / cs.size()];
    }
  }
  return out;
}

std::vector<double> matched_irregular_field(const QuantumContext& ctx, const std::vector<StarkChannel>& channels,
                                            const GammaMatrix& gamma, int l, int lp_top, const FieldGrid& grid) {
  return matched_irregular_field(ctx, channel_field(ctx, channels, l, grid), gamma, l, lp_top, grid);
}

std::vector<double> exact_irregular_field(const QuantumContext& ctx, int l, const FieldGrid& grid) {
  const auto& rs = grid.r_values();
  const auto& cs = grid.costheta_values();
  std::vector<double> G(rs.size()), P(cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) G[i] = coulomb::radial_irregular_G(ctx, l, rs[i]);
  for (std::size_t j = 0; j < cs.size(); ++j) P[j] = specfun::legendre_p(l, ctx.m, cs[j]);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = P[i % cs.size()] * G[i / cs.size()];
  return out;
}

double reference_radius(const QuantumContext& ctx) { return ctx.n < 20.0 ? 30.0 : 40.0; }

DifferenceStats compare_with_exact(const QuantumContext& ctx, const std::vector<double>& matched,
                                   const std::vector<double>& exact, int l, const FieldGrid& grid, double r_ref) {
  if (matched.size() != grid.size() || exact.size() != grid.size()) throw DomainError("field size mismatch");
  DifferenceStats st;
  st.r_ref = r_ref;
  st.reference = specfun::legendre_p(l, ctx.m, 0.0) * coulomb::radial_irregular_G(ctx, l, r_ref);
  if (st.reference == 0.0) throw DomainError("normalization point is a node of the exact field");
  const double scale = std::fabs(st.reference);
  const auto& nodes = grid.nodes();
  const auto& cs = grid.costheta_values();
  st.normalized.resize(grid.size());
  std::vector<double> mags;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    st.normalized[i] = (matched[i] - exact[i]) / scale;
    if (nodes[i].flagged) continue;
    mags.push_back(std::fabs(st.normalized[i]));
  }
  st.counted = mags.size();
  if (!mags.empty()) {
    std::sort(mags.begin(), mags.end());
    auto q = [&](double p) { return mags[std::min(mags.size() - 1, static_cast<std::size_t>(p * mags.size()))]; };
    st.sup = mags.back();
    st.q50 = q(0.5);
    st.q90 = q(0.9);
    st.q99 = q(0.99);
  }
  for (double target : {-0.5, 0.0, 0.5}) {
    std::size_t jbest = 0;
    for (std::size_t j = 1; j < cs.size(); ++j) {
      if (std::fabs(cs[j] - target) < std::fabs(cs[jbest] - target)) jbest = j;
    }
    SliceStats sl;
    sl.costheta = cs.empty() ? target : cs[jbest];
    for (std::size_t i = jbest; i < grid.size(); i += cs.size()) {
      if (!nodes[i].flagged) sl.sup = std::max(sl.sup, std::fabs(st.normalized[i]));
    }
    st.slices.push_back(sl);
  }
  return st;
}

using num::format12;

void write_gamma(std::ostream& os, const GammaMatrix& g, const std::string& header) {
  os << header;
  os << "# method=" << to_string(g.method) << "\n";
  os << "# cutoff_shape=" << to_string(g.cutoff.shape) << "\n";
  os << "# cutoff_scale=" << format12(g.cutoff.scale) << "\n";
  os << "# cutoff_power=" << format12(g.cutoff.power) << "\n";
  os << "# channels=" << g.channels_used << "\n";
  os << "# n1_max=" << g.n1_max << "\n";
  os << "l,lp,gamma\n";
  for (int l = g.ctx.m; l <= g.l_top; ++l) {
    for (int lp = g.ctx.m; lp <= g.l_top; ++lp) os << l << ',' << lp << ',' << format12(g(l, lp)) << '\n';
  }
}

void write_field(std::ostream& os, const FieldGrid& grid, const std::vector<std::string>& names,
                 const std::vector<const std::vector<double>*>& columns, const std::string& header) {
  os << header;
  os << "r,costheta,xi,eta,flagged";
  for (const auto& nm : names) os << ',' << nm;
  os << '\n';
  const auto& nodes = grid.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    os << format12(nd.r) << ',' << format12(nd.costheta) << ',' << format12(nd.xi) << ',' << format12(nd.eta) << ','
       << (nd.flagged ? 1 : 0);
    for (const auto* col : columns) os << ',' << format12((*col)[i]);
    os << '\n';
  }
}

}  // namespace starklft::matching
