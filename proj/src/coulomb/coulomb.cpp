#include "starklft/coulomb/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "starklft/errors.hpp"
#include "starklft/specfun/kummer.hpp"

namespace starklft::coulomb {

namespace {

void check_ctx(double n, int m) {
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("n must be positive");
  if (m < 0) throw DomainError("m must be nonnegative");
}

void check_radius(const QuantumContext& ctx, double r) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  if (r > ctx.max_radius()) throw RangeError("r beyond the working range 4 n^2");
}

}  // namespace

QuantumContext QuantumContext::from_field(double n, int m, double F) {
  check_ctx(n, m);
  if (!(F >= 0.0) || !std::isfinite(F)) throw DomainError("F must be finite and >= 0");
  return {n, m, F, 16.0 * F * n * n * n * n};
}

QuantumContext QuantumContext::from_delta(double n, int m, double delta) {
  check_ctx(n, m);
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("delta must be finite and >= 0");
  return {n, m, delta / (16.0 * n * n * n * n), delta};
}

FieldGrid::FieldGrid(std::vector<double> r_values, std::vector<double> costheta_values, double eta_floor)
    : r_(std::move(r_values)), c_(std::move(costheta_values)), eta_floor_(eta_floor) {
  if (r_.empty() || c_.empty()) throw DomainError("FieldGrid: empty axis");
  nodes_.reserve(r_.size() * c_.size());
  for (double r : r_) {
    if (!(r > 0.0)) throw DomainError("FieldGrid: radii must be positive");
    for (double c : c_) {
      if (!(c >= -1.0 && c <= 1.0)) throw DomainError("FieldGrid: cos theta outside [-1, 1]");
      GridNode nd;
      nd.r = r;
      nd.costheta = c;
      to_parabolic(r, c, nd.xi, nd.eta);
      nd.flagged = nd.eta < eta_floor_;
      nodes_.push_back(nd);
    }
  }
}

std::vector<double> FieldGrid::linspace(double lo, double hi, int count) {
  if (count < 1) throw DomainError("linspace: count must be positive");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

double FieldGrid::min_unflagged_eta() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& nd : nodes_) {
    if (!nd.flagged) e = std::min(e, nd.eta);
  }
  return e;
}

double radial_regular_F(const QuantumContext& ctx, int l, double r) {
  if (l < ctx.m) throw DomainError("radial_regular_F: l < m");
  check_radius(ctx, r);
  const double x = 2.0 * r / ctx.n;
  const double xs[1] = {x};
  SignedLogValue v = specfun::kummer_m_table(-ctx.n + l + 1, 2.0 * l + 2.0, xs)[0];
  v *= SignedLogValue::from_log(l * std::log(r / ctx.n) - r / ctx.n, 1);
  return v.value();
}

SignedLogValue radial_irregular_G_log(const QuantumContext& ctx, int l, double r) {
  if (l < ctx.m) throw DomainError("radial_irregular_G: l < m");
  check_radius(ctx, r);
  SignedLogValue v = specfun::tricomi_u_log(-ctx.n + l + 1, 2 * l + 2, 2.0 * r / ctx.n);
  return v * SignedLogValue::from_log(l * std::log(r / ctx.n) - r / ctx.n, 1);
}

double radial_irregular_G(const QuantumContext& ctx, int l, double r) {
  return radial_irregular_G_log(ctx, l, r).value();
}

double parabolic_regular_f(const QuantumContext& ctx, double kappa, double zeta) {
  if (!(zeta >= 0.0)) throw DomainError("parabolic_regular_f: zeta must be >= 0");
  if (zeta == 0.0) return ctx.m == 0 ? 1.0 : 0.0;
  const double x = zeta / ctx.n;
  const double xs[1] = {x};
  SignedLogValue v = specfun::kummer_m_table(-kappa, ctx.m + 1.0, xs)[0];
  v *= SignedLogValue::from_log(0.5 * ctx.m * std::log(x) - 0.5 * x, 1);
  return v.value();
}

double parabolic_irregular_g(const QuantumContext& ctx, double mu, double eta) {
  if (!(eta > 0.0)) throw DomainError("parabolic_irregular_g: eta must be positive");
  const double x = eta / ctx.n;
  SignedLogValue v = specfun::tricomi_u_log(-mu, ctx.m + 1, x);
  v *= SignedLogValue::from_log(0.5 * ctx.m * std::log(x) - 0.5 * x, 1);
  return v.value();
}

SignedLogValue wronskian_W(const QuantumContext& ctx, int l) { return wronskian_W<double>(ctx.n, l); }

double norm_Nn1(const QuantumContext& ctx, int n1) {
  if (n1 < 0) throw DomainError("norm_Nn1: n1 must be >= 0");
  return norm_Nn1<double>(ctx.n, ctx.m, n1);
}

}  // namespace starklft::coulomb
