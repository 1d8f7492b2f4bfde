#include "starklft/stark/stark.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "starklft/errors.hpp"
#include "starklft/specfun/kummer.hpp"

extern "C" {
void dsbevx_(const char* jobz, const char* range, const char* uplo, const int* n, const int* kd, double* ab,
             const int* ldab, double* q, const int* ldq, const double* vl, const double* vu, const int* il,
             const int* iu, const double* abstol, int* m, double* w, double* z, const int* ldz, double* work,
             int* iwork, int* ifail, int* info, std::size_t, std::size_t, std::size_t);
}

namespace starklft::stark {

template <RealScalar T>
BandedHamiltonian<T> basis_hamiltonian(T n, int m, T F, int basis_size) {
  if (basis_size < 3) throw DomainError("basis too small");
  const int N = basis_size;
  // X = xi/n in the basis: X_jj = 2j+m+1, X_{j,j+1} = -sqrt((j+1)(j+m+1)).
  std::vector<T> x0(N + 1), x1(N + 1);
  for (int j = 0; j <= N; ++j) {
    x0[j] = T(2 * j + m + 1);
    x1[j] = -num::sqrt(T(j + 1) * T(j + m + 1));
  }
  const T s = F * n * n / T(4);
  BandedHamiltonian<T> H;
  H.d0.resize(N);
  H.d1.resize(N);
  H.d2.resize(N);
  for (int j = 0; j < N; ++j) {
    const T x2 = x0[j] * x0[j] + x1[j] * x1[j] + (j > 0 ? x1[j - 1] * x1[j - 1] : T(0));
    H.d0[j] = (T(j) + T(m + 1) / T(2)) / n + s * x2;
    H.d1[j] = j + 1 < N ? s * x1[j] * (x0[j] + x0[j + 1]) : T(0);
    H.d2[j] = j + 2 < N ? s * x1[j] * x1[j + 1] : T(0);
  }
  return H;
}

template BandedHamiltonian<double> basis_hamiltonian<double>(double, int, double, int);
template BandedHamiltonian<quad> basis_hamiltonian<quad>(quad, int, quad, int);

std::vector<double> banded_eigenvalues(const BandedHamiltonian<double>& H, int k_max) {
  const int n = static_cast<int>(H.size());
  if (k_max < 1 || k_max > n) throw DomainError("banded_eigenvalues: bad channel count");
  const int kd = 2, ldab = 3, ldq = 1, ldz = 1, il = 1, iu = k_max;
  std::vector<double> ab(static_cast<std::size_t>(ldab) * n);
  for (int j = 0; j < n; ++j) {
    ab[0 + 3 * j] = H.d0[j];
    ab[1 + 3 * j] = H.d1[j];
    ab[2 + 3 * j] = H.d2[j];
  }
  const double vl = 0, vu = 0, abstol = 0;
  double q = 0, z = 0;
  int found = 0, info = 0;
  std::vector<double> w(n), work(7 * static_cast<std::size_t>(n));
  std::vector<int> iwork(5 * static_cast<std::size_t>(n)), ifail(n);
  dsbevx_("N", "I", "L", &n, &kd, ab.data(), &ldab, &q, &ldq, &vl, &vu, &il, &iu, &abstol, &found, w.data(), &z,
          &ldz, work.data(), iwork.data(), ifail.data(), &info, 1, 1, 1);
  if (info != 0 || found != k_max) throw ConvergenceError("dsbevx failed");
  w.resize(k_max);
  return w;
}

namespace {

// LU factorization with partial pivoting of the shifted pentadiagonal matrix.
// Row i keeps columns i-2 .. i+4, enough room for the pivoting fill-in.
template <RealScalar T>
class BandLU {
 public:
  BandLU(const BandedHamiltonian<T>& H, T shift) : n_(static_cast<int>(H.size())), rows_(n_), perm_(n_), mult_(n_) {
    for (auto& r : rows_) r.fill(T(0));
    T norm = 0;
    for (int i = 0; i < n_; ++i) {
      if (i >= 2) at(i, i - 2) = H.d2[i - 2];
      if (i >= 1) at(i, i - 1) = H.d1[i - 1];
      at(i, i) = H.d0[i] - shift;
      if (i + 1 < n_) at(i, i + 1) = H.d1[i];
      if (i + 2 < n_) at(i, i + 2) = H.d2[i];
      norm = std::max(norm, num::abs(H.d0[i]));
    }
    const T tiny = norm * num::epsilon<T>() * T(1e-3);
    for (int j = 0; j < n_; ++j) {
      int p = j;
      for (int r = j + 1; r <= std::min(j + 2, n_ - 1); ++r) {
        if (num::abs(at(r, j)) > num::abs(at(p, j))) p = r;
      }
      perm_[j] = p;
      const int cmax = std::min(j + 4, n_ - 1);
      if (p != j) {
        for (int c = j; c <= cmax; ++c) std::swap(at(j, c), at(p, c));
      }
      if (at(j, j) == T(0)) at(j, j) = tiny;
      const T piv = at(j, j);
      mult_[j] = {T(0), T(0)};
      for (int r = j + 1; r <= std::min(j + 2, n_ - 1); ++r) {
        const T f = at(r, j) / piv;
        mult_[j][r - j - 1] = f;
        at(r, j) = T(0);
        for (int c = j + 1; c <= cmax; ++c) at(r, c) -= f * at(j, c);
      }
    }
  }

  void solve(std::vector<T>& b) const {
    for (int j = 0; j < n_; ++j) {
      if (perm_[j] != j) std::swap(b[j], b[perm_[j]]);
      if (j + 1 < n_) b[j + 1] -= mult_[j][0] * b[j];
      if (j + 2 < n_) b[j + 2] -= mult_[j][1] * b[j];
    }
    for (int j = n_ - 1; j >= 0; --j) {
      T s = b[j];
      for (int c = j + 1; c <= std::min(j + 4, n_ - 1); ++c) s -= at(j, c) * b[c];
      b[j] = s / at(j, j);
    }
  }

 private:
  T& at(int r, int c) { return rows_[r][c - r + 2]; }
  const T& at(int r, int c) const { return rows_[r][c - r + 2]; }

  int n_;
  std::vector<std::array<T, 7>> rows_;
  std::vector<int> perm_;
  std::vector<std::array<T, 2>> mult_;
};

template <RealScalar T>
T normalize(std::vector<T>& v) {
  CompensatedSum<T> s;
  for (const T& x : v) s.add(x * x);
  const T nrm = num::sqrt(s.value());
  for (T& x : v) x /= nrm;
  return nrm;
}

template <RealScalar T>
T rayleigh(const BandedHamiltonian<T>& H, const std::vector<T>& v) {
  const std::size_t N = v.size();
  CompensatedSum<T> s;
  for (std::size_t j = 0; j < N; ++j) {
    T hv = H.d0[j] * v[j];
    if (j + 1 < N) hv += H.d1[j] * v[j + 1];
    if (j >= 1) hv += H.d1[j - 1] * v[j - 1];
    if (j + 2 < N) hv += H.d2[j] * v[j + 2];
    if (j >= 2) hv += H.d2[j - 2] * v[j - 2];
    s.add(v[j] * hv);
  }
  return s.value();
}

template <RealScalar T>
struct Eigenpair {
  T value;
  std::vector<T> vec;
};

// Inverse iteration from a binary64 eigenvalue estimate, then one Rayleigh
// quotient iteration step in T.
template <RealScalar T>
Eigenpair<T> inverse_iteration(const BandedHamiltonian<T>& H, double estimate) {
  const std::size_t N = H.size();
  std::vector<T> v(N);
  for (std::size_t j = 0; j < N; ++j) v[j] = T(1) + T(0.3) * T(std::sin(0.7 * static_cast<double>(j)));
  normalize(v);
  {
    const BandLU<T> lu(H, T(estimate));
    for (int it = 0; it < 3; ++it) {
      lu.solve(v);
      normalize(v);
    }
  }
  T lambda = rayleigh(H, v);
  if constexpr (std::same_as<T, quad>) {
    const BandLU<T> lu(H, lambda);
    for (int it = 0; it < 2; ++it) {
      lu.solve(v);
      normalize(v);
    }
    lambda = rayleigh(H, v);
  }
  return {lambda, std::move(v)};
}

// Number of eigenvalues below sigma from the inertia of an LDL^T
// factorization of H - sigma (Sylvester). No pivoting; a zero pivot is nudged.
int sturm_count(const BandedHamiltonian<double>& H, double sigma) {
  const std::size_t N = H.size();
  int neg = 0;
  // Rolling window: D and the two L columns of the previous rows.
  double d1 = 0, d2 = 0;        // D_{j-1}, D_{j-2}
  double l10 = 0, l20 = 0;      // L_{j,j-1}, L_{j,j-2} for the current row
  double l21n = 0;              // L_{j+1,j-1} carried to the next row
  for (std::size_t j = 0; j < N; ++j) {
    double d = H.d0[j] - sigma - l10 * l10 * d1 - l20 * l20 * d2;
    if (d == 0.0) d = 1e-300;
    if (d < 0) ++neg;
    // Next row entries: L_{j+1,j} and L_{j+2,j}.
    double nl10 = 0, nl20 = 0;
    if (j + 1 < N) nl10 = (H.d1[j] - l21n * l10 * d1) / d;
    if (j + 2 < N) nl20 = H.d2[j] / d;
    // For row j+1: L_{j+1,j} = nl10, L_{j+1,j-1} = l21n (already used); shift window.
    const double carry = nl20;  // L_{j+2,j} becomes L_{(j+1)+1,(j+1)-1}
    d2 = d1;
    d1 = d;
    l20 = l21n;
    l10 = nl10;
    l21n = carry;
  }
  return neg;
}

double gershgorin_radius(const BandedHamiltonian<double>& H) {
  const std::size_t N = H.size();
  double r = 0;
  for (std::size_t j = 0; j < N; ++j) {
    double s = std::fabs(H.d0[j]) + std::fabs(H.d1[j]) + std::fabs(H.d2[j]);
    if (j >= 1) s += std::fabs(H.d1[j - 1]);
    if (j >= 2) s += std::fabs(H.d2[j - 2]);
    r = std::max(r, s);
  }
  return r;
}

// k-th eigenvalue (1-based) by Sturm bisection, to relative width tol.
double kth_eigenvalue(const BandedHamiltonian<double>& H, int k, double lo, double hi, double tol) {
  for (int it = 0; it < 200 && hi - lo > tol * std::max(std::fabs(lo), std::fabs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(H, mid) >= k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Eigenpair k of H near the shift: Rayleigh quotient iteration, with the
// index confirmed by Sturm counts on both sides. Falls back to bisection.
Eigenpair<double> eigenpair_k(const BandedHamiltonian<double>& H, int k, double shift, double lo_bound,
                              double radius) {
  const std::size_t N = H.size();
  std::vector<double> hv(N);
  auto residual = [&](const std::vector<double>& v, double lam) {
    double r = 0;
    for (std::size_t j = 0; j < N; ++j) {
      double t = (H.d0[j] - lam) * v[j];
      if (j + 1 < N) t += H.d1[j] * v[j + 1];
      if (j >= 1) t += H.d1[j - 1] * v[j - 1];
      if (j + 2 < N) t += H.d2[j] * v[j + 2];
      if (j >= 2) t += H.d2[j - 2] * v[j - 2];
      r += t * t;
    }
    return std::sqrt(r);
  };
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigenpair<double> ep;
    ep.vec.resize(N);
    for (std::size_t j = 0; j < N; ++j) ep.vec[j] = 1.0 + 0.3 * std::sin(0.7 * static_cast<double>(j));
    normalize(ep.vec);
    double sigma = shift;
    for (int it = 0; it < 6; ++it) {
      const BandLU<double> lu(H, sigma);
      lu.solve(ep.vec);
      normalize(ep.vec);
      if (it == 0) {
        lu.solve(ep.vec);
        normalize(ep.vec);
      }
      ep.value = rayleigh(H, ep.vec);
      if (residual(ep.vec, ep.value) <= 1e-13 * std::max(std::fabs(ep.value), 1.0)) break;
      sigma = ep.value;
    }
    const double delta = 1e-9 * std::max(std::fabs(ep.value), 1e-3);
    if (sturm_count(H, ep.value - delta) == k - 1 && sturm_count(H, ep.value + delta) == k) return ep;
    shift = kth_eigenvalue(H, k, lo_bound, radius, 1e-13);
  }
  throw ConvergenceError("channel eigenvalue could not be isolated");
}

template <RealScalar T>
BandedHamiltonian<T> leading_block(const BandedHamiltonian<T>& H, std::size_t size) {
  BandedHamiltonian<T> out;
  out.d0.assign(H.d0.begin(), H.d0.begin() + size);
  out.d1.assign(H.d1.begin(), H.d1.begin() + size);
  out.d2.assign(H.d2.begin(), H.d2.begin() + size);
  out.d1[size - 1] = T(0);
  out.d2[size - 1] = T(0);
  if (size >= 2) out.d2[size - 2] = T(0);
  return out;
}

template <RealScalar T>
std::vector<StarkChannelT<T>> solve_impl(const QuantumContext& ctx, int k_max, const SolverOptions& opt) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  if (!(ctx.F >= 0.0)) throw DomainError("field must be >= 0");
  constexpr bool extended = std::same_as<T, quad>;
  // Basis size relative to the highest nu needed: the Sturmian basis
  // resolves nu up to about the basis size, and binary128 needs more margin.
  const double factor = extended ? 3.0 : 1.4;
  const double tail_tol = extended ? 1e-28 : std::max(opt.basis_tolerance * 1e-2, 1e-14);
  int Nb = opt.basis_size > 0 ? opt.basis_size : 2 * k_max + 200;
  const T n = T(ctx.n);

  for (int attempt = 0; attempt < 12; ++attempt) {
    const auto Hd = basis_hamiltonian<double>(ctx.n, ctx.m, ctx.F, Nb);
    const double radius = gershgorin_radius(Hd);
    if (opt.basis_size <= 0) {
      const double top = kth_eigenvalue(Hd, k_max, 0.0, radius, 1e-8);
      const int needed = static_cast<int>(factor * (ctx.n * top - 0.5 * (ctx.m + 1))) + 200;
      if (Nb < needed) {
        Nb = static_cast<int>(1.1 * needed);
        continue;
      }
    }
    BandedHamiltonian<T> H;
    if constexpr (extended) H = basis_hamiltonian<quad>(n, ctx.m, T(ctx.F), Nb);
    std::vector<T> Nj(Nb);
    for (int j = 0; j < Nb; ++j) Nj[j] = coulomb::norm_Nn1<T>(n, ctx.m, j);

    std::vector<StarkChannelT<T>> out(k_max);
    std::vector<double> lam;
    bool tail_ok = true;
    // Channel k only needs the leading block sized for its own nu; blocks
    // grow in fixed steps so each is shared by many channels.
    const int step = 512;
    int block = 0;
    BandedHamiltonian<double> Hb;
    BandedHamiltonian<T> Hq;
    for (int k = 1; k <= k_max && tail_ok; ++k) {
      double shift;
      if (k <= 2) {
        shift = kth_eigenvalue(Hd, k, 0.0, radius, 1e-10);
      } else {
        shift = 2.0 * lam[k - 2] - lam[k - 3];
      }
      const double nu_est = ctx.n * shift - 0.5 * (ctx.m + 1);
      int want = static_cast<int>(factor * 1.05 * std::max(nu_est, 0.0)) + 200;
      want = std::min(Nb, (want + step - 1) / step * step);
      if (opt.basis_size > 0) want = Nb;
      if (want > block) {
        block = want;
        Hb = leading_block(Hd, block);
        if constexpr (extended) Hq = leading_block(H, block);
      }
      const double lo_bound = k >= 2 ? lam[k - 2] : 0.0;
      Eigenpair<double> epd = eigenpair_k(Hb, k, shift, lo_bound, radius);
      lam.push_back(epd.value);
      Eigenpair<T> ep;
      if constexpr (extended) {
        ep = inverse_iteration(Hq, epd.value);
      } else {
        ep = std::move(epd);
      }
      T tail = 0;
      for (int j = static_cast<int>(0.9 * block); j < block; ++j) tail = std::max(tail, num::abs(ep.vec[j]));
      if (tail > T(tail_tol)) {
        tail_ok = false;
        break;
      }
      CompensatedSum<T> c;
      for (int j = 0; j < block; ++j) c.add(ep.vec[j] * Nj[j]);
      StarkChannelT<T>& ch = out[k - 1];
      ch.k = k;
      ch.beta = ep.value;
      ch.nu = n * ep.value - T(ctx.m + 1) / T(2);
      ch.mu = n - ch.nu - T(ctx.m + 1);
      ch.c = num::abs(c.value());
    }
    if (!tail_ok) {
      if (opt.basis_size > 0) throw ConvergenceError("basis too small for the requested channels");
      Nb = static_cast<int>(1.3 * Nb);
      continue;
    }
    for (int k = 1; k < k_max; ++k) {
      if (!(out[k].beta > out[k - 1].beta)) throw ConvergenceError("channel ordering violated");
    }
    return out;
  }
  throw ConvergenceError("channel basis did not converge");
}

}  // namespace

int count_channels_below(const QuantumContext& ctx, double nu_limit) {
  const int n = static_cast<int>(1.4 * std::max(nu_limit, 1.0)) + 200;
  const auto H = basis_hamiltonian<double>(ctx.n, ctx.m, ctx.F, n);
  return sturm_count(H, (nu_limit + 0.5 * (ctx.m + 1)) / ctx.n);
}

std::vector<StarkChannel> solve_channels(const QuantumContext& ctx, int k_max, const SolverOptions& opt) {
  return solve_impl<double>(ctx, k_max, opt);
}

std::vector<StarkChannelT<quad>> solve_channels_extended(const QuantumContext& ctx, int k_max,
                                                         const SolverOptions& opt) {
  return solve_impl<quad>(ctx, k_max, opt);
}

namespace {

// Numerov outward integration of w'' = (V(s) - 4 beta) w on a fixed mesh.
struct Shot {
  std::vector<double> w;
  int nodes = 0;
};

double potential(const QuantumContext& ctx, double s) {
  const double s2 = s * s;
  return s2 / (ctx.n * ctx.n) + ctx.F * s2 * s2 + (ctx.m * ctx.m - 0.25) / s2;
}

Shot numerov(const QuantumContext& ctx, double beta, double s0, double h, int steps, bool keep) {
  Shot out;
  if (keep) out.w.resize(steps + 1);
  auto q = [&](double s) { return 4.0 * beta - potential(ctx, s); };
  // Phi ~ xi^{m/2} (1 - beta xi/(m+1)), w = s^{1/2} Phi.
  auto start = [&](double s) {
    const double xi = s * s;
    return std::pow(s, ctx.m + 0.5) * (1.0 - beta * xi / (ctx.m + 1.0));
  };
  const double h2 = h * h / 12.0;
  double w_prev = start(s0);
  double w_cur = start(s0 + h);
  double u_prev = w_prev * (1.0 + h2 * q(s0));
  double u_cur = w_cur * (1.0 + h2 * q(s0 + h));
  if (keep) {
    out.w[0] = w_prev;
    out.w[1] = w_cur;
  }
  double scale = 1.0;
  for (int i = 1; i < steps; ++i) {
    const double s = s0 + i * h;
    const double qi = q(s);
    const double u_next = 2.0 * u_cur - u_prev - 12.0 * h2 * qi * w_cur;
    const double w_next = u_next / (1.0 + h2 * q(s + h));
    if ((w_next < 0) != (w_cur < 0) && w_next != 0.0) ++out.nodes;
    u_prev = u_cur;
    u_cur = u_next;
    w_cur = w_next;
    if (keep) out.w[i + 1] = w_next / scale;
    if (!keep && std::fabs(w_cur) > 1e200) {
      u_prev *= 1e-200;
      u_cur *= 1e-200;
      w_cur *= 1e-200;
    }
    if (keep && std::fabs(w_cur) > 1e250) throw RangeError("Numerov solution overflow");
  }
  return out;
}

double outer_turning_point(const QuantumContext& ctx, double beta) {
  // s^2/n^2 + F s^4 = 4 beta
  const double a = 1.0 / (ctx.n * ctx.n);
  if (ctx.F == 0.0) return std::sqrt(4.0 * beta / a);
  const double s2 = (-a + std::sqrt(a * a + 16.0 * ctx.F * beta)) / (2.0 * ctx.F);
  return std::sqrt(s2);
}

}  // namespace

ShootingResult shoot_channel(const QuantumContext& ctx, int k, double step_scale) {
  if (k < 1) throw DomainError("k must be >= 1");
  // Bracket: the k-th eigenvalue lies below the k-th zero-field value for F >= 0
  // plus the field shift; expand the upper bound until it holds k nodes.
  double hi = (k + 0.5 * (ctx.m + 1)) / ctx.n * 1.5 + 1e-3;
  const double s0 = std::sqrt(1e-6 * ctx.n);
  auto mesh_for = [&](double beta_top, double& h, int& steps) {
    const double st = outer_turning_point(ctx, beta_top);
    // Beyond the turning point extend until the decaying solution has dropped
    // by ~e^-35 (integral of the local decay rate).
    double s = st, acc = 0.0;
    const double ds = 0.01 * st;
    while (acc < 35.0) {
      s += ds;
      acc += std::sqrt(std::max(potential(ctx, s) - 4.0 * beta_top, 0.0)) * ds;
    }
    const double kmax = std::sqrt(4.0 * beta_top + 1.0 / (ctx.n * ctx.n));
    h = step_scale * std::min(0.1 / kmax, s / 4000.0);
    steps = static_cast<int>(std::ceil((s - s0) / h));
  };
  double h = 0;
  int steps = 0;
  for (int it = 0; it < 60; ++it) {
    mesh_for(hi, h, steps);
    if (numerov(ctx, hi, s0, h, steps, false).nodes >= k) break;
    hi *= 1.5;
  }
  mesh_for(hi, h, steps);
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (numerov(ctx, mid, s0, h, steps, false).nodes >= k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  ShootingResult res;
  res.beta = 0.5 * (lo + hi);
  Shot shot = numerov(ctx, res.beta, s0, h, steps, true);
  // Cut where the tail is smallest beyond the turning point.
  const double st = outer_turning_point(ctx, res.beta);
  int i_turn = static_cast<int>((st - s0) / h);
  int i_cut = std::min(i_turn, steps);
  for (int i = i_turn; i <= steps; ++i) {
    if (std::fabs(shot.w[i]) < std::fabs(shot.w[i_cut])) i_cut = i;
  }
  double norm = 0.0;
  for (int i = 0; i <= i_cut; ++i) {
    const double wt = (i == 0 || i == i_cut) ? 0.5 : 1.0;
    norm += wt * shot.w[i] * shot.w[i];
  }
  norm = std::sqrt(2.0 * norm * h);
  res.xi.resize(i_cut + 1);
  res.phi.resize(i_cut + 1);
  double peak = 0.0;
  for (int i = 0; i <= i_cut; ++i) {
    const double s = s0 + i * h;
    res.xi[i] = s * s;
    res.phi[i] = shot.w[i] / norm / std::sqrt(s);
    peak = std::max(peak, std::fabs(res.phi[i]));
  }
  // Sign flips of the decayed tail are not nodes.
  int nodes = 0;
  for (int i = 1; i <= i_cut; ++i) {
    const bool flip = (res.phi[i] < 0) != (res.phi[i - 1] < 0) && res.phi[i] != 0.0;
    if (flip && std::max(std::fabs(res.phi[i]), std::fabs(res.phi[i - 1])) > 1e-8 * peak) ++nodes;
  }
  res.nodes = nodes;
  return res;
}

MatchResult channel_match_c(const QuantumContext& ctx, const StarkChannel& channel, double xi_lo, double xi_hi) {
  if (!(xi_lo > 0.0 && xi_hi > xi_lo)) throw DomainError("channel_match_c: bad window");
  const ShootingResult sh = shoot_channel(ctx, channel.k);
  std::vector<double> xs, chi;
  for (std::size_t i = 0; i < sh.xi.size(); ++i) {
    if (sh.xi[i] >= xi_lo && sh.xi[i] <= xi_hi) {
      xs.push_back(sh.xi[i] / ctx.n);
      chi.push_back(sh.phi[i]);
    }
  }
  if (xs.size() < 8) throw WindowError("channel_match_c: window holds too few mesh points");
  const auto M = specfun::kummer_m_table(-channel.nu, ctx.m + 1.0, xs);
  double sff = 0, scf = 0, scc = 0;
  std::vector<double> f(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    f[i] = M[i].value() * std::pow(xs[i], 0.5 * ctx.m) * std::exp(-0.5 * xs[i]);
    sff += f[i] * f[i];
    scf += chi[i] * f[i];
    scc += chi[i] * chi[i];
  }
  MatchResult r;
  r.c = scf / sff;
  double res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) res += (chi[i] - r.c * f[i]) * (chi[i] - r.c * f[i]);
  r.residual = std::sqrt(res / scc);
  if (r.residual > 1e-3) throw WindowError("channel_match_c: chi / f not constant over the window");
  return r;
}

void write_channel_table(std::ostream& os, const std::vector<StarkChannel>& channels) {
  os << "k,beta,nu,mu,c,fit_residual\n";
  char buf[256];
  for (const auto& ch : channels) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", ch.k, ch.beta, ch.nu, ch.mu, ch.c,
                  ch.fit_residual);
    os << buf;
  }
}

}  // namespace starklft::stark
