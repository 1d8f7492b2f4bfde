#pragma once

#include <vector>

#include "starklft/numeric.hpp"
#include "starklft/specfun/gamma.hpp"
#include "starklft/specfun/signed_log.hpp"

namespace starklft::coulomb {

using specfun::SignedLog;
using specfun::SignedLogValue;

// Energy, azimuthal number and field strength shared by every formula.
// delta = 16 F n^4 is the barrier parameter; either may be the input.
struct QuantumContext {
  double n = 0;
  int m = 0;
  double F = 0;
  double delta = 0;

  static QuantumContext from_field(double n, int m, double F);
  static QuantumContext from_delta(double n, int m, double delta);

  double energy() const { return -0.5 / (n * n); }
  // Largest radius for which the exponential prefactors stay representable.
  double max_radius() const { return 4.0 * n * n; }
};

struct GridNode {
  double r = 0;
  double costheta = 0;
  double xi = 0;
  double eta = 0;
  bool flagged = false;  // eta below the floor: slow convergence of parabolic sums
};

// Rectangular (r, cos theta) grid with parabolic images.
class FieldGrid {
 public:
  FieldGrid(std::vector<double> r_values, std::vector<double> costheta_values, double eta_floor = 0.05);

  static std::vector<double> linspace(double lo, double hi, int count);

  const std::vector<double>& r_values() const { return r_; }
  const std::vector<double>& costheta_values() const { return c_; }
  double eta_floor() const { return eta_floor_; }
  // Row-major: index = ir * costheta_values().size() + ic.
  const std::vector<GridNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  // Smallest eta over unflagged nodes.
  double min_unflagged_eta() const;

 private:
  std::vector<double> r_;
  std::vector<double> c_;
  double eta_floor_;
  std::vector<GridNode> nodes_;
};

// (r, cos theta) <-> (xi, eta).
inline void to_parabolic(double r, double costheta, double& xi, double& eta) {
  xi = r * (1.0 + costheta);
  eta = r * (1.0 - costheta);
}
inline void from_parabolic(double xi, double eta, double& r, double& costheta) {
  r = 0.5 * (xi + eta);
  costheta = (xi - eta) / (xi + eta);
}

// Spherical radial functions: (r/n)^l e^{-r/n} {M, U}(l+1-n, 2l+2, 2r/n).
double radial_regular_F(const QuantumContext& ctx, int l, double r);
double radial_irregular_G(const QuantumContext& ctx, int l, double r);
SignedLogValue radial_irregular_G_log(const QuantumContext& ctx, int l, double r);

// Parabolic functions: (z/n)^{m/2} e^{-z/2n} {M, U}(-kappa, m+1, z/n).
double parabolic_regular_f(const QuantumContext& ctx, double kappa, double zeta);
double parabolic_irregular_g(const QuantumContext& ctx, double mu, double eta);

// W_l = n (2l+1)! / (2^{2l+1} Gamma(1+l-n)).
template <RealScalar T>
SignedLog<T> wronskian_W(T n, int l) {
  using specfun::log_factorial;
  SignedLog<T> g = specfun::log_gamma_signed<T>(T(1) + T(l) - n);
  SignedLog<T> out = SignedLog<T>::from_log(num::log(n) + log_factorial<T>(2 * l + 1) -
                                                T(2 * l + 1) * num::log(T(2)),
                                            1);
  return out / g;
}
SignedLogValue wronskian_W(const QuantumContext& ctx, int l);

// N_lm = (2l+1)/2 (l-m)!/(l+m)!.
template <RealScalar T>
T norm_Nlm(int l, int m) {
  return T(2 * l + 1) / T(2) * num::exp(specfun::log_factorial<T>(l - m) - specfun::log_factorial<T>(l + m));
}

// N_{n1} = (1/m!) sqrt((m+n1)! / (n1! n)).
template <RealScalar T>
T norm_Nn1(T n, int m, int n1) {
  using specfun::log_factorial;
  return num::exp(T(0.5) * (log_factorial<T>(m + n1) - log_factorial<T>(n1) - num::log(n)) - log_factorial<T>(m));
}
double norm_Nn1(const QuantumContext& ctx, int n1);

}  // namespace starklft::coulomb
