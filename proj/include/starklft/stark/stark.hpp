#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "starklft/coulomb/coulomb.hpp"
#include "starklft/numeric.hpp"

namespace starklft::stark {

using coulomb::QuantumContext;

// One xi-direction eigenchannel. k = 1 is the lowest beta (nodeless).
template <RealScalar T>
struct StarkChannelT {
  int k = 0;
  T beta = 0;
  T nu = 0;  // n beta - (m+1)/2
  T mu = 0;  // n - nu - m - 1
  T c = 0;   // near-origin coefficient of f_nu, > 0
  double fit_residual = std::numeric_limits<double>::quiet_NaN();
};
using StarkChannel = StarkChannelT<double>;

struct SolverOptions {
  int basis_size = 0;         // 0: chosen from the highest requested channel
  double basis_tolerance = 1e-10;  // eigenvector weight allowed in the top 10% of the basis (x1e-2)
};

// Channels k = 1..k_max in binary64. The xi equation
//   (xi Phi')' + [E xi/2 + beta - m^2/(4 xi) - F xi^2/4] Phi = 0,  int Phi^2 dxi = 1
// is diagonalized in the orthonormal Coulomb-Sturmian basis N_j f_j(xi).
std::vector<StarkChannel> solve_channels(const QuantumContext& ctx, int k_max, const SolverOptions& opt = {});

// Same channels refined to binary128 (inverse iteration plus Rayleigh quotient).
std::vector<StarkChannelT<quad>> solve_channels_extended(const QuantumContext& ctx, int k_max,
                                                         const SolverOptions& opt = {});

// Number of channels with nu below nu_limit.
int count_channels_below(const QuantumContext& ctx, double nu_limit);

// Pentadiagonal Hamiltonian in the basis; diagonals d0, d1, d2.
template <RealScalar T>
struct BandedHamiltonian {
  std::vector<T> d0, d1, d2;
  std::size_t size() const { return d0.size(); }
};
template <RealScalar T>
BandedHamiltonian<T> basis_hamiltonian(T n, int m, T F, int basis_size);

// Ascending eigenvalues 1..k_max of the banded Hamiltonian (LAPACK dsbevx).
std::vector<double> banded_eigenvalues(const BandedHamiltonian<double>& H, int k_max);

// Numerov shooting in s = sqrt(xi); used as an independent cross-check.
struct ShootingResult {
  double beta = 0;
  std::vector<double> xi;   // mesh
  std::vector<double> phi;  // normalized Phi(xi) on the mesh
  int nodes = 0;            // interior sign changes
};
ShootingResult shoot_channel(const QuantumContext& ctx, int k, double step_scale = 1.0);

// Least-squares ratio chi / f_nu over a near-origin window.
struct MatchResult {
  double c = 0;
  double residual = 0;  // rms(chi - c f) / rms(chi) over the window
};
MatchResult channel_match_c(const QuantumContext& ctx, const StarkChannel& channel, double xi_lo, double xi_hi);

// Delimited channel table: k,beta,nu,mu,c,fit_residual with 12 significant digits.
void write_channel_table(std::ostream& os, const std::vector<StarkChannel>& channels);

}  // namespace starklft::stark
