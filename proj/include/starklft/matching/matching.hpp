#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "starklft/coulomb/coulomb.hpp"
#include "starklft/stark/stark.hpp"

namespace starklft::matching {

using coulomb::FieldGrid;
using coulomb::QuantumContext;
using specfun::SignedLogValue;
using stark::StarkChannel;
using stark::StarkChannelT;

enum class CutoffShape { gaussian, exponential_power, sharp };

// Smooth weight in the nu (or n1) variable, shared by the Stark and Coulomb sums.
struct CutoffSpec {
  CutoffShape shape = CutoffShape::exponential_power;
  double scale = 40.0;  // z_c
  double power = 8.0;   // exponential-power only

  template <RealScalar T>
  T weight(T z) const {
    if (z <= T(0)) return T(1);
    const T t = z / T(scale);
    switch (shape) {
      case CutoffShape::gaussian:
        return num::exp(-t * t);
      case CutoffShape::exponential_power:
        return num::exp(-num::exp(T(power) * num::log(t)));
      case CutoffShape::sharp:
        return t <= T(1) ? T(1) : T(0);
    }
    return T(0);
  }
  double operator()(double z) const { return weight(z); }
  // Smallest z beyond which the weight stays below eps.
  double support(double eps) const;
};

// Exponential-power, p = 8, z_c = 4n. Entries converge like z_c^{-p}.
CutoffSpec default_cutoff(const QuantumContext& ctx);

std::string to_string(CutoffShape s);
CutoffShape parse_cutoff_shape(const std::string& s);

enum class GammaMethod { uom, glft };
std::string to_string(GammaMethod m);

// gamma_{l l'} for l, l' in [m, l_top].
struct GammaMatrix {
  GammaMethod method = GammaMethod::uom;
  CutoffSpec cutoff;
  QuantumContext ctx;
  int l_top = 0;
  int channels_used = 0;
  int n1_max = 0;
  std::vector<double> entries;  // row-major over (l - m, l' - m)
  std::vector<double> rounding;  // estimated absolute error per entry (rounding and tail)

  // Largest rounding error relative to max(|gamma|, floor * row max) over
  // l, l' in [m, top] (the whole matrix if top < 0).
  double rounding_bound(double floor = 1e-4, int top = -1) const;
  double error(int l, int lp) const { return rounding[(l - ctx.m) * dim() + (lp - ctx.m)]; }

  int dim() const { return l_top - ctx.m + 1; }
  double operator()(int l, int lp) const { return entries[(l - ctx.m) * dim() + (lp - ctx.m)]; }
  double& at(int l, int lp) { return entries[(l - ctx.m) * dim() + (lp - ctx.m)]; }
};

// Upsilon_{l,k} = W_l / (m! N_lm) A_{nu_k mu_k, l} c_k Gamma(-mu_k).
SignedLogValue upsilon(const QuantumContext& ctx, const StarkChannel& ch, int l);

// Single entries of the two constructions. Channels must reach the cutoff tail.
double gamma_uom(const QuantumContext& ctx, const std::vector<StarkChannel>& channels, int l, int lp,
                 const CutoffSpec& cutoff);
double gamma_glft(const QuantumContext& ctx, const std::vector<StarkChannel>& channels, int l, int lp,
                  const CutoffSpec& cutoff);

// Whole matrices, evaluated for every cutoff scale in `scales` with one pass
// over the channels. Binary64 and binary128 channel sets are both accepted.
template <RealScalar T>
std::vector<GammaMatrix> gamma_matrices(const QuantumContext& ctx, const std::vector<StarkChannelT<T>>& channels,
                                        int l_top, GammaMethod method, const CutoffSpec& shape,
                                        const std::vector<double>& scales);

// Number of channels the largest scale requires (weight below 1e-80 past it).
template <RealScalar T>
int channels_needed(const std::vector<StarkChannelT<T>>& channels, const CutoffSpec& cutoff);

struct PlateauOptions {
  std::vector<double> scales;  // ascending; empty: geometric ladder around the cutoff scale
  double tolerance = 0.01;     // max relative change between neighbouring scales
  int check_top = -1;          // l, l' range checked: [m, check_top]; -1 means m + 6
  double floor = 1e-4;         // entries below floor * row max count as floor-sized
  double rounding_limit = 1e-6;  // on rounding_bound over [m, check_top]
};

struct PlateauScan {
  std::vector<double> scales;
  std::vector<GammaMatrix> matrices;
  std::vector<double> max_change;  // between scales[i-1] and scales[i] over the checked block; [0] unused
  std::vector<bool> reliable;      // rounding bound below the limit
  int chosen = -1;                 // index into scales; the matrix reported
  bool ok = false;
  // Every entry taken at the largest scale where it alone passes the rounding
  // limit; NaN where no scale does. Used for the field, where small entries
  // far outside the checked block still matter.
  GammaMatrix composite;
  std::vector<int> composite_scale;  // per entry, index into scales or -1

  const GammaMatrix& result() const { return matrices.at(chosen); }
};

// Build gamma over the scale ladder. The reported matrix is the one at the
// largest scale whose checked block is free of cancellation damage; the
// plateau holds if it differs from its lower neighbour by less than the
// tolerance.
template <RealScalar T>
PlateauScan plateau_gamma(const QuantumContext& ctx, const std::vector<StarkChannelT<T>>& channels, int l_top,
                          GammaMethod method, const CutoffSpec& cutoff, const PlateauOptions& opt = {});

// Default ladder: cutoff.scale * 1.25^j, j = -3..3.
std::vector<double> default_scale_ladder(double scale);

struct FieldSumInfo {
  int channels = 0;
  double tail = 0;  // largest relative contribution among the last channels kept
  std::vector<double> rounding;  // per node: sum |terms| * epsilon
};

// Sum_k Upsilon_{l,k} c_k f_{nu_k}(xi) g_{mu_k}(eta) on the grid, using as many
// channels as the convergence at the smallest eta needs (channels are assumed
// sorted in nu). Throws RegionError if r exceeds 0.5 F^{-1/3}.
std::vector<double> channel_field(const QuantumContext& ctx, const std::vector<StarkChannel>& channels, int l,
                                  const FieldGrid& grid, FieldSumInfo* info = nullptr);

// Channels for channel_field: nu large enough for the smallest unflagged eta.
int field_channels_estimate(const QuantumContext& ctx, const FieldGrid& grid);

// channel_field minus sum_{l'=m}^{lp_top} gamma_{l l'} P_{l'}^m F_{l'}.
std::vector<double> matched_irregular_field(const QuantumContext& ctx, const std::vector<double>& channel_part,
                                            const GammaMatrix& gamma, int l, int lp_top, const FieldGrid& grid);
std::vector<double> matched_irregular_field(const QuantumContext& ctx, const std::vector<StarkChannel>& channels,
                                            const GammaMatrix& gamma, int l, int lp_top, const FieldGrid& grid);

// P_l^m(cos theta) G_l(r) on the grid.
std::vector<double> exact_irregular_field(const QuantumContext& ctx, int l, const FieldGrid& grid);

struct SliceStats {
  double costheta = 0;
  double sup = 0;
};

struct DifferenceStats {
  std::vector<double> normalized;  // (matched - exact) / |P_l^m(0) G_l(r_ref)|
  double reference = 0;            // P_l^m(0) G_l(r_ref)
  double r_ref = 0;
  double sup = 0;
  double q50 = 0, q90 = 0, q99 = 0;
  std::size_t counted = 0;
  std::vector<SliceStats> slices;  // nearest grid column to cos theta = -0.5, 0, 0.5
};

// Normalization radius used for the figures: 30 for n below 20, else 40.
double reference_radius(const QuantumContext& ctx);

DifferenceStats compare_with_exact(const QuantumContext& ctx, const std::vector<double>& matched,
                                   const std::vector<double>& exact, int l, const FieldGrid& grid, double r_ref);

// Delimited exports with a key=value header block (lines starting with '#').
void write_gamma(std::ostream& os, const GammaMatrix& g, const std::string& header);
void write_field(std::ostream& os, const FieldGrid& grid, const std::vector<std::string>& names,
                 const std::vector<const std::vector<double>*>& columns, const std::string& header);

}  // namespace starklft::matching
