#pragma once

namespace starklft::specfun {

// Associated Legendre function of the first kind on [-1, 1], including the
// Condon-Shortley phase (-1)^m:
//   P_l^m(u) = (-1)^m (1-u^2)^{m/2} d^m P_l(u) / du^m.
double legendre_p(int l, int m, double u);

}  // namespace starklft::specfun
