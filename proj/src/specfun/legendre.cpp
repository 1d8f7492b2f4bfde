#include "starklft/specfun/legendre.hpp"

#include <cmath>

#include "starklft/errors.hpp"

namespace starklft::specfun {

double legendre_p(int l, int m, double u) {
  if (m < 0 || l < m) throw DomainError("legendre_p: need 0 <= m <= l");
  if (!(u >= -1.0 && u <= 1.0)) throw DomainError("legendre_p: u outside [-1, 1]");
  const double s = std::sqrt((1.0 - u) * (1.0 + u));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= -(2.0 * i - 1.0) * s;
  if (l == m) return pmm;
  double p0 = pmm;
  double p1 = u * (2.0 * m + 1.0) * pmm;
  for (int k = m + 2; k <= l; ++k) {
    const double p2 = (u * (2.0 * k - 1.0) * p1 - (k + m - 1.0) * p0) / (k - m);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace starklft::specfun
