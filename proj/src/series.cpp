#include "onecut/series.hpp"

#include "onecut/errors.hpp"

#include <algorithm>

namespace onecut {

Real horner(const Series& coeffs, const Real& x) {
  Real acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex horner(const Series& coeffs, const Complex& z) {
  Complex acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= z;
    acc.re += *it;
  }
  return acc;
}

Series derivative(const Series& coeffs) {
  if (coeffs.size() <= 1) return Series{Real(0)};
  Series d(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = coeffs[k] * static_cast<int>(k);
  return d;
}

Series series_mul(const Series& lhs, const Series& rhs, std::size_t terms) {
  Series out(terms, Real(0));
  for (std::size_t i = 0; i < lhs.size() && i < terms; ++i) {
    if (lhs[i] == 0) continue;
    const std::size_t jmax = std::min(rhs.size(), terms - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += lhs[i] * rhs[j];
  }
  return out;
}

Series series_div(const Series& num, const Series& den, std::size_t terms) {
  if (den.empty() || den[0] == 0) {
    throw SeriesError("series division by a series with vanishing leading coefficient");
  }
  Series q(terms, Real(0));
  for (std::size_t k = 0; k < terms; ++k) {
    Real acc = k < num.size() ? num[k] : Real(0);
    const std::size_t jmax = std::min(k, den.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc -= den[j] * q[k - j];
    q[k] = acc / den[0];
  }
  return q;
}

Series sqrt_shift_series(const Real& c, std::size_t terms) {
  if (c <= 0) throw SeriesError("sqrt_shift_series requires a positive centre value");
  // sqrt(c + t) = sqrt(c) * sum binom(1/2, k) (t/c)^k
  Series out(terms);
  if (terms == 0) return out;
  out[0] = sqrt(c);
  for (std::size_t k = 1; k < terms; ++k) {
    const Real factor = (Real(1) / 2 - static_cast<int>(k - 1)) / static_cast<int>(k);
    out[k] = out[k - 1] * factor / c;
  }
  return out;
}

Series taylor_shift(const Series& poly, const Real& x0) {
  // Repeated synthetic division.
  Series c = poly;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) c[j - 1] += x0 * c[j];
  }
  return c;
}

Series affine_compose(const Series& poly, const Real& offset, const Real& scale) {
  Series shifted = taylor_shift(poly, offset);
  Real s(1);
  for (auto& c : shifted) {
    c *= s;
    s *= scale;
  }
  return shifted;
}

void trim(Series& poly) {
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
}

}  // namespace onecut
