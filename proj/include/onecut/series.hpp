#pragma once

// Truncated power series and dense polynomials, both stored as ascending
// coefficient vectors.

#include "onecut/numeric.hpp"

#include <cstddef>
#include <vector>

namespace onecut {

using Series = std::vector<Real>;

Real horner(const Series& coeffs, const Real& x);
Complex horner(const Series& coeffs, const Complex& z);

Series derivative(const Series& coeffs);

/// Product truncated to `terms` coefficients.
Series series_mul(const Series& lhs, const Series& rhs, std::size_t terms);
/// Quotient truncated to `terms` coefficients.  Throws SeriesError when the
/// denominator's constant term vanishes.
Series series_div(const Series& num, const Series& den, std::size_t terms);
/// Taylor coefficients of sqrt(c + t) about t = 0, c > 0.
Series sqrt_shift_series(const Real& c, std::size_t terms);

/// Coefficients of p(x0 + t) in powers of t.
Series taylor_shift(const Series& poly, const Real& x0);
/// Coefficients of p(offset + scale * t) in powers of t.
Series affine_compose(const Series& poly, const Real& offset, const Real& scale);

/// Drops trailing zero coefficients (keeps at least one).
void trim(Series& poly);

}  // namespace onecut
