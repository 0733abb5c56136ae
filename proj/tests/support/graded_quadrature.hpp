#pragma once

// Reference integrator for endpoint singularities (sqrt, log): Gauss-Legendre
// panels on a mesh graded geometrically toward one end of the interval.

#include "onecut/numeric.hpp"
#include "onecut/quadrature.hpp"

namespace onecut::testing {

/// int_lo^hi f, where f may be singular at `lo` (toward_lo) or at `hi`.
template <typename F>
Real graded_integral(F&& f, const Real& lo, const Real& hi, bool toward_lo, int levels = 56,
                     const Real& ratio = Real("0.2")) {
  const QuadratureRule& rule = gauss_legendre(32);
  Real total(0);
  Real outer = hi - lo;  // distance of the current panel's far end from the singular point
  for (int level = 0; level < levels; ++level) {
    const Real inner = level + 1 == levels ? Real(0) : outer * ratio;
    const Real half = (outer - inner) / 2;
    const Real centre = (outer + inner) / 2;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const Real t = centre + half * rule.nodes[j];
      total += half * rule.weights[j] * f(toward_lo ? lo + t : hi - t);
    }
    outer = inner;
  }
  return total;
}

/// Singularities at both ends: split at the midpoint.
template <typename F>
Real graded_integral_both(F&& f, const Real& lo, const Real& hi) {
  const Real mid = (lo + hi) / 2;
  return graded_integral(f, lo, mid, true) + graded_integral(f, mid, hi, false);
}

}  // namespace onecut::testing
