#pragma once

#include "onecut/numeric.hpp"

#include <cstddef>
#include <vector>

namespace onecut {

struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;

  std::size_t size() const { return nodes.size(); }
};

/// m-point Gauss-Legendre rule on [-1, 1], computed by Newton iteration on
/// the Legendre three-term recurrence at the current working precision.
/// Rules are cached per (m, precision).
const QuadratureRule& gauss_legendre(std::size_t m);

/// Composite Gauss-Legendre over [lo, hi] with `panels` equal panels of
/// `per_panel` nodes each.
QuadratureRule composite_gauss_legendre(const Real& lo, const Real& hi, std::size_t panels,
                                        std::size_t per_panel = 64);

/// Gauss-Chebyshev nodes of the first kind, t_j = cos((2j-1)pi/(2m)); every
/// weight equals pi/m for the weight 1/sqrt(1-t^2).
std::vector<Real> chebyshev_nodes(std::size_t m);

/// Gauss-Chebyshev rule of the second kind for the weight sqrt(1-t^2).
QuadratureRule chebyshev_second_kind(std::size_t m);

}  // namespace onecut
