#pragma once

// Diagonal recurrence coefficients of the monic orthogonal polynomials for
// the varying weight e^{-nV}:
//   x pi_n(x) = pi_{n+1}(x) + b_n pi_n(x) + a_n pi_{n-1}(x).

#include "onecut/equilibrium.hpp"
#include "onecut/numeric.hpp"
#include "onecut/potential.hpp"
#include "onecut/quadrature.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace onecut {

struct RecurrenceEntry {
  int n = 0;
  Real a;
  Real b;
};

struct RecurrenceTable {
  std::vector<RecurrenceEntry> entries;
  unsigned precision_bits = 0;
  std::size_t node_count = 0;
  std::string potential_spec;
};

struct RecurrenceOptions {
  /// Doubling the discretization must move no value by more than
  /// 10^-digits_target (relative to max(1, |value|)).
  int digits_target = 30;
  std::size_t initial_panels = 4;
  std::size_t max_nodes = 1u << 16;
  /// Worker threads over n; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Discretized weight e^{-nV(x)} dx: nodes and weights of a composite
/// Gauss-Legendre rule on the truncated line (polynomial fields) or in
/// x = cos(theta) (Jacobi fields).
QuadratureRule discretize_weight(const Potential& p, const EquilibriumMeasure& m, int n,
                                 std::size_t panels, int digits_target);

/// Integration window [lo, hi] for the polynomial weight at index n.
std::pair<Real, Real> truncation_window(const Potential& p, const EquilibriumMeasure& m, int n,
                                        int digits_target);

/// Stieltjes procedure on a discrete measure; returns (a_k, b_k) for k = n.
std::pair<Real, Real> stieltjes_coefficients(const QuadratureRule& measure, int n);

/// One diagonal entry with self-validation; `nodes_used` receives the
/// accepted discretization size.
RecurrenceEntry recurrence_entry(const Potential& p, const EquilibriumMeasure& m, int n,
                                 const RecurrenceOptions& opts, std::size_t* nodes_used = nullptr);

/// Entries n = 1..n_max.  NotOneCutError when p is not one-cut regular;
/// PrecisionError when self-validation fails at max_nodes.
RecurrenceTable compute_recurrence(const Potential& p, int n_max, const RecurrenceOptions& opts = {});
RecurrenceTable compute_recurrence(const Potential& p, const EquilibriumMeasure& m, int n_max,
                                   const RecurrenceOptions& opts = {});

/// Moments int x^k e^{-nV(x)} dx for k = 0..count-1.
std::vector<Real> weight_moments(const Potential& p, int n, std::size_t count,
                                 std::size_t* nodes_used = nullptr);

/// Small-n reference from Hankel determinants of the moments (n_small <= 10).
RecurrenceTable hankel_oracle(const Potential& p, int n_small, const RecurrenceOptions& opts = {});

/// Exact diagonal coefficients of the Jacobi field with exponents (A, B).
std::pair<Real, Real> jacobi_recurrence_closed(const Real& A, const Real& B, int n);

}  // namespace onecut
