#pragma once

// Inverse-power fits of the diagonal recurrence sequences and the
// end-to-end comparison against the equilibrium-measure predictions.

#include "onecut/equilibrium.hpp"
#include "onecut/numeric.hpp"
#include "onecut/potential.hpp"
#include "onecut/recurrence.hpp"

#include <string>
#include <utility>
#include <vector>

namespace onecut {

using Sequence = std::vector<std::pair<int, Real>>;

enum class FitMethod {
  LeastSquares,  // weighted least squares over the whole window
  Richardson,    // exact elimination through equally spaced window points
};

struct ExpansionFit {
  std::vector<int> powers;
  std::vector<Real> coefficients;
  /// residual_max times the weighted pseudo-inverse row norm; a heuristic
  /// scale, not a confidence interval.
  std::vector<Real> uncertainties;
  Real residual_max;
  Real condition;
  std::pair<int, int> window;
  FitMethod method = FitMethod::LeastSquares;

  /// Coefficient of n^-power; ArgumentError if the power was not fitted.
  const Real& coefficient(int power) const;
  const Real& uncertainty(int power) const;
};

/// value(n) ~ sum_m c_m n^-m over n in [window.first, window.second].
/// Needs at least powers.size() + 2 points.  IllConditionedError when the
/// design matrix cannot resolve the requested coefficients.
ExpansionFit fit_inverse_powers(const Sequence& seq, const std::vector<int>& powers,
                                std::pair<int, int> window, FitMethod method = FitMethod::LeastSquares);

/// Default window [n_max/2, n_max].
std::pair<int, int> default_window(int n_max);

Sequence a_sequence(const RecurrenceTable& table);
Sequence b_sequence(const RecurrenceTable& table);

struct VerificationTolerances {
  Real limit = Real("1e-6");
  Real beta1 = Real("1e-3");
  /// odd coefficients of the a-fit must stay below odd_relative * max(1, |c_2|)
  Real odd_relative = Real("1e-3");
};

struct VerificationOptions {
  std::pair<int, int> window{0, 0};  // {0, 0}: default window
  VerificationTolerances tolerances;
  std::vector<int> a_powers{0, 1, 2, 3, 4};
  std::vector<int> b_powers{0, 1, 2, 3};
  FitMethod method = FitMethod::LeastSquares;
};

struct VerificationReport {
  Real a_limit_expected, a_limit_fitted;
  Real b_limit_expected, b_limit_fitted;
  Real beta1_expected, beta1_fitted;
  Real odd_alpha_max;
  Real odd_alpha_bound;
  ExpansionFit a_fit;
  ExpansionFit b_fit;
  bool a_limit_pass = false;
  bool b_limit_pass = false;
  bool beta1_pass = false;
  bool odd_alpha_pass = false;
  bool pass = false;
};

/// Fits a_{n,n} and b_{n,n} and compares against (b-a)^2/16, (a+b)/2,
/// beta1_closed and the absence of odd powers in the a-expansion.
VerificationReport verify_theorem(const Potential& p, const EquilibriumMeasure& m,
                                  const RecurrenceTable& table, const VerificationOptions& opts = {});

}  // namespace onecut
