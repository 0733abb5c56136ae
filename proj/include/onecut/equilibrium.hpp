#pragma once

// Equilibrium measure of a one-cut potential:
//   d mu_V(x) = sqrt((b-x)(x-a)) h(x) dx  on [a, b].

#include "onecut/numeric.hpp"
#include "onecut/potential.hpp"
#include "onecut/series.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace onecut {

struct EndpointOptions {
  std::size_t initial_nodes = 512;
  std::size_t max_nodes = 1u << 14;
  int max_iterations = 200;
  /// Required residual of both endpoint conditions, and the agreement
  /// required between successive node counts.
  Real tolerance = Real("1e-30");
};

struct Endpoints {
  Real a;
  Real b;
  /// max |residual| of the two endpoint conditions at the solution
  Real residual;
  int iterations = 0;
  std::size_t node_count = 0;
};

/// Solves the two endpoint conditions
///   (1/2pi) int V'(s) / sqrt((s-a)(b-s)) ds = 0,
///   (1/2pi) int s V'(s) / sqrt((s-a)(b-s)) ds = 1
/// by damped Newton with Gauss-Chebyshev quadrature.
Endpoints solve_endpoints(const Potential& p, const EndpointOptions& opts = {});

/// Residuals of the two endpoint conditions at (a, b) with `nodes`
/// Gauss-Chebyshev nodes (second entry already has the 1 subtracted).
std::pair<Real, Real> endpoint_residuals(const Potential& p, const Real& a, const Real& b,
                                         std::size_t nodes);

/// The real-analytic factor h of the density.  Polynomial fields give a
/// polynomial; Jacobi fields give (2+A+B) / (2 pi (1 - x^2)).
class DensityFactor {
 public:
  enum class Kind { Polynomial, Jacobi };

  static DensityFactor polynomial(Series coeffs);
  static DensityFactor jacobi(const Real& right_exponent, const Real& left_exponent);

  Kind kind() const { return kind_; }
  /// Monomial coefficients (polynomial kind) or the single numerator
  /// constant (2+A+B)/(2 pi) (Jacobi kind).
  const Series& coefficients() const { return coeffs_; }

  Real operator()(const Real& x) const;
  /// First `terms` Taylor coefficients of h about x0.
  Series taylor(const Real& x0, std::size_t terms) const;
  /// Distance from x0 to the nearest singularity of h (infinite for
  /// polynomials, represented as nullopt).
  std::optional<Real> singularity_distance(const Real& x0) const;

 private:
  Kind kind_ = Kind::Polynomial;
  Series coeffs_;
};

/// h for the given support.  For polynomial V this expands V' in Chebyshev
/// polynomials of the first kind on [a, b] and maps T_k to U_{k-1}.
DensityFactor compute_h(const Potential& p, const Real& a, const Real& b);

struct RegularityGrid {
  std::size_t h_samples = 2001;
  std::size_t phi_samples = 120;
  /// Width X of the exterior windows (b, b+X] and [a-X, a); 0 means 10 (b-a).
  Real exterior_width = Real(0);
  /// h must exceed this multiple of max h on the grid.
  Real h_relative_floor = Real("1e-20");
  Real normalization_tolerance = Real("1e-25");
};

struct RegularityReport {
  Real min_h;
  Real argmin_h;
  bool h_positive = false;
  std::size_t h_sign_changes = 0;
  Real min_phi_right;
  bool phi_right_positive = false;
  Real min_phi_left;
  bool phi_left_positive = false;
  Real normalization_residual;
  bool normalized = false;
  bool inside_domain = true;
  bool regular = false;
  std::vector<std::string> notes;
};

class EquilibriumMeasure {
 public:
  EquilibriumMeasure(Real a, Real b, DensityFactor h);

  const Real& a() const { return a_; }
  const Real& b() const { return b_; }
  Real midpoint() const { return (a_ + b_) / 2; }
  Real half_width() const { return (b_ - a_) / 2; }
  const DensityFactor& h() const { return h_; }

  bool regular() const { return report_.has_value() && report_->regular; }
  const std::optional<RegularityReport>& regularity() const { return report_; }
  void set_regularity(RegularityReport report) { report_ = std::move(report); }
  /// Throws NotOneCutError unless the measure was verified one-cut regular.
  void require_regular() const;

  const std::optional<Real>& lagrange() const { return lagrange_; }
  void set_lagrange(Real value) { lagrange_ = std::move(value); }

  /// Endpoint solve diagnostics (set by compute_equilibrium).
  const std::optional<Endpoints>& endpoint_solution() const { return endpoints_; }
  void set_endpoint_solution(Endpoints e) { endpoints_ = std::move(e); }

 private:
  Real a_;
  Real b_;
  DensityFactor h_;
  std::optional<RegularityReport> report_;
  std::optional<Real> lagrange_;
  std::optional<Endpoints> endpoints_;
};

/// Endpoints, h, regularity report and (when regular) the Lagrange constant.
EquilibriumMeasure compute_equilibrium(const Potential& p, const EndpointOptions& opts = {},
                                       const RegularityGrid& grid = {});

/// sqrt((b-x)(x-a)) h(x) on [a, b], zero elsewhere.
Real equilibrium_density(const EquilibriumMeasure& m, const Real& x);

/// |int psi_V - 1| by Gauss-Chebyshev quadrature of the second kind.
Real normalization_residual(const EquilibriumMeasure& m);

/// 2 int log|x0 - y|^{-1} d mu_V(y) + V(x0), evaluated at x0 (default the
/// midpoint).  The log kernel is expanded in the cosine basis of the
/// substitution y = mid + d cos(theta).
Real lagrange_constant(const EquilibriumMeasure& m, const Potential& p,
                       const std::optional<Real>& x0 = std::nullopt);

/// pi int_b^x sqrt((s-b)(s-a)) h(s) ds for x > b.
Real phi_real(const EquilibriumMeasure& m, const Potential& p, const Real& x);
/// pi int_x^a sqrt((b-s)(a-s)) h(s) ds for x < a (positive branch).
Real tilde_phi_real(const EquilibriumMeasure& m, const Potential& p, const Real& x);

RegularityReport verify_one_cut_regular(const EquilibriumMeasure& m, const Potential& p,
                                        const RegularityGrid& grid = {});

/// Laurent data of beta^{-2}/phi at b and beta^2/tilde_phi at a:
///   beta^{-2}/phi = (z-b)^{-2} sum B_m (z-b)^m,
///   beta^{2}/tilde_phi = (z-a)^{-2} sum A_m (z-a)^m.
struct EndpointLaurentData {
  Real A0, A1, B0, B1;
  /// All computed coefficients (A_m and B_m, m < terms).
  Series left_series;
  Series right_series;
};

EndpointLaurentData endpoint_laurent(const EquilibriumMeasure& m, const Potential& p,
                                     std::size_t terms = 8);

/// Taylor coefficients f_k of sqrt(b-a+t) h(b+t) (right endpoint) or
/// sqrt(b-a+t) h(a-t) (left endpoint); phi = pi t^{3/2} sum f_k t^k/(k+3/2).
Series endpoint_integrand_series(const EquilibriumMeasure& m, bool right, std::size_t terms);

}  // namespace onecut
