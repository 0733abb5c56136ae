#pragma once

// Explicit objects of the steepest-descent analysis: the outer parametrix
// N(z), the jump corrections Delta_k on the endpoint circles, and the first
// correction R_1 at infinity, which together produce beta_1.

#include "onecut/equilibrium.hpp"
#include "onecut/numeric.hpp"
#include "onecut/potential.hpp"

#include <array>
#include <cstddef>

namespace onecut {

/// Dense 2x2 complex matrix, row-major.
struct Matrix2 {
  std::array<Complex, 4> e;

  Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
  const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

  static Matrix2 identity();
  Complex det() const;
};

Matrix2 operator*(const Matrix2& x, const Matrix2& y);

/// c_I I + c_1 sigma_1 + c_2 sigma_2 + c_3 sigma_3.
struct PauliCoefficients {
  Complex identity;
  Complex sigma1;
  Complex sigma2;
  Complex sigma3;

  Matrix2 to_matrix() const;
  static PauliCoefficients from_matrix(const Matrix2& m);

  PauliCoefficients& operator+=(const PauliCoefficients& o);
};

PauliCoefficients operator+(PauliCoefficients x, const PauliCoefficients& y);
PauliCoefficients operator*(const Complex& s, const PauliCoefficients& p);

/// sigma_3 + i sigma_1 and sigma_3 - i sigma_1.
PauliCoefficients sigma3_plus_i_sigma1();
PauliCoefficients sigma3_minus_i_sigma1();

enum class Endpoint { Left, Right };

/// beta(z) = ((z-b)/(z-a))^{1/4}, analytic off [a, b] and positive for real z > b.
Complex outer_beta(const EquilibriumMeasure& m, const Complex& z);

/// Outer parametrix N(z); DomainError on [a, b].
Matrix2 outer_parametrix(const EquilibriumMeasure& m, const Complex& z);

struct OuterMoments {
  PauliCoefficients first;   // coefficient of 1/z
  PauliCoefficients second;  // coefficient of 1/z^2
};

OuterMoments outer_expansion_moments(const EquilibriumMeasure& m);

/// Rational constants of the Airy jump expansion, exact as
/// u_k = Gamma(3k+1/2) / (sqrt(pi) 9^k (2k)!),
/// v_k = Gamma(3k-3/2) / (sqrt(pi) 9^{k-1} (2k-2)!).
struct AiryJumpConstants {
  Real u;
  Real v;
};
AiryJumpConstants airy_jump_constants(int k);

/// Local Taylor data around an endpoint, reusable across many evaluations
/// of phi (right) or tilde phi (left) in the complex plane.
class EndpointExpansion {
 public:
  EndpointExpansion(const EquilibriumMeasure& m, Endpoint side, std::size_t terms);

  Endpoint side() const { return side_; }
  /// Radius of the disk where the Taylor data converges.
  const Real& convergence_radius() const { return radius_; }
  std::size_t terms() const { return coeffs_.size(); }

  /// phi(z) (right) or tilde phi(z) (left) by termwise evaluation.
  Complex phi(const Complex& z) const;

 private:
  Endpoint side_;
  Real centre_;
  Real radius_;
  Series coeffs_;  // pi f_k / (k + 3/2)
};

/// Number of Taylor terms needed at |z - endpoint| = r for working precision.
std::size_t expansion_terms_for(const EquilibriumMeasure& m, Endpoint side, const Real& r);

/// Largest admissible |z - endpoint| for delta_k.
Real delta_radius_limit(const EquilibriumMeasure& m, Endpoint side);

/// Delta_k(z) on the circle around b (Right) or tilde Delta_k(z) around a
/// (Left).  k even: span{I, sigma_2}; k odd: span{sigma_1, sigma_3}.
PauliCoefficients delta_k(const EquilibriumMeasure& m, const Potential& p, const Complex& z,
                          int k, Endpoint side);
/// Same, reusing a prebuilt endpoint expansion.
PauliCoefficients delta_k(const EquilibriumMeasure& m, const EndpointExpansion& local,
                          const Complex& z, int k);

struct LaurentPart {
  PauliCoefficients pole2;  // coefficient of (z - c)^{-2}
  PauliCoefficients pole1;  // coefficient of (z - c)^{-1}
};

struct Delta1Laurent {
  LaurentPart right;  // around b
  LaurentPart left;   // around a
};

Delta1Laurent delta1_laurent(const EquilibriumMeasure& m, const EndpointLaurentData& d);
Delta1Laurent delta1_laurent(const EquilibriumMeasure& m, const Potential& p);

struct R1Moments {
  PauliCoefficients first;   // R_11, coefficient of 1/z
  PauliCoefficients second;  // R_12, coefficient of 1/z^2
};

R1Moments r1_moments(const EquilibriumMeasure& m, const EndpointLaurentData& d);
R1Moments r1_moments(const EquilibriumMeasure& m, const Potential& p);

struct Beta1Assembly {
  Complex assembled;   // 2 R11_s3 - 4/(b-a) i R12_s1 + 2(b+a)/(b-a) i R11_s1
  Real simplified;     // (B0 - A0) / (3 (b - a))
};

/// Assembles beta_1 from the R_1 moments.  Throws CancellationError when
/// the imaginary part or the gap to the simplified form exceeds tolerance.
Beta1Assembly assemble_beta1(const EquilibriumMeasure& m, const EndpointLaurentData& d);

Real beta1_via_R(const EquilibriumMeasure& m, const Potential& p);
Real beta1_via_R(const EquilibriumMeasure& m, const EndpointLaurentData& d);

/// (1/(2 pi (b-a))) (1/h(b) - 1/h(a)).
Real beta1_closed(const EquilibriumMeasure& m);

}  // namespace onecut
