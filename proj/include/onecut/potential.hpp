#pragma once

// The external field V of the varying weight exp(-n V).

#include "onecut/numeric.hpp"
#include "onecut/series.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace onecut {

enum class PotentialKind { Polynomial, Jacobi };

/// Either a polynomial field (ascending coefficients, even degree >= 2,
/// positive leading coefficient) or a varying-Jacobi field
/// V(x) = -A log(1-x) - B log(1+x) on (-1, 1), A, B > 0.
class Potential {
 public:
  static Potential polynomial(Series coeffs);
  static Potential jacobi(Real right_exponent, Real left_exponent);

  /// Parses "poly:c0,c1,...,cd" or "jacobi:A,B".
  static Potential parse(std::string_view spec);

  PotentialKind kind() const { return kind_; }
  bool is_polynomial() const { return kind_ == PotentialKind::Polynomial; }

  /// Ascending coefficients; throws ArgumentError for a Jacobi field.
  const Series& coefficients() const;
  std::size_t degree() const;
  /// A (exponent of 1-x); throws ArgumentError for a polynomial field.
  const Real& right_exponent() const;
  /// B (exponent of 1+x); throws ArgumentError for a polynomial field.
  const Real& left_exponent() const;

  bool in_domain(const Real& x) const;
  /// True when V(x) = V(-x) identically.
  bool is_even() const;

  Real value(const Real& x) const;
  Real derivative(const Real& x) const;
  Real second_derivative(const Real& x) const;

  /// Canonical text form, re-parseable by `parse`.
  std::string spec() const;

 private:
  Potential() = default;
  void check_domain(const Real& x) const;

  PotentialKind kind_ = PotentialKind::Polynomial;
  Series coeffs_;
  Series dcoeffs_;
  Series ddcoeffs_;
  Real jacobi_a_;
  Real jacobi_b_;
  std::string spec_;
};

Real eval_V(const Potential& p, const Real& x);
Real eval_Vprime(const Potential& p, const Real& x);

}  // namespace onecut
