#pragma once

// Extended-precision scalar types shared by every module.

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace onecut {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                         boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

/// Sets the process-wide working precision (significand bits) for newly
/// created Real values.  Values created earlier keep their precision.
void set_precision_bits(unsigned bits);
unsigned precision_bits();
/// Decimal digits carried by the current working precision.
unsigned precision_digits10();

/// RAII override of the working precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_bits_;
};

/// pi at the current working precision.
Real pi();
/// Unit roundoff 2^(1-bits) of the current working precision.
Real unit_roundoff();

/// Parses a plain decimal literal ("-1.25", "3", "2.5e-3").  Throws
/// ArgumentError on anything else; the decimal separator is always '.'.
Real parse_real(std::string_view text);

/// Scientific notation with `digits` significant digits (0 = full working
/// precision).  Output is independent of the process locale.
std::string to_string(const Real& x, unsigned digits = 0);

inline Real square(const Real& x) { return x * x; }
inline Real min(const Real& x, const Real& y) { return y < x ? y : x; }
inline Real max(const Real& x, const Real& y) { return x < y ? y : x; }

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

  static Complex i() { return {Real(0), Real(1)}; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return {-re, -im}; }
};

inline Complex operator+(Complex x, const Complex& y) { return x += y; }
inline Complex operator-(Complex x, const Complex& y) { return x -= y; }
inline Complex operator*(Complex x, const Complex& y) { return x *= y; }
inline Complex operator/(Complex x, const Complex& y) { return x /= y; }
inline Complex operator*(const Real& s, const Complex& z) { return {s * z.re, s * z.im}; }
inline Complex operator*(const Complex& z, const Real& s) { return {s * z.re, s * z.im}; }
inline Complex operator/(const Complex& z, const Real& s) { return {z.re / s, z.im / s}; }

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real abs(const Complex& z);
Real arg(const Complex& z);
/// Principal square root (branch cut on the negative real axis, arg in (-pi/2, pi/2]).
Complex sqrt(const Complex& z);
/// Principal fourth root, obtained as two principal square roots.
Complex fourth_root(const Complex& z);
Complex pow(const Complex& z, int k);
Complex exp(const Complex& z);
Complex log(const Complex& z);

}  // namespace onecut
