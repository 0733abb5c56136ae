#include "onecut/numeric.hpp"

#include "onecut/errors.hpp"

#include <atomic>
#include <cmath>
#include <regex>

namespace onecut {

namespace {

std::atomic<unsigned> g_precision_bits{0};

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

}  // namespace

void set_precision_bits(unsigned bits) {
  if (bits < 64 || bits > 1u << 16) {
    throw ArgumentError("precision bits must lie in [64, 65536], got " + std::to_string(bits));
  }
  g_precision_bits = bits;
  Real::default_precision(digits10_for_bits(bits));
}

unsigned precision_bits() {
  unsigned bits = g_precision_bits;
  if (bits == 0) {
    set_precision_bits(kDefaultPrecisionBits);
    bits = kDefaultPrecisionBits;
  }
  return bits;
}

namespace {
// Reals created before any explicit call must already see the default.
const bool g_precision_initialized = (precision_bits(), true);
}  // namespace

unsigned precision_digits10() { return digits10_for_bits(precision_bits()); }

PrecisionScope::PrecisionScope(unsigned bits) : saved_bits_(precision_bits()) {
  set_precision_bits(bits);
}

PrecisionScope::~PrecisionScope() { set_precision_bits(saved_bits_); }

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real unit_roundoff() {
  Real r(1);
  return ldexp(r, 1 - static_cast<int>(precision_bits()));
}

Real parse_real(std::string_view text) {
  static const std::regex kDecimal(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  std::string s(text);
  if (!std::regex_match(s, kDecimal)) {
    throw ArgumentError("not a decimal literal: '" + s + "'");
  }
  return Real(s);
}

std::string to_string(const Real& x, unsigned digits) {
  if (digits == 0) digits = precision_digits10();
  // str() counts digits after the point in scientific mode
  return x.str(static_cast<std::streamsize>(digits - 1), std::ios_base::scientific);
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps the intermediate magnitudes balanced.
  if (boost::multiprecision::abs(o.re) >= boost::multiprecision::abs(o.im)) {
    Real r = o.im / o.re;
    Real den = o.re + o.im * r;
    Real nr = (re + im * r) / den;
    im = (im - re * r) / den;
    re = std::move(nr);
  } else {
    Real r = o.re / o.im;
    Real den = o.re * r + o.im;
    Real nr = (re * r + im) / den;
    im = (im * r - re) / den;
    re = std::move(nr);
  }
  return *this;
}

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex sqrt(const Complex& z) {
  if (z.re == 0 && z.im == 0) return {};
  Real r = abs(z);
  Real re = boost::multiprecision::sqrt((r + z.re) / 2);
  Real im = boost::multiprecision::sqrt((r - z.re) / 2);
  if (z.im < 0) im = -im;
  return {re, im};
}

Complex fourth_root(const Complex& z) { return sqrt(sqrt(z)); }

Complex pow(const Complex& z, int k) {
  Complex base = k < 0 ? Complex(1) / z : z;
  unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
  Complex result(1);
  while (e != 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) { return {boost::multiprecision::log(abs(z)), arg(z)}; }

}  // namespace onecut
