#include "onecut/rh_expansion.hpp"

#include "onecut/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

namespace onecut {

Matrix2 Matrix2::identity() {
  Matrix2 m;
  m(0, 0) = Complex(1);
  m(1, 1) = Complex(1);
  return m;
}

Complex Matrix2::det() const { return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0); }

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  Matrix2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
  }
  return r;
}

Matrix2 PauliCoefficients::to_matrix() const {
  const Complex i = Complex::i();
  Matrix2 m;
  m(0, 0) = identity + sigma3;
  m(1, 1) = identity - sigma3;
  m(0, 1) = sigma1 - i * sigma2;
  m(1, 0) = sigma1 + i * sigma2;
  return m;
}

PauliCoefficients PauliCoefficients::from_matrix(const Matrix2& m) {
  const Real half = Real(1) / 2;
  PauliCoefficients p;
  p.identity = half * (m(0, 0) + m(1, 1));
  p.sigma3 = half * (m(0, 0) - m(1, 1));
  p.sigma1 = half * (m(0, 1) + m(1, 0));
  p.sigma2 = half * (Complex::i() * (m(0, 1) - m(1, 0)));
  return p;
}

PauliCoefficients& PauliCoefficients::operator+=(const PauliCoefficients& o) {
  identity += o.identity;
  sigma1 += o.sigma1;
  sigma2 += o.sigma2;
  sigma3 += o.sigma3;
  return *this;
}

PauliCoefficients operator+(PauliCoefficients x, const PauliCoefficients& y) { return x += y; }

PauliCoefficients operator*(const Complex& s, const PauliCoefficients& p) {
  return {s * p.identity, s * p.sigma1, s * p.sigma2, s * p.sigma3};
}

PauliCoefficients sigma3_plus_i_sigma1() { return {Complex(), Complex::i(), Complex(), Complex(1)}; }

PauliCoefficients sigma3_minus_i_sigma1() { return {Complex(), -Complex::i(), Complex(), Complex(1)}; }

// ---------------------------------------------------------------------------
// Outer parametrix

namespace {

void reject_cut(const EquilibriumMeasure& m, const Complex& z) {
  if (z.im == 0 && z.re >= m.a() && z.re <= m.b()) {
    throw DomainError("z lies on the cut [a, b]");
  }
}

}  // namespace

Complex outer_beta(const EquilibriumMeasure& m, const Complex& z) {
  reject_cut(m, z);
  return fourth_root((z - Complex(m.b())) / (z - Complex(m.a())));
}

Matrix2 outer_parametrix(const EquilibriumMeasure& m, const Complex& z) {
  const Complex beta = outer_beta(m, z);
  const Complex inv = Complex(1) / beta;
  const Complex diag = Real(1) / 2 * (beta + inv);
  const Complex off = (beta - inv) / (Complex(2) * Complex::i());
  Matrix2 n;
  n(0, 0) = diag;
  n(1, 1) = diag;
  n(0, 1) = off;
  n(1, 0) = -off;
  return n;
}

OuterMoments outer_expansion_moments(const EquilibriumMeasure& m) {
  const Real& a = m.a();
  const Real& b = m.b();
  OuterMoments out;
  out.first.sigma2 = Complex(-(b - a) / 4);
  out.second.identity = Complex(square(b - a) / 32);
  out.second.sigma2 = Complex(-(b * b - a * a) / 8);
  return out;
}

// ---------------------------------------------------------------------------
// Airy jump constants

AiryJumpConstants airy_jump_constants(int k) {
  if (k < 1) throw ArgumentError("expansion order k must be >= 1");
  using boost::multiprecision::cpp_rational;
  // Gamma(m + 1/2) / sqrt(pi) = prod_{j<m} (j + 1/2)
  auto half_gamma = [](int m) {
    cpp_rational g(1);
    for (int j = 0; j < m; ++j) g *= cpp_rational(2 * j + 1, 2);
    return g;
  };
  auto factorial = [](int m) {
    cpp_rational f(1);
    for (int j = 2; j <= m; ++j) f *= j;
    return f;
  };
  auto power9 = [](int e) {
    cpp_rational p(1);
    for (int j = 0; j < e; ++j) p *= 9;
    return p;
  };
  const cpp_rational u = half_gamma(3 * k) / (power9(k) * factorial(2 * k));
  const cpp_rational v = half_gamma(3 * k - 2) / (power9(k - 1) * factorial(2 * k - 2));
  auto to_real = [](const cpp_rational& q) {
    return Real(numerator(q).str()) / Real(denominator(q).str());
  };
  return {to_real(u), to_real(v)};
}

// ---------------------------------------------------------------------------
// Endpoint expansions of phi and tilde phi

namespace {

Real analyticity_radius(const EquilibriumMeasure& m, Endpoint side) {
  const Real centre = side == Endpoint::Right ? m.b() : m.a();
  Real radius = m.b() - m.a();
  if (auto d = m.h().singularity_distance(centre)) radius = min(radius, *d);
  return radius;
}

}  // namespace

EndpointExpansion::EndpointExpansion(const EquilibriumMeasure& m, Endpoint side, std::size_t terms)
    : side_(side),
      centre_(side == Endpoint::Right ? m.b() : m.a()),
      radius_(analyticity_radius(m, side)) {
  const Series f = endpoint_integrand_series(m, side == Endpoint::Right, terms);
  const Real p = pi();
  coeffs_.resize(terms);
  for (std::size_t k = 0; k < terms; ++k) coeffs_[k] = p * f[k] * 2 / (2 * static_cast<int>(k) + 3);
}

Complex EndpointExpansion::phi(const Complex& z) const {
  // right: t = z - b, phi = t^{3/2} S(t), cut on (-inf, b]
  // left:  t = a - z, tilde phi = t^{3/2} S(t), cut on [a, +inf)
  const Complex t = side_ == Endpoint::Right ? z - Complex(centre_) : Complex(centre_) - z;
  return t * sqrt(t) * horner(coeffs_, t);
}

std::size_t expansion_terms_for(const EquilibriumMeasure& m, Endpoint side, const Real& r) {
  const double ratio = static_cast<double>(r / analyticity_radius(m, side));
  const double bits = precision_bits();
  const double needed = bits * std::log(2.0) / -std::log(std::max(ratio, 1e-6));
  return static_cast<std::size_t>(std::ceil(needed * 1.1)) + 16;
}

Real delta_radius_limit(const EquilibriumMeasure& m, Endpoint side) {
  return analyticity_radius(m, side) / 2;
}

PauliCoefficients delta_k(const EquilibriumMeasure& m, const Potential& p, const Complex& z, int k,
                          Endpoint side) {
  (void)p;
  const Real centre = side == Endpoint::Right ? m.b() : m.a();
  const Real r = abs(z - Complex(centre));
  if (r > delta_radius_limit(m, side)) {
    throw DomainError("z lies outside the endpoint series convergence disk");
  }
  const EndpointExpansion local(m, side, expansion_terms_for(m, side, r));
  return delta_k(m, local, z, k);
}

PauliCoefficients delta_k(const EquilibriumMeasure& m, const EndpointExpansion& local, const Complex& z,
                          int k) {
  if (k < 1) throw ArgumentError("expansion order k must be >= 1");
  const Real centre = local.side() == Endpoint::Right ? m.b() : m.a();
  const Real r = abs(z - Complex(centre));
  if (r == 0) throw DomainError("delta_k is singular at the endpoint");
  if (r > delta_radius_limit(m, local.side())) {
    throw DomainError("z lies outside the endpoint series convergence disk");
  }
  reject_cut(m, z);

  const auto [u, v] = airy_jump_constants(k);
  const Complex zeta_inv_k = pow(Real(3) / 2 * local.phi(z), -k);
  const bool right = local.side() == Endpoint::Right;

  if (k % 2 == 0) {
    PauliCoefficients out;
    out.identity = (u - v / 4) * zeta_inv_k;
    // conjugation by sigma_3 flips the sigma_2 component on the left
    out.sigma2 = (right ? -v / 4 : v / 4) * zeta_inv_k;
    return out;
  }

  const Complex beta2 = pow(outer_beta(m, z), 2);
  const Complex beta_m2 = Complex(1) / beta2;
  const Real c_plus = -(u - v / 2) / 2;
  const Real c_minus = -u / 2;
  if (right) {
    return (c_plus * beta2 * zeta_inv_k) * sigma3_plus_i_sigma1() +
           (c_minus * beta_m2 * zeta_inv_k) * sigma3_minus_i_sigma1();
  }
  // a <-> b interchange (beta -> 1/beta, phi -> tilde phi), then sigma_3 conjugation
  return (c_plus * beta_m2 * zeta_inv_k) * sigma3_minus_i_sigma1() +
         (c_minus * beta2 * zeta_inv_k) * sigma3_plus_i_sigma1();
}

// ---------------------------------------------------------------------------
// Laurent parts of Delta_1 and the moments of R_1

Delta1Laurent delta1_laurent(const EquilibriumMeasure& m, const EndpointLaurentData& d) {
  const Real width = m.b() - m.a();
  Delta1Laurent out;
  out.right.pole2 = Complex(-5 * d.B0 / 144) * sigma3_minus_i_sigma1();
  out.right.pole1 = Complex(-5 * d.B1 / 144) * sigma3_minus_i_sigma1() +
                    Complex(7 * d.B0 / (144 * width)) * sigma3_plus_i_sigma1();
  out.left.pole2 = Complex(-5 * d.A0 / 144) * sigma3_plus_i_sigma1();
  out.left.pole1 = Complex(-5 * d.A1 / 144) * sigma3_plus_i_sigma1() +
                   Complex(-7 * d.A0 / (144 * width)) * sigma3_minus_i_sigma1();
  return out;
}

Delta1Laurent delta1_laurent(const EquilibriumMeasure& m, const Potential& p) {
  return delta1_laurent(m, endpoint_laurent(m, p));
}

R1Moments r1_moments(const EquilibriumMeasure& m, const EndpointLaurentData& d) {
  const Real& a = m.a();
  const Real& b = m.b();
  const Real width = b - a;
  const PauliCoefficients plus = sigma3_plus_i_sigma1();
  const PauliCoefficients minus = sigma3_minus_i_sigma1();

  R1Moments r;
  r.first = Complex(-5 * d.A1 / 144) * plus + Complex(-7 * d.A0 / (144 * width)) * minus +
            Complex(-5 * d.B1 / 144) * minus + Complex(7 * d.B0 / (144 * width)) * plus;
  r.second = Complex(-5 * a * d.A1 / 144) * plus + Complex(-7 * a * d.A0 / (144 * width)) * minus +
             Complex(-5 * b * d.B1 / 144) * minus + Complex(7 * b * d.B0 / (144 * width)) * plus +
             Complex(-5 * d.A0 / 144) * plus + Complex(-5 * d.B0 / 144) * minus;
  return r;
}

R1Moments r1_moments(const EquilibriumMeasure& m, const Potential& p) {
  return r1_moments(m, endpoint_laurent(m, p));
}

Beta1Assembly assemble_beta1(const EquilibriumMeasure& m, const EndpointLaurentData& d) {
  const Real& a = m.a();
  const Real& b = m.b();
  const Real width = b - a;
  const R1Moments r = r1_moments(m, d);
  const Complex i = Complex::i();

  Beta1Assembly out;
  out.assembled = Real(2) * r.first.sigma3 - (4 / width) * (i * r.second.sigma1) +
                  (2 * (b + a) / width) * (i * r.first.sigma1);
  out.simplified = (d.B0 - d.A0) / (3 * width);

  if (abs(out.assembled.im) > Real("1e-25")) {
    throw CancellationError("beta_1 assembly left an imaginary part " + to_string(out.assembled.im, 6));
  }
  if (abs(out.assembled.re - out.simplified) > Real("1e-20")) {
    throw CancellationError("A_1/B_1 dependence failed to cancel in the beta_1 assembly");
  }
  return out;
}

Real beta1_via_R(const EquilibriumMeasure& m, const EndpointLaurentData& d) {
  return assemble_beta1(m, d).assembled.re;
}

Real beta1_via_R(const EquilibriumMeasure& m, const Potential& p) {
  m.require_regular();
  return beta1_via_R(m, endpoint_laurent(m, p));
}

Real beta1_closed(const EquilibriumMeasure& m) {
  m.require_regular();
  const Real width = m.b() - m.a();
  return (1 / m.h()(m.b()) - 1 / m.h()(m.a())) / (2 * pi() * width);
}

}  // namespace onecut
