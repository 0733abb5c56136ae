#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "onecut/errors.hpp"
#include "onecut/rh_expansion.hpp"
#include "circle_fit.hpp"
#include "random_fields.hpp"
#include "test_util.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>

using namespace onecut;
using testing::circle_coefficient;

namespace {

bool pauli_close(const PauliCoefficients& x, const PauliCoefficients& y, const Real& tol) {
  const Complex d[] = {x.identity - y.identity, x.sigma1 - y.sigma1, x.sigma2 - y.sigma2, x.sigma3 - y.sigma3};
  for (const auto& c : d) {
    if (abs(c) > tol) return false;
  }
  return true;
}

bool matrix_close(const Matrix2& x, const Matrix2& y, const Real& tol) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (abs(x(r, c) - y(r, c)) > tol) return false;
    }
  }
  return true;
}

const PauliCoefficients kZero{};

}  // namespace

TEST_CASE("Pauli decomposition round trip") {
  Matrix2 m;
  m(0, 0) = Complex(Real(1), Real(2));
  m(0, 1) = Complex(Real(-3), Real("0.5"));
  m(1, 0) = Complex(Real(4), Real(0));
  m(1, 1) = Complex(Real("0.25"), Real(-1));
  CHECK(matrix_close(PauliCoefficients::from_matrix(m).to_matrix(), m, Real("1e-70")));
  // sigma_3 + i sigma_1 is nilpotent
  const Matrix2 n = sigma3_plus_i_sigma1().to_matrix();
  CHECK(matrix_close(n * n, Matrix2{}, Real("1e-70")));
}

TEST_CASE("outer parametrix") {
  const Potential p = Potential::parse("poly:0,0.1,-0.3,0.2,0.3");
  const EquilibriumMeasure m = compute_equilibrium(p);

  SUBCASE("unit determinant and beta branch") {
    for (const auto& z : {Complex(Real(3), Real(1)), Complex(Real(-4), Real(0)), Complex(Real("0.2"), Real("-0.5"))}) {
      CHECK(abs(outer_parametrix(m, z).det() - Complex(1)) < Real("1e-70"));
    }
    const Complex beta = outer_beta(m, Complex(m.b() + 1));
    CHECK(beta.re > 0);
    CHECK(abs(beta.im) < Real("1e-70"));
    CHECK_THROWS_AS(outer_parametrix(m, Complex(m.midpoint())), DomainError);
  }

  SUBCASE("jump on the cut") {
    const Real eps("1e-50");
    Matrix2 jump;
    jump(0, 1) = Complex(1);
    jump(1, 0) = Complex(-1);
    for (const char* t : {"0.2", "0.5", "0.9"}) {
      const Real x = m.a() + (m.b() - m.a()) * Real(t);
      const Matrix2 plus = outer_parametrix(m, Complex(x, eps));
      const Matrix2 minus = outer_parametrix(m, Complex(x, -eps));
      CHECK(matrix_close(plus, minus * jump, Real("1e-20")));
    }
  }

  SUBCASE("expansion at infinity") {
    const OuterMoments mom = outer_expansion_moments(m);
    auto n_minus_identity = [&](const Complex& z) {
      return PauliCoefficients::from_matrix(outer_parametrix(m, z)) + PauliCoefficients{Complex(-1), {}, {}, {}};
    };
    const PauliCoefficients first = circle_coefficient(n_minus_identity, Real(0), Real(12), -1, 256);
    const PauliCoefficients second = circle_coefficient(n_minus_identity, Real(0), Real(12), -2, 256);
    CHECK(pauli_close(first, mom.first, Real("1e-40")));
    CHECK(pauli_close(second, mom.second, Real("1e-40")));
  }
}

TEST_CASE("Airy jump constants against the Gamma function") {
  for (int k = 1; k <= 8; ++k) {
    const auto [u, v] = airy_jump_constants(k);
    const Real sp = sqrt(pi());
    const Real u_ref = boost::math::tgamma(Real(3 * k) + Real("0.5")) / (sp * pow(Real(9), k) * boost::math::factorial<Real>(2 * k));
    const Real v_ref =
        boost::math::tgamma(Real(3 * k) - Real("1.5")) / (sp * pow(Real(9), k - 1) * boost::math::factorial<Real>(2 * k - 2));
    CHECK_REL(u, u_ref, Real("1e-60"));
    CHECK_REL(v, v_ref, Real("1e-60"));
  }
  CHECK(airy_jump_constants(1).u == Real(5) / 48);
  CHECK(airy_jump_constants(1).v == Real(1) / 2);
  CHECK_THROWS_AS(airy_jump_constants(0), ArgumentError);
}

TEST_CASE("endpoint expansions reproduce phi on the real axis") {
  const Potential p = Potential::parse("poly:0,0.1,-0.3,0.2,0.3");
  const EquilibriumMeasure m = compute_equilibrium(p);
  const EndpointExpansion right(m, Endpoint::Right, 120);
  const EndpointExpansion left(m, Endpoint::Left, 120);
  const Real r = right.convergence_radius() / 4;
  CHECK_REL(right.phi(Complex(m.b() + r)).re, phi_real(m, p, m.b() + r), Real("1e-30"));
  CHECK_REL(left.phi(Complex(m.a() - r)).re, tilde_phi_real(m, p, m.a() - r), Real("1e-30"));
}

TEST_CASE("parity structure of the jump corrections") {
  for (const std::string spec : {"poly:0,0.1,-0.3,0.2,0.3", "jacobi:1,2"}) {
    CAPTURE(spec);
    const Potential p = Potential::parse(spec);
    const EquilibriumMeasure m = compute_equilibrium(p);
    for (Endpoint side : {Endpoint::Right, Endpoint::Left}) {
      const Real c = side == Endpoint::Right ? m.b() : m.a();
      const Real r = delta_radius_limit(m, side) / 2;
      const EndpointExpansion local(m, side, expansion_terms_for(m, side, r));
      for (int k = 1; k <= 6; ++k) {
        for (const auto& w : {Complex(r, r / 3), Complex(Real(0), r), Complex(-r / 2, -r / 2)}) {
          const PauliCoefficients d = delta_k(m, local, Complex(c) + w, k);
          if (k % 2 == 0) {
            CHECK(abs(d.sigma1) == 0);
            CHECK(abs(d.sigma3) == 0);
            CHECK(abs(d.identity) > 0);
          } else {
            CHECK(abs(d.identity) == 0);
            CHECK(abs(d.sigma2) == 0);
            CHECK(abs(d.sigma3) > 0);
          }
        }
      }
    }
  }
}

TEST_CASE("Laurent parts of Delta_1 from circle samples") {
  for (const std::string spec : {"poly:0,0,0.5", "poly:0,0.1,-0.3,0.2,0.3", "jacobi:1,2"}) {
    CAPTURE(spec);
    const Potential p = Potential::parse(spec);
    const EquilibriumMeasure m = compute_equilibrium(p);
    const Delta1Laurent lp = delta1_laurent(m, p);
    for (Endpoint side : {Endpoint::Right, Endpoint::Left}) {
      const Real c = side == Endpoint::Right ? m.b() : m.a();
      const Real r = delta_radius_limit(m, side) / 2;
      const EndpointExpansion local(m, side, expansion_terms_for(m, side, r));
      auto d1 = [&](const Complex& z) { return delta_k(m, local, z, 1); };
      const LaurentPart& expected = side == Endpoint::Right ? lp.right : lp.left;
      CHECK(pauli_close(circle_coefficient(d1, c, r, -2, 96), expected.pole2, Real("1e-25")));
      CHECK(pauli_close(circle_coefficient(d1, c, r, -1, 96), expected.pole1, Real("1e-25")));
      // no deeper poles
      CHECK(pauli_close(circle_coefficient(d1, c, r, -3, 96), kZero, Real("1e-25")));
    }
  }
}

TEST_CASE("R_1 moments are the residue sums of Delta_1") {
  for (const std::string spec : {"poly:0,0,0.5", "poly:0,0.1,-0.3,0.2,0.3", "jacobi:1,2"}) {
    CAPTURE(spec);
    const Potential p = Potential::parse(spec);
    const EquilibriumMeasure m = compute_equilibrium(p);
    const Delta1Laurent lp = delta1_laurent(m, p);
    const R1Moments r = r1_moments(m, p);
    CHECK(pauli_close(r.first, lp.left.pole1 + lp.right.pole1, Real("1e-60")));
    const PauliCoefficients second = Complex(m.a()) * lp.left.pole1 + Complex(m.b()) * lp.right.pole1 +
                                     lp.left.pole2 + lp.right.pole2;
    CHECK(pauli_close(r.second, second, Real("1e-60")));
  }
}

TEST_CASE("semicircle R_1 moments") {
  const Potential p = Potential::parse("poly:0,0,0.5");
  const EquilibriumMeasure m = compute_equilibrium(p);
  const R1Moments r = r1_moments(m, p);
  // A0 = B0 = 3, B1 = -A1 = 3/20 on [-2, 2]
  CHECK(abs(r.first.sigma1 - Complex(Real(0), Real(1) / 12)) < Real("1e-25"));
  CHECK(abs(r.first.sigma3) < Real("1e-25"));
  CHECK(abs(beta1_via_R(m, p)) < Real("1e-20"));
  CHECK(abs(beta1_closed(m)) < Real("1e-20"));
}

TEST_CASE("beta_1 on the Jacobi field") {
  const Potential p = Potential::parse("jacobi:1,2");
  const EquilibriumMeasure m = compute_equilibrium(p);
  CHECK_CLOSE(beta1_closed(m), Real("-0.048"), Real("1e-30"));
  CHECK_CLOSE(beta1_via_R(m, p), Real("-0.048"), Real("1e-25"));
}

TEST_CASE("property: beta_1 identity on random quartics") {
  for (const auto& spec : testing::regular_quartics(11, 5)) {
    CAPTURE(spec);
    const Potential p = Potential::parse(spec);
    const EquilibriumMeasure m = compute_equilibrium(p);
    EndpointLaurentData d = endpoint_laurent(m, p);
    const Beta1Assembly as = assemble_beta1(m, d);
    CHECK(abs(as.assembled.im) <= Real("1e-25"));
    CHECK_CLOSE(as.assembled.re, beta1_closed(m), Real("1e-20"));
    const Real base = beta1_via_R(m, d);
    for (const char* f : {"1.1", "0.9"}) {
      EndpointLaurentData q = d;
      q.A1 *= Real(f);
      q.B1 *= Real(f);
      CHECK_CLOSE(beta1_via_R(m, q), base, Real("1e-25"));
    }
  }
}

TEST_CASE("domain errors") {
  const Potential p = Potential::parse("poly:0,0,0.5");
  const EquilibriumMeasure m = compute_equilibrium(p);
  const Real limit = delta_radius_limit(m, Endpoint::Right);
  CHECK_THROWS_AS(delta_k(m, p, Complex(m.b() + 2 * limit, Real("0.01")), 1, Endpoint::Right), DomainError);
  CHECK_THROWS_AS(delta_k(m, p, Complex(m.b() - limit / 2), 1, Endpoint::Right), DomainError);
  CHECK_THROWS_AS(delta_k(m, p, Complex(m.b() + limit / 2), 0, Endpoint::Right), ArgumentError);
  CHECK_NOTHROW(delta_k(m, p, Complex(m.b() + limit / 2), 3, Endpoint::Right));
}
