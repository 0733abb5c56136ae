#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "onecut/errors.hpp"
#include "onecut/potential.hpp"
#include "test_util.hpp"

using namespace onecut;

namespace {

// central difference with step h, error O(h^4) via Richardson
Real numeric_derivative(const Potential& p, const Real& x) {
  auto d = [&](const Real& h) { return (p.value(x + h) - p.value(x - h)) / (2 * h); };
  const Real h("1e-12");
  return (4 * d(h / 2) - d(h)) / 3;
}

}  // namespace

TEST_CASE("parsing polynomial and Jacobi fields") {
  const Potential q = Potential::parse("poly:0, 0, 0, 0.1, 0.25");
  CHECK(q.is_polynomial());
  CHECK(q.degree() == 4);
  CHECK(q.spec() == "poly:0, 0, 0, 0.1, 0.25");
  CHECK_FALSE(q.is_even());
  const Potential j = Potential::parse("jacobi:1,2");
  CHECK(j.kind() == PotentialKind::Jacobi);
  CHECK(j.right_exponent() == 1);
  CHECK(j.left_exponent() == 2);
  CHECK(Potential::parse("poly:0,0,0.5").is_even());
  CHECK(Potential::parse("jacobi:1.5,1.5").is_even());
}

TEST_CASE("invalid fields are rejected") {
  CHECK_THROWS_AS(Potential::parse("poly:0,1,0,1"), ArgumentError);    // odd degree
  CHECK_THROWS_AS(Potential::parse("poly:0,0,-1"), ArgumentError);     // negative lead
  CHECK_THROWS_AS(Potential::parse("poly:3"), ArgumentError);          // constant
  CHECK_THROWS_AS(Potential::parse("jacobi:0,1"), ArgumentError);
  CHECK_THROWS_AS(Potential::parse("jacobi:1"), ArgumentError);
  CHECK_THROWS_AS(Potential::parse("hermite:1"), ArgumentError);
  CHECK_THROWS_AS(Potential::parse("x^2"), ArgumentError);
  CHECK_THROWS_AS(Potential::parse("poly:1,x,2"), ArgumentError);
}

TEST_CASE("trailing zeros are trimmed before validation") {
  const Potential p = Potential::polynomial({Real(0), Real(0), Real(1), Real(0), Real(0)});
  CHECK(p.degree() == 2);
}

TEST_CASE("derivatives match finite differences") {
  const Potential poly = Potential::parse("poly:0.3,-0.2,0.7,0.1,0.25");
  const Potential jac = Potential::parse("jacobi:1,2");
  for (const char* xs : {"-0.8", "-0.1", "0.35", "0.9"}) {
    const Real x(xs);
    CHECK_REL(poly.derivative(x), numeric_derivative(poly, x), Real("1e-30"));
    CHECK_REL(jac.derivative(x), numeric_derivative(jac, x), Real("1e-30"));
    CHECK(eval_Vprime(poly, x) == poly.derivative(x));
    const Real h("1e-12");
    const Real fd2 = (poly.derivative(x + h) - poly.derivative(x - h)) / (2 * h);
    CHECK_REL(poly.second_derivative(x), fd2, Real("1e-20"));
  }
}

TEST_CASE("Jacobi field domain") {
  const Potential j = Potential::parse("jacobi:1,2");
  CHECK(j.in_domain(Real("0.999")));
  CHECK_FALSE(j.in_domain(Real(1)));
  CHECK_THROWS_AS(j.value(Real(1)), DomainError);
  CHECK_THROWS_AS(j.derivative(Real(-2)), DomainError);
  CHECK_REL(eval_V(j, Real("0.5")), -log(Real("0.5")) - 2 * log(Real("1.5")), Real("1e-70"));
  CHECK_THROWS_AS(j.coefficients(), ArgumentError);
  CHECK_THROWS_AS(Potential::parse("poly:0,0,1").right_exponent(), ArgumentError);
}
