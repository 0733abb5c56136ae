#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "onecut/quadrature.hpp"
#include "test_util.hpp"

using namespace onecut;

TEST_CASE("Gauss-Legendre is exact through degree 2m-1") {
  const QuadratureRule& rule = gauss_legendre(16);
  REQUIRE(rule.size() == 16);
  for (int k = 0; k <= 31; ++k) {
    Real sum(0);
    for (std::size_t j = 0; j < rule.size(); ++j) sum += rule.weights[j] * pow(rule.nodes[j], k);
    const Real exact = k % 2 ? Real(0) : Real(2) / (k + 1);
    CHECK_CLOSE(sum, exact, Real("1e-70"));
  }
}

TEST_CASE("rules are cached per precision") {
  const QuadratureRule& a = gauss_legendre(24);
  const QuadratureRule& b = gauss_legendre(24);
  CHECK(&a == &b);
  const PrecisionScope scope(512);
  const QuadratureRule& c = gauss_legendre(24);
  CHECK(&a != &c);
  CHECK(c.nodes[0].precision() > a.nodes[0].precision());
}

TEST_CASE("composite rule integrates an entire function") {
  const QuadratureRule rule = composite_gauss_legendre(Real(-1), Real(2), 3);
  Real sum(0);
  for (std::size_t j = 0; j < rule.size(); ++j) sum += rule.weights[j] * exp(rule.nodes[j]);
  CHECK_REL(sum, exp(Real(2)) - exp(Real(-1)), Real("1e-70"));
}

TEST_CASE("Chebyshev rules") {
  // int T-weighted: int x^2 / sqrt(1-x^2) = pi/2
  const auto nodes = chebyshev_nodes(10);
  Real s(0);
  for (const auto& x : nodes) s += x * x;
  CHECK_REL(s * pi() / 10, pi() / 2, Real("1e-70"));
  // int sqrt(1-x^2) x^2 = pi/8
  const QuadratureRule second = chebyshev_second_kind(10);
  Real t(0);
  for (std::size_t j = 0; j < second.size(); ++j) t += second.weights[j] * square(second.nodes[j]);
  CHECK_REL(t, pi() / 8, Real("1e-70"));
}
