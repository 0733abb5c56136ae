#include "onecut/quadrature.hpp"

#include "onecut/errors.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace onecut {

namespace {

// Returns (P_m(x), P_{m-1}(x)).
std::pair<Real, Real> legendre_pair(std::size_t m, const Real& x) {
  Real p0(1), p1 = x;
  if (m == 0) return {p0, Real(0)};
  for (std::size_t k = 2; k <= m; ++k) {
    const int ki = static_cast<int>(k);
    Real p2 = ((2 * ki - 1) * x * p1 - (ki - 1) * p0) / ki;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return {p1, p0};
}

QuadratureRule build_gauss_legendre(std::size_t m) {
  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const Real tol = unit_roundoff() * 16;
  const Real p = pi();
  const int mi = static_cast<int>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_m.
    Real x = cos(p * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      auto [pm, pm1] = legendre_pair(m, x);
      Real dx = pm / (mi * (x * pm - pm1) / (x * x - 1));
      x -= dx;
      if (abs(dx) <= tol) break;
    }
    auto [pm, pm1] = legendre_pair(m, x);
    const Real dp = mi * (x * pm - pm1) / (x * x - 1);
    const Real w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = x;
    rule.nodes[m - 1 - i] = -x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = Real(0);
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(std::size_t m) {
  if (m == 0) throw ArgumentError("Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, unsigned>, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(m, precision_bits());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_gauss_legendre(m)).first;
  return it->second;
}

QuadratureRule composite_gauss_legendre(const Real& lo, const Real& hi, std::size_t panels,
                                        std::size_t per_panel) {
  if (panels == 0) throw ArgumentError("composite rule needs at least one panel");
  const QuadratureRule& base = gauss_legendre(per_panel);
  QuadratureRule rule;
  rule.nodes.reserve(panels * per_panel);
  rule.weights.reserve(panels * per_panel);
  const Real width = (hi - lo) / static_cast<unsigned>(panels);
  const Real half = width / 2;
  for (std::size_t p = 0; p < panels; ++p) {
    const Real centre = lo + width * static_cast<unsigned>(p) + half;
    for (std::size_t j = 0; j < per_panel; ++j) {
      rule.nodes.push_back(centre + half * base.nodes[j]);
      rule.weights.push_back(half * base.weights[j]);
    }
  }
  return rule;
}

std::vector<Real> chebyshev_nodes(std::size_t m) {
  std::vector<Real> t(m);
  const Real p = pi();
  for (std::size_t j = 1; j <= m; ++j) {
    t[j - 1] = cos(p * static_cast<unsigned>(2 * j - 1) / static_cast<unsigned>(2 * m));
  }
  return t;
}

QuadratureRule chebyshev_second_kind(std::size_t m) {
  QuadratureRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const Real p = pi();
  for (std::size_t j = 1; j <= m; ++j) {
    const Real theta = p * static_cast<unsigned>(j) / static_cast<unsigned>(m + 1);
    const Real s = sin(theta);
    rule.nodes[j - 1] = cos(theta);
    rule.weights[j - 1] = p / static_cast<unsigned>(m + 1) * s * s;
  }
  return rule;
}

}  // namespace onecut
