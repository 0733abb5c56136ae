#include "onecut/equilibrium.hpp"

#include "onecut/errors.hpp"
#include "onecut/quadrature.hpp"

#include <algorithm>

namespace onecut {

// ---------------------------------------------------------------------------
// Endpoint conditions

namespace {

struct ConditionSystem {
  Real f1, f2;                  // residuals
  Real j11, j12, j21, j22;      // d(f1,f2)/d(a,b)
};

ConditionSystem evaluate_conditions(const Potential& p, const Real& a, const Real& b,
                                    const std::vector<Real>& nodes, bool with_jacobian) {
  ConditionSystem sys{Real(0), Real(0), Real(0), Real(0), Real(0), Real(0)};
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  for (const Real& t : nodes) {
    const Real s = mid + half * t;
    const Real vp = p.derivative(s);
    sys.f1 += vp;
    sys.f2 += s * vp;
    if (with_jacobian) {
      const Real vpp = p.second_derivative(s);
      const Real da = (1 - t) / 2;
      const Real db = (1 + t) / 2;
      const Real g = vp + s * vpp;
      sys.j11 += vpp * da;
      sys.j12 += vpp * db;
      sys.j21 += g * da;
      sys.j22 += g * db;
    }
  }
  // (1/2pi) * (pi/M) * sum = sum / (2M)
  const Real scale = Real(1) / static_cast<unsigned>(2 * nodes.size());
  sys.f1 *= scale;
  sys.f2 = sys.f2 * scale - 1;
  sys.j11 *= scale;
  sys.j12 *= scale;
  sys.j21 *= scale;
  sys.j22 *= scale;
  return sys;
}

Real residual_norm(const ConditionSystem& s) { return max(abs(s.f1), abs(s.f2)); }

bool admissible_support(const Potential& p, const Real& a, const Real& b) {
  if (!(a < b)) return false;
  if (!p.is_polynomial()) return a > -1 && b < 1;
  return true;
}

std::pair<Real, Real> initial_guess(const Potential& p) {
  if (p.is_polynomial()) {
    const Series& c = p.coefficients();
    const Real r = pow(Real(2) / c.back(), Real(1) / static_cast<unsigned>(p.degree()));
    return {-r, r};
  }
  const Real& A = p.right_exponent();
  const Real& B = p.left_exponent();
  const Real s = 2 + A + B;
  const Real root = 4 * sqrt((1 + A + B) * (1 + A) * (1 + B));
  return {(B * B - A * A - root) / (s * s), (B * B - A * A + root) / (s * s)};
}

}  // namespace

std::pair<Real, Real> endpoint_residuals(const Potential& p, const Real& a, const Real& b,
                                         std::size_t nodes) {
  const auto sys = evaluate_conditions(p, a, b, chebyshev_nodes(nodes), false);
  return {sys.f1, sys.f2};
}

Endpoints solve_endpoints(const Potential& p, const EndpointOptions& opts) {
  auto [a, b] = initial_guess(p);
  std::size_t m = opts.initial_nodes;
  std::vector<Real> nodes = chebyshev_nodes(m);
  const Real stop = max(Real(opts.tolerance) * Real("1e-10"), unit_roundoff() * 1000);
  int iterations = 0;

  while (true) {
    ConditionSystem sys = evaluate_conditions(p, a, b, nodes, true);
    Real norm = residual_norm(sys);
    while (norm > stop) {
      if (++iterations > opts.max_iterations) {
        throw ConvergenceError("endpoint Newton iteration did not converge within " +
                               std::to_string(opts.max_iterations) +
                               " iterations (residual " + to_string(norm, 6) + ")");
      }
      const Real det = sys.j11 * sys.j22 - sys.j12 * sys.j21;
      if (det == 0) throw ConvergenceError("singular Jacobian in endpoint Newton iteration");
      const Real da = -(sys.j22 * sys.f1 - sys.j12 * sys.f2) / det;
      const Real db = -(-sys.j21 * sys.f1 + sys.j11 * sys.f2) / det;
      Real lambda(1);
      bool accepted = false;
      for (int halving = 0; halving < 80; ++halving, lambda /= 2) {
        const Real ta = a + lambda * da;
        const Real tb = b + lambda * db;
        if (!admissible_support(p, ta, tb)) continue;
        ConditionSystem trial = evaluate_conditions(p, ta, tb, nodes, true);
        const Real trial_norm = residual_norm(trial);
        if (trial_norm < norm) {
          a = ta;
          b = tb;
          sys = std::move(trial);
          norm = trial_norm;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // The residual is at the rounding floor of this discretization.
        if (norm <= opts.tolerance) break;
        throw ConvergenceError("damped Newton step failed to decrease the endpoint residual (" +
                               to_string(norm, 6) + ")");
      }
    }

    // Self-validation against a doubled node count.
    const std::size_t m2 = 2 * m;
    const std::vector<Real> nodes2 = chebyshev_nodes(m2);
    const ConditionSystem check = evaluate_conditions(p, a, b, nodes2, false);
    const Real drift = max(abs(check.f1 - sys.f1), abs(check.f2 - sys.f2));
    if (drift <= opts.tolerance) {
      Endpoints e;
      e.residual = max(norm, residual_norm(check));
      if (e.residual > opts.tolerance) {
        throw ConvergenceError("endpoint residual " + to_string(e.residual, 6) +
                               " exceeds tolerance");
      }
      e.a = a;
      e.b = b;
      e.iterations = iterations;
      e.node_count = m;
      return e;
    }
    if (m2 > opts.max_nodes) {
      throw ConvergenceError("endpoint quadrature did not stabilise below " +
                             std::to_string(opts.max_nodes) + " nodes");
    }
    m = m2;
    nodes = nodes2;
  }
}

// ---------------------------------------------------------------------------
// Density factor h

DensityFactor DensityFactor::polynomial(Series coeffs) {
  trim(coeffs);
  DensityFactor h;
  h.kind_ = Kind::Polynomial;
  h.coeffs_ = std::move(coeffs);
  return h;
}

DensityFactor DensityFactor::jacobi(const Real& right_exponent, const Real& left_exponent) {
  DensityFactor h;
  h.kind_ = Kind::Jacobi;
  h.coeffs_ = {(2 + right_exponent + left_exponent) / (2 * pi())};
  return h;
}

Real DensityFactor::operator()(const Real& x) const {
  if (kind_ == Kind::Polynomial) return horner(coeffs_, x);
  return coeffs_[0] / (1 - x * x);
}

Series DensityFactor::taylor(const Real& x0, std::size_t terms) const {
  Series out(terms, Real(0));
  if (kind_ == Kind::Polynomial) {
    const Series shifted = taylor_shift(coeffs_, x0);
    for (std::size_t k = 0; k < terms && k < shifted.size(); ++k) out[k] = shifted[k];
    return out;
  }
  // C/(1-x^2) = (C/2) (1/(1-x) + 1/(1+x))
  const Real half = coeffs_[0] / 2;
  const Real right = 1 / (1 - x0);
  const Real left = -1 / (1 + x0);
  Real rp = half * right;
  Real lp = -half * left;
  for (std::size_t k = 0; k < terms; ++k) {
    out[k] = rp + lp;
    rp *= right;
    lp *= left;
  }
  return out;
}

std::optional<Real> DensityFactor::singularity_distance(const Real& x0) const {
  if (kind_ == Kind::Polynomial) return std::nullopt;
  return min(abs(1 - x0), abs(1 + x0));
}

DensityFactor compute_h(const Potential& p, const Real& a, const Real& b) {
  if (!p.is_polynomial()) return DensityFactor::jacobi(p.right_exponent(), p.left_exponent());

  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  const Series vprime = affine_compose(derivative(p.coefficients()), mid, half);
  const std::size_t degree = vprime.size() - 1;

  // Chebyshev coefficients of V'(mid + half t), exact for m > degree.
  const std::size_t m = degree + 2;
  const std::vector<Real> t = chebyshev_nodes(m);
  std::vector<Real> cheb(degree + 1, Real(0));
  for (const Real& tj : t) {
    const Real f = horner(vprime, tj);
    Real tkm1(1), tk = tj;
    cheb[0] += f;
    for (std::size_t k = 1; k <= degree; ++k) {
      cheb[k] += f * tk;
      Real next = 2 * tj * tk - tkm1;
      tkm1 = std::move(tk);
      tk = std::move(next);
    }
  }
  for (std::size_t k = 1; k <= degree; ++k) cheb[k] = cheb[k] * 2 / static_cast<unsigned>(m);

  // h(t) = (1 / (2 pi half)) sum_{k>=1} c_k U_{k-1}(t)
  Series h_t(std::max<std::size_t>(degree, 1), Real(0));
  Series u_prev{Real(0)};
  Series u_curr{Real(1)};
  for (std::size_t k = 1; k <= degree; ++k) {
    for (std::size_t j = 0; j < u_curr.size(); ++j) h_t[j] += cheb[k] * u_curr[j];
    Series u_next(u_curr.size() + 1, Real(0));
    for (std::size_t j = 0; j < u_curr.size(); ++j) u_next[j + 1] += 2 * u_curr[j];
    for (std::size_t j = 0; j < u_prev.size(); ++j) u_next[j] -= u_prev[j];
    u_prev = std::move(u_curr);
    u_curr = std::move(u_next);
  }
  const Real scale = 1 / (2 * pi() * half);
  for (auto& c : h_t) c *= scale;
  return DensityFactor::polynomial(affine_compose(h_t, -mid / half, 1 / half));
}

// ---------------------------------------------------------------------------
// Measure

EquilibriumMeasure::EquilibriumMeasure(Real a, Real b, DensityFactor h)
    : a_(std::move(a)), b_(std::move(b)), h_(std::move(h)) {
  if (!(a_ < b_)) throw ArgumentError("equilibrium support requires a < b");
}

void EquilibriumMeasure::require_regular() const {
  if (!report_.has_value()) {
    throw NotOneCutError("equilibrium measure has not been checked for one-cut regularity");
  }
  if (!report_->regular) {
    std::string why;
    for (const auto& n : report_->notes) why += (why.empty() ? "" : "; ") + n;
    throw NotOneCutError("potential is not one-cut regular: " + why);
  }
}

EquilibriumMeasure compute_equilibrium(const Potential& p, const EndpointOptions& opts,
                                       const RegularityGrid& grid) {
  Endpoints e = solve_endpoints(p, opts);
  EquilibriumMeasure m(e.a, e.b, compute_h(p, e.a, e.b));
  m.set_endpoint_solution(e);
  m.set_regularity(verify_one_cut_regular(m, p, grid));
  if (m.regular()) m.set_lagrange(lagrange_constant(m, p));
  return m;
}

Real equilibrium_density(const EquilibriumMeasure& m, const Real& x) {
  if (x <= m.a() || x >= m.b()) return Real(0);
  return sqrt((m.b() - x) * (x - m.a())) * m.h()(x);
}

Real normalization_residual(const EquilibriumMeasure& m) {
  const QuadratureRule rule = chebyshev_second_kind(256);
  const Real mid = m.midpoint();
  const Real half = m.half_width();
  Real total(0);
  for (std::size_t j = 0; j < rule.size(); ++j) total += rule.weights[j] * m.h()(mid + half * rule.nodes[j]);
  return abs(total * half * half - 1);
}

// ---------------------------------------------------------------------------
// Lagrange constant

namespace {

// int log|x0 - y| d mu(y) with y = mid + half cos(theta), using
// log|cos t0 - cos t| = -log 2 - 2 sum_k cos(k t0) cos(k t) / k
// and the cosine coefficients q_k of q(theta) = sin^2(theta) h(y(theta)).
Real log_potential(const EquilibriumMeasure& m, const Real& theta0, std::size_t samples) {
  const Real p = pi();
  const Real mid = m.midpoint();
  const Real half = m.half_width();
  std::vector<Real> cos_theta(samples), q(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const Real theta = p * (2 * static_cast<unsigned>(j) + 1) / (2 * static_cast<unsigned>(samples));
    cos_theta[j] = cos(theta);
    const Real s = sin(theta);
    q[j] = s * s * m.h()(mid + half * cos_theta[j]);
  }
  // sum over k of q_k cos(k theta0) / k, with q_k = (2/M) sum_j q_j cos(k theta_j)
  std::vector<Real> ck_prev(samples, Real(1));
  std::vector<Real> ck(cos_theta);
  Real q0(0);
  for (const Real& v : q) q0 += v;
  q0 /= static_cast<unsigned>(samples);

  const Real c0 = cos(theta0);
  Real cos_k0_prev(1), cos_k0 = c0;
  Real series(0);
  for (std::size_t k = 1; k < samples; ++k) {
    Real qk(0);
    for (std::size_t j = 0; j < samples; ++j) qk += q[j] * ck[j];
    qk = qk * 2 / static_cast<unsigned>(samples);
    series += qk * cos_k0 / static_cast<unsigned>(k);
    for (std::size_t j = 0; j < samples; ++j) {
      Real next = 2 * cos_theta[j] * ck[j] - ck_prev[j];
      ck_prev[j] = std::move(ck[j]);
      ck[j] = std::move(next);
    }
    Real next0 = 2 * c0 * cos_k0 - cos_k0_prev;
    cos_k0_prev = std::move(cos_k0);
    cos_k0 = std::move(next0);
  }
  return p * half * half * (log(half / 2) * q0 - series);
}

}  // namespace

Real lagrange_constant(const EquilibriumMeasure& m, const Potential& p, const std::optional<Real>& x0) {
  const Real x = x0.value_or(m.midpoint());
  if (x < m.a() || x > m.b()) throw DomainError("Lagrange constant evaluation point outside [a, b]");
  Real ratio = (x - m.midpoint()) / m.half_width();
  ratio = min(max(ratio, Real(-1)), Real(1));
  const Real theta0 = acos(ratio);

  const Real tolerance("1e-30");
  std::size_t samples =
      m.h().kind() == DensityFactor::Kind::Polynomial ? m.h().coefficients().size() + 8 : 128;
  Real previous = log_potential(m, theta0, samples);
  while (true) {
    samples *= 2;
    Real current = log_potential(m, theta0, samples);
    if (abs(current - previous) <= tolerance) return -2 * current + p.value(x);
    if (samples >= 4096) {
      throw QuadratureError("logarithmic potential did not stabilise (difference " +
                            to_string(abs(current - previous), 6) + ")");
    }
    previous = std::move(current);
  }
}

// ---------------------------------------------------------------------------
// phi and tilde phi on the real line

namespace {

// 2 pi u^{3/2} int_0^1 v^2 sqrt(L + u v^2) h(base + sign u v^2) dv
Real endpoint_integral(const DensityFactor& h, const Real& base, int sign, const Real& length,
                       const Real& u) {
  static constexpr std::size_t kPanels = 4;
  const QuadratureRule rule = composite_gauss_legendre(Real(0), Real(1), kPanels);
  Real total(0);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const Real v2 = rule.nodes[j] * rule.nodes[j];
    const Real s = sign > 0 ? base + u * v2 : base - u * v2;
    total += rule.weights[j] * v2 * sqrt(length + u * v2) * h(s);
  }
  return 2 * pi() * u * sqrt(u) * total;
}

}  // namespace

Real phi_real(const EquilibriumMeasure& m, const Potential& p, const Real& x) {
  if (x < m.b()) throw DomainError("phi_real requires x >= b");
  if (!p.in_domain(x)) throw DomainError("phi_real evaluated outside the field's domain");
  if (x == m.b()) return Real(0);
  return endpoint_integral(m.h(), m.b(), +1, m.b() - m.a(), x - m.b());
}

Real tilde_phi_real(const EquilibriumMeasure& m, const Potential& p, const Real& x) {
  if (x > m.a()) throw DomainError("tilde_phi_real requires x <= a");
  if (!p.in_domain(x)) throw DomainError("tilde_phi_real evaluated outside the field's domain");
  if (x == m.a()) return Real(0);
  return endpoint_integral(m.h(), m.a(), -1, m.b() - m.a(), m.a() - x);
}

// ---------------------------------------------------------------------------
// Regularity

RegularityReport verify_one_cut_regular(const EquilibriumMeasure& m, const Potential& p,
                                        const RegularityGrid& grid) {
  RegularityReport r;
  const Real& a = m.a();
  const Real& b = m.b();
  const Real width = b - a;

  if (!p.is_polynomial()) {
    r.inside_domain = a > -1 && b < 1;
    if (!r.inside_domain) r.notes.emplace_back("support leaves (-1, 1)");
  }

  // (i) h on a dense grid
  const std::size_t n = std::max<std::size_t>(grid.h_samples, 3);
  Real max_h(0);
  int last_sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real x = a + width * static_cast<unsigned>(i) / static_cast<unsigned>(n - 1);
    const Real v = m.h()(x);
    if (i == 0 || v < r.min_h) {
      r.min_h = v;
      r.argmin_h = x;
    }
    max_h = max(max_h, abs(v));
    const int sign = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) ++r.h_sign_changes;
      last_sign = sign;
    }
  }
  r.h_positive = r.min_h > grid.h_relative_floor * max_h && r.h_sign_changes == 0;
  if (!r.h_positive) r.notes.emplace_back("h is not strictly positive on [a, b]");

  // (ii) strict Euler-Lagrange inequality outside the support
  const Real span = grid.exterior_width > 0 ? Real(grid.exterior_width) : Real(10 * width);
  Real right_reach = span;
  Real left_reach = span;
  if (!p.is_polynomial()) {
    right_reach = min(span, (1 - b) * Real("0.999"));
    left_reach = min(span, (a + 1) * Real("0.999"));
  }
  const std::size_t k = std::max<std::size_t>(grid.phi_samples, 2);
  r.phi_right_positive = true;
  r.phi_left_positive = true;
  for (std::size_t j = 1; j <= k; ++j) {
    const Real frac = square(Real(static_cast<unsigned>(j)) / static_cast<unsigned>(k));
    const Real right = phi_real(m, p, b + right_reach * frac);
    const Real left = tilde_phi_real(m, p, a - left_reach * frac);
    if (j == 1 || right < r.min_phi_right) r.min_phi_right = right;
    if (j == 1 || left < r.min_phi_left) r.min_phi_left = left;
    if (!(right > 0)) r.phi_right_positive = false;
    if (!(left > 0)) r.phi_left_positive = false;
  }
  if (!r.phi_right_positive) r.notes.emplace_back("phi is not positive to the right of b");
  if (!r.phi_left_positive) r.notes.emplace_back("tilde phi is not positive to the left of a");

  // (iii) probability normalization
  r.normalization_residual = normalization_residual(m);
  r.normalized = r.normalization_residual <= grid.normalization_tolerance;
  if (!r.normalized) r.notes.emplace_back("density does not integrate to one");

  r.regular = r.inside_domain && r.h_positive && r.phi_right_positive && r.phi_left_positive &&
              r.normalized;
  return r;
}

// ---------------------------------------------------------------------------
// Endpoint Laurent data

Series endpoint_integrand_series(const EquilibriumMeasure& m, bool right, std::size_t terms) {
  const Real length = m.b() - m.a();
  const Series g = sqrt_shift_series(length, terms);
  Series h = m.h().taylor(right ? m.b() : m.a(), terms);
  if (!right) {
    for (std::size_t k = 1; k < terms; k += 2) h[k] = -h[k];
  }
  return series_mul(g, h, terms);
}

namespace {

// Coefficients of sqrt(L + t) / (pi sum f_k t^k / (k + 3/2)).
Series endpoint_quotient(const EquilibriumMeasure& m, bool right, std::size_t terms) {
  const Series f = endpoint_integrand_series(m, right, terms);
  Series den(terms);
  const Real p = pi();
  for (std::size_t k = 0; k < terms; ++k) den[k] = p * f[k] * 2 / (2 * static_cast<int>(k) + 3);
  return series_div(sqrt_shift_series(m.b() - m.a(), terms), den, terms);
}

}  // namespace

EndpointLaurentData endpoint_laurent(const EquilibriumMeasure& m, const Potential& p, std::size_t terms) {
  (void)p;
  m.require_regular();
  if (terms < 2) throw ArgumentError("endpoint_laurent needs at least two terms");
  EndpointLaurentData d;
  d.right_series = endpoint_quotient(m, true, terms);
  d.left_series = endpoint_quotient(m, false, terms);
  // the left expansion is in powers of (a - z); convert to powers of (z - a)
  for (std::size_t k = 1; k < terms; k += 2) d.left_series[k] = -d.left_series[k];
  d.A0 = d.left_series[0];
  d.A1 = d.left_series[1];
  d.B0 = d.right_series[0];
  d.B1 = d.right_series[1];

  const Real closed_b = 3 / (2 * pi() * m.h()(m.b()));
  const Real closed_a = 3 / (2 * pi() * m.h()(m.a()));
  const Real tol("1e-20");
  if (abs(d.B0 - closed_b) > tol * abs(closed_b) || abs(d.A0 - closed_a) > tol * abs(closed_a)) {
    throw SeriesError("series-derived A0/B0 disagree with 3/(2 pi h)");
  }
  return d;
}

}  // namespace onecut
