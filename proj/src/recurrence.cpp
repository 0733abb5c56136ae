#include "onecut/recurrence.hpp"

#include "onecut/errors.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace onecut {

namespace {

Real ln10() { return log(Real(10)); }

bool agrees(const Real& x, const Real& y, const Real& tol) {
  return abs(x - y) <= tol * max(Real(1), abs(y));
}

// Upper bound for log(|x pi_n(x)|^2 e^{-nV(x)}): |pi_n(x)| <= (|x - mid| + d)^n.
// On the support the true size is e^{-n l} with l the Lagrange constant.
Real tail_envelope(const Potential& p, const Real& mid, const Real& d, int n, const Real& x) {
  const Real r = abs(x - mid) + d;
  return -n * p.value(x) + 2 * n * log(r) + log1p(r);
}

Real outer_crossing(const Potential& p, const Real& mid, const Real& d, int n, const Real& start,
                    int direction, const Real& threshold) {
  Real step = d / 4;
  Real inner = start;
  Real outer = start + direction * step;
  while (tail_envelope(p, mid, d, n, outer) >= threshold) {
    inner = outer;
    step *= 2;
    outer = start + direction * step;
    if (step > 1e6 * d) throw QuadratureError("weight tail does not decay");
  }
  for (int it = 0; it < 48; ++it) {
    const Real probe = (inner + outer) / 2;
    if (tail_envelope(p, mid, d, n, probe) >= threshold) {
      inner = probe;
    } else {
      outer = probe;
    }
  }
  return outer;
}

}  // namespace

std::pair<Real, Real> truncation_window(const Potential& p, const EquilibriumMeasure& m, int n,
                                        int digits_target) {
  const Real lagrange = m.lagrange() ? *m.lagrange() : lagrange_constant(m, p);
  const Real threshold = -n * lagrange - (digits_target + 10) * ln10();
  return {outer_crossing(p, m.midpoint(), m.half_width(), n, m.a(), -1, threshold),
          outer_crossing(p, m.midpoint(), m.half_width(), n, m.b(), +1, threshold)};
}

QuadratureRule discretize_weight(const Potential& p, const EquilibriumMeasure& m, int n,
                                 std::size_t panels, int digits_target) {
  if (p.kind() == PotentialKind::Jacobi) {
    // x = cos(theta): 1 - x = 2 sin^2(theta/2), 1 + x = 2 cos^2(theta/2)
    QuadratureRule rule = composite_gauss_legendre(Real(0), pi(), panels);
    const Real A = p.right_exponent() * n;
    const Real B = p.left_exponent() * n;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const Real theta = rule.nodes[j];
      const Real s = sin(theta / 2);
      const Real c = cos(theta / 2);
      rule.nodes[j] = cos(theta);
      rule.weights[j] *= sin(theta) * pow(2 * s * s, A) * pow(2 * c * c, B);
    }
    return rule;
  }
  const auto [lo, hi] = truncation_window(p, m, n, digits_target);
  QuadratureRule rule = composite_gauss_legendre(lo, hi, panels);
  for (std::size_t j = 0; j < rule.size(); ++j) rule.weights[j] *= exp(-n * p.value(rule.nodes[j]));
  return rule;
}

std::pair<Real, Real> stieltjes_coefficients(const QuadratureRule& measure, int n) {
  if (n < 0) throw ArgumentError("recurrence index must be non-negative");
  // Raw MPFR kernel: the inner loop dominates the whole pipeline and must
  // not allocate.
  const std::size_t count = measure.size();
  std::vector<Real> prev(count, Real(0));
  std::vector<Real> cur(count, Real(1));
  Real norm, xnorm, norm_prev(1), a(0), b(0), t, u;
  for (int k = 0;; ++k) {
    norm = 0;
    xnorm = 0;
    for (std::size_t j = 0; j < count; ++j) {
      mpfr_mul(t.backend().data(), measure.weights[j].backend().data(), cur[j].backend().data(), MPFR_RNDN);
      mpfr_mul(t.backend().data(), t.backend().data(), cur[j].backend().data(), MPFR_RNDN);
      mpfr_add(norm.backend().data(), norm.backend().data(), t.backend().data(), MPFR_RNDN);
      mpfr_fma(xnorm.backend().data(), t.backend().data(), measure.nodes[j].backend().data(),
               xnorm.backend().data(), MPFR_RNDN);
    }
    if (!(norm > 0)) throw PrecisionError("discrete inner product lost positivity at index " + std::to_string(k));
    b = xnorm / norm;
    a = k > 0 ? norm / norm_prev : Real(0);
    if (k == n) return {a, b};
    norm_prev = norm;
    // prev <- (x - b) cur - a prev, then swap roles
    for (std::size_t j = 0; j < count; ++j) {
      mpfr_sub(t.backend().data(), measure.nodes[j].backend().data(), b.backend().data(), MPFR_RNDN);
      mpfr_mul(t.backend().data(), t.backend().data(), cur[j].backend().data(), MPFR_RNDN);
      mpfr_mul(u.backend().data(), a.backend().data(), prev[j].backend().data(), MPFR_RNDN);
      mpfr_sub(prev[j].backend().data(), t.backend().data(), u.backend().data(), MPFR_RNDN);
    }
    prev.swap(cur);
  }
}

RecurrenceEntry recurrence_entry(const Potential& p, const EquilibriumMeasure& m, int n,
                                 const RecurrenceOptions& opts, std::size_t* nodes_used) {
  if (n < 1) throw ArgumentError("n must be >= 1");
  const Real tol = pow(Real(10), -opts.digits_target);
  std::size_t panels = std::max<std::size_t>(opts.initial_panels, 1);
  auto coarse = stieltjes_coefficients(discretize_weight(p, m, n, panels, opts.digits_target), n);
  for (;;) {
    const std::size_t fine_panels = 2 * panels;
    const QuadratureRule rule = discretize_weight(p, m, n, fine_panels, opts.digits_target);
    if (rule.size() > opts.max_nodes) {
      throw PrecisionError("recurrence at n = " + std::to_string(n) + " did not settle within " +
                           std::to_string(opts.max_nodes) + " nodes");
    }
    auto fine = stieltjes_coefficients(rule, n);
    if (agrees(coarse.first, fine.first, tol) && agrees(coarse.second, fine.second, tol)) {
      if (!(fine.first > 0)) throw PrecisionError("non-positive a_n at n = " + std::to_string(n));
      if (nodes_used) *nodes_used = rule.size();
      return {n, std::move(fine.first), std::move(fine.second)};
    }
    coarse = std::move(fine);
    panels = fine_panels;
  }
}

RecurrenceTable compute_recurrence(const Potential& p, int n_max, const RecurrenceOptions& opts) {
  const EquilibriumMeasure m = compute_equilibrium(p);
  return compute_recurrence(p, m, n_max, opts);
}

RecurrenceTable compute_recurrence(const Potential& p, const EquilibriumMeasure& m, int n_max,
                                   const RecurrenceOptions& opts) {
  if (n_max < 1) throw ArgumentError("n_max must be >= 1");
  if (opts.digits_target < 1) throw ArgumentError("digits_target must be >= 1");
  m.require_regular();
  precision_bits();  // pin the working precision before workers start

  RecurrenceTable table;
  table.precision_bits = precision_bits();
  table.potential_spec = p.spec();
  table.entries.resize(static_cast<std::size_t>(n_max));
  std::vector<std::size_t> nodes(static_cast<std::size_t>(n_max), 0);

  unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n_max));

  std::atomic<int> next{1};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int n; (n = next.fetch_add(1)) <= n_max;) {
      try {
        const auto idx = static_cast<std::size_t>(n - 1);
        table.entries[idx] = recurrence_entry(p, m, n, opts, &nodes[idx]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_max + 1;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  table.node_count = *std::max_element(nodes.begin(), nodes.end());
  return table;
}

// ---------------------------------------------------------------------------
// Hankel oracle

namespace {

std::vector<Real> jacobi_moments(const Real& A, const Real& B, std::size_t count) {
  // int x^k (1-x)^A (1+x)^B dx with x = 2t - 1
  std::vector<Real> out(count);
  const Real scale = pow(Real(2), A + B + 1);
  for (std::size_t k = 0; k < count; ++k) {
    Real sum(0);
    for (std::size_t j = 0; j <= k; ++j) {
      const Real binom = boost::math::binomial_coefficient<Real>(static_cast<unsigned>(k),
                                                                 static_cast<unsigned>(j));
      const Real term = binom * pow(Real(2), static_cast<int>(j)) *
                        boost::math::beta(B + j + 1, A + 1);
      sum += (k - j) % 2 ? -term : term;
    }
    out[k] = scale * sum;
  }
  return out;
}

std::vector<Real> polynomial_moments(const Potential& p, int n, std::size_t count,
                                     std::size_t* nodes_used) {
  const Series& c = p.coefficients();
  Real bound(1);
  for (std::size_t k = 0; k + 1 < c.size(); ++k) bound += abs(c[k]) / c.back();
  const Real margin = (precision_digits10() + 10) * ln10();
  auto log_integrand = [&](const Real& x) {
    return static_cast<double>(count) * log1p(abs(x)) - n * p.value(x);
  };

  // widen a uniform scan until both ends are far below the peak
  Real lo, hi;
  for (Real reach = bound;; reach *= 2) {
    constexpr int kScan = 2000;
    std::vector<Real> vals(kScan + 1);
    Real peak = log_integrand(-reach);
    for (int j = 0; j <= kScan; ++j) {
      vals[j] = log_integrand(-reach + 2 * reach * j / kScan);
      peak = max(peak, vals[j]);
    }
    if (vals.front() < peak - margin && vals.back() < peak - margin) {
      int first = 0, last = kScan;
      while (vals[first] < peak - margin) ++first;
      while (vals[last] < peak - margin) --last;
      lo = -reach + 2 * reach * std::max(first - 1, 0) / kScan;
      hi = -reach + 2 * reach * std::min(last + 1, kScan) / kScan;
      break;
    }
    if (reach > 1e6) throw QuadratureError("moment integrand does not decay");
  }

  // trapezoidal rule, spectrally accurate for this smooth decaying integrand
  const Real tol = pow(Real(10), -static_cast<int>(precision_digits10()) + 8);
  std::vector<Real> previous;
  for (std::size_t intervals = 512; intervals <= (1u << 18); intervals *= 2) {
    const Real h = (hi - lo) / intervals;
    std::vector<Real> moments(count, Real(0));
    std::vector<Real> scale(count, Real(0));
    for (std::size_t j = 0; j <= intervals; ++j) {
      const Real x = lo + h * j;
      Real term = h * exp(-n * p.value(x));
      if (j == 0 || j == intervals) term /= 2;
      Real ax = abs(term);
      for (std::size_t k = 0; k < count; ++k) {
        moments[k] += term;
        scale[k] += ax;
        term *= x;
        ax *= abs(x);
      }
    }
    if (!previous.empty()) {
      bool settled = true;
      for (std::size_t k = 0; k < count && settled; ++k) {
        settled = abs(moments[k] - previous[k]) <= tol * scale[k];
      }
      if (settled) {
        if (nodes_used) *nodes_used = intervals + 1;
        return moments;
      }
    }
    previous = std::move(moments);
  }
  throw QuadratureError("moment quadrature did not settle");
}

struct Factorization {
  Real det;
  Real condition;  // infinity-norm condition estimate
};

Factorization factor(std::vector<std::vector<Real>> h) {
  const std::size_t size = h.size();
  Real norm(0);
  for (const auto& row : h) {
    Real s(0);
    for (const auto& v : row) s += abs(v);
    norm = max(norm, s);
  }
  std::vector<std::vector<Real>> inv(size, std::vector<Real>(size, Real(0)));
  for (std::size_t i = 0; i < size; ++i) inv[i][i] = 1;
  Real det(1);
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < size; ++r) {
      if (abs(h[r][col]) > abs(h[piv][col])) piv = r;
    }
    if (h[piv][col] == 0) return {Real(0), Real(0)};
    if (piv != col) {
      std::swap(h[piv], h[col]);
      std::swap(inv[piv], inv[col]);
      det = -det;
    }
    det *= h[col][col];
    for (std::size_t r = 0; r < size; ++r) {
      if (r == col) continue;
      const Real f = h[r][col] / h[col][col];
      if (f == 0) continue;
      for (std::size_t c = 0; c < size; ++c) {
        h[r][c] -= f * h[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  Real inv_norm(0);
  for (std::size_t r = 0; r < size; ++r) {
    Real s(0);
    for (std::size_t c = 0; c < size; ++c) s += abs(inv[r][c] / h[r][r]);
    inv_norm = max(inv_norm, s);
  }
  return {det, norm * inv_norm};
}

}  // namespace

std::vector<Real> weight_moments(const Potential& p, int n, std::size_t count, std::size_t* nodes_used) {
  if (n < 1) throw ArgumentError("n must be >= 1");
  if (p.kind() == PotentialKind::Jacobi) {
    if (nodes_used) *nodes_used = 0;
    return jacobi_moments(p.right_exponent() * n, p.left_exponent() * n, count);
  }
  return polynomial_moments(p, n, count, nodes_used);
}

RecurrenceTable hankel_oracle(const Potential& p, int n_small, const RecurrenceOptions& opts) {
  if (n_small < 1 || n_small > 10) throw ArgumentError("hankel_oracle supports 1 <= n <= 10");
  RecurrenceTable table;
  table.precision_bits = precision_bits();
  table.potential_spec = p.spec();
  const Real budget = pow(Real(10), static_cast<int>(precision_digits10()) - opts.digits_target);

  for (int n = 1; n <= n_small; ++n) {
    std::size_t nodes = 0;
    const std::vector<Real> mom = weight_moments(p, n, static_cast<std::size_t>(2 * n + 2), &nodes);
    table.node_count = std::max(table.node_count, nodes);

    // D_k and the determinant with its last column shifted by one, k = n-1..n+1
    auto hankel = [&](int k, bool shifted) {
      std::vector<std::vector<Real>> h(static_cast<std::size_t>(k), std::vector<Real>(static_cast<std::size_t>(k)));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          const int idx = (shifted && j == k - 1) ? i + k : i + j;
          h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mom[static_cast<std::size_t>(idx)];
        }
      }
      if (k == 0) return Factorization{shifted ? Real(0) : Real(1), Real(1)};
      return factor(std::move(h));
    };
    const Factorization d_prev = hankel(n - 1, false);
    const Factorization d_cur = hankel(n, false);
    const Factorization d_next = hankel(n + 1, false);
    if (d_next.condition > budget || d_cur.condition > budget) {
      throw PrecisionError("Hankel matrix at n = " + std::to_string(n) + " exceeds the precision budget");
    }
    const Real s_cur = hankel(n, true).det / d_cur.det;
    const Real s_next = hankel(n + 1, true).det / d_next.det;
    table.entries.push_back({n, d_next.det * d_prev.det / square(d_cur.det), s_next - s_cur});
  }
  return table;
}

std::pair<Real, Real> jacobi_recurrence_closed(const Real& A, const Real& B, int n) {
  if (!(A > 0) || !(B > 0)) throw ArgumentError("Jacobi field requires A > 0 and B > 0");
  if (n < 1) throw ArgumentError("n must be >= 1");
  const Real s = 2 + A + B;
  const Real inv_n = Real(1) / n;
  const Real a = 4 * (1 + A + B) * (1 + A) * (1 + B) / ((s * s - inv_n * inv_n) * s * s);
  const Real b = (B * B - A * A) / (s * (s + 2 * inv_n));
  return {a, b};
}

}  // namespace onecut
