#include "onecut/asymptotics.hpp"

#include "onecut/errors.hpp"
#include "onecut/rh_expansion.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace onecut {

namespace {

using Column = std::vector<Real>;

// Householder QR of an m x k matrix stored by columns; R overwrites the
// upper triangle, reflectors are kept separately.
struct QR {
  std::vector<Column> cols;
  std::vector<Column> reflectors;
  std::size_t rows = 0;

  explicit QR(std::vector<Column> a) : cols(std::move(a)), rows(cols.front().size()) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Column v(rows, Real(0));
      Real norm(0);
      for (std::size_t i = j; i < rows; ++i) norm += square(cols[j][i]);
      norm = sqrt(norm);
      if (norm == 0) throw IllConditionedError("design matrix has a zero column");
      const Real alpha = cols[j][j] > 0 ? -norm : norm;
      for (std::size_t i = j; i < rows; ++i) v[i] = cols[j][i];
      v[j] -= alpha;
      Real vnorm(0);
      for (std::size_t i = j; i < rows; ++i) vnorm += square(v[i]);
      vnorm = sqrt(vnorm);
      for (std::size_t i = j; i < rows; ++i) v[i] /= vnorm;
      reflectors.push_back(v);
      for (std::size_t c = j; c < cols.size(); ++c) reflect(j, cols[c]);
    }
  }

  void reflect(std::size_t j, Column& x) const {
    const Column& v = reflectors[j];
    Real dot(0);
    for (std::size_t i = j; i < rows; ++i) dot += v[i] * x[i];
    for (std::size_t i = j; i < rows; ++i) x[i] -= 2 * dot * v[i];
  }

  // Q^T x
  Column apply_qt(Column x) const {
    for (std::size_t j = 0; j < reflectors.size(); ++j) reflect(j, x);
    return x;
  }

  Column solve(const Column& rhs) const {
    const Column qty = apply_qt(rhs);
    const std::size_t k = cols.size();
    Column c(k);
    for (std::size_t jj = k; jj-- > 0;) {
      Real s = qty[jj];
      for (std::size_t l = jj + 1; l < k; ++l) s -= cols[l][jj] * c[l];
      c[jj] = s / cols[jj][jj];
    }
    return c;
  }
};

Real condition_number(std::vector<Column> a) {
  // one-sided Jacobi: orthogonalize columns, singular values are their norms
  const std::size_t k = a.size();
  const Real eps = unit_roundoff();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        Real alpha(0), beta(0), gamma(0);
        for (std::size_t i = 0; i < a[p].size(); ++i) {
          alpha += square(a[p][i]);
          beta += square(a[q][i]);
          gamma += a[p][i] * a[q][i];
        }
        if (abs(gamma) <= eps * sqrt(alpha * beta)) continue;
        rotated = true;
        const Real zeta = (beta - alpha) / (2 * gamma);
        const Real t = (zeta >= 0 ? Real(1) : Real(-1)) / (abs(zeta) + sqrt(1 + zeta * zeta));
        const Real c = 1 / sqrt(1 + t * t);
        const Real s = c * t;
        for (std::size_t i = 0; i < a[p].size(); ++i) {
          const Real x = a[p][i];
          const Real y = a[q][i];
          a[p][i] = c * x - s * y;
          a[q][i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  Real smax(0), smin(-1);
  for (const auto& col : a) {
    Real norm(0);
    for (const auto& v : col) norm += square(v);
    norm = sqrt(norm);
    smax = max(smax, norm);
    smin = smin < 0 ? norm : min(smin, norm);
  }
  if (smin <= 0) throw IllConditionedError("design matrix is rank deficient");
  return smax / smin;
}

std::vector<int> spaced_indices(std::size_t available, std::size_t wanted) {
  std::vector<int> out;
  if (wanted == 1) return {static_cast<int>(available - 1)};
  for (std::size_t j = 0; j < wanted; ++j) {
    out.push_back(static_cast<int>((j * (available - 1) + (wanted - 1) / 2) / (wanted - 1)));
  }
  return out;
}

}  // namespace

const Real& ExpansionFit::coefficient(int power) const {
  for (std::size_t j = 0; j < powers.size(); ++j) {
    if (powers[j] == power) return coefficients[j];
  }
  throw ArgumentError("power " + std::to_string(power) + " was not fitted");
}

const Real& ExpansionFit::uncertainty(int power) const {
  for (std::size_t j = 0; j < powers.size(); ++j) {
    if (powers[j] == power) return uncertainties[j];
  }
  throw ArgumentError("power " + std::to_string(power) + " was not fitted");
}

std::pair<int, int> default_window(int n_max) { return {std::max(1, n_max / 2), n_max}; }

ExpansionFit fit_inverse_powers(const Sequence& seq, const std::vector<int>& powers,
                                std::pair<int, int> window, FitMethod method) {
  if (powers.empty()) throw ArgumentError("at least one power is required");
  if (std::set<int>(powers.begin(), powers.end()).size() != powers.size()) {
    throw ArgumentError("powers must be distinct");
  }
  if (*std::min_element(powers.begin(), powers.end()) < 0) throw ArgumentError("powers must be >= 0");
  if (window.first < 1 || window.first > window.second) throw ArgumentError("invalid fit window");
  if (seq.empty()) throw ArgumentError("empty sequence");

  std::map<int, Real> data;
  for (const auto& [n, v] : seq) data[n] = v;
  if (window.first < data.begin()->first || window.second > data.rbegin()->first) {
    throw ArgumentError("window [" + std::to_string(window.first) + ", " + std::to_string(window.second) +
                        "] exceeds the sequence range");
  }
  std::vector<std::pair<int, Real>> points(data.lower_bound(window.first), data.upper_bound(window.second));
  if (points.size() < powers.size() + 2) {
    throw ArgumentError("window holds " + std::to_string(points.size()) + " points; need at least " +
                        std::to_string(powers.size() + 2));
  }

  std::vector<std::pair<int, Real>> rows = points;
  if (method == FitMethod::Richardson) {
    rows.clear();
    for (int idx : spaced_indices(points.size(), powers.size())) rows.push_back(points[static_cast<std::size_t>(idx)]);
  }

  const int top = *std::max_element(powers.begin(), powers.end());
  auto basis = [](int n, int power) { return pow(Real(n), -power); };
  std::vector<Column> design(powers.size(), Column(rows.size()));
  Column rhs(rows.size());
  Column weights(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    weights[i] = pow(Real(rows[i].first), top);
    rhs[i] = weights[i] * rows[i].second;
    for (std::size_t j = 0; j < powers.size(); ++j) design[j][i] = weights[i] * basis(rows[i].first, powers[j]);
  }

  ExpansionFit fit;
  fit.powers = powers;
  fit.window = window;
  fit.method = method;
  fit.condition = condition_number(design);
  const Real limit = Real("1e12") * pow(Real(10), static_cast<int>(precision_digits10()) - 16);
  if (fit.condition > limit) {
    throw IllConditionedError("fit condition " + to_string(fit.condition, 3) +
                              " is beyond what the working precision can resolve");
  }

  const QR qr(design);
  fit.coefficients = qr.solve(rhs);

  fit.residual_max = 0;
  for (const auto& [n, v] : points) {
    Real model(0);
    for (std::size_t j = 0; j < powers.size(); ++j) model += fit.coefficients[j] * basis(n, powers[j]);
    fit.residual_max = max(fit.residual_max, abs(model - v));
  }

  // rows of the pseudo-inverse acting on unweighted data: solve with unit
  // right-hand sides scaled by the row weights
  fit.uncertainties.assign(powers.size(), Real(0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Column e(rows.size(), Real(0));
    e[i] = weights[i];
    const Column col = qr.solve(e);
    for (std::size_t j = 0; j < powers.size(); ++j) fit.uncertainties[j] += square(col[j]);
  }
  for (auto& u : fit.uncertainties) u = fit.residual_max * sqrt(u);
  return fit;
}

Sequence a_sequence(const RecurrenceTable& table) {
  Sequence out;
  for (const auto& e : table.entries) out.emplace_back(e.n, e.a);
  return out;
}

Sequence b_sequence(const RecurrenceTable& table) {
  Sequence out;
  for (const auto& e : table.entries) out.emplace_back(e.n, e.b);
  return out;
}

VerificationReport verify_theorem(const Potential& p, const EquilibriumMeasure& m,
                                  const RecurrenceTable& table, const VerificationOptions& opts) {
  (void)p;
  m.require_regular();
  if (table.entries.empty()) throw ArgumentError("empty recurrence table");
  const auto window = opts.window == std::pair<int, int>{0, 0} ? default_window(table.entries.back().n)
                                                                : opts.window;
  VerificationReport r;
  r.a_fit = fit_inverse_powers(a_sequence(table), opts.a_powers, window, opts.method);
  r.b_fit = fit_inverse_powers(b_sequence(table), opts.b_powers, window, opts.method);

  r.a_limit_expected = square(m.b() - m.a()) / 16;
  r.b_limit_expected = (m.a() + m.b()) / 2;
  r.beta1_expected = beta1_closed(m);
  r.a_limit_fitted = r.a_fit.coefficient(0);
  r.b_limit_fitted = r.b_fit.coefficient(0);
  r.beta1_fitted = r.b_fit.coefficient(1);

  r.odd_alpha_max = 0;
  Real alpha2(0);
  for (std::size_t j = 0; j < r.a_fit.powers.size(); ++j) {
    if (r.a_fit.powers[j] % 2) r.odd_alpha_max = max(r.odd_alpha_max, abs(r.a_fit.coefficients[j]));
    if (r.a_fit.powers[j] == 2) alpha2 = r.a_fit.coefficients[j];
  }
  const auto& tol = opts.tolerances;
  r.odd_alpha_bound = tol.odd_relative * max(Real(1), abs(alpha2));

  r.a_limit_pass = abs(r.a_limit_fitted - r.a_limit_expected) <= tol.limit;
  r.b_limit_pass = abs(r.b_limit_fitted - r.b_limit_expected) <= tol.limit;
  r.beta1_pass = abs(r.beta1_fitted - r.beta1_expected) <= tol.beta1;
  r.odd_alpha_pass = r.odd_alpha_max <= r.odd_alpha_bound;
  r.pass = r.a_limit_pass && r.b_limit_pass && r.beta1_pass && r.odd_alpha_pass;
  return r;
}

}  // namespace onecut
