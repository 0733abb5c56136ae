#include "onecut/potential.hpp"

#include "onecut/errors.hpp"

#include <sstream>

namespace onecut {

namespace {

std::vector<std::string> split_commas(std::string_view body) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : body) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else if (c != ' ') {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

Potential Potential::polynomial(Series coeffs) {
  trim(coeffs);
  const std::size_t degree = coeffs.size() - 1;
  if (degree < 2 || degree % 2 != 0) {
    throw ArgumentError("polynomial field must have even degree >= 2, got degree " +
                        std::to_string(degree));
  }
  if (coeffs.back() <= 0) {
    throw ArgumentError("polynomial field must have a positive leading coefficient");
  }
  Potential p;
  p.kind_ = PotentialKind::Polynomial;
  p.coeffs_ = std::move(coeffs);
  p.dcoeffs_ = onecut::derivative(p.coeffs_);
  p.ddcoeffs_ = onecut::derivative(p.dcoeffs_);
  std::ostringstream os;
  os << "poly:";
  for (std::size_t k = 0; k < p.coeffs_.size(); ++k) {
    if (k) os << ',';
    os << p.coeffs_[k].str(0, std::ios_base::fmtflags(0));
  }
  p.spec_ = os.str();
  return p;
}

Potential Potential::jacobi(Real right_exponent, Real left_exponent) {
  if (!(right_exponent > 0) || !(left_exponent > 0)) {
    throw ArgumentError("Jacobi field requires A > 0 and B > 0");
  }
  Potential p;
  p.kind_ = PotentialKind::Jacobi;
  p.jacobi_a_ = std::move(right_exponent);
  p.jacobi_b_ = std::move(left_exponent);
  p.spec_ = "jacobi:" + p.jacobi_a_.str(0, std::ios_base::fmtflags(0)) + "," +
            p.jacobi_b_.str(0, std::ios_base::fmtflags(0));
  return p;
}

Potential Potential::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ArgumentError("potential must look like 'poly:c0,...' or 'jacobi:A,B': '" +
                        std::string(spec) + "'");
  }
  const std::string_view head = spec.substr(0, colon);
  const auto parts = split_commas(spec.substr(colon + 1));
  if (head == "poly") {
    Series coeffs;
    for (const auto& part : parts) coeffs.push_back(parse_real(part));
    Potential p = polynomial(std::move(coeffs));
    p.spec_ = std::string(spec);
    return p;
  }
  if (head == "jacobi") {
    if (parts.size() != 2) throw ArgumentError("jacobi field needs exactly two values A,B");
    Potential p = jacobi(parse_real(parts[0]), parse_real(parts[1]));
    p.spec_ = std::string(spec);
    return p;
  }
  throw ArgumentError("unknown potential family '" + std::string(head) + "'");
}

const Series& Potential::coefficients() const {
  if (kind_ != PotentialKind::Polynomial) throw ArgumentError("not a polynomial field");
  return coeffs_;
}

std::size_t Potential::degree() const { return coefficients().size() - 1; }

const Real& Potential::right_exponent() const {
  if (kind_ != PotentialKind::Jacobi) throw ArgumentError("not a Jacobi field");
  return jacobi_a_;
}

const Real& Potential::left_exponent() const {
  if (kind_ != PotentialKind::Jacobi) throw ArgumentError("not a Jacobi field");
  return jacobi_b_;
}

bool Potential::in_domain(const Real& x) const {
  return kind_ == PotentialKind::Polynomial || (x > -1 && x < 1);
}

bool Potential::is_even() const {
  if (kind_ == PotentialKind::Jacobi) return jacobi_a_ == jacobi_b_;
  for (std::size_t k = 1; k < coeffs_.size(); k += 2) {
    if (coeffs_[k] != 0) return false;
  }
  return true;
}

void Potential::check_domain(const Real& x) const {
  if (!in_domain(x)) {
    throw DomainError("Jacobi field evaluated outside (-1, 1) at x = " + to_string(x, 20));
  }
}

Real Potential::value(const Real& x) const {
  check_domain(x);
  if (kind_ == PotentialKind::Polynomial) return horner(coeffs_, x);
  return -jacobi_a_ * log1p(-x) - jacobi_b_ * log1p(x);
}

Real Potential::derivative(const Real& x) const {
  check_domain(x);
  if (kind_ == PotentialKind::Polynomial) return horner(dcoeffs_, x);
  return jacobi_a_ / (1 - x) - jacobi_b_ / (1 + x);
}

Real Potential::second_derivative(const Real& x) const {
  check_domain(x);
  if (kind_ == PotentialKind::Polynomial) return horner(ddcoeffs_, x);
  return jacobi_a_ / square(1 - x) + jacobi_b_ / square(1 + x);
}

std::string Potential::spec() const { return spec_; }

Real eval_V(const Potential& p, const Real& x) { return p.value(x); }

Real eval_Vprime(const Potential& p, const Real& x) { return p.derivative(x); }

}  // namespace onecut
