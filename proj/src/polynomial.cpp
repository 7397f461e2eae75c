#include "chambers/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace chambers {

IntegerPolynomial::IntegerPolynomial(std::vector<BigInt> ascending) : coeffs_(std::move(ascending)) {
  trim();
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<long long> ascending) {
  for (long long c : ascending) coeffs_.emplace_back(c);
  trim();
}

IntegerPolynomial IntegerPolynomial::monomial(int degree, BigInt coefficient) {
  std::vector<BigInt> c(static_cast<std::size_t>(degree) + 1);
  c.back() = std::move(coefficient);
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial IntegerPolynomial::from_roots(const std::vector<int>& roots) {
  IntegerPolynomial p{1};
  for (int r : roots) p = p * IntegerPolynomial{-r, 1};
  return p;
}

void IntegerPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntegerPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[k];
}

int IntegerPolynomial::lowest_degree() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0) return static_cast<int>(k);
  }
  return -1;
}

BigInt IntegerPolynomial::evaluate(const BigInt& t) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

BigInt IntegerPolynomial::sum_of_abs_coeffs() const {
  BigInt s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

std::vector<BigInt> IntegerPolynomial::abs_coeffs() const {
  std::vector<BigInt> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(abs(c));
  return out;
}

IntegerPolynomial& IntegerPolynomial::operator+=(const IntegerPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator-=(const IntegerPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial operator*(const BigInt& c, const IntegerPolynomial& p) {
  std::vector<BigInt> out = p.coeffs_;
  for (auto& x : out) x *= c;
  return IntegerPolynomial(std::move(out));
}

IntegerPolynomial IntegerPolynomial::shift_down(int k) const {
  if (k < 0) throw std::invalid_argument("negative shift");
  for (int i = 0; i < k && i < static_cast<int>(coeffs_.size()); ++i) {
    if (coeffs_[i] != 0) throw std::domain_error("polynomial is not divisible by t^k");
  }
  if (k >= static_cast<int>(coeffs_.size())) return {};
  return IntegerPolynomial(std::vector<BigInt>(coeffs_.begin() + k, coeffs_.end()));
}

IntegerPolynomial IntegerPolynomial::shift_up(int k) const {
  if (k < 0) throw std::invalid_argument("negative shift");
  if (is_zero()) return {};
  std::vector<BigInt> c(static_cast<std::size_t>(k));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return IntegerPolynomial(std::move(c));
}

std::string IntegerPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) out << mag;
    if (k >= 1) out << "t";
    if (k >= 2) out << "^" << k;
  }
  return out.str();
}

std::vector<std::string> IntegerPolynomial::to_decimal_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.str());
  return out;
}

IntegerPolynomial IntegerPolynomial::from_decimal_strings(const std::vector<std::string>& digits) {
  std::vector<BigInt> c;
  c.reserve(digits.size());
  for (const auto& s : digits) c.emplace_back(s);
  return IntegerPolynomial(std::move(c));
}

}  // namespace chambers
