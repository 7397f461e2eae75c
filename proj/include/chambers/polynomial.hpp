#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace chambers {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer polynomial, coefficients in ascending degree. The coefficient
// list never carries trailing zeros; the zero polynomial is the empty list.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<BigInt> ascending);
  IntegerPolynomial(std::initializer_list<long long> ascending);

  static IntegerPolynomial monomial(int degree, BigInt coefficient = 1);
  // (t - a_1)(t - a_2)...
  static IntegerPolynomial from_roots(const std::vector<int>& roots);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  // Coefficient of t^k, zero outside the stored range.
  BigInt coeff(int k) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  // Lowest k with a nonzero coefficient; -1 for the zero polynomial.
  int lowest_degree() const;

  BigInt evaluate(const BigInt& t) const;
  BigInt sum_of_abs_coeffs() const;
  std::vector<BigInt> abs_coeffs() const;

  IntegerPolynomial& operator+=(const IntegerPolynomial& other);
  IntegerPolynomial& operator-=(const IntegerPolynomial& other);
  friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) {
    return a += b;
  }
  friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) {
    return a -= b;
  }
  friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend IntegerPolynomial operator*(const BigInt& c, const IntegerPolynomial& p);
  bool operator==(const IntegerPolynomial&) const = default;

  // Divide by t^k; throws if the low coefficients are not zero.
  IntegerPolynomial shift_down(int k) const;
  IntegerPolynomial shift_up(int k) const;

  // "t^4 - 6t^3 + 11t^2 - 6t"
  std::string to_string() const;
  // Decimal strings in ascending degree, as used by the JSON writer.
  std::vector<std::string> to_decimal_strings() const;
  static IntegerPolynomial from_decimal_strings(const std::vector<std::string>& digits);

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

}  // namespace chambers
