#pragma once

#include <map>
#include <optional>
#include <string>

#include "parthom/partitions.hpp"

namespace parthom {

/// Polynomial in one variable t with exact integer coefficients. Zero
/// coefficients are never stored.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  static IntPolynomial constant(const BigInt& c) { return monomial(c, 0); }
  static IntPolynomial monomial(const BigInt& c, unsigned exponent);

  const std::map<unsigned, BigInt>& terms() const { return terms_; }
  BigInt coefficient(unsigned exponent) const;
  bool is_zero() const { return terms_.empty(); }
  std::optional<unsigned> degree() const;

  void add_term(unsigned exponent, const BigInt& c);

  IntPolynomial& operator+=(const IntPolynomial& rhs);
  friend IntPolynomial operator+(IntPolynomial lhs, const IntPolynomial& rhs) { return lhs += rhs; }
  friend IntPolynomial operator*(const IntPolynomial& lhs, const IntPolynomial& rhs);
  bool operator==(const IntPolynomial&) const = default;

  /// "15t^6 + 60t^8 + 45t^10"; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  std::map<unsigned, BigInt> terms_;
};

}  // namespace parthom
