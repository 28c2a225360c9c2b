#include "parthom/polynomial.hpp"

namespace parthom {

IntPolynomial IntPolynomial::monomial(const BigInt& c, unsigned exponent) {
  IntPolynomial p;
  p.add_term(exponent, c);
  return p;
}

BigInt IntPolynomial::coefficient(unsigned exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

std::optional<unsigned> IntPolynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

void IntPolynomial::add_term(unsigned exponent, const BigInt& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

IntPolynomial operator*(const IntPolynomial& lhs, const IntPolynomial& rhs) {
  IntPolynomial out;
  for (const auto& [e1, c1] : lhs.terms_)
    for (const auto& [e2, c2] : rhs.terms_) out.add_term(e1 + e2, c1 * c2);
  return out;
}

std::string IntPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    BigInt mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (e == 0 || mag != 1) out += mag.get_str();
    if (e >= 1) out += "t";
    if (e >= 2) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace parthom
