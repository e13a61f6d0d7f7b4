#include "lincert/class_poly.hpp"

#include <algorithm>
#include <sstream>

namespace lincert {

ClassPoly::ClassPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void ClassPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

ClassPoly ClassPoly::constant(long c) { return ClassPoly({BigInt(c)}); }

ClassPoly ClassPoly::L() { return ClassPoly({BigInt(0), BigInt(1)}); }

ClassPoly ClassPoly::L_pow(unsigned n) {
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  return ClassPoly(std::move(c));
}

ClassPoly ClassPoly::torus(unsigned rank) {
  ClassPoly out = constant(1);
  const ClassPoly lm1({BigInt(-1), BigInt(1)});
  for (unsigned i = 0; i < rank; ++i) out = out * lm1;
  return out;
}

ClassPoly ClassPoly::operator+(const ClassPoly& o) const {
  std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return ClassPoly(std::move(c));
}

ClassPoly ClassPoly::operator-(const ClassPoly& o) const {
  std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
  return ClassPoly(std::move(c));
}

ClassPoly ClassPoly::operator*(const ClassPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> c(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return ClassPoly(std::move(c));
}

BigInt ClassPoly::evaluate(const BigInt& q) const {
  BigInt acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * q + coeffs_[i];
  return acc;
}

std::string ClassPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) out << mag.get_str();
    if (k >= 1) out << "L";
    if (k >= 2) out << "^" << k;
  }
  return out.str();
}

std::string ClassPoly::coeff_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out << (i ? "," : "") << coeffs_[i].get_str();
  out << ']';
  return out.str();
}

}  // namespace lincert
