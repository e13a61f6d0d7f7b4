#pragma once

#include <string>
#include <vector>

#include "lincert/exact_math.hpp"

namespace lincert {

// Integer polynomial in the Lefschetz class L, constant term first, trimmed.
class ClassPoly {
 public:
  ClassPoly() = default;
  explicit ClassPoly(std::vector<BigInt> coeffs);
  static ClassPoly constant(long c);
  static ClassPoly L();
  static ClassPoly L_pow(unsigned n);
  static ClassPoly torus(unsigned rank);  // (L - 1)^rank

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  ClassPoly operator+(const ClassPoly& o) const;
  ClassPoly operator-(const ClassPoly& o) const;
  ClassPoly operator*(const ClassPoly& o) const;
  bool operator==(const ClassPoly& o) const = default;

  BigInt evaluate(const BigInt& q) const;
  std::string to_string() const;        // "L^3 - L^2 + L - 1"
  std::string coeff_string() const;     // "[-1,1,-1,1]"

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

}  // namespace lincert
