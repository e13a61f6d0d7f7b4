#pragma once

// GF(l^d) with elements encoded as integers sum c_i l^i (c_i the coefficients
// of a polynomial in x). The modulus is the first monic primitive polynomial
// of degree d in the order of its encoded lower coefficients, so x generates
// the multiplicative group and exp/log tables make multiplication O(1).

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lincert {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (l, d) with q = l^d, or throws FieldError when q is not a prime power.
std::pair<std::uint64_t, unsigned> prime_power_decompose(std::uint64_t q);

// Coefficients c_0..c_{d-1} of the monic primitive modulus (leading 1 omitted).
std::vector<std::uint32_t> primitive_polynomial(std::uint32_t l, unsigned d);

class FiniteField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxSize = 1ULL << 25;

  explicit FiniteField(std::uint64_t q);

  std::uint64_t size() const { return q_; }
  std::uint32_t characteristic() const { return l_; }
  unsigned degree() const { return d_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem generator() const { return exp_[exp_.size() > 1 ? 1 : 0]; }  // GF(2): the table is just {1}

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::int64_t k) const;

  // Exponent of the generator; a must be nonzero.
  std::uint64_t log(Elem a) const { return log_[a]; }
  Elem exp(std::int64_t k) const;

  Elem from_int(std::int64_t v) const;
  // generator^((q-1)/e): a fixed primitive e-th root of unity.
  Elem root_of_unity(std::uint64_t e) const;

 private:
  std::uint64_t q_ = 0;
  std::uint32_t l_ = 0;
  unsigned d_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace lincert
