#pragma once

// Exact integer-lattice and cyclotomic linear algebra.
//
// Conventions used throughout the project:
//  * Lattices are spanned by the COLUMNS of an IntMatrix.
//  * Hermite normal form is column-style: H = M * U, H upper triangular in
//    its pivot rows, positive pivots, entries to the right of a pivot reduced
//    into [0, pivot).

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lincert {

using BigInt = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<BigInt>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_columns(const std::vector<IntVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  void set_column(std::size_t c, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;
  bool is_identity() const;

  // Bareiss fraction-free determinant; square matrices only.
  BigInt determinant() const;
  bool is_unimodular() const;

  // Exact inverse of a unimodular matrix.
  IntMatrix unimodular_inverse() const;

  IntMatrix power(unsigned k) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct HermiteResult {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

HermiteResult hermite_normal_form(const IntMatrix& M);

struct SmithResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::size_t rank = 0;
  // Diagonal entries d_1 | d_2 | ... (length min(rows, cols)).
  std::vector<BigInt> diagonal() const;
};

SmithResult smith_normal_form(const IntMatrix& M);

// |{x in (Z/m)^n : A x = b (mod m)}|, via the Smith form of A.
BigInt congruence_solution_count(const IntMatrix& A, const IntVector& b, const BigInt& m);

// Solve B x = y over Z for B of full column rank. Returns nullopt when y is not
// in the Z-span of the columns of B.
std::optional<IntVector> solve_in_lattice(const IntMatrix& B, const IntVector& y);

// Basis (as columns) of {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& A);

BigInt mod_floor(const BigInt& a, const BigInt& m);
long mod_floor(long a, long m);

// ---------------------------------------------------------------------------
// Cyclotomic arithmetic over Q(zeta_e).

// Integer coefficients of the e-th cyclotomic polynomial, low degree first.
std::vector<BigInt> cyclotomic_polynomial(unsigned e);
unsigned euler_phi(unsigned e);

class CycloNumber {
 public:
  CycloNumber() = default;
  explicit CycloNumber(unsigned conductor);
  CycloNumber(unsigned conductor, const Rational& value);

  // zeta_e^k for any integer k.
  static CycloNumber root_of_unity(unsigned conductor, long k);
  static CycloNumber from_coefficients(unsigned conductor, std::vector<Rational> coeffs);

  unsigned conductor() const { return conductor_; }
  // Canonical coefficients in the power basis 1, zeta, ..., zeta^{phi(e)-1}.
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;

  CycloNumber operator+(const CycloNumber& o) const;
  CycloNumber operator-(const CycloNumber& o) const;
  CycloNumber operator-() const;
  CycloNumber operator*(const CycloNumber& o) const;
  CycloNumber inverse() const;
  CycloNumber operator/(const CycloNumber& o) const { return *this * o.inverse(); }
  bool operator==(const CycloNumber& o) const;
  bool operator!=(const CycloNumber& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void reduce();

  unsigned conductor_ = 1;
  std::vector<Rational> coeffs_;
};

class CycloMatrix {
 public:
  CycloMatrix() = default;
  CycloMatrix(std::size_t rows, std::size_t cols, unsigned conductor);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned conductor() const { return conductor_; }

  CycloNumber& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycloNumber& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<CycloNumber> operator*(const std::vector<CycloNumber>& x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  unsigned conductor_ = 1;
  std::vector<CycloNumber> data_;
};

struct SolutionSpace {
  std::size_t rank = 0;
  bool consistent = false;
  std::vector<CycloNumber> particular;             // empty when inconsistent
  std::vector<std::vector<CycloNumber>> nullspace;  // basis vectors

  // Dimension of the affine solution set, or -1 when empty.
  long dimension() const { return consistent ? static_cast<long>(nullspace.size()) : -1; }
};

SolutionSpace cyclo_solve(const CycloMatrix& A, const std::vector<CycloNumber>& b);

}  // namespace lincert
