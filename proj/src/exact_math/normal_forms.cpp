#include "lincert/exact_math.hpp"

#include <algorithm>

namespace lincert {
namespace {

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// col[dst] -= q * col[src]
void axpy_column(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

// row[dst] -= q * row[src]
void axpy_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void negate_column(IntMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  IntMatrix H = M;
  IntMatrix U = IntMatrix::identity(n);
  std::size_t pc = n;  // columns [pc, n) hold pivots

  for (std::size_t step = 0; step < m && pc > 0; ++step) {
    const std::size_t i = m - 1 - step;
    const std::size_t target = pc - 1;
    while (true) {
      // smallest nonzero |H(i, j)| among the free columns, lowest index on ties
      std::size_t best = n;
      for (std::size_t j = 0; j < pc; ++j) {
        if (H(i, j) == 0) continue;
        if (best == n || abs(H(i, j)) < abs(H(i, best))) best = j;
      }
      if (best == n) break;
      swap_columns(H, best, target);
      swap_columns(U, best, target);
      bool done = true;
      for (std::size_t j = 0; j < target; ++j) {
        if (H(i, j) == 0) continue;
        BigInt q = floor_div(H(i, j), H(i, target));
        axpy_column(H, j, target, q);
        axpy_column(U, j, target, q);
        if (H(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (H(i, target) == 0) continue;  // no pivot in this row
    if (H(i, target) < 0) {
      negate_column(H, target);
      negate_column(U, target);
    }
    for (std::size_t j = pc; j < n; ++j) {
      BigInt q = floor_div(H(i, j), H(i, target));
      axpy_column(H, j, target, q);
      axpy_column(U, j, target, q);
    }
    --pc;
  }
  return HermiteResult{std::move(H), std::move(U), n - pc};
}

std::vector<BigInt> SmithResult::diagonal() const {
  std::vector<BigInt> d;
  const std::size_t k = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < k; ++i) d.push_back(D(i, i));
  return d;
}

SmithResult smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  IntMatrix D = M;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);
  std::size_t t = 0;

  for (; t < std::min(m, n); ++t) {
    bool have_pivot = false;
    while (true) {
      std::size_t br = m, bc = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D(i, j) == 0) continue;
          if (br == m || abs(D(i, j)) < abs(D(br, bc))) {
            br = i;
            bc = j;
          }
        }
      if (br == m) break;
      have_pivot = true;
      swap_rows(D, t, br);
      swap_rows(U, t, br);
      swap_columns(D, t, bc);
      swap_columns(V, t, bc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        BigInt q = floor_div(D(i, t), D(t, t));
        axpy_row(D, i, t, q);
        axpy_row(U, i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        BigInt q = floor_div(D(t, j), D(t, t));
        axpy_column(D, j, t, q);
        axpy_column(V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into the pivot row and retry
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            axpy_row(D, t, i, BigInt(-1));
            axpy_row(U, t, i, BigInt(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (!have_pivot) break;
    if (D(t, t) < 0) {
      negate_row(D, t);
      negate_row(U, t);
    }
  }
  return SmithResult{std::move(D), std::move(U), std::move(V), t};
}

BigInt congruence_solution_count(const IntMatrix& A, const IntVector& b, const BigInt& m) {
  if (m < 1) throw std::invalid_argument("congruence_solution_count: modulus must be >= 1");
  if (b.size() != A.rows()) throw std::invalid_argument("congruence_solution_count: b has wrong length");
  const std::size_t k = A.rows();
  const std::size_t n = A.cols();
  SmithResult s = smith_normal_form(A);
  IntVector c = s.U * b;
  BigInt count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const BigInt ci = mod_floor(c[i], m);
    if (i < n) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), s.D(i, i).get_mpz_t(), m.get_mpz_t());
      if (!mpz_divisible_p(ci.get_mpz_t(), g.get_mpz_t())) return 0;
      count *= g;
    } else if (ci != 0) {
      return 0;
    }
  }
  for (std::size_t j = k; j < n; ++j) count *= m;
  return count;
}

std::optional<IntVector> solve_in_lattice(const IntMatrix& B, const IntVector& y) {
  if (y.size() != B.rows()) throw std::invalid_argument("solve_in_lattice: vector has wrong length");
  HermiteResult h = hermite_normal_form(B);
  const std::size_t n = B.cols();
  IntVector residual = y;
  IntVector z(n, BigInt(0));
  for (std::size_t jj = 0; jj < h.rank; ++jj) {
    const std::size_t j = n - 1 - jj;
    // lowest nonzero row of column j is its pivot
    std::size_t r = B.rows();
    for (std::size_t i = B.rows(); i-- > 0;)
      if (h.H(i, j) != 0) {
        r = i;
        break;
      }
    // rows below r must already be clear
    for (std::size_t i = r + 1; i < B.rows(); ++i)
      if (residual[i] != 0) return std::nullopt;
    if (!mpz_divisible_p(residual[r].get_mpz_t(), h.H(r, j).get_mpz_t())) return std::nullopt;
    z[j] = residual[r] / h.H(r, j);
    for (std::size_t i = 0; i < B.rows(); ++i) residual[i] -= z[j] * h.H(i, j);
  }
  for (const auto& v : residual)
    if (v != 0) return std::nullopt;
  return h.U * z;
}

IntMatrix integer_kernel(const IntMatrix& A) {
  HermiteResult h = hermite_normal_form(A);
  const std::size_t nullity = A.cols() - h.rank;
  IntMatrix K(A.cols(), nullity);
  for (std::size_t j = 0; j < nullity; ++j) K.set_column(j, h.U.column(j));
  return K;
}

}  // namespace lincert
