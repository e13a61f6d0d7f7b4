#include "lincert/exact_math.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace lincert {
namespace {

using QPoly = std::vector<Rational>;  // low degree first

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo the monic integer polynomial mod.
QPoly poly_rem(QPoly a, const std::vector<BigInt>& mod) {
  const std::size_t d = mod.size() - 1;
  trim(a);
  while (a.size() > d) {
    const Rational lead = a.back();
    const std::size_t shift = a.size() - 1 - d;
    for (std::size_t i = 0; i <= d; ++i) a[shift + i] -= lead * Rational(mod[i]);
    trim(a);
  }
  return a;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

// Quotient and remainder in Q[x], b nonzero.
std::pair<QPoly, QPoly> poly_divmod(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) return {{}, a};
  QPoly q(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

std::vector<BigInt> int_poly_div_exact(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  // b monic
  const std::size_t db = b.size() - 1;
  std::vector<BigInt> q(a.size() - db, BigInt(0));
  for (std::size_t k = a.size(); k-- > db;) {
    const BigInt c = a[k];
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  return q;
}

}  // namespace

unsigned euler_phi(unsigned e) {
  unsigned result = e;
  unsigned n = e;
  for (unsigned f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    while (n % f == 0) n /= f;
    result -= result / f;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<BigInt> cyclotomic_polynomial(unsigned e) {
  if (e == 0) throw std::invalid_argument("cyclotomic_polynomial: conductor must be positive");
  static std::mutex mu;
  static std::map<unsigned, std::vector<BigInt>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
  }
  std::vector<BigInt> p(e + 1, BigInt(0));
  p[0] = -1;
  p[e] = 1;
  for (unsigned d = 1; d < e; ++d)
    if (e % d == 0) p = int_poly_div_exact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(e, p);
  return p;
}

CycloNumber::CycloNumber(unsigned conductor) : conductor_(conductor) {
  if (conductor == 0) throw std::invalid_argument("CycloNumber: conductor must be positive");
  coeffs_.assign(euler_phi(conductor), Rational(0));
}

CycloNumber::CycloNumber(unsigned conductor, const Rational& value) : CycloNumber(conductor) {
  coeffs_[0] = value;
}

CycloNumber CycloNumber::root_of_unity(unsigned conductor, long k) {
  const long e = static_cast<long>(conductor);
  const long r = mod_floor(k, e);
  std::vector<Rational> c(static_cast<std::size_t>(r) + 1, Rational(0));
  c[static_cast<std::size_t>(r)] = 1;
  return from_coefficients(conductor, std::move(c));
}

CycloNumber CycloNumber::from_coefficients(unsigned conductor, std::vector<Rational> coeffs) {
  CycloNumber z(conductor);
  z.coeffs_ = std::move(coeffs);
  for (auto& c : z.coeffs_) c.canonicalize();  // callers may pass raw num/den pairs
  z.reduce();
  return z;
}

void CycloNumber::reduce() {
  QPoly r = poly_rem(coeffs_, cyclotomic_polynomial(conductor_));
  r.resize(euler_phi(conductor_), Rational(0));
  coeffs_ = std::move(r);
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

static void require_same(const CycloNumber& a, const CycloNumber& b) {
  if (a.conductor() != b.conductor()) throw std::invalid_argument("CycloNumber: conductor mismatch");
}

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
  require_same(*this, o);
  CycloNumber r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const {
  require_same(*this, o);
  CycloNumber r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
  require_same(*this, o);
  return from_coefficients(conductor_, poly_mul(coeffs_, o.coeffs_));
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw std::domain_error("CycloNumber::inverse: zero has no inverse");
  // extended Euclid: s * a + t * phi = g (a nonzero constant since phi is irreducible)
  const auto phi_int = cyclotomic_polynomial(conductor_);
  QPoly phi(phi_int.begin(), phi_int.end());
  QPoly r0 = phi, r1 = coeffs_;
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1);
    QPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant
  const Rational g = r0.at(0);
  for (auto& c : s0) c /= g;
  return from_coefficients(conductor_, s0);
}

bool CycloNumber::operator==(const CycloNumber& o) const {
  return conductor_ == o.conductor_ && coeffs_ == o.coeffs_;
}

std::string CycloNumber::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << coeffs_[i].get_str();
    if (i == 1) out << "*z" << conductor_;
    if (i > 1) out << "*z" << conductor_ << "^" << i;
  }
  if (first) out << "0";
  return out.str();
}

CycloMatrix::CycloMatrix(std::size_t rows, std::size_t cols, unsigned conductor)
    : rows_(rows), cols_(cols), conductor_(conductor), data_(rows * cols, CycloNumber(conductor)) {}

std::vector<CycloNumber> CycloMatrix::operator*(const std::vector<CycloNumber>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("CycloMatrix: shape mismatch in product");
  std::vector<CycloNumber> out(rows_, CycloNumber(conductor_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !x[j].is_zero()) out[i] = out[i] + (*this)(i, j) * x[j];
  return out;
}

SolutionSpace cyclo_solve(const CycloMatrix& A, const std::vector<CycloNumber>& b) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  const unsigned e = A.conductor();
  if (b.size() != m) throw std::invalid_argument("cyclo_solve: right-hand side has wrong length");

  // augmented matrix, reduced row echelon form
  std::vector<std::vector<CycloNumber>> R(m, std::vector<CycloNumber>(n + 1, CycloNumber(e)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) R[i][j] = A(i, j);
    R[i][n] = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col <= n && row < m; ++col) {
    std::size_t piv = m;
    for (std::size_t i = row; i < m; ++i)
      if (!R[i][col].is_zero()) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    std::swap(R[row], R[piv]);
    const CycloNumber inv = R[row][col].inverse();
    for (std::size_t j = col; j <= n; ++j)
      if (!R[row][j].is_zero()) R[row][j] = R[row][j] * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || R[i][col].is_zero()) continue;
      const CycloNumber f = R[i][col];
      for (std::size_t j = col; j <= n; ++j)
        if (!R[row][j].is_zero()) R[i][j] = R[i][j] - f * R[row][j];
    }
    pivot_cols.push_back(col);
    ++row;
  }

  SolutionSpace out;
  out.consistent = pivot_cols.empty() || pivot_cols.back() != n;
  out.rank = out.consistent ? pivot_cols.size() : pivot_cols.size() - 1;
  if (!out.consistent) return out;

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  out.particular.assign(n, CycloNumber(e));
  for (std::size_t r = 0; r < pivot_cols.size(); ++r) out.particular[pivot_cols[r]] = R[r][n];
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<CycloNumber> v(n, CycloNumber(e));
    v[f] = CycloNumber(e, Rational(1));
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -R[r][f];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

}  // namespace lincert
