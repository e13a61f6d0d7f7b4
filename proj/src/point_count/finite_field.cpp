#include "lincert/finite_field.hpp"

#include <string>

namespace lincert {
namespace {

std::vector<std::uint32_t> digits(std::uint64_t v, std::uint32_t l, unsigned d) {
  std::vector<std::uint32_t> out(d);
  for (unsigned i = 0; i < d; ++i) {
    out[i] = static_cast<std::uint32_t>(v % l);
    v /= l;
  }
  return out;
}

std::uint64_t encode(const std::vector<std::uint32_t>& c, std::uint32_t l) {
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * l + c[i];
  return v;
}

// Powers of x modulo the monic polynomial x^d + sum m_i x^i. Returns an empty
// table unless x has multiplicative order exactly l^d - 1.
std::vector<std::uint32_t> power_table(const std::vector<std::uint32_t>& m, std::uint32_t l, unsigned d, std::uint64_t q) {
  std::vector<std::uint32_t> table;
  table.reserve(q - 1);
  std::vector<std::uint32_t> cur(d, 0);
  cur[0] = 1;
  for (std::uint64_t k = 0; k + 1 < q; ++k) {
    const std::uint64_t code = encode(cur, l);
    if (k > 0 && code == 1) return {};
    table.push_back(static_cast<std::uint32_t>(code));
    // multiply by x
    const std::uint32_t top = cur[d - 1];
    for (unsigned i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (unsigned i = 0; i < d; ++i)
      cur[i] = static_cast<std::uint32_t>((cur[i] + static_cast<std::uint64_t>(l - m[i]) * top) % l);
  }
  if (encode(cur, l) != 1) return {};
  return table;
}

// x^k == 1 modulo the monic x^d + sum m_i x^i over F_l, by square-and-multiply.
bool x_power_is_one(const std::vector<std::uint32_t>& m, std::uint32_t l, std::uint64_t k) {
  const std::size_t d = m.size();
  auto mulmod = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> prod(2 * d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % l;
    for (std::size_t t = 2 * d - 1; t >= d; --t) {
      const std::uint64_t c = prod[t];
      if (c == 0) continue;
      prod[t] = 0;
      for (std::size_t i = 0; i < d; ++i) prod[t - d + i] = (prod[t - d + i] + (l - m[i]) * c) % l;
    }
    prod.resize(d);
    return prod;
  };
  std::vector<std::uint64_t> result(d, 0), base(d, 0);
  result[0] = 1;
  if (d == 1) {
    base[0] = (l - m[0]) % l;
  } else {
    base[1] = 1;
  }
  while (k) {
    if (k & 1) result = mulmod(result, base);
    base = mulmod(base, base);
    k >>= 1;
  }
  if (result[0] != 1) return false;
  for (std::size_t i = 1; i < d; ++i)
    if (result[i] != 0) return false;
  return true;
}

}  // namespace

std::pair<std::uint64_t, unsigned> prime_power_decompose(std::uint64_t q) {
  if (q < 2) throw FieldError("field size must be at least 2");
  std::uint64_t l = 0;
  for (std::uint64_t f = 2; f * f <= q; ++f)
    if (q % f == 0) {
      l = f;
      break;
    }
  if (l == 0) return {q, 1};
  unsigned d = 0;
  std::uint64_t r = q;
  while (r % l == 0) {
    r /= l;
    ++d;
  }
  if (r != 1) throw FieldError(std::to_string(q) + " is not a prime power");
  return {l, d};
}

std::vector<std::uint32_t> primitive_polynomial(std::uint32_t l, unsigned d) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < d; ++i) q *= l;
  if (q > FiniteField::kMaxSize) throw FieldError("field too large");
  std::vector<std::uint64_t> primes;
  {
    std::uint64_t r = q - 1;
    for (std::uint64_t f = 2; f * f <= r; ++f)
      if (r % f == 0) {
        primes.push_back(f);
        while (r % f == 0) r /= f;
      }
    if (r > 1) primes.push_back(r);
  }
  for (std::uint64_t code = 0; code < q; ++code) {
    auto m = digits(code, l, d);
    if (m[0] == 0) continue;  // x would divide the modulus
    // x must have order exactly q - 1 modulo the candidate
    bool ok = x_power_is_one(m, l, q - 1);
    for (std::uint64_t r : primes)
      if (ok && x_power_is_one(m, l, (q - 1) / r)) ok = false;
    if (ok) return m;
  }
  throw FieldError("no primitive polynomial found");
}

FiniteField::FiniteField(std::uint64_t q) {
  auto [l, d] = prime_power_decompose(q);
  if (q > kMaxSize) throw FieldError("field of size " + std::to_string(q) + " exceeds the table limit");
  q_ = q;
  l_ = static_cast<std::uint32_t>(l);
  d_ = d;
  modulus_ = primitive_polynomial(l_, d_);
  exp_ = power_table(modulus_, l_, d_, q_);
  log_.assign(q_, 0);
  for (std::uint64_t k = 0; k < exp_.size(); ++k) log_[exp_[k]] = static_cast<std::uint32_t>(k);
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (d_ == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) + b) % l_);
  std::uint64_t out = 0, place = 1;
  while (a || b) {
    out += place * (((a % l_) + (b % l_)) % l_);
    a /= l_;
    b /= l_;
    place *= l_;
  }
  return static_cast<Elem>(out);
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const {
  if (d_ == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) + l_ - b) % l_);
  std::uint64_t out = 0, place = 1;
  while (a || b) {
    out += place * (((a % l_) + l_ - (b % l_)) % l_);
    a /= l_;
    b /= l_;
    place *= l_;
  }
  return static_cast<Elem>(out);
}

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::exp(std::int64_t k) const {
  const std::int64_t m = static_cast<std::int64_t>(q_ - 1);
  return exp_[static_cast<std::size_t>(((k % m) + m) % m)];
}

FiniteField::Elem FiniteField::pow(Elem a, std::int64_t k) const {
  if (a == 0) {
    if (k < 0) throw FieldError("negative power of zero");
    return k == 0 ? 1 : 0;
  }
  const std::int64_t m = static_cast<std::int64_t>(q_ - 1);
  const std::int64_t e = static_cast<std::int64_t>((static_cast<__int128>(log_[a]) * (((k % m) + m) % m)) % m);
  return exp_[static_cast<std::size_t>(e)];
}

FiniteField::Elem FiniteField::from_int(std::int64_t v) const {
  const std::int64_t l = l_;
  return static_cast<Elem>(((v % l) + l) % l);
}

FiniteField::Elem FiniteField::root_of_unity(std::uint64_t e) const {
  if (e == 0 || (q_ - 1) % e != 0) throw FieldError("field of size " + std::to_string(q_) + " has no primitive " + std::to_string(e) + "-th root of unity");
  return exp_[((q_ - 1) / e) % (q_ - 1)];  // e = 1 gives exp_[0] = 1
}

}  // namespace lincert
