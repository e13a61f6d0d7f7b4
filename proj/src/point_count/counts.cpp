#include <numeric>

#include "lincert/finite_field.hpp"
#include "lincert/point_count.hpp"

namespace lincert {
namespace {

std::uint64_t mult_order(std::uint64_t q, std::uint64_t e) {
  if (e == 1) return 1;
  std::uint64_t x = q % e, k = 1;
  while (x != 1) {
    x = (x * q) % e;
    if (++k > e) throw CountError(CountError::Code::InvalidField, "q is not a unit modulo the conductor");
  }
  return k;
}

bool is_permutation_matrix(const IntMatrix& M) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    int row = 0, col = 0;
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (M(i, j) != 0 && M(i, j) != 1) return false;
      row += M(i, j) == 1;
      col += M(j, i) == 1;
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

TwistedMonomialAction action_from_json(const nlohmann::json& j, unsigned e) {
  TwistedMonomialAction a;
  a.lattice_map = matrix_from_json(j.at("M"));
  a.scalar_char = j.at("c").get<std::vector<long>>();
  a.e = e;
  if (a.lattice_map.rows() != a.lattice_map.cols() || a.scalar_char.size() != a.lattice_map.rows())
    throw CountError(CountError::Code::MalformedModel, "torus action has inconsistent sizes");
  return a;
}

// Element of GF(q) from power-basis coefficients in zeta (rational strings).
FiniteField::Elem cyclo_to_field(const nlohmann::json& coeffs, const FiniteField& F, FiniteField::Elem zeta) {
  FiniteField::Elem acc = 0, zp = 1;
  const BigInt l(static_cast<unsigned long>(F.characteristic()));
  for (const auto& c : coeffs) {
    Rational r(c.get<std::string>());
    r.canonicalize();
    const BigInt den = mod_floor(BigInt(r.get_den()), l);
    if (den == 0) throw CountError(CountError::Code::BadReduction, "hyperplane coefficient has a denominator divisible by the characteristic");
    const FiniteField::Elem num = F.from_int(mod_floor(BigInt(r.get_num()), l).get_si());
    acc = F.add(acc, F.mul(F.mul(num, F.inv(F.from_int(den.get_si()))), zp));
    zp = F.mul(zp, zeta);
  }
  return acc;
}

// Rank and consistency of the rows [a | -b] over GF(q).
std::pair<std::size_t, bool> field_rank(std::vector<std::vector<FiniteField::Elem>> rows, std::size_t n, const FiniteField& F) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const auto iv = F.inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = F.mul(x, iv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const auto f = rows[r][c];
      for (std::size_t k = 0; k <= n; ++k) rows[r][k] = F.sub(rows[r][k], F.mul(f, rows[rank][k]));
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][n] != 0) return {rank, false};
  return {rank, true};
}

}  // namespace

void check_field(const FieldSpec& spec) {
  try {
    prime_power_decompose(spec.q);
  } catch (const FieldError& ex) {
    throw CountError(CountError::Code::InvalidField, ex.what());
  }
  if (spec.conductor == 0 || spec.q % spec.conductor != 1 % spec.conductor)
    throw CountError(CountError::Code::InvalidField,
                     "q = " + std::to_string(spec.q) + " is not 1 modulo the conductor " + std::to_string(spec.conductor));
}

std::vector<std::uint64_t> default_qs(unsigned e, std::size_t how_many) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; out.size() < how_many; ++q)
    if (is_prime(q) && q % e == 1 % e) out.push_back(q);
  return out;
}

BigInt twisted_torus_count(const TwistedMonomialAction& g, const BigInt& q) {
  const std::size_t r = g.rank();
  IntMatrix A(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) A(i, j) = (i == j ? q : BigInt(0)) - g.lattice_map(i, j);
  const BigInt d = A.determinant();
  if (d == 0) throw CountError(CountError::Code::Degenerate, "det(qI - M) vanishes");
  return abs(d);
}

BigInt twisted_affine_count(const MonomialElement& g, const BigInt& q) {
  const std::size_t n = g.dim();
  if (n > 24) throw CountError(CountError::Code::MalformedModel, "twisted_affine_count: dimension too large");
  const TwistedMonomialAction full = TwistedMonomialAction::from_element(g);
  BigInt total = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    bool stable = true;
    std::vector<std::size_t> J;
    for (std::size_t j = 0; j < n && stable; ++j)
      if (mask >> j & 1ULL) {
        J.push_back(j);
        stable = (mask >> g.perm[j]) & 1ULL;
      }
    if (!stable) continue;
    TwistedMonomialAction sub;
    sub.e = g.e;
    sub.lattice_map = IntMatrix(J.size(), J.size());
    for (std::size_t a = 0; a < J.size(); ++a) {
      sub.scalar_char.push_back(full.scalar_char[J[a]]);
      for (std::size_t b = 0; b < J.size(); ++b) sub.lattice_map(a, b) = full.lattice_map(J[a], J[b]);
    }
    total += J.empty() ? BigInt(1) : twisted_torus_count(sub, q);
  }
  return total;
}

CountReport burnside_torus_count(const std::vector<TwistedMonomialAction>& group, const BigInt& q) {
  CountReport rep;
  for (const auto& g : group) {
    rep.per_element.push_back(twisted_torus_count(g, q));
    rep.sum += rep.per_element.back();
  }
  rep.group_order = static_cast<unsigned long>(group.size());
  rep.integral = rep.group_order != 0 && rep.sum % rep.group_order == 0;
  if (rep.integral) rep.quotient = rep.sum / rep.group_order;
  return rep;
}

CountReport burnside_affine_count(const std::vector<MonomialElement>& group, const BigInt& q) {
  CountReport rep;
  for (const auto& g : group) {
    rep.per_element.push_back(twisted_affine_count(g, q));
    rep.sum += rep.per_element.back();
  }
  rep.group_order = static_cast<unsigned long>(group.size());
  rep.integral = rep.group_order != 0 && rep.sum % rep.group_order == 0;
  if (rep.integral) rep.quotient = rep.sum / rep.group_order;
  return rep;
}

unsigned brute_force_degree(const TwistedMonomialAction& g, std::uint64_t q) {
  if (std::gcd(q, static_cast<std::uint64_t>(g.e)) != 1)
    throw CountError(CountError::Code::InvalidField, "characteristic divides the conductor");
  const std::uint64_t m0 = mult_order(q, g.e);
  // Frob^{m0} restricted to solutions is the composite of the Galois twists of g
  TwistedMonomialAction h = g;
  std::uint64_t qk = 1;
  for (std::uint64_t k = 1; k < m0; ++k) {
    qk = (qk * q) % g.e;
    TwistedMonomialAction gk = g;
    for (auto& c : gk.scalar_char) c = static_cast<long>((static_cast<std::uint64_t>(c) * qk) % g.e);
    h = product_action(gk, h);
  }
  return static_cast<unsigned>(m0 * h.order());
}

BigInt brute_force_twisted_count(const TwistedMonomialAction& g, std::uint64_t q, unsigned m, std::uint64_t budget,
                                 BruteForceStats* stats) {
  const std::size_t n = g.rank();
  std::uint64_t Q = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (Q > budget / q + 1) throw CountError(CountError::Code::BudgetExceeded, "extension field exceeds the budget");
    Q *= q;
  }
  const bool perm = is_permutation_matrix(g.lattice_map);
  // estimate before building anything
  long double estimate = perm ? static_cast<long double>(Q - 1) * static_cast<long double>(n) : 1.0L;
  if (!perm)
    for (std::size_t i = 0; i < n; ++i) estimate *= static_cast<long double>(Q - 1);
  if (estimate > static_cast<long double>(budget) || Q > FiniteField::kMaxSize)
    throw CountError(CountError::Code::BudgetExceeded, "enumeration exceeds the budget");

  FiniteField F(Q);
  const auto zeta = F.root_of_unity(g.e);
  std::vector<FiniteField::Elem> zc(n);
  for (std::size_t i = 0; i < n; ++i) zc[i] = F.pow(zeta, g.scalar_char[i]);
  std::uint64_t evals = 0;
  BigInt count = 1;

  if (perm) {
    // equation i reads x_i^q = zeta^{c_i} x_{src(i)} with M(src(i), i) = 1
    std::vector<std::size_t> src(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (g.lattice_map(j, i) == 1) src[i] = j;
    std::vector<FiniteField::Elem> zinv(n);
    for (std::size_t i = 0; i < n; ++i) zinv[i] = F.inv(zc[i]);
    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
      if (seen[start]) continue;
      std::uint64_t hits = 0;
      for (FiniteField::Elem a = 1; a < Q; ++a) {
        std::size_t cur = start;
        FiniteField::Elem t = a;
        while (true) {
          ++evals;
          const FiniteField::Elem next = F.mul(zinv[cur], F.pow(t, static_cast<std::int64_t>(q)));
          cur = src[cur];
          if (cur == start) {
            hits += next == a;
            break;
          }
          t = next;
        }
      }
      for (std::size_t cur = start; !seen[cur]; cur = src[cur]) seen[cur] = true;
      count *= static_cast<unsigned long>(hits);
    }
  } else {
    std::vector<FiniteField::Elem> t(n, 1);
    std::uint64_t hits = 0;
    while (true) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        ++evals;
        FiniteField::Elem rhs = zc[i];
        for (std::size_t j = 0; j < n; ++j)
          if (g.lattice_map(j, i) != 0) rhs = F.mul(rhs, F.pow(t[j], g.lattice_map(j, i).get_si()));
        ok = F.pow(t[i], static_cast<std::int64_t>(q)) == rhs;
      }
      hits += ok;
      std::size_t i = 0;
      while (i < n && ++t[i] == Q) t[i++] = 1;
      if (i == n) break;
    }
    count = static_cast<unsigned long>(hits);
  }
  if (stats) stats->evaluations = evals;
  return count;
}

BigInt flat_stratum_count(const nlohmann::json& model, std::uint64_t q) {
  const unsigned e = model.at("e").get<unsigned>();
  const std::size_t n = model.at("n").get<std::size_t>();
  const auto& hs = model.at("hyperplanes");
  const auto incidence = model.at("incidence").get<std::vector<int>>();
  const std::size_t p = hs.size();
  FiniteField F(q);
  const auto zeta = F.root_of_unity(e);
  // rows: coefficients then constant
  std::vector<std::vector<FiniteField::Elem>> rows;
  for (const auto& h : hs) {
    std::vector<FiniteField::Elem> row;
    const auto& cs = h.at("coeffs");
    if (cs.size() != n) throw CountError(CountError::Code::MalformedModel, "hyperplane has wrong length");
    for (const auto& c : cs) row.push_back(cyclo_to_field(c, F, zeta));
    row.push_back(cyclo_to_field(h.at("constant"), F, zeta));
    rows.push_back(std::move(row));
  }
  std::uint64_t I = 0;
  for (int j : incidence) I |= 1ULL << j;

  long double space = 1;
  for (std::size_t i = 0; i < n; ++i) space *= static_cast<long double>(q);
  if (space <= 200000) {
    // direct enumeration of GF(q)^n
    std::vector<FiniteField::Elem> v(n, 0);
    std::uint64_t hits = 0;
    while (true) {
      std::uint64_t on = 0;
      for (std::size_t j = 0; j < p; ++j) {
        FiniteField::Elem s = rows[j][n];
        for (std::size_t k = 0; k < n; ++k) s = F.add(s, F.mul(rows[j][k], v[k]));
        if (s == 0) on |= 1ULL << j;
      }
      hits += on == I;
      std::size_t i = 0;
      while (i < n && ++v[i] == q) v[i++] = 0;
      if (i == n) break;
    }
    return BigInt(static_cast<unsigned long>(hits));
  }
  // inclusion-exclusion over the supersets of I
  BigInt total = 0;
  for (std::uint64_t K = 0; K < (1ULL << p); ++K) {
    if ((K & I) != I) continue;
    std::vector<std::vector<FiniteField::Elem>> sys;
    for (std::size_t j = 0; j < p; ++j)
      if (K >> j & 1ULL) {
        auto r = rows[j];
        r[n] = F.neg(r[n]);
        sys.push_back(std::move(r));
      }
    auto [rank, consistent] = field_rank(sys, n, F);
    if (!consistent) continue;
    BigInt pts;
    mpz_ui_pow_ui(pts.get_mpz_t(), q, n - rank);
    if (__builtin_popcountll(K & ~I) % 2 == 0) total += pts;
    else total -= pts;
  }
  return total;
}

BigInt model_count(const nlohmann::json& model, std::uint64_t q) {
  const std::string type = model.at("type").get<std::string>();
  if (type == "point") return 1;
  if (type == "group_torus") {
    const unsigned e = model.at("e").get<unsigned>();
    std::vector<TwistedMonomialAction> acts;
    for (const auto& a : model.at("actions")) acts.push_back(action_from_json(a, e));
    const CountReport rep = burnside_torus_count(acts, BigInt(static_cast<unsigned long>(q)));
    if (!rep.integral) throw CountError(CountError::Code::IntegralityViolation, "Burnside sum is not divisible by the group order");
    return rep.quotient;
  }
  if (type == "group_affine") {
    const unsigned e = model.at("e").get<unsigned>();
    std::vector<MonomialElement> els;
    for (const auto& x : model.at("elements")) {
      MonomialElement g;
      g.perm = x.at("perm").get<std::vector<int>>();
      g.scalars = x.at("scalars").get<std::vector<long>>();
      g.e = e;
      els.push_back(std::move(g));
    }
    const CountReport rep = burnside_affine_count(els, BigInt(static_cast<unsigned long>(q)));
    if (!rep.integral) throw CountError(CountError::Code::IntegralityViolation, "Burnside sum is not divisible by the group order");
    return rep.quotient;
  }
  if (type == "flat") return flat_stratum_count(model, q);
  throw CountError(CountError::Code::MalformedModel, "unknown model type " + type);
}

}  // namespace lincert
