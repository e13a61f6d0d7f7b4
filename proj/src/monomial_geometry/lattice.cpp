#include <numeric>

#include "lincert/monomial_geometry.hpp"

namespace lincert {

TwistedMonomialAction TwistedMonomialAction::identity(std::size_t rank, unsigned e) {
  return TwistedMonomialAction{IntMatrix::identity(rank), std::vector<long>(rank, 0), e};
}

TwistedMonomialAction TwistedMonomialAction::from_element(const MonomialElement& g) {
  const std::size_t n = g.dim();
  TwistedMonomialAction a{IntMatrix(n, n), g.scalars, g.e};
  // g^*(x_k) = zeta^{s_k} x_{perm^-1(k)}, so (M v)_j = v_{perm(j)}
  for (std::size_t j = 0; j < n; ++j) a.lattice_map(j, static_cast<std::size_t>(g.perm[j])) = 1;
  return a;
}

bool TwistedMonomialAction::is_identity() const {
  if (!lattice_map.is_identity()) return false;
  for (long c : scalar_char)
    if (c != 0) return false;
  return true;
}

std::pair<IntVector, long> TwistedMonomialAction::apply(const IntVector& v) const {
  BigInt s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += scalar_char[i] * v[i];
  return {lattice_map * v, mod_floor(s, BigInt(e)).get_si()};
}

TwistedMonomialAction product_action(const TwistedMonomialAction& g, const TwistedMonomialAction& h) {
  if (g.e != h.e || g.rank() != h.rank()) throw GeometryError(GeometryError::Code::UnsupportedAction, "product_action: incompatible actions");
  // (gh)^* = h^* after g^*: x^v -> zeta^{c_g v} x^{M_g v} -> zeta^{c_g v + c_h M_g v} x^{M_h M_g v}
  TwistedMonomialAction out;
  out.e = g.e;
  out.lattice_map = h.lattice_map * g.lattice_map;
  out.scalar_char.resize(g.rank());
  for (std::size_t j = 0; j < g.rank(); ++j) {
    BigInt s = g.scalar_char[j];
    for (std::size_t i = 0; i < g.rank(); ++i) s += h.scalar_char[i] * g.lattice_map(i, j);
    out.scalar_char[j] = mod_floor(s, BigInt(g.e)).get_si();
  }
  return out;
}

unsigned TwistedMonomialAction::order() const {
  TwistedMonomialAction x = *this;
  unsigned k = 1;
  while (!x.is_identity()) {
    x = product_action(x, *this);
    if (++k > 10000) throw GeometryError(GeometryError::Code::UnsupportedAction, "action has no finite order below 10^4");
  }
  return k;
}

InvariantLattice abelian_invariant_lattice(const std::vector<std::vector<long>>& chars, std::size_t n, unsigned e) {
  if (chars.empty() || n == 0) return InvariantLattice{IntMatrix::identity(n), 1};
  IntMatrix C(chars.size(), n);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (chars[i].size() != n) throw std::invalid_argument("abelian_invariant_lattice: character has wrong length");
    for (std::size_t j = 0; j < n; ++j) C(i, j) = mod_floor(chars[i][j], static_cast<long>(e));
  }
  SmithResult s = smith_normal_form(C);
  // x = V y; D y = 0 mod e  <=>  y_i in (e / gcd(d_i, e)) Z
  IntMatrix scaled = s.V;
  BigInt index = 1;
  const BigInt be(e);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt f = 1;
    if (i < chars.size()) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), s.D(i, i).get_mpz_t(), be.get_mpz_t());
      f = be / g;
    }
    index *= f;
    for (std::size_t r = 0; r < n; ++r) scaled(r, i) *= f;
  }
  HermiteResult h = hermite_normal_form(scaled);
  return InvariantLattice{h.H, index};
}

IntMatrix single_character_generators(const std::vector<long>& chi, unsigned e) {
  const std::size_t n = chi.size();
  long g = static_cast<long>(e);
  for (long c : chi) g = std::gcd(g, mod_floor(c, static_cast<long>(e)));
  const long order = static_cast<long>(e) / g;
  std::vector<long> reduced(n);
  for (std::size_t i = 0; i < n; ++i) reduced[i] = mod_floor(chi[i], static_cast<long>(e)) / g;
  std::size_t unit = n;
  for (std::size_t i = 0; i < n; ++i)
    if (std::gcd(reduced[i], order) == 1) {
      unit = i;
      break;
    }
  if (unit == n)
    throw GeometryError(GeometryError::Code::NoUnitCoordinate, "single_character_generators: no coordinate carries a unit exponent");
  long inv = 1;
  for (long t = 1; t <= order; ++t)
    if (mod_floor(t * reduced[unit], order) == mod_floor(1, order)) {
      inv = t;
      break;
    }
  IntMatrix B(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == unit) {
      B(unit, i) = order;
      continue;
    }
    B(i, i) = 1;
    B(unit, i) = -mod_floor(reduced[i] * inv, order);
  }
  return B;
}

TwistedMonomialAction restrict_action_to_sublattice(const TwistedMonomialAction& action, const IntMatrix& basis) {
  const std::size_t r = basis.cols();
  TwistedMonomialAction out;
  out.e = action.e;
  out.lattice_map = IntMatrix(r, r);
  out.scalar_char.assign(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    const IntVector b = basis.column(j);
    auto [image, scalar] = action.apply(b);
    auto coords = solve_in_lattice(basis, image);
    if (!coords) throw GeometryError(GeometryError::Code::NotStable, "restrict_action_to_sublattice: action does not preserve the sublattice");
    out.lattice_map.set_column(j, *coords);
    out.scalar_char[j] = scalar;
  }
  return out;
}

TwistedMonomialAction apply_substitution(const TwistedMonomialAction& action, const IntMatrix& U) {
  if (!U.is_unimodular()) throw GeometryError(GeometryError::Code::NotUnimodular, "apply_substitution: matrix is not unimodular");
  return restrict_action_to_sublattice(action, U);
}

}  // namespace lincert
