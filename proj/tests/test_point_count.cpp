#include <gtest/gtest.h>

#include <random>

#include "lincert/finite_field.hpp"
#include "lincert/point_count.hpp"
#include "lincert/strat_engine.hpp"

using namespace lincert;

namespace {

TwistedMonomialAction action(std::vector<std::vector<long>> rows, unsigned e, std::vector<long> c = {}) {
  TwistedMonomialAction a;
  a.lattice_map = IntMatrix::from_rows(rows);
  a.e = e;
  a.scalar_char = c.empty() ? std::vector<long>(rows.size(), 0) : c;
  return a;
}

const std::vector<std::pair<std::string, unsigned>> kCatalog{
    {"heisenberg", 2}, {"heisenberg", 3}, {"modular", 2}, {"modular", 3}, {"dihedral8", 2},
    {"quaternion8", 2}, {"semidirect:3", 2}, {"semidirect:2", 3}, {"abelian:3,3", 3}, {"abelian:2,4", 2}};

// Solutions of Frob(x) = g.x on affine n-space over GF(q^m), walking each
// permutation cycle with the inverse Frobenius y -> y^(q^(m-1)).
std::uint64_t affine_oracle(const MonomialElement& g, std::uint64_t q, unsigned m) {
  std::uint64_t big = 1;
  for (unsigned i = 0; i < m; ++i) big *= q;
  const FiniteField F(big);
  const auto zeta = F.root_of_unity(g.e);
  const std::int64_t inv_frob = static_cast<std::int64_t>(big / q);  // q^(m-1)
  std::vector<bool> done(g.dim(), false);
  std::uint64_t total = 1;
  for (std::size_t start = 0; start < g.dim(); ++start) {
    if (done[start]) continue;
    std::uint64_t ok = 0;
    for (std::uint64_t x0 = 0; x0 < big; ++x0) {
      // x[perm j]^q = zeta^s[perm j] x[j]
      FiniteField::Elem x = static_cast<FiniteField::Elem>(x0);
      std::size_t j = start;
      do {
        const std::size_t i = static_cast<std::size_t>(g.perm[j]);
        x = F.pow(F.mul(F.pow(zeta, g.scalars[i]), x), inv_frob);
        j = i;
      } while (j != start);
      ok += x == x0;
    }
    std::size_t j = start;
    do {
      done[j] = true;
      j = static_cast<std::size_t>(g.perm[j]);
    } while (j != start);
    total *= ok;
  }
  return total;
}

BigInt ipow(long q, std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= q;
  return r;
}

}  // namespace

TEST(Field, Decompose) {
  EXPECT_EQ(prime_power_decompose(81), (std::pair<std::uint64_t, unsigned>{3, 4}));
  EXPECT_EQ(prime_power_decompose(7), (std::pair<std::uint64_t, unsigned>{7, 1}));
  EXPECT_THROW(prime_power_decompose(12), FieldError);
  EXPECT_THROW(prime_power_decompose(1), FieldError);
}

TEST(Field, Axioms) {
  for (std::uint64_t q : {2u, 4u, 8u, 9u, 16u, 25u, 27u, 49u, 64u, 121u}) {
    const FiniteField F(q);
    std::mt19937 rng(static_cast<unsigned>(q));
    for (int t = 0; t < 300; ++t) {
      const auto a = static_cast<FiniteField::Elem>(rng() % q), b = static_cast<FiniteField::Elem>(rng() % q),
                 c = static_cast<FiniteField::Elem>(rng() % q);
      ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))) << q;
      ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
      ASSERT_EQ(F.add(a, F.neg(a)), 0u);
      if (a != 0) ASSERT_EQ(F.mul(a, F.inv(a)), 1u);
      ASSERT_EQ(F.pow(a, static_cast<std::int64_t>(q)), a);  // Frobenius fixes the prime-power field
    }
    // the generator has full order
    const auto g = F.generator();
    std::uint64_t order = 1;
    for (auto x = g; x != 1; x = F.mul(x, g)) ++order;
    EXPECT_EQ(order, q - 1);
  }
}

TEST(Field, RootsOfUnity) {
  const FiniteField F(49);
  const auto z = F.root_of_unity(8);
  EXPECT_EQ(F.pow(z, 8), 1u);
  EXPECT_NE(F.pow(z, 4), 1u);
  EXPECT_EQ(primitive_polynomial(3, 2), primitive_polynomial(3, 2));
}

TEST(FieldSpec, ConductorGuard) {
  EXPECT_NO_THROW(check_field({7, 3, 12}));
  EXPECT_NO_THROW(check_field({4, 3, 12}));
  EXPECT_THROW(check_field({7, 9, 12}), CountError);
  EXPECT_THROW(check_field({10, 3, 12}), CountError);
  EXPECT_THROW(check_field({9, 3, 12}), CountError);  // characteristic divides e
  EXPECT_EQ(default_qs(3), (std::vector<std::uint64_t>{7, 13, 19}));
  EXPECT_EQ(default_qs(9), (std::vector<std::uint64_t>{19, 37, 73}));
  EXPECT_EQ(default_qs(4), (std::vector<std::uint64_t>{5, 13, 17}));
}

TEST(TwistedTorus, Examples) {
  EXPECT_EQ(twisted_torus_count(TwistedMonomialAction::identity(1, 1), 9), 8);
  EXPECT_EQ(twisted_torus_count(action({{0, 1}, {1, 0}}, 1), 3), 8);
  for (long q : {4L, 7L, 13L}) EXPECT_EQ(twisted_torus_count(action({{0, -1}, {1, -1}}, 3), q), q * q + q + 1);
  // the twist does not change the count
  EXPECT_EQ(twisted_torus_count(action({{0, 1}, {1, 0}}, 3, {1, 2}), 7), 48);
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_twisted_count(TwistedMonomialAction::identity(1, 1), 3, 1), 2);
  EXPECT_EQ(brute_force_twisted_count(action({{0, 1}, {1, 0}}, 1), 3, 2), 8);
  EXPECT_EQ(brute_force_twisted_count(action({{0, -1}, {1, -1}}, 3), 4, 3), 21);
  EXPECT_THROW(brute_force_twisted_count(TwistedMonomialAction::identity(4, 1), 7, 4, 1000), CountError);
}

TEST(BruteForce, AgreesWithDeterminantOnCatalog) {
  std::size_t agreed = 0;
  for (const auto& [k, p] : kCatalog) {
    const auto rep = induce_monomial_rep(parse_group_kind(k), p);
    for (std::uint64_t q : {3u, 4u, 5u, 7u, 9u}) {
      if ((q - 1) % rep.e != 0) continue;
      for (const auto& g : enumerate_group(rep)) {
        const auto a = TwistedMonomialAction::from_element(g);
        const unsigned m = brute_force_degree(a, q);
        try {
          EXPECT_EQ(brute_force_twisted_count(a, q, m), twisted_torus_count(a, q)) << k << " q=" << q << " " << g.to_string();
          ++agreed;
        } catch (const CountError& ex) {
          EXPECT_EQ(ex.code(), CountError::Code::BudgetExceeded);
        }
      }
    }
  }
  EXPECT_GT(agreed, 50u);
}

TEST(TwistedAffine, IsAffineSpaceCount) {
  EXPECT_EQ(twisted_affine_count(MonomialElement::identity(3, 1), 7), 343);
  EXPECT_EQ(twisted_affine_count(MonomialElement::diagonal({1, 1}, 2), 5), 25);
  for (const auto& [k, p] : kCatalog) {
    const auto rep = induce_monomial_rep(parse_group_kind(k), p);
    for (long q : {5L, 7L, 13L, 17L, 19L, 37L}) {
      if ((q - 1) % rep.e != 0) continue;
      for (const auto& g : enumerate_group(rep)) ASSERT_EQ(twisted_affine_count(g, q), ipow(q, rep.n)) << k << " " << g.to_string();
    }
  }
}

TEST(TwistedAffine, EnumerationOracle) {
  // heisenberg p=3 at q=7: every element of order dividing 3 has its solutions in GF(7^3)
  const auto rep = induce_monomial_rep(parse_group_kind("heisenberg"), 3);
  int sampled = 0;
  for (const auto& g : enumerate_group(rep)) {
    if (sampled++ % 5 != 0) continue;
    EXPECT_EQ(affine_oracle(g, 7, g.order() == 1 ? 1 : 3), 343u) << g.to_string();
  }
  const auto d = induce_monomial_rep(parse_group_kind("dihedral8"), 2);
  for (const auto& g : enumerate_group(d)) EXPECT_EQ(affine_oracle(g, 5, g.order()), 25u) << g.to_string();
  EXPECT_EQ(affine_oracle(MonomialElement::diagonal({1, 1}, 2), 5, 2), 25u);
}

TEST(Burnside, Examples) {
  const auto triv = burnside_affine_count({MonomialElement::identity(2, 1)}, 5);
  EXPECT_EQ(triv.quotient, 25);
  EXPECT_TRUE(triv.integral);

  const auto s2 = burnside_torus_count({TwistedMonomialAction::identity(1, 2), action({{-1}}, 2)}, 5);
  EXPECT_EQ(s2.per_element, (std::vector<BigInt>{4, 6}));
  EXPECT_EQ(s2.quotient, 5);

  const auto rep = induce_monomial_rep(parse_group_kind("heisenberg"), 3);
  const auto h = burnside_affine_count(enumerate_group(rep), 7);
  EXPECT_EQ(h.group_order, 27);
  for (const auto& c : h.per_element) EXPECT_EQ(c, 343);
  EXPECT_EQ(h.quotient, 343);
}

TEST(Burnside, IntegralityAcrossCatalog) {
  for (const auto& [k, p] : kCatalog) {
    const auto rep = induce_monomial_rep(parse_group_kind(k), p);
    std::vector<TwistedMonomialAction> acts;
    for (const auto& g : enumerate_group(rep)) acts.push_back(TwistedMonomialAction::from_element(g));
    for (std::uint64_t q : default_qs(rep.e)) {
      const auto r = burnside_torus_count(acts, q);
      EXPECT_TRUE(r.integral) << k;
      EXPECT_EQ(r.sum % r.group_order, 0);
    }
  }
}

TEST(Burnside, CyclicQuotientOracles) {
  for (unsigned p : {2u, 3u, 5u}) {
    std::vector<TwistedMonomialAction> S, T;
    IntMatrix a = IntMatrix::identity(p - 1), b = IntMatrix::identity(p);
    for (unsigned k = 0; k < p; ++k) {
      TwistedMonomialAction s = TwistedMonomialAction::identity(p - 1, p), t = TwistedMonomialAction::identity(p, p);
      s.lattice_map = a;
      t.lattice_map = b;
      S.push_back(s);
      T.push_back(t);
      a = a * cyclotomic_companion(p);
      b = b * cyclic_permutation_matrix(p);
    }
    for (std::uint64_t q : default_qs(p)) {
      EXPECT_EQ(burnside_torus_count(S, q).quotient, cyclic_quotient_class(p, CyclicVariant::S).evaluate(q));
      EXPECT_EQ(burnside_torus_count(T, q).quotient, cyclic_quotient_class(p, CyclicVariant::T).evaluate(q));
    }
  }
}

TEST(FlatCount, PointsOnALine) {
  const CycloNumber one(2, Rational(1));
  const nlohmann::json hs = nlohmann::json::array({hyperplane_to_json({{one}, -one}), hyperplane_to_json({{-one}, -one})});
  auto flat = [&](std::vector<int> inc) { return nlohmann::json{{"type", "flat"}, {"e", 2}, {"n", 1}, {"hyperplanes", hs}, {"incidence", inc}}; };
  for (std::uint64_t q : {3u, 5u, 9u}) {
    EXPECT_EQ(flat_stratum_count(flat({}), q), q - 2);
    EXPECT_EQ(flat_stratum_count(flat({0}), q), 1);
    EXPECT_EQ(flat_stratum_count(flat({0, 1}), q), 0);
  }
}

TEST(FlatCount, LargeFieldsUseInclusionExclusion) {
  // three lines through no common point in A^2; beyond the brute-force cutoff
  const CycloNumber one(3, Rational(1));
  nlohmann::json hs = nlohmann::json::array();
  for (long j = 0; j < 3; ++j) hs.push_back(hyperplane_to_json({{CycloNumber::root_of_unity(3, j), CycloNumber::root_of_unity(3, 2 * j)}, one}));
  auto flat = [&](std::vector<int> inc) { return nlohmann::json{{"type", "flat"}, {"e", 3}, {"n", 2}, {"hyperplanes", hs}, {"incidence", inc}}; };
  for (std::uint64_t q : {7u, 13u, 499u, 601u}) {
    EXPECT_EQ(flat_stratum_count(flat({}), q), BigInt(q * q - 3 * q + 3)) << q;
    EXPECT_EQ(flat_stratum_count(flat({0}), q), BigInt(q - 2));
    EXPECT_EQ(flat_stratum_count(flat({0, 1}), q), 1);
    EXPECT_EQ(flat_stratum_count(flat({0, 1, 2}), q), 0);
  }
}

TEST(ModelCount, RejectsMalformed) {
  EXPECT_THROW(model_count({{"type", "nonsense"}}, 7), CountError);
  EXPECT_EQ(model_count({{"type", "point"}}, 7), 1);
}

TEST(Verify, HeisenbergAndModular) {
  const auto h = certify_quotient(induce_monomial_rep(parse_group_kind("heisenberg"), 3));
  const auto r = verify_certificate(h, {7, 13, 19});
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.leaves_checked, 0u);
  std::vector<BigInt> totals;
  for (const auto& c : r.checks)
    if (c.node == 0) totals.push_back(c.observed);
  EXPECT_EQ(totals, (std::vector<BigInt>{343, 2197, 6859}));

  const auto m = certify_quotient(induce_monomial_rep(parse_group_kind("modular"), 3));
  const auto rm = verify_certificate(m, {19, 37});
  EXPECT_TRUE(rm.ok());
  EXPECT_THROW(verify_certificate(m, {7}), CountError);
}

TEST(Verify, CorruptedLeafIsNamed) {
  auto cert = certify_quotient(induce_monomial_rep(parse_group_kind("heisenberg"), 3));
  std::size_t target = cert.nodes.size();
  for (const auto& n : cert.nodes)
    if (n.kind == NodeKind::TorusQuotientLeaf && n.cls == ClassPoly::torus(2)) {
      target = n.id;
      break;
    }
  ASSERT_LT(target, cert.nodes.size());
  cert.nodes[target].cls = ClassPoly::torus(1);
  const std::vector<std::uint64_t> qs{7, 13, 19};
  const auto r = verify_certificate(cert, qs);
  EXPECT_FALSE(r.ok());
  for (std::uint64_t q : qs) {
    bool flagged = false;
    for (const auto& c : r.checks)
      if (c.q == q && c.node == target) flagged = !c.match;
    EXPECT_TRUE(flagged) << q;
  }
  ASSERT_TRUE(r.first_mismatch().has_value());
  EXPECT_EQ(*r.first_mismatch(), target);
}

TEST(Verify, EmptyQListIsStructural) {
  const auto cert = certify_quotient(induce_monomial_rep(parse_group_kind("dihedral8"), 2));
  const auto r = verify_certificate(cert, {});
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.checks.empty());
}
