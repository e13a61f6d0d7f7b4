#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lincert/group_rep.hpp"

using namespace lincert;

namespace {

MonomialElement random_element(std::mt19937& rng, std::size_t n, unsigned e) {
  MonomialElement g = MonomialElement::identity(n, e);
  std::shuffle(g.perm.begin(), g.perm.end(), rng);
  for (auto& s : g.scalars) s = static_cast<long>(rng() % e);
  return g;
}

// Acts on a vector of exponents of zeta: a -> g.a, coordinates permuted then scaled.
// Compared against composition to pin the convention.
std::vector<long> act(const MonomialElement& g, const std::vector<long>& a) {
  std::vector<long> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const int i = g.perm[j];
    out[i] = (a[j] + g.scalars[i]) % static_cast<long>(g.e);
  }
  return out;
}

std::set<MonomialElement> as_set(const std::vector<MonomialElement>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Monomial, CompositionIsAssociativeAndMatchesAction) {
  std::mt19937 rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const unsigned e = 1 + rng() % 9;
    const auto a = random_element(rng, n, e), b = random_element(rng, n, e), c = random_element(rng, n, e);
    ASSERT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    std::vector<long> v(n);
    for (auto& x : v) x = static_cast<long>(rng() % e);
    EXPECT_EQ(act(a * b, v), act(a, act(b, v)));
  }
}

TEST(Monomial, OrderOfCycle) {
  MonomialElement t = MonomialElement::identity(3, 3);
  t.perm = {1, 2, 0};
  EXPECT_EQ(t.order(), 3u);
  t.scalars = {1, 0, 0};
  EXPECT_EQ(t.order(), 9u);  // t^3 = scalar zeta
  EXPECT_TRUE(t.pow(3).is_scalar());
}

TEST(Catalog, ParseKinds) {
  EXPECT_EQ(parse_group_kind("heisenberg").family, GroupFamily::Heisenberg);
  EXPECT_EQ(parse_group_kind("semidirect:3").s, 3u);
  EXPECT_EQ(parse_group_kind("abelian:2,4").abelian, (std::vector<unsigned>{2, 4}));
  EXPECT_THROW(parse_group_kind("cyclic"), GroupError);
  EXPECT_THROW(parse_group_kind("abelian:"), GroupError);
  EXPECT_THROW(induce_monomial_rep(parse_group_kind("dihedral8"), 3), GroupError);
  EXPECT_THROW(induce_monomial_rep(parse_group_kind("quaternion8"), 5), GroupError);
}

TEST(Catalog, HeisenbergThree) {
  const auto rep = induce_monomial_rep(parse_group_kind("heisenberg"), 3);
  EXPECT_EQ(rep.e, 3u);
  EXPECT_EQ(rep.generator("pi").scalars, (std::vector<long>{0, 1, 2}));
  EXPECT_TRUE(rep.generator("pi").is_diagonal());
  EXPECT_EQ(rep.generator("sigma").scalars, (std::vector<long>{1, 1, 1}));
  const auto& tau = rep.generator("tau");
  EXPECT_EQ(tau.scalars, (std::vector<long>{0, 0, 0}));
  EXPECT_EQ(tau.order(), 3u);
  EXPECT_FALSE(tau.is_diagonal());
  const auto r = verify_presentation(rep);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.closure_size, 27u);
}

TEST(Catalog, ModularThree) {
  const auto rep = induce_monomial_rep(parse_group_kind("modular"), 3);
  EXPECT_EQ(rep.e, 9u);
  EXPECT_EQ(rep.generator("sigma").scalars, (std::vector<long>{1, 4, 7}));
  const auto& s = rep.generator("sigma");
  const auto& t = rep.generator("tau");
  EXPECT_EQ(t * s * t.inverse(), s.pow(4));
  const auto r = verify_presentation(rep);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.closure_size, 27u);
}

TEST(Catalog, CorruptedPiFails) {
  auto rep = induce_monomial_rep(parse_group_kind("heisenberg"), 3);
  for (auto& [name, g] : rep.generators)
    if (name == "pi") g.scalars = {0, 1, 1};
  const auto r = verify_presentation(rep);
  EXPECT_FALSE(r.ok());
  bool some_failed = false;
  for (const auto& entry : r.relations) some_failed = some_failed || !entry.pass;
  EXPECT_TRUE(some_failed);
}

TEST(Catalog, EveryKindVerifies) {
  const std::vector<std::pair<std::string, unsigned>> cases{
      {"heisenberg", 2}, {"heisenberg", 3}, {"heisenberg", 5}, {"modular", 2}, {"modular", 3}, {"modular", 5},
      {"dihedral8", 2}, {"quaternion8", 2}, {"semidirect:2", 3}, {"semidirect:3", 2}, {"semidirect:3", 3},
      {"abelian:2,2", 2}, {"abelian:3,9", 3}, {"abelian:2,4,8", 2}};
  for (const auto& [k, p] : cases) {
    const auto rep = induce_monomial_rep(parse_group_kind(k), p);
    const auto r = verify_presentation(rep);
    EXPECT_TRUE(r.ok()) << k << " p=" << p;
    EXPECT_TRUE(r.faithful) << k;
    EXPECT_EQ(r.closure_size, r.declared_order) << k;
    // only the identity acts trivially
    for (const auto& g : enumerate_group(rep))
      if (g.is_identity()) EXPECT_EQ(g, MonomialElement::identity(rep.n, rep.e));
  }
}

TEST(Catalog, ClosureIgnoresGeneratorOrder) {
  const auto rep = induce_monomial_rep(parse_group_kind("modular"), 3);
  std::vector<MonomialElement> gens;
  for (const auto& [name, g] : rep.generators) gens.push_back(g);
  const auto a = as_set(closure(gens));
  std::reverse(gens.begin(), gens.end());
  EXPECT_EQ(a, as_set(closure(gens)));
  std::rotate(gens.begin(), gens.begin() + 1, gens.end());
  EXPECT_EQ(a, as_set(closure(gens)));
}

TEST(Catalog, ClosureCap) {
  // Z/2 x Z/5 x Z/7 x ... quickly exceeds 10^4 with enough coordinates
  std::vector<MonomialElement> gens;
  for (unsigned i = 0; i < 6; ++i) {
    std::vector<long> s(6, 0);
    s[i] = 1;
    gens.push_back(MonomialElement::diagonal(s, 5));
  }
  EXPECT_THROW(closure(gens), GroupError);
}

TEST(Center, NonAbelianOrderPCubed) {
  for (const char* k : {"heisenberg", "modular"}) {
    for (unsigned p : {2u, 3u, 5u}) {
      const auto rep = induce_monomial_rep(parse_group_kind(k), p);
      const auto z = compute_center(rep);
      EXPECT_EQ(z.size(), p) << k << p;
      for (const auto& g : z) EXPECT_TRUE(g.is_scalar()) << g.to_string();
    }
  }
  const auto h = induce_monomial_rep(parse_group_kind("heisenberg"), 3);
  const auto zh = as_set(compute_center(h));
  EXPECT_TRUE(zh.count(h.generator("sigma")));
  const auto m = induce_monomial_rep(parse_group_kind("modular"), 3);
  const auto zm = as_set(compute_center(m));
  EXPECT_TRUE(zm.count(m.generator("sigma").pow(3)));
  EXPECT_FALSE(zm.count(m.generator("sigma")));
}

TEST(Center, AbelianIsWholeGroup) {
  const auto rep = induce_monomial_rep(parse_group_kind("abelian:2,4"), 2);
  EXPECT_EQ(compute_center(rep).size(), 8u);
}

TEST(SubsetOrbits, Counts) {
  EXPECT_EQ(subset_orbits(2).size(), 3u);
  EXPECT_EQ(subset_orbits(3).size(), 4u);
  EXPECT_EQ(subset_orbits(5).size(), 8u);
  for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
    const auto orbits = subset_orbits(p);
    EXPECT_EQ(orbits.size(), 2 + ((1u << p) - 2) / p);
    std::size_t total = 0;
    for (const auto& o : orbits) {
      total += o.orbit_size;
      const bool trivial = o.representative.empty() || o.representative.size() == p;
      EXPECT_EQ(o.orbit_size, trivial ? 1u : p);
    }
    EXPECT_EQ(total, std::size_t{1} << p);
  }
}

TEST(SubsetOrbits, ThreeRepresentatives) {
  const auto o = subset_orbits(3);
  std::set<std::vector<int>> reps;
  for (const auto& x : o) reps.insert(x.representative);
  EXPECT_EQ(reps, (std::set<std::vector<int>>{{}, {0}, {0, 1}, {0, 1, 2}}));
}
