#pragma once

// Monomial representations of small p-groups.
//
// A MonomialElement g with permutation `perm` and scalar exponents `scalars`
// acts on points of k^n by
//     (g.a)[perm[j]] = zeta_e^{scalars[perm[j]]} * a[j],
// i.e. basis vector e_j goes to zeta^{scalars[perm[j]]} e_{perm[j]}.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lincert {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MonomialElement {
  std::vector<int> perm;      // perm[j] = image of coordinate j
  std::vector<long> scalars;  // exponent of zeta_e on each output coordinate, in [0, e)
  unsigned e = 1;

  static MonomialElement identity(std::size_t n, unsigned e);
  static MonomialElement diagonal(std::vector<long> scalars, unsigned e);

  std::size_t dim() const { return perm.size(); }
  bool is_identity() const;
  bool is_diagonal() const;  // trivial permutation
  bool is_scalar() const;    // diagonal with constant exponents

  MonomialElement operator*(const MonomialElement& rhs) const;
  MonomialElement inverse() const;
  MonomialElement pow(long k) const;
  unsigned order() const;

  bool operator==(const MonomialElement& o) const = default;
  auto operator<=>(const MonomialElement& o) const = default;

  std::string to_string() const;
};

struct Relation {
  std::string text;                             // e.g. "tau pi tau^-1 = sigma pi"
  std::vector<std::pair<std::string, long>> word;  // must evaluate to the identity
};

enum class GroupFamily { Heisenberg, Modular, Dihedral8, Quaternion8, Semidirect, Abelian };

struct GroupKind {
  GroupFamily family = GroupFamily::Heisenberg;
  unsigned s = 2;                  // semidirect Z/p^s x| Z/p
  std::vector<unsigned> abelian;   // invariant factors for Abelian

  std::string to_string() const;
};

// Parses "heisenberg", "modular", "dihedral8", "quaternion8", "semidirect:s",
// "abelian:d1,d2,...". Throws GroupError on unknown names.
GroupKind parse_group_kind(const std::string& text);

bool is_prime(unsigned long n);

struct MonomialRep {
  GroupKind kind;
  unsigned p = 2;
  std::size_t n = 0;  // dimension
  unsigned e = 1;     // root-of-unity conductor
  std::vector<std::pair<std::string, MonomialElement>> generators;
  std::vector<Relation> relations;
  std::size_t order = 1;  // declared group order

  const MonomialElement& generator(const std::string& name) const;
  MonomialElement evaluate(const std::vector<std::pair<std::string, long>>& word) const;

  // The unique non-diagonal generator (the p-cycle), if any.
  const MonomialElement* cycle_generator() const;
  std::string descriptor() const;
};

MonomialRep induce_monomial_rep(const GroupKind& kind, unsigned p);

// Elements generated by the given generators, sorted. Throws GroupError past 10^4.
std::vector<MonomialElement> closure(const std::vector<MonomialElement>& gens);
std::vector<MonomialElement> enumerate_group(const MonomialRep& rep);

struct PresentationReport {
  struct Entry {
    std::string relation;
    bool pass = false;
  };
  std::vector<Entry> relations;
  std::size_t closure_size = 0;
  std::size_t declared_order = 0;
  bool faithful = false;

  bool ok() const;
};

PresentationReport verify_presentation(const MonomialRep& rep);

std::vector<MonomialElement> compute_center(const MonomialRep& rep);

// Diagonal elements of the group (the normal subgroup N of the semidirect decomposition).
std::vector<MonomialElement> diagonal_subgroup(const MonomialRep& rep);

struct SubsetOrbit {
  std::vector<int> representative;  // sorted, 0-based coordinates
  std::size_t orbit_size = 1;
};

// One representative per cyclic-shift orbit of subsets of {0, ..., p-1};
// ordered by subset size then lexicographically.
std::vector<SubsetOrbit> subset_orbits(unsigned p);

std::string subset_to_string(const std::vector<int>& subset);

}  // namespace lincert
