#pragma once

// Tori, twisted monomial actions on their character lattices, and invariant
// sublattices of diagonal actions.
//
// A TwistedMonomialAction (M, c, e) is the pullback on characters:
//     g^*(x^v) = zeta_e^{<c, v>} x^{M v}.

#include <stdexcept>
#include <string>
#include <vector>

#include "lincert/exact_math.hpp"
#include "lincert/group_rep.hpp"

namespace lincert {

class GeometryError : public std::runtime_error {
 public:
  enum class Code { NotStable, NotUnimodular, NoUnitCoordinate, UnsupportedAction };
  GeometryError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct TwistedMonomialAction {
  IntMatrix lattice_map;
  std::vector<long> scalar_char;  // entries in [0, e)
  unsigned e = 1;

  static TwistedMonomialAction identity(std::size_t rank, unsigned e);
  // Pullback of a monomial element on the coordinate-exponent lattice Z^n.
  static TwistedMonomialAction from_element(const MonomialElement& g);

  std::size_t rank() const { return lattice_map.rows(); }
  bool is_diagonal() const { return lattice_map.is_identity(); }
  bool is_identity() const;
  // Image of the character x^v: (M v, <c, v> mod e).
  std::pair<IntVector, long> apply(const IntVector& v) const;
  unsigned order() const;

  bool operator==(const TwistedMonomialAction& o) const = default;
};

// Action of the product g*h given the actions of g and h.
TwistedMonomialAction product_action(const TwistedMonomialAction& g, const TwistedMonomialAction& h);

struct TorusStratum {
  std::size_t rank = 0;
  std::vector<std::string> coords;
  std::vector<int> origin_subset;
};

struct InvariantLattice {
  IntMatrix basis;  // columns are exponent vectors of invariant monomials
  BigInt index = 1;
};

// Basis (HNF) of {v in Z^n : <c, v> = 0 mod e for every character c}.
InvariantLattice abelian_invariant_lattice(const std::vector<std::vector<long>>& chars, std::size_t n, unsigned e);

// The generator shape x_u^{e'}, x_i x_u^{-a_i / a_u} for a single character with a
// unit entry at coordinate u (the first such coordinate); e' is the order of the
// character. Throws NoUnitCoordinate when no entry is a unit modulo that order.
IntMatrix single_character_generators(const std::vector<long>& chi, unsigned e);

// Express the action in the basis B of a sublattice: new map B^-1 M B, new
// character c . B. Throws NotStable when M B leaves the Z-span of B.
TwistedMonomialAction restrict_action_to_sublattice(const TwistedMonomialAction& action, const IntMatrix& basis);

// Conjugate by the unimodular change of basis U (new coordinate j is x^{U e_j}).
TwistedMonomialAction apply_substitution(const TwistedMonomialAction& action, const IntMatrix& U);

struct CoordinateStratum {
  SubsetOrbit orbit;
  // Diagonal characters acting on the torus of the coordinates in J
  // (restricted to J); for the full subset of a cyclic rep these are N's.
  std::vector<std::vector<long>> chars;
  bool whole_group = false;  // J = everything for a rep with a p-cycle
};

// Coordinate-subset strata of V modulo the cyclic part of the group.
std::vector<CoordinateStratum> coordinate_stratify(const MonomialRep& rep);

}  // namespace lincert
