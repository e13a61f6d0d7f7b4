#pragma once

// Point counts over finite fields, used as an independent oracle for
// certificate classes.
//
// For a twisted action g on a torus with lattice map M, the twisted Frobenius
// count #{x : Frob_q(x) = g.x} equals |det(qI - M)|: the Lang-type map
// x -> Frob(x) / g(x) is an isogeny with kernel of that size. Burnside
// averaging over the group gives the rational points of the quotient.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lincert/certificate.hpp"
#include "lincert/exact_math.hpp"
#include "lincert/group_rep.hpp"
#include "lincert/monomial_geometry.hpp"

namespace lincert {

class CountError : public std::runtime_error {
 public:
  enum class Code { InvalidField, Degenerate, BudgetExceeded, IntegralityViolation, BadReduction, MalformedModel };
  CountError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct FieldSpec {
  std::uint64_t q = 0;
  unsigned conductor = 1;
  unsigned m_max = 12;
};

// Throws CountError(InvalidField) unless q is a prime power with q = 1 mod e
// (which also rules out characteristic dividing e).
void check_field(const FieldSpec& spec);

// The three smallest primes congruent to 1 modulo e.
std::vector<std::uint64_t> default_qs(unsigned e, std::size_t how_many = 3);

BigInt twisted_torus_count(const TwistedMonomialAction& g, const BigInt& q);

// Sum over supports J stable under g of the twisted count on the J-torus.
BigInt twisted_affine_count(const MonomialElement& g, const BigInt& q);

struct CountReport {
  std::vector<BigInt> per_element;
  BigInt sum = 0;
  BigInt group_order = 0;
  BigInt quotient = 0;
  bool integral = false;
  std::optional<BigInt> class_value;
  bool match = false;
};

CountReport burnside_torus_count(const std::vector<TwistedMonomialAction>& group, const BigInt& q);
CountReport burnside_affine_count(const std::vector<MonomialElement>& group, const BigInt& q);

// Extension degree m such that every solution of Frob_q(x) = g.x lies in
// GF(q^m): ord_e(q) times the order of the composite twisted map.
unsigned brute_force_degree(const TwistedMonomialAction& g, std::uint64_t q);

struct BruteForceStats {
  std::uint64_t evaluations = 0;
};

// Counts x in the torus over GF(q^m) with x_i^q = zeta^{c_i} prod_j x_j^{M_ji}
// by enumeration. Permutation lattice maps are walked cycle by cycle.
// Throws CountError(BudgetExceeded) past `budget` evaluations.
BigInt brute_force_twisted_count(const TwistedMonomialAction& g, std::uint64_t q, unsigned m,
                                 std::uint64_t budget = 10000000, BruteForceStats* stats = nullptr);

// Points of GF(q)^n lying on exactly the hyperplanes listed in `incidence`
// (zeta_e mapped to a fixed primitive root of GF(q)).
BigInt flat_stratum_count(const nlohmann::json& flat_model, std::uint64_t q);

// Count of the piece described by a payload model (see strat_engine.hpp).
BigInt model_count(const nlohmann::json& model, std::uint64_t q);

// ---------------------------------------------------------------------------

struct NodeCheck {
  std::uint64_t q = 0;
  std::size_t node = 0;
  std::string kind;
  bool leaf = false;
  BigInt expected = 0;  // class at q
  BigInt observed = 0;  // model count
  bool match = false;
  std::string note;
};

struct VerificationReport {
  std::vector<StructuralIssue> structural;
  std::vector<std::uint64_t> qs;
  std::vector<NodeCheck> checks;  // per q, nodes in id order; node 0 is the total
  bool complete = true;
  std::size_t leaves_checked = 0;

  bool ok() const;
  // First node whose count disagrees, or the first structural issue.
  std::optional<std::size_t> first_mismatch() const;
};

unsigned certificate_conductor(const Certificate& cert);

// Throws CountError(InvalidField) before counting when some q is invalid.
VerificationReport verify_certificate(const Certificate& cert, const std::vector<std::uint64_t>& qs);

}  // namespace lincert
