#pragma once

// The certifier: stratifies V/G for a monomial p-group representation into
// torus quotients, affine diagonal quotients and points, and records the
// steps as a Certificate.
//
// Verification models. Nodes whose piece can be counted independently carry
// payload["model"], read by the point-count oracle:
//   {"type":"point"}
//   {"type":"group_torus","e":e,"rank":r,"actions":[{"M":matrix,"c":[...]}, ...]}
//       the quotient of the rank-r torus by the listed twisted actions (the
//       full image of the group, so Burnside averaging applies)
//   {"type":"group_affine","e":e,"n":n,"elements":[{"perm":[...],"scalars":[...]}, ...]}
//   {"type":"flat","e":p,"n":n,"hyperplanes":[...],"incidence":[...]}
//       points of A^n lying on exactly the listed hyperplanes

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lincert/certificate.hpp"
#include "lincert/class_poly.hpp"
#include "lincert/exact_math.hpp"
#include "lincert/group_rep.hpp"
#include "lincert/monomial_geometry.hpp"

namespace lincert {

struct EngineConfig {
  long search_bound = 3;              // max-norm for invariant vectors and cyclic generators
  unsigned p_cap = 7;
  std::size_t cyclic_budget = 100000;  // candidates tried by cyclic_generator
};

class EngineError : public std::runtime_error {
 public:
  enum class Code { Unsupported, PCapExceeded, NotScalarCenter, WrongBranch, IncompleteCertificate, InvalidInput };
  EngineError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// ---------------------------------------------------------------------------
// Pipeline steps, exposed for testing.

struct CenterReduction {
  IntMatrix basis;          // columns: y_1 = x_1^{|Z|}, y_i = x_i / x_{i-1}
  BigInt center_order = 1;
  std::vector<std::pair<std::string, TwistedMonomialAction>> residual;  // generators on the y-lattice
};

CenterReduction center_reduce(const MonomialRep& rep);

enum class SplitStatus { Found, ModularBranch, NotFound };

struct SplitResult {
  SplitStatus status = SplitStatus::NotFound;
  IntVector vector;       // exponents of z_1 in the input basis
  IntMatrix substitution;  // columns z_1, e_2, ..., e_n
  long bound = 0;
};

// Searches v with v_1 = 1 and |v_i| <= bound for a coordinate fixed by every
// generator (same lattice image and trivial character).
SplitResult find_invariant_splitting(const std::vector<TwistedMonomialAction>& generators, long bound);

// tau restricted to the lattice spanned by `basis`, after checking the
// cyclotomic relation. Throws GeometryError(NotStable) or EngineError.
TwistedMonomialAction tau_lattice_action(const TwistedMonomialAction& tau, const IntMatrix& basis, unsigned p);

// First v (max-norm, then colexicographic on the encoding 0,1,-1,2,-2,...)
// with [v, Av, ..., A^{r-1}v] unimodular; gives up after `budget` candidates.
std::optional<IntVector> cyclic_generator(const IntMatrix& A, long bound, std::size_t budget = 100000);
IntMatrix krylov_matrix(const IntMatrix& A, const IntVector& v);

struct ModularReduction {
  IntMatrix lattice;  // N-invariant sublattice, in the input basis
  BigInt index = 1;
  TwistedMonomialAction tau;  // on that sublattice
};

// Requires every diagonal element to act by one scalar on all input
// coordinates; throws EngineError(WrongBranch) otherwise.
ModularReduction modular_reduce(const std::vector<TwistedMonomialAction>& group_image, const TwistedMonomialAction& tau);

// ---------------------------------------------------------------------------
// Cyclic quotients of linear pieces.

struct AffineHyperplane {
  std::vector<CycloNumber> coeffs;  // sum coeffs[k] v_k + constant = 0
  CycloNumber constant;
};

nlohmann::json hyperplane_to_json(const AffineHyperplane& h);
AffineHyperplane hyperplane_from_json(const nlohmann::json& j, unsigned conductor);

// A^n minus the union of p hyperplanes permuted cyclically by the diagonal
// order-p action with the given weights (tau scales v_k by zeta_p^{weights[k]}),
// modulo that action.
Draft arrangement_split(std::size_t n, const std::vector<long>& weights, const std::vector<AffineHyperplane>& hyperplanes,
                        unsigned p);

enum class CyclicVariant { S, T };

// S: rank p-1 torus with the companion action of the p-th cyclotomic
// polynomial. T: rank p torus with the cyclic permutation.
Draft cyclic_quotient_subtree(unsigned p, CyclicVariant variant);
ClassPoly cyclic_quotient_class(unsigned p, CyclicVariant variant);
IntMatrix cyclotomic_companion(unsigned p);
IntMatrix cyclic_permutation_matrix(unsigned p);

// ---------------------------------------------------------------------------

nlohmann::json describe_group(const MonomialRep& rep);

// Never throws for mathematical failure: a step that fails leaves a stuck
// marker. Throws EngineError for unsupported input or p above the cap.
Certificate certify_quotient(const MonomialRep& rep, const EngineConfig& config = {});

// Throws EngineError(IncompleteCertificate) when stuck markers are present.
ClassPoly total_class(const Certificate& cert);

// Model helpers shared with tests.
nlohmann::json torus_model(const std::vector<TwistedMonomialAction>& actions);
nlohmann::json affine_model(const std::vector<MonomialElement>& elements, std::size_t n, unsigned e);

}  // namespace lincert
