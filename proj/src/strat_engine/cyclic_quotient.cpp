#include "lincert/strat_engine.hpp"

namespace lincert {

IntMatrix cyclotomic_companion(unsigned p) {
  // multiplication by zeta on 1, zeta, ..., zeta^{p-2}
  const std::size_t r = p - 1;
  IntMatrix C(r, r);
  for (std::size_t k = 0; k + 1 < r; ++k) C(k + 1, k) = 1;
  for (std::size_t k = 0; k < r; ++k) C(k, r - 1) = -1;
  return C;
}

IntMatrix cyclic_permutation_matrix(unsigned p) {
  IntMatrix P(p, p);
  for (std::size_t k = 0; k < p; ++k) P((k + 1) % p, k) = 1;
  return P;
}

namespace {

std::vector<TwistedMonomialAction> powers(const IntMatrix& A, unsigned p) {
  std::vector<TwistedMonomialAction> out;
  IntMatrix pw = IntMatrix::identity(A.rows());
  for (unsigned k = 0; k < p; ++k) {
    out.push_back(TwistedMonomialAction{pw, std::vector<long>(A.rows(), 0), p});
    pw = pw * A;
  }
  return out;
}

}  // namespace

// In DFT coordinates X_m = sum_j zeta^{mj} x_j the cycle is diagonal:
// tau^*(X_m) = zeta^{-m} X_m, and x_j is proportional to sum_m zeta^{-jm} X_m.
Draft cyclic_quotient_subtree(unsigned p, CyclicVariant variant) {
  if (!is_prime(p)) throw EngineError(EngineError::Code::InvalidInput, "cyclic quotient: p must be prime");
  const long lp = static_cast<long>(p);
  Draft out;
  out.kind = NodeKind::CyclicStrata;
  out.payload["p"] = p;
  out.payload["tau_order"] = p;

  if (variant == CyclicVariant::S) {
    // P^{p-1} minus the coordinate hyperplanes; stratum i is X_0 = ... = X_{i-1} = 0,
    // X_i = 1 with affine coordinates v_m = X_m / X_i for m > i
    out.dim = lp - 1;
    out.label = "S (p=" + std::to_string(p) + ")";
    out.payload["variant"] = "S";
    out.payload["tau_matrix"] = matrix_to_json(cyclotomic_companion(p));
    out.payload["tau_relation"] = "cyclotomic";
    out.payload["model"] = torus_model(powers(cyclotomic_companion(p), p));
    for (long i = 0; i < lp; ++i) {
      const std::size_t n = static_cast<std::size_t>(lp - 1 - i);
      std::vector<long> weights;
      for (long m = i + 1; m < lp; ++m) weights.push_back(mod_floor(i - m, lp));
      std::vector<AffineHyperplane> hs;
      for (long j = 0; j < lp; ++j) {
        AffineHyperplane h;
        h.constant = CycloNumber::root_of_unity(p, -j * i);
        for (long m = i + 1; m < lp; ++m) h.coeffs.push_back(CycloNumber::root_of_unity(p, -j * m));
        hs.push_back(std::move(h));
      }
      Draft s = arrangement_split(n, weights, hs, p);
      s.label = "S_" + std::to_string(i) + ": " + s.label;
      out.cls = out.cls + s.cls;
      out.children.push_back(std::move(s));
    }
    return out;
  }

  out.dim = lp;
  out.label = "T (p=" + std::to_string(p) + ")";
  out.payload["variant"] = "T";
  out.payload["tau_matrix"] = matrix_to_json(cyclic_permutation_matrix(p));
  out.payload["tau_relation"] = "cycle";
  out.payload["model"] = torus_model(powers(cyclic_permutation_matrix(p), p));
  std::vector<long> weights;
  for (long m = 0; m < lp; ++m) weights.push_back(mod_floor(-m, lp));
  std::vector<AffineHyperplane> hs;
  for (long j = 0; j < lp; ++j) {
    AffineHyperplane h;
    h.constant = CycloNumber(p);
    for (long m = 0; m < lp; ++m) h.coeffs.push_back(CycloNumber::root_of_unity(p, -j * m));
    hs.push_back(std::move(h));
  }
  Draft s = arrangement_split(static_cast<std::size_t>(lp), weights, hs, p);
  out.cls = s.cls;
  out.children.push_back(std::move(s));
  return out;
}

ClassPoly cyclic_quotient_class(unsigned p, CyclicVariant variant) { return cyclic_quotient_subtree(p, variant).cls; }

}  // namespace lincert
