#include <map>

#include "lincert/strat_engine.hpp"

namespace lincert {
namespace {

nlohmann::json cyclo_to_json(const CycloNumber& z) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : z.coefficients()) a.push_back(c.get_str());
  return a;
}

CycloNumber cyclo_from_json(const nlohmann::json& j, unsigned conductor) {
  std::vector<Rational> c;
  for (const auto& x : j) {
    Rational r(x.get<std::string>());
    r.canonicalize();
    c.push_back(r);
  }
  return CycloNumber::from_coefficients(conductor, std::move(c));
}

// tau^{-1} pulls H back: v_k -> zeta^{-w_k} v_k. Proportionality test on the
// coefficient vectors (coeffs..., constant).
bool proportional(const std::vector<CycloNumber>& a, const std::vector<CycloNumber>& b) {
  std::size_t pivot = b.size();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) {
      pivot = i;
      break;
    }
  if (pivot == b.size()) {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }
  if (a[pivot].is_zero()) return false;
  const CycloNumber lambda = a[pivot] / b[pivot];
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != lambda * b[i]) return false;
  return true;
}

std::vector<CycloNumber> flatten_hyperplane(const AffineHyperplane& h) {
  std::vector<CycloNumber> v = h.coeffs;
  v.push_back(h.constant);
  return v;
}

// Dimension of the intersection of the chosen hyperplanes, -1 when empty.
long flat_dimension(std::size_t n, const std::vector<AffineHyperplane>& hs, const std::vector<int>& subset, unsigned e) {
  if (n == 0) {
    for (int j : subset)
      if (!hs[static_cast<std::size_t>(j)].constant.is_zero()) return -1;
    return 0;
  }
  CycloMatrix A(subset.size(), n, e);
  std::vector<CycloNumber> b;
  for (std::size_t r = 0; r < subset.size(); ++r) {
    const auto& h = hs[static_cast<std::size_t>(subset[r])];
    for (std::size_t k = 0; k < n; ++k) A(r, k) = h.coeffs[k];
    b.push_back(-h.constant);
  }
  return cyclo_solve(A, b).dimension();
}

}  // namespace

nlohmann::json hyperplane_to_json(const AffineHyperplane& h) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& z : h.coeffs) c.push_back(cyclo_to_json(z));
  return {{"coeffs", c}, {"constant", cyclo_to_json(h.constant)}};
}

AffineHyperplane hyperplane_from_json(const nlohmann::json& j, unsigned conductor) {
  AffineHyperplane h;
  for (const auto& z : j.at("coeffs")) h.coeffs.push_back(cyclo_from_json(z, conductor));
  h.constant = cyclo_from_json(j.at("constant"), conductor);
  return h;
}

Draft arrangement_split(std::size_t n, const std::vector<long>& weights, const std::vector<AffineHyperplane>& hyperplanes,
                        unsigned p) {
  if (!is_prime(p)) throw EngineError(EngineError::Code::InvalidInput, "arrangement_split: p must be prime");
  if (weights.size() != n || hyperplanes.size() != p)
    throw EngineError(EngineError::Code::InvalidInput, "arrangement_split: expected n weights and p hyperplanes");
  for (const auto& h : hyperplanes)
    if (h.coeffs.size() != n) throw EngineError(EngineError::Code::InvalidInput, "arrangement_split: hyperplane has wrong length");

  // the list must be one tau-orbit, in order, for some shift
  std::vector<std::vector<CycloNumber>> moved;
  for (const auto& h : hyperplanes) {
    AffineHyperplane t = h;
    for (std::size_t k = 0; k < n; ++k) t.coeffs[k] = t.coeffs[k] * CycloNumber::root_of_unity(p, -weights[k]);
    moved.push_back(flatten_hyperplane(t));
  }
  long shift = -1;
  for (unsigned s = 0; s < p && shift < 0; ++s) {
    bool ok = true;
    for (unsigned j = 0; j < p && ok; ++j) ok = proportional(moved[j], flatten_hyperplane(hyperplanes[(j + s) % p]));
    if (ok) shift = s;
  }
  if (shift < 0) throw EngineError(EngineError::Code::InvalidInput, "arrangement_split: hyperplanes are not one tau-orbit");

  nlohmann::json hjson = nlohmann::json::array();
  for (const auto& h : hyperplanes) hjson.push_back(hyperplane_to_json(h));

  // flats of every nonempty incidence set, keyed by bitmask
  std::map<unsigned, long> dims;
  for (unsigned mask = 1; mask < (1U << p); ++mask) {
    std::vector<int> sub;
    for (unsigned j = 0; j < p; ++j)
      if (mask & (1U << j)) sub.push_back(static_cast<int>(j));
    dims[mask] = flat_dimension(n, hyperplanes, sub, p);
  }
  auto mask_of = [](const std::vector<int>& s) {
    unsigned m = 0;
    for (int j : s) m |= 1U << j;
    return m;
  };
  auto model = [&](const std::vector<int>& incidence) {
    return nlohmann::json{{"type", "flat"}, {"e", p}, {"n", n}, {"hyperplanes", hjson}, {"incidence", incidence}};
  };

  Draft ambient;
  ambient.kind = NodeKind::AffineDiagonalLeaf;
  ambient.dim = static_cast<long>(n);
  ambient.cls = ClassPoly::L_pow(static_cast<unsigned>(n));
  ambient.label = "A^" + std::to_string(n) + "/tau";
  {
    std::vector<MonomialElement> elems;
    for (unsigned k = 0; k < p; ++k) {
      std::vector<long> sc(n);
      for (std::size_t i = 0; i < n; ++i) sc[i] = mod_floor(weights[i] * static_cast<long>(k), static_cast<long>(p));
      elems.push_back(MonomialElement::diagonal(sc, p));
    }
    ambient.payload["model"] = affine_model(elems, n, p);
  }

  Draft uni;
  uni.kind = NodeKind::OpenClosedSplit;
  uni.dim = n == 0 ? 0 : static_cast<long>(n) - 1;
  uni.label = "union/tau";
  const unsigned full = (1U << p) - 1;
  for (const auto& orbit : subset_orbits(p)) {
    const auto& I = orbit.representative;
    if (I.empty()) continue;
    const unsigned mI = mask_of(I);
    const long dimI = dims[mI];
    ClassPoly cls;
    if (mI == full) {
      Draft leaf;
      leaf.payload["incidence"] = I;
      leaf.payload["model"] = model(I);
      if (dimI >= 0) {
        leaf.kind = NodeKind::AffineDiagonalLeaf;
        leaf.dim = dimI;
        leaf.cls = ClassPoly::L_pow(static_cast<unsigned>(dimI));
        leaf.label = "common flat/tau";
      } else {
        leaf.kind = NodeKind::FlatLeaf;
        leaf.dim = 0;
        leaf.label = "common flat (empty)";
      }
      uni.cls = uni.cls + leaf.cls;
      uni.children.push_back(std::move(leaf));
      continue;
    }
    // Moebius inversion over the supersets of I
    for (const auto& [mK, d] : dims) {
      if ((mK & mI) != mI || d < 0) continue;
      const int extra = __builtin_popcount(mK & ~mI);
      const ClassPoly term = ClassPoly::L_pow(static_cast<unsigned>(d));
      cls = (extra % 2 == 0) ? cls + term : cls - term;
    }
    Draft leaf;
    leaf.kind = NodeKind::FlatLeaf;
    leaf.dim = std::max(dimI, 0L);
    leaf.cls = cls;
    leaf.label = "exactly on " + subset_to_string(I);
    leaf.payload["incidence"] = I;
    leaf.payload["flat_dim"] = dimI;
    leaf.payload["model"] = model(I);

    Draft collapse;
    collapse.kind = NodeKind::OrbitCollapse;
    collapse.dim = leaf.dim;
    collapse.cls = cls;
    collapse.label = "orbit of " + subset_to_string(I);
    collapse.payload["subset"] = I;
    collapse.payload["orbit_size"] = orbit.orbit_size;
    collapse.children.push_back(std::move(leaf));
    uni.cls = uni.cls + cls;
    uni.children.push_back(std::move(collapse));
  }

  Draft out;
  out.kind = NodeKind::ArrangementSplit;
  out.dim = static_cast<long>(n);
  out.cls = ambient.cls - uni.cls;
  out.label = "complement of " + std::to_string(p) + " hyperplanes in A^" + std::to_string(n);
  out.payload["weights"] = weights;
  out.payload["hyperplanes"] = hjson;
  out.payload["shift"] = shift;
  out.payload["p"] = p;
  out.children.push_back(std::move(ambient));
  out.children.push_back(std::move(uni));
  return out;
}

}  // namespace lincert
