#include <algorithm>
#include <cstdint>
#include <map>

#include "lincert/strat_engine.hpp"

namespace lincert {
namespace {

using Actions = std::vector<TwistedMonomialAction>;

std::string action_key(const TwistedMonomialAction& a) {
  std::string k = a.lattice_map.to_string() + "|";
  for (long c : a.scalar_char) k += std::to_string(c) + ",";
  return k;
}

Actions dedupe(const Actions& in) {
  std::map<std::string, TwistedMonomialAction> m;
  for (const auto& a : in) m.emplace(action_key(a), a);
  Actions out;
  for (auto& [k, a] : m) out.push_back(std::move(a));
  return out;
}

Actions restrict_all(const Actions& in, const IntMatrix& basis) {
  Actions out;
  for (const auto& a : in) out.push_back(restrict_action_to_sublattice(a, basis));
  return dedupe(out);
}

long zigzag(std::size_t code) {
  if (code == 0) return 0;
  return code % 2 == 1 ? static_cast<long>((code + 1) / 2) : -static_cast<long>(code / 2);
}

// Calls visit(v) for every vector of length r with max-norm exactly k, in
// colexicographic order of the zigzag codes; stops when visit returns true.
template <class Visit>
bool for_each_of_norm(std::size_t r, long k, Visit visit) {
  if (r == 0) return false;
  const std::size_t radix = 2 * static_cast<std::size_t>(k) + 1;
  std::vector<std::size_t> digits(r, 0);
  std::vector<long> v(r, 0);
  while (true) {
    bool exact = k == 0;
    for (std::size_t i = 0; i < r && !exact; ++i) exact = digits[i] + 1 >= radix - 1;
    if (exact) {
      for (std::size_t i = 0; i < r; ++i) v[i] = zigzag(digits[i]);
      if (visit(v)) return true;
    }
    std::size_t i = 0;
    while (i < r && ++digits[i] == radix) digits[i++] = 0;
    if (i == r) return false;
  }
}

constexpr std::int64_t kFilterPrime = 2147483647;

std::int64_t det_mod(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t n = m.size();
  std::int64_t det = 1;
  auto inv = [](std::int64_t a) {
    std::int64_t r = 1, b = a, e = kFilterPrime - 2;
    while (e) {
      if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % kFilterPrime);
      b = static_cast<std::int64_t>((__int128)b * b % kFilterPrime);
      e >>= 1;
    }
    return r;
  };
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = kFilterPrime - det;
    }
    det = static_cast<std::int64_t>((__int128)det * m[c][c] % kFilterPrime);
    const std::int64_t iv = inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const std::int64_t f = static_cast<std::int64_t>((__int128)m[r][c] * iv % kFilterPrime);
      for (std::size_t k = c; k < n; ++k)
        m[r][k] = static_cast<std::int64_t>(((__int128)m[r][k] - (__int128)f * m[c][k]) % kFilterPrime + kFilterPrime) % kFilterPrime;
    }
  }
  return det % kFilterPrime;
}

Draft stuck_node(NodeKind kind, long dim, const std::string& stage, const std::string& reason) {
  Draft d;
  d.kind = kind;
  d.dim = dim;
  d.stuck = stage;
  d.label = reason;
  d.payload["reason"] = reason;
  return d;
}

nlohmann::json vector_json(const IntVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(bigint_to_json(x));
  return a;
}

const TwistedMonomialAction& lookup(const std::vector<std::pair<std::string, TwistedMonomialAction>>& named, const std::string& name) {
  for (const auto& [n, a] : named)
    if (n == name) return a;
  throw EngineError(EngineError::Code::InvalidInput, "unknown generator " + name);
}

}  // namespace

nlohmann::json torus_model(const std::vector<TwistedMonomialAction>& actions) {
  nlohmann::json acts = nlohmann::json::array();
  for (const auto& a : actions) acts.push_back({{"M", matrix_to_json(a.lattice_map)}, {"c", a.scalar_char}});
  const unsigned e = actions.empty() ? 1 : actions.front().e;
  const std::size_t r = actions.empty() ? 0 : actions.front().rank();
  return {{"type", "group_torus"}, {"e", e}, {"rank", r}, {"actions", acts}};
}

nlohmann::json affine_model(const std::vector<MonomialElement>& elements, std::size_t n, unsigned e) {
  nlohmann::json els = nlohmann::json::array();
  for (const auto& g : elements) els.push_back({{"perm", g.perm}, {"scalars", g.scalars}});
  return {{"type", "group_affine"}, {"e", e}, {"n", n}, {"elements", els}};
}

nlohmann::json describe_group(const MonomialRep& rep) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& [name, g] : rep.generators) gens.push_back({{"name", name}, {"perm", g.perm}, {"scalars", g.scalars}});
  return {{"kind", rep.kind.to_string()}, {"p", rep.p}, {"n", rep.n}, {"e", rep.e}, {"order", rep.order}, {"generators", gens}};
}

CenterReduction center_reduce(const MonomialRep& rep) {
  const auto center = compute_center(rep);
  for (const auto& z : center)
    if (!z.is_scalar())
      throw EngineError(EngineError::Code::NotScalarCenter, "center_reduce: the center does not act by scalars");
  const std::size_t n = rep.n;
  CenterReduction out;
  out.center_order = static_cast<unsigned long>(center.size());
  out.basis = IntMatrix(n, n);
  out.basis(0, 0) = out.center_order;
  for (std::size_t i = 1; i < n; ++i) {
    out.basis(i, i) = 1;
    out.basis(i - 1, i) = -1;
  }
  // the y-basis must span exactly the invariant lattice
  std::vector<std::vector<long>> chars;
  for (const auto& z : center) chars.push_back(z.scalars);
  const InvariantLattice inv = abelian_invariant_lattice(chars, n, rep.e);
  if (inv.index != out.center_order || abs(out.basis.determinant()) != out.center_order)
    throw EngineError(EngineError::Code::NotScalarCenter, "center_reduce: invariant lattice has unexpected index");
  for (std::size_t j = 0; j < n; ++j)
    if (!solve_in_lattice(inv.basis, out.basis.column(j)))
      throw EngineError(EngineError::Code::NotScalarCenter, "center_reduce: basis vector is not central-invariant");
  for (const auto& [name, g] : rep.generators)
    out.residual.emplace_back(name, restrict_action_to_sublattice(TwistedMonomialAction::from_element(g), out.basis));
  return out;
}

SplitResult find_invariant_splitting(const std::vector<TwistedMonomialAction>& generators, long bound) {
  SplitResult out;
  out.bound = bound;
  if (generators.empty()) throw EngineError(EngineError::Code::InvalidInput, "find_invariant_splitting: no generators");
  const std::size_t n = generators.front().rank();
  bool lattice_fixed_seen = false;
  IntVector v(n, 0);
  v[0] = 1;
  for (long k = 0; k <= std::max(bound, 0L); ++k) {
    const bool hit = for_each_of_norm(n - 1, k, [&](const std::vector<long>& tail) {
      for (std::size_t i = 1; i < n; ++i) v[i] = tail[i - 1];
      bool fixed = true, trivial = true;
      for (const auto& g : generators) {
        auto [img, ch] = g.apply(v);
        if (img != v) {
          fixed = false;
          break;
        }
        if (ch != 0) trivial = false;
      }
      if (fixed) lattice_fixed_seen = true;
      return fixed && trivial;
    });
    if (n == 1 && k == 0) {
      bool fixed = true, trivial = true;
      for (const auto& g : generators) {
        auto [img, ch] = g.apply(v);
        fixed = fixed && img == v;
        trivial = trivial && ch == 0;
      }
      if (fixed) lattice_fixed_seen = true;
      if (fixed && trivial) {
        out.status = SplitStatus::Found;
        out.vector = v;
        out.substitution = IntMatrix::identity(1);
        return out;
      }
    }
    if (hit) {
      out.status = SplitStatus::Found;
      out.vector = v;
      out.substitution = IntMatrix::identity(n);
      out.substitution.set_column(0, v);
      return out;
    }
  }
  out.status = lattice_fixed_seen ? SplitStatus::ModularBranch : SplitStatus::NotFound;
  return out;
}

TwistedMonomialAction tau_lattice_action(const TwistedMonomialAction& tau, const IntMatrix& basis, unsigned p) {
  TwistedMonomialAction a = restrict_action_to_sublattice(tau, basis);
  IntMatrix sum(a.rank(), a.rank());
  IntMatrix pw = IntMatrix::identity(a.rank());
  for (unsigned k = 0; k < p; ++k) {
    sum = sum + pw;
    pw = pw * a.lattice_map;
  }
  if (!sum.is_zero() || !pw.is_identity())
    throw EngineError(EngineError::Code::WrongBranch, "tau_lattice_action: cyclotomic relation fails");
  return a;
}

IntMatrix krylov_matrix(const IntMatrix& A, const IntVector& v) {
  const std::size_t r = A.rows();
  IntMatrix K(r, r);
  IntVector w = v;
  for (std::size_t j = 0; j < r; ++j) {
    K.set_column(j, w);
    w = A * w;
  }
  return K;
}

std::optional<IntVector> cyclic_generator(const IntMatrix& A, long bound, std::size_t budget) {
  const std::size_t r = A.rows();
  if (r == 0 || A.cols() != r) return std::nullopt;
  std::vector<std::vector<std::int64_t>> Am(r, std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) Am[i][j] = mod_floor(A(i, j), BigInt(kFilterPrime)).get_si();
  std::size_t tried = 0;
  std::optional<IntVector> found;
  for (long k = 1; k <= bound && !found; ++k) {
    for_each_of_norm(r, k, [&](const std::vector<long>& v) {
      if (++tried > budget) return true;
      // cheap filter: the Krylov determinant modulo a large prime must be +-1
      std::vector<std::vector<std::int64_t>> K(r, std::vector<std::int64_t>(r));
      std::vector<std::int64_t> w(r);
      for (std::size_t i = 0; i < r; ++i) w[i] = mod_floor(v[i], kFilterPrime);
      for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t i = 0; i < r; ++i) K[i][j] = w[i];
        std::vector<std::int64_t> nw(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
          __int128 s = 0;
          for (std::size_t l = 0; l < r; ++l) s += (__int128)Am[i][l] * w[l];
          nw[i] = static_cast<std::int64_t>(s % kFilterPrime);
        }
        w = std::move(nw);
      }
      const std::int64_t d = det_mod(std::move(K));
      if (d != 1 && d != kFilterPrime - 1) return false;
      IntVector bv(v.begin(), v.end());
      if (!krylov_matrix(A, bv).is_unimodular()) return false;
      found = bv;
      return true;
    });
    if (tried > budget) break;
  }
  return found;
}

namespace {

// Invariants of the whole diagonal part, whatever its characters look like.
ModularReduction diagonal_reduce(const std::vector<TwistedMonomialAction>& group_image, const TwistedMonomialAction& tau) {
  const std::size_t n = tau.rank();
  std::vector<std::vector<long>> chars;
  for (const auto& g : group_image)
    if (g.is_diagonal()) chars.push_back(g.scalar_char);
  ModularReduction out;
  const InvariantLattice inv = abelian_invariant_lattice(chars, n, tau.e);
  out.lattice = inv.basis;
  out.index = inv.index;
  out.tau = restrict_action_to_sublattice(tau, out.lattice);
  return out;
}

}  // namespace

ModularReduction modular_reduce(const std::vector<TwistedMonomialAction>& group_image, const TwistedMonomialAction& tau) {
  for (const auto& g : group_image) {
    if (!g.is_diagonal()) continue;
    for (long c : g.scalar_char)
      if (c != g.scalar_char.front())
        throw EngineError(EngineError::Code::WrongBranch, "modular_reduce: diagonal part does not act by a single character");
  }
  return diagonal_reduce(group_image, tau);
}

ClassPoly total_class(const Certificate& cert) {
  if (!cert.complete())
    throw EngineError(EngineError::Code::IncompleteCertificate, "total_class: certificate has stuck markers");
  return cert.nodes.at(cert.root).cls;
}

// ---------------------------------------------------------------------------

namespace {

struct OpenContext {
  const MonomialRep& rep;
  const EngineConfig& cfg;
  unsigned p;
  std::string tau_name;
};

// rank p-1 piece with tau satisfying the cyclotomic relation and no twist
Draft cyclic_substitution(const OpenContext& ctx, const TwistedMonomialAction& tau, const Actions& image) {
  const unsigned p = ctx.p;
  const long dim = static_cast<long>(tau.rank());
  for (long c : tau.scalar_char)
    if (c != 0) return stuck_node(NodeKind::Substitution, dim, "tau_lattice_action", "tau carries a scalar twist on the cyclotomic lattice");
  auto v = cyclic_generator(tau.lattice_map, ctx.cfg.search_bound, ctx.cfg.cyclic_budget);
  if (!v)
    return stuck_node(NodeKind::Substitution, dim, "cyclic_generator",
                      "no cyclic generator with max-norm <= " + std::to_string(ctx.cfg.search_bound));
  const IntMatrix W = krylov_matrix(tau.lattice_map, *v);
  const TwistedMonomialAction normal = apply_substitution(tau, W);
  if (!(normal.lattice_map == cyclotomic_companion(p)))
    throw EngineError(EngineError::Code::InvalidInput, "internal: cyclic basis does not give the companion matrix");
  Draft d;
  d.kind = NodeKind::Substitution;
  d.dim = dim;
  d.label = "cyclic basis v, Av, ..., A^(p-2)v";
  d.payload["generator"] = vector_json(*v);
  d.payload["matrix"] = matrix_to_json(W);
  d.payload["tau_matrix"] = matrix_to_json(tau.lattice_map);
  d.payload["tau_order"] = p;
  d.payload["tau_relation"] = "cyclotomic";
  d.payload["model"] = torus_model(image);
  d.children.push_back(cyclic_quotient_subtree(p, CyclicVariant::S));
  d.cls = d.children.back().cls;
  return d;
}

Draft diagonal_quotient(const IntMatrix& lattice, const BigInt& index, const Actions& image, Draft child) {
  Draft d;
  d.kind = NodeKind::OrbitCollapse;
  d.dim = child.dim;
  d.cls = child.cls;
  d.label = "quotient by the diagonal subgroup";
  d.payload["mode"] = "diagonal_quotient";
  d.payload["lattice"] = matrix_to_json(lattice);
  d.payload["index"] = bigint_to_json(index);
  d.payload["model"] = torus_model(image);
  d.children.push_back(std::move(child));
  return d;
}

Draft heisenberg_branch(const OpenContext& ctx, const SplitResult& split, const Actions& yall, const TwistedMonomialAction& ytau) {
  const unsigned p = ctx.p;
  const std::size_t n = ytau.rank();
  Draft node;
  node.kind = NodeKind::InvariantSplit;
  node.dim = static_cast<long>(n);
  node.label = "split off the invariant coordinate z1";
  node.payload["mode"] = "invariant";
  node.payload["vector"] = vector_json(split.vector);
  node.payload["matrix"] = matrix_to_json(split.substitution);
  node.payload["model"] = torus_model(yall);

  const Actions zall = restrict_all(yall, split.substitution);
  const TwistedMonomialAction ztau = apply_substitution(ytau, split.substitution);
  IntMatrix K(n, n - 1);
  for (std::size_t i = 1; i < n; ++i) K(i, i - 1) = 1;
  Actions kall;
  TwistedMonomialAction ktau;
  try {
    kall = restrict_all(zall, K);
    ktau = restrict_action_to_sublattice(ztau, K);
  } catch (const GeometryError& ex) {
    node.children.push_back(stuck_node(NodeKind::OrbitCollapse, node.dim - 1, "invariant_split", ex.what()));
    return node;
  }
  std::vector<std::vector<long>> chars;
  for (const auto& a : kall)
    if (a.is_diagonal()) chars.push_back(a.scalar_char);
  const InvariantLattice kn = abelian_invariant_lattice(chars, n - 1, ytau.e);
  const Actions nall = restrict_all(kall, kn.basis);

  Draft inner;
  try {
    const TwistedMonomialAction A = tau_lattice_action(ktau, kn.basis, p);
    inner = cyclic_substitution(ctx, A, nall);
  } catch (const EngineError& ex) {
    inner = stuck_node(NodeKind::Substitution, node.dim - 1, "tau_lattice_action", ex.what());
  } catch (const GeometryError& ex) {
    inner = stuck_node(NodeKind::Substitution, node.dim - 1, "tau_lattice_action", ex.what());
  }
  node.children.push_back(diagonal_quotient(kn.basis, kn.index, kall, std::move(inner)));
  node.cls = ClassPoly::torus(1) * node.children.back().cls;
  return node;
}

// tau on a rank-p lattice: a cyclic generator gives the permutation form
// (after removing the twist by a torsion translation); otherwise try to split
// off a fixed coordinate on which tau translates.
// With `general` the diagonal characters need not be constant; used when an
// orbit-fixed coordinate exists but carries a character.
Draft modular_branch(const OpenContext& ctx, const Actions& yall, const TwistedMonomialAction& ytau, bool general) {
  const unsigned p = ctx.p;
  const ModularReduction red = general ? diagonal_reduce(yall, ytau) : modular_reduce(yall, ytau);
  const Actions nall = restrict_all(yall, red.lattice);
  const TwistedMonomialAction& tau = red.tau;
  const std::size_t r = tau.rank();
  const long e = static_cast<long>(tau.e);

  Draft inner;
  if (!tau.lattice_map.power(p).is_identity()) {
    inner = stuck_node(NodeKind::Substitution, static_cast<long>(r), "modular_reduce", "tau does not have order p on the lattice");
  } else if (auto v = cyclic_generator(tau.lattice_map, ctx.cfg.search_bound, ctx.cfg.cyclic_budget); v && r == p) {
    const IntMatrix W = krylov_matrix(tau.lattice_map, *v);
    std::vector<long> twist;
    long total = 0;
    for (std::size_t k = 0; k < r; ++k) {
      BigInt s = 0;
      for (std::size_t i = 0; i < r; ++i) s += tau.scalar_char[i] * W(i, k);
      twist.push_back(mod_floor(s, BigInt(e)).get_si());
      total += twist.back();
    }
    if (mod_floor(total, e) != 0) {
      inner = stuck_node(NodeKind::Substitution, static_cast<long>(r), "modular_reduce", "cycle twist does not vanish");
    } else {
      // w'_k = zeta^{-a_k} w_k with a_0 = 0, a_{k+1} = a_k + twist_k removes the twist
      std::vector<long> rescale{0};
      for (std::size_t k = 0; k + 1 < r; ++k) rescale.push_back(mod_floor(rescale.back() + twist[k], e));
      inner.kind = NodeKind::Substitution;
      inner.dim = static_cast<long>(r);
      inner.label = "cycle basis w_k = A^k v";
      inner.payload["generator"] = vector_json(*v);
      inner.payload["matrix"] = matrix_to_json(W);
      inner.payload["tau_matrix"] = matrix_to_json(tau.lattice_map);
      inner.payload["tau_order"] = p;
      inner.payload["tau_relation"] = "cycle";
      inner.payload["twist"] = twist;
      inner.payload["rescale"] = rescale;
      inner.payload["model"] = torus_model(nall);
      inner.children.push_back(cyclic_quotient_subtree(p, CyclicVariant::T));
      inner.cls = inner.children.back().cls;
    }
  } else {
    inner = stuck_node(NodeKind::InvariantSplit, static_cast<long>(r), "invariant_split",
                       "no cyclic generator and no translation splitting");
    const IntMatrix fixed = integer_kernel(tau.lattice_map - IntMatrix::identity(r));
    IntMatrix norm(r, r);
    IntMatrix pw = IntMatrix::identity(r);
    for (unsigned k = 0; k < p; ++k) {
      norm = norm + pw;
      pw = pw * tau.lattice_map;
    }
    const IntMatrix comp = integer_kernel(norm);
    if (fixed.cols() == 1 && comp.cols() + 1 == r) {
      const IntVector u = fixed.column(0);
      BigInt tw = 0;
      for (std::size_t i = 0; i < r; ++i) tw += tau.scalar_char[i] * u[i];
      IntMatrix M(r, r);
      M.set_column(0, u);
      for (std::size_t j = 0; j < comp.cols(); ++j) M.set_column(j + 1, comp.column(j));
      if (mod_floor(tw, BigInt(e)) != 0 && M.is_unimodular()) {
        Draft split;
        split.kind = NodeKind::InvariantSplit;
        split.dim = static_cast<long>(r);
        split.label = "split off a coordinate translated by tau";
        split.payload["mode"] = "translation";
        split.payload["vector"] = vector_json(u);
        split.payload["translation"] = mod_floor(tw, BigInt(e)).get_si();
        split.payload["matrix"] = matrix_to_json(M);
        split.payload["model"] = torus_model(nall);
        Draft sub;
        try {
          const TwistedMonomialAction A = tau_lattice_action(tau, comp, p);
          sub = cyclic_substitution(ctx, A, restrict_all(nall, comp));
        } catch (const std::exception& ex) {
          sub = stuck_node(NodeKind::Substitution, static_cast<long>(r) - 1, "tau_lattice_action", ex.what());
        }
        split.cls = ClassPoly::torus(1) * sub.cls;
        split.children.push_back(std::move(sub));
        inner = std::move(split);
      }
    }
  }
  return diagonal_quotient(red.lattice, red.index, yall, std::move(inner));
}

Draft open_subtree(const OpenContext& ctx) {
  const MonomialRep& rep = ctx.rep;
  const long n = static_cast<long>(rep.n);
  Actions xall;
  for (const auto& g : enumerate_group(rep)) xall.push_back(TwistedMonomialAction::from_element(g));
  xall = dedupe(xall);

  Draft node;
  node.kind = NodeKind::CenterReduction;
  node.dim = n;
  node.label = "open torus modulo the center";
  node.payload["model"] = torus_model(xall);
  CenterReduction cr;
  try {
    cr = center_reduce(rep);
  } catch (const EngineError& ex) {
    node.stuck = "center_reduction";
    node.payload["reason"] = ex.what();
    return node;
  }
  node.payload["basis"] = matrix_to_json(cr.basis);
  node.payload["center_order"] = bigint_to_json(cr.center_order);
  const Actions yall = restrict_all(xall, cr.basis);
  const TwistedMonomialAction& ytau = lookup(cr.residual, ctx.tau_name);
  std::vector<TwistedMonomialAction> ygens;
  for (const auto& [name, a] : cr.residual) ygens.push_back(a);

  const SplitResult split = find_invariant_splitting(ygens, ctx.cfg.search_bound);
  Draft child;
  if (split.status == SplitStatus::Found) {
    child = heisenberg_branch(ctx, split, yall, ytau);
  } else {
    try {
      child = modular_branch(ctx, yall, ytau, false);
    } catch (const EngineError& ex) {
      if (ex.code() != EngineError::Code::WrongBranch) throw;
      if (split.status == SplitStatus::ModularBranch)
        child = modular_branch(ctx, yall, ytau, true);
      else
        child = stuck_node(NodeKind::InvariantSplit, n, "invariant_split",
                         "no G-invariant coordinate with max-norm <= " + std::to_string(ctx.cfg.search_bound));
    }
  }
  node.cls = child.cls;
  node.children.push_back(std::move(child));
  return node;
}

}  // namespace

Certificate certify_quotient(const MonomialRep& rep, const EngineConfig& config) {
  if (rep.p > config.p_cap)
    throw EngineError(EngineError::Code::PCapExceeded, "p = " + std::to_string(rep.p) + " exceeds the cap " + std::to_string(config.p_cap));
  std::vector<CoordinateStratum> strata;
  try {
    strata = coordinate_stratify(rep);
  } catch (const GeometryError& ex) {
    throw EngineError(EngineError::Code::Unsupported, ex.what());
  }
  const auto elements = enumerate_group(rep);

  Draft root;
  root.kind = NodeKind::OpenClosedSplit;
  root.dim = static_cast<long>(rep.n);
  root.label = "V/G";
  root.payload["model"] = affine_model(elements, rep.n, rep.e);

  const MonomialElement* tau = rep.cycle_generator();
  std::string tau_name;
  for (const auto& [name, g] : rep.generators)
    if (tau != nullptr && &g == tau) tau_name = name;

  for (const auto& s : strata) {
    const auto& J = s.orbit.representative;
    Draft d;
    if (J.empty()) {
      d.kind = NodeKind::PointLeaf;
      d.dim = 0;
      d.cls = ClassPoly::constant(1);
      d.label = "origin";
      d.payload["model"] = {{"type", "point"}};
    } else if (s.whole_group) {
      d = open_subtree(OpenContext{rep, config, rep.p, tau_name});
    } else {
      const unsigned r = static_cast<unsigned>(J.size());
      const InvariantLattice inv = abelian_invariant_lattice(s.chars, r, rep.e);
      Actions acts;
      for (const auto& c : s.chars) acts.push_back(TwistedMonomialAction{IntMatrix::identity(r), c, rep.e});
      Draft leaf;
      leaf.kind = NodeKind::TorusQuotientLeaf;
      leaf.dim = r;
      leaf.cls = ClassPoly::torus(r);
      leaf.label = "torus on " + subset_to_string(J) + " modulo the diagonal subgroup";
      leaf.payload["subset"] = J;
      leaf.payload["lattice"] = matrix_to_json(inv.basis);
      leaf.payload["index"] = bigint_to_json(inv.index);
      leaf.payload["model"] = torus_model(dedupe(acts));
      if (s.orbit.orbit_size > 1) {
        d.kind = NodeKind::OrbitCollapse;
        d.dim = r;
        d.cls = leaf.cls;
        d.label = "orbit of " + subset_to_string(J);
        d.payload["subset"] = J;
        d.payload["orbit_size"] = s.orbit.orbit_size;
        d.children.push_back(std::move(leaf));
      } else {
        d = std::move(leaf);
      }
    }
    root.cls = root.cls + d.cls;
    root.children.push_back(std::move(d));
  }
  return Certificate::from_draft(root, describe_group(rep));
}

}  // namespace lincert
