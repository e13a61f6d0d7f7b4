#include "lincert/certificate.hpp"

#include <array>
#include <functional>
#include <limits>
#include <utility>

namespace lincert {
namespace {

constexpr std::array<std::pair<NodeKind, const char*>, 11> kKindNames{{
    {NodeKind::TorusQuotientLeaf, "torus_quotient_leaf"},
    {NodeKind::PointLeaf, "point_leaf"},
    {NodeKind::AffineDiagonalLeaf, "affine_diagonal_leaf"},
    {NodeKind::OrbitCollapse, "orbit_collapse"},
    {NodeKind::OpenClosedSplit, "open_closed_split"},
    {NodeKind::Substitution, "substitution"},
    {NodeKind::CenterReduction, "center_reduction"},
    {NodeKind::InvariantSplit, "invariant_split"},
    {NodeKind::CyclicStrata, "cyclic_strata"},
    {NodeKind::ArrangementSplit, "arrangement_split"},
    {NodeKind::FlatLeaf, "flat_leaf"},
}};

std::size_t flatten(const Draft& d, std::vector<CertNode>& out) {
  const std::size_t id = out.size();
  out.push_back(CertNode{id, d.kind, d.dim, d.cls, d.label, d.stuck, {}, d.payload});
  std::vector<std::size_t> kids;
  for (const auto& c : d.children) kids.push_back(flatten(c, out));
  out[id].children = std::move(kids);
  return id;
}

}  // namespace

std::string node_kind_name(NodeKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "unknown";
}

std::optional<NodeKind> parse_node_kind(const std::string& name) {
  for (const auto& [kind, n] : kKindNames)
    if (name == n) return kind;
  return std::nullopt;
}

bool is_leaf_kind(NodeKind k) {
  return k == NodeKind::TorusQuotientLeaf || k == NodeKind::PointLeaf || k == NodeKind::AffineDiagonalLeaf ||
         k == NodeKind::FlatLeaf;
}

Certificate Certificate::from_draft(const Draft& root, nlohmann::json group) {
  Certificate c;
  c.group = std::move(group);
  c.root = flatten(root, c.nodes);
  c.total = c.nodes[c.root].cls;
  return c;
}

bool Certificate::complete() const { return stuck_nodes().empty(); }

std::vector<std::size_t> Certificate::stuck_nodes() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes)
    if (!n.stuck.empty()) out.push_back(n.id);
  return out;
}

nlohmann::json bigint_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
  return v.get_str();
}

BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::invalid_argument("expected an integer");
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(bigint_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = bigint_from_json(j[r][c]);
  }
  return m;
}

nlohmann::json class_to_json(const ClassPoly& c) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : c.coeffs()) a.push_back(bigint_to_json(x));
  return a;
}

ClassPoly class_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("class must be a coefficient array");
  std::vector<BigInt> c;
  for (const auto& x : j) c.push_back(bigint_from_json(x));
  ClassPoly out(c);
  if (out.coeffs().size() != c.size()) throw std::invalid_argument("class coefficients are not trimmed");
  return out;
}

std::vector<StructuralIssue> check_structure(const Certificate& cert) {
  std::vector<StructuralIssue> issues;
  const auto& nodes = cert.nodes;
  auto fail = [&](std::size_t id, std::string what) { issues.push_back({id, std::move(what)}); };
  if (nodes.empty()) {
    fail(0, "empty certificate");
    return issues;
  }
  if (cert.root != 0) fail(cert.root, "root is not node 0");

  // tree shape: ids are positions, every non-root node has exactly one parent
  // with a smaller id, and a preorder walk visits ids in order
  std::vector<int> parents(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != i) fail(i, "node id does not match its position");
    for (std::size_t c : nodes[i].children) {
      if (c >= nodes.size() || c <= i) {
        fail(i, "child id out of order");
        return issues;
      }
      ++parents[c];
    }
  }
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (parents[i] != 1) fail(i, "node does not have exactly one parent");
  if (parents[0] != 0) fail(0, "root has a parent");
  std::size_t next = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t id) {
    if (id != next) fail(id, "ids are not in depth-first preorder");
    ++next;
    for (std::size_t c : nodes[id].children) walk(c);
  };
  if (issues.empty()) walk(0);
  if (!issues.empty()) return issues;
  if (!(cert.total == nodes[0].cls)) fail(0, "total differs from the root class");

  // subtrees containing a stuck marker carry no class obligations
  std::vector<bool> partial(nodes.size(), false);
  for (std::size_t i = nodes.size(); i-- > 0;) {
    partial[i] = !nodes[i].stuck.empty();
    for (std::size_t c : nodes[i].children) partial[i] = partial[i] || partial[c];
  }

  const ClassPoly lm1 = ClassPoly::torus(1);
  for (const auto& n : nodes) {
    const auto& kids = n.children;
    if (!n.stuck.empty()) {
      if (!kids.empty()) fail(n.id, "stuck node has children");
      continue;
    }
    if (n.dim < 0) fail(n.id, "negative dimension");
    if (n.cls.degree() > n.dim) fail(n.id, "class degree exceeds dimension");
    auto child_cls = [&](std::size_t k) -> const ClassPoly& { return nodes[kids[k]].cls; };

    if (is_leaf_kind(n.kind) && !kids.empty()) fail(n.id, "leaf has children");
    switch (n.kind) {
      case NodeKind::TorusQuotientLeaf:
        if (!(n.cls == ClassPoly::torus(static_cast<unsigned>(n.dim)))) fail(n.id, "torus leaf class is not (L-1)^dim");
        break;
      case NodeKind::PointLeaf:
        if (n.dim != 0 || !(n.cls == ClassPoly::constant(1))) fail(n.id, "point leaf must have dim 0 and class 1");
        break;
      case NodeKind::AffineDiagonalLeaf:
        if (!(n.cls == ClassPoly::L_pow(static_cast<unsigned>(n.dim)))) fail(n.id, "affine leaf class is not L^dim");
        break;
      case NodeKind::FlatLeaf:
        break;
      case NodeKind::OpenClosedSplit:
      case NodeKind::CyclicStrata: {
        if (kids.empty()) {
          fail(n.id, "split without children");
          break;
        }
        if (partial[n.id]) break;
        ClassPoly sum;
        for (std::size_t k = 0; k < kids.size(); ++k) sum = sum + child_cls(k);
        if (!(sum == n.cls)) fail(n.id, "class is not the sum of the children");
        break;
      }
      case NodeKind::OrbitCollapse:
      case NodeKind::Substitution:
      case NodeKind::CenterReduction:
        if (kids.size() != 1) {
          fail(n.id, "expected exactly one child");
          break;
        }
        if (!partial[n.id] && !(child_cls(0) == n.cls)) fail(n.id, "class differs from the child");
        break;
      case NodeKind::InvariantSplit:
        if (kids.size() != 1) {
          fail(n.id, "expected exactly one child");
          break;
        }
        if (nodes[kids[0]].dim != n.dim - 1) fail(n.id, "split child must lose one dimension");
        if (!partial[n.id] && !(lm1 * child_cls(0) == n.cls)) fail(n.id, "class is not (L-1) times the child");
        break;
      case NodeKind::ArrangementSplit:
        if (kids.size() != 2) {
          fail(n.id, "arrangement split needs ambient and union children");
          break;
        }
        if (nodes[kids[0]].kind != NodeKind::AffineDiagonalLeaf || nodes[kids[0]].dim != n.dim)
          fail(n.id, "first child must be the ambient affine quotient");
        if (!partial[n.id] && !(child_cls(0) - child_cls(1) == n.cls)) fail(n.id, "class is not ambient minus union");
        break;
    }

    const auto& pl = n.payload;
    try {
      if (n.kind == NodeKind::Substitution || pl.contains("matrix")) {
        if (!pl.contains("matrix")) {
          fail(n.id, "substitution without a matrix");
        } else {
          IntMatrix m = matrix_from_json(pl.at("matrix"));
          if (m.rows() != m.cols() || !m.is_unimodular()) fail(n.id, "substitution matrix is not unimodular");
        }
      }
      if (pl.contains("tau_matrix")) {
        IntMatrix a = matrix_from_json(pl.at("tau_matrix"));
        const unsigned p = pl.at("tau_order").get<unsigned>();
        if (a.rows() != a.cols()) {
          fail(n.id, "tau matrix is not square");
        } else {
          if (!a.power(p).is_identity()) fail(n.id, "tau matrix does not have order dividing p");
          if (pl.value("tau_relation", "") == "cyclotomic") {
            IntMatrix s(a.rows(), a.cols());
            IntMatrix pw = IntMatrix::identity(a.rows());
            for (unsigned k = 0; k < p; ++k) {
              s = s + pw;
              pw = pw * a;
            }
            if (!s.is_zero()) fail(n.id, "tau matrix violates I + A + ... + A^(p-1) = 0");
          }
        }
      }
    } catch (const std::exception& ex) {
      fail(n.id, std::string("malformed payload: ") + ex.what());
    }
  }
  return issues;
}

}  // namespace lincert
