#pragma once

// Stratification certificates: trees whose leaves are linear pieces.
//
// Class rules per node kind:
//   open_closed_split, cyclic_strata : class = sum of children
//   orbit_collapse, substitution,
//   center_reduction                  : class = class of the single child
//   invariant_split                   : class = (L - 1) * class of the single child
//   arrangement_split                 : class = class(child 0) - class(child 1)
//   leaves                            : fixed by kind where possible
//
// A node carrying a stuck tag marks the stage where the pipeline gave up; it has
// no children and its class is meaningless.

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lincert/class_poly.hpp"

namespace lincert {

enum class NodeKind {
  TorusQuotientLeaf,
  PointLeaf,
  AffineDiagonalLeaf,
  OrbitCollapse,
  OpenClosedSplit,
  Substitution,
  CenterReduction,
  InvariantSplit,
  CyclicStrata,
  ArrangementSplit,
  FlatLeaf,
};

std::string node_kind_name(NodeKind k);
std::optional<NodeKind> parse_node_kind(const std::string& name);
bool is_leaf_kind(NodeKind k);

// Tree under construction; flattened into a Certificate in preorder.
struct Draft {
  NodeKind kind = NodeKind::PointLeaf;
  long dim = 0;
  ClassPoly cls;
  std::string label;
  std::string stuck;  // empty unless the pipeline stopped here
  nlohmann::json payload = nlohmann::json::object();
  std::vector<Draft> children;
};

struct CertNode {
  std::size_t id = 0;
  NodeKind kind = NodeKind::PointLeaf;
  long dim = 0;
  ClassPoly cls;
  std::string label;
  std::string stuck;
  std::vector<std::size_t> children;
  nlohmann::json payload = nlohmann::json::object();
};

struct Certificate {
  std::size_t root = 0;
  std::vector<CertNode> nodes;  // index == id, depth-first preorder
  nlohmann::json group;         // descriptor of the representation
  ClassPoly total;

  static Certificate from_draft(const Draft& root, nlohmann::json group);

  bool complete() const;
  std::vector<std::size_t> stuck_nodes() const;
  const CertNode& node(std::size_t id) const { return nodes.at(id); }
};

struct StructuralIssue {
  std::size_t node = 0;
  std::string what;
};

// Tree shape, class rules per kind, unimodularity of substitution matrices and
// the cyclotomic relation for every recorded tau-matrix.
std::vector<StructuralIssue> check_structure(const Certificate& cert);

// Matrices in payloads are arrays of rows; entries are numbers, or decimal
// strings once they leave the 64-bit range.
nlohmann::json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const nlohmann::json& j);
nlohmann::json class_to_json(const ClassPoly& c);
ClassPoly class_from_json(const nlohmann::json& j);

}  // namespace lincert
