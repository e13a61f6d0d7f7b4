#include "lincert/point_count.hpp"

namespace lincert {

bool VerificationReport::ok() const {
  if (!structural.empty() || !complete) return false;
  for (const auto& c : checks)
    if (!c.match) return false;
  return true;
}

std::optional<std::size_t> VerificationReport::first_mismatch() const {
  // prefer the deepest disagreeing node for the first failing q: leaves name
  // the culprit, ancestors only inherit the disagreement
  for (const auto& c : checks) {
    if (c.match) continue;
    std::optional<std::size_t> best;
    bool best_leaf = false;
    for (const auto& d : checks) {
      if (d.q != c.q || d.match) continue;
      if (!best || (d.leaf && !best_leaf)) {
        best = d.node;
        best_leaf = d.leaf;
      }
    }
    return best;
  }
  if (!structural.empty()) return structural.front().node;
  return std::nullopt;
}

unsigned certificate_conductor(const Certificate& cert) {
  if (!cert.group.is_object() || !cert.group.contains("e")) return 1;
  return cert.group.at("e").get<unsigned>();
}

VerificationReport verify_certificate(const Certificate& cert, const std::vector<std::uint64_t>& qs) {
  const unsigned e = certificate_conductor(cert);
  for (std::uint64_t q : qs) check_field(FieldSpec{q, e, 12});

  VerificationReport rep;
  rep.qs = qs;
  rep.structural = check_structure(cert);
  rep.complete = cert.complete();
  if (!rep.structural.empty() && cert.nodes.empty()) return rep;

  std::vector<bool> partial(cert.nodes.size(), false);
  for (std::size_t i = cert.nodes.size(); i-- > 0;) {
    partial[i] = !cert.nodes[i].stuck.empty();
    for (std::size_t c : cert.nodes[i].children)
      if (c < partial.size()) partial[i] = partial[i] || partial[c];
  }
  for (const auto& n : cert.nodes)
    if (is_leaf_kind(n.kind) && !n.payload.contains("model"))
      rep.structural.push_back({n.id, "leaf without a verification model"});

  for (std::uint64_t q : qs) {
    const BigInt bq(static_cast<unsigned long>(q));
    for (const auto& n : cert.nodes) {
      if (partial[n.id] || !n.payload.contains("model")) continue;
      NodeCheck c;
      c.q = q;
      c.node = n.id;
      c.kind = node_kind_name(n.kind);
      c.leaf = is_leaf_kind(n.kind);
      c.expected = n.cls.evaluate(bq);
      try {
        c.observed = model_count(n.payload.at("model"), q);
        c.match = c.observed == c.expected;
      } catch (const std::exception& ex) {
        c.note = ex.what();
        c.match = false;
      }
      if (c.leaf) ++rep.leaves_checked;
      rep.checks.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace lincert
