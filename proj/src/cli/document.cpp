#include <functional>
#include <sstream>

#include "lincert/document.hpp"

namespace lincert {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) throw DocumentError(std::string(where) + ": missing \"" + key + "\"");
  return obj.at(key);
}

std::string big(const BigInt& v) { return v.get_str(); }

}  // namespace

json verification_to_json(const VerificationReport& report) {
  json v;
  v["qs"] = report.qs;
  v["fields_tested"] = !report.qs.empty();
  if (report.qs.empty()) v["note"] = "no fields tested";
  v["complete"] = report.complete;
  json issues = json::array();
  for (const auto& s : report.structural) issues.push_back({{"node", s.node}, {"what", s.what}});
  v["structural_issues"] = issues;
  json results = json::array();
  json totals = json::array();
  for (const auto& c : report.checks) {
    json r{{"q", c.q}, {"node", c.node}, {"kind", c.kind}, {"leaf", c.leaf}, {"expected", bigint_to_json(c.expected)},
           {"observed", bigint_to_json(c.observed)}, {"match", c.match}};
    if (!c.note.empty()) r["note"] = c.note;
    if (c.node == 0) totals.push_back({{"q", c.q}, {"class_value", bigint_to_json(c.expected)}, {"count", bigint_to_json(c.observed)}, {"match", c.match}});
    results.push_back(std::move(r));
  }
  v["results"] = results;
  v["totals"] = totals;
  v["leaves_checked"] = report.leaves_checked;
  v["ok"] = report.ok();
  const auto fm = report.first_mismatch();
  v["first_mismatch"] = fm ? json(*fm) : json(nullptr);
  return v;
}

json certificate_to_json(const Certificate& cert, const EngineConfig& config, const std::optional<VerificationReport>& report) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["group"] = cert.group;
  doc["config"] = {{"search_bound", config.search_bound}, {"p_cap", config.p_cap}, {"cyclic_budget", config.cyclic_budget}};
  doc["complete"] = cert.complete();
  json stuck = json::array();
  for (std::size_t id : cert.stuck_nodes())
    stuck.push_back({{"node", id}, {"stage", cert.nodes[id].stuck}, {"kind", node_kind_name(cert.nodes[id].kind)}});
  doc["stuck"] = stuck;
  json nodes = json::array();
  for (const auto& n : cert.nodes) {
    json j{{"id", n.id},
           {"kind", node_kind_name(n.kind)},
           {"dim", n.dim},
           {"class", class_to_json(n.cls)},
           {"children", n.children},
           {"label", n.label},
           {"payload", n.payload}};
    if (!n.stuck.empty()) j["stuck"] = n.stuck;
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = nodes;
  doc["total"] = class_to_json(cert.total);
  doc["total_text"] = cert.total.to_string();
  doc["verification"] = report ? verification_to_json(*report) : json(nullptr);
  return doc;
}

Certificate certificate_from_json(const json& doc) {
  if (!doc.is_object()) throw DocumentError("document is not a JSON object");
  const json& schema = require(doc, "schema", "document");
  if (!schema.is_string() || schema.get<std::string>() != kSchemaVersion)
    throw DocumentError("unsupported schema version");
  const json& group = require(doc, "group", "document");
  if (!group.is_object()) throw DocumentError("group must be an object");
  const json& e = require(group, "e", "group");
  if (!e.is_number_unsigned() || e.get<unsigned>() == 0) throw DocumentError("group.e must be a positive integer");
  const json& nodes = require(doc, "nodes", "document");
  if (!nodes.is_array() || nodes.empty()) throw DocumentError("nodes must be a nonempty array");

  Certificate cert;
  cert.group = group;
  try {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const json& j = nodes[i];
      const std::string where = "node " + std::to_string(i);
      CertNode n;
      const json& id = require(j, "id", where.c_str());
      if (!id.is_number_unsigned() || id.get<std::size_t>() != i) throw DocumentError(where + ": ids must be 0, 1, 2, ... in order");
      n.id = i;
      const json& kind = require(j, "kind", where.c_str());
      const auto k = kind.is_string() ? parse_node_kind(kind.get<std::string>()) : std::nullopt;
      if (!k) throw DocumentError(where + ": unknown kind");
      n.kind = *k;
      const json& dim = require(j, "dim", where.c_str());
      if (!dim.is_number_integer()) throw DocumentError(where + ": dim must be an integer");
      n.dim = dim.get<long>();
      n.cls = class_from_json(require(j, "class", where.c_str()));
      const json& kids = require(j, "children", where.c_str());
      if (!kids.is_array()) throw DocumentError(where + ": children must be an array");
      for (const auto& c : kids) {
        if (!c.is_number_unsigned() || c.get<std::size_t>() >= nodes.size()) throw DocumentError(where + ": bad child id");
        n.children.push_back(c.get<std::size_t>());
      }
      const json& label = require(j, "label", where.c_str());
      if (!label.is_string()) throw DocumentError(where + ": label must be a string");
      n.label = label.get<std::string>();
      if (j.contains("stuck")) {
        if (!j.at("stuck").is_string() || j.at("stuck").get<std::string>().empty()) throw DocumentError(where + ": bad stuck tag");
        n.stuck = j.at("stuck").get<std::string>();
      }
      const json& payload = require(j, "payload", where.c_str());
      if (!payload.is_object()) throw DocumentError(where + ": payload must be an object");
      n.payload = payload;
      cert.nodes.push_back(std::move(n));
    }
    cert.total = class_from_json(require(doc, "total", "document"));
  } catch (const std::invalid_argument& ex) {
    throw DocumentError(ex.what());
  } catch (const json::exception& ex) {
    throw DocumentError(ex.what());
  }
  cert.root = 0;
  return cert;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

std::string certificate_to_text(const Certificate& cert, const std::optional<VerificationReport>& report) {
  std::ostringstream out;
  const auto& g = cert.group;
  out << "group: " << g.value("kind", std::string("?"));
  if (g.contains("p")) out << " p=" << g.at("p");
  if (g.contains("n")) out << " n=" << g.at("n");
  if (g.contains("e")) out << " e=" << g.at("e");
  if (g.contains("order")) out << " order=" << g.at("order");
  out << "\n";
  out << "total: " << cert.total.to_string() << "  " << cert.total.coeff_string() << "\n";
  if (cert.complete()) {
    out << "status: complete\n";
  } else {
    for (std::size_t id : cert.stuck_nodes())
      out << "status: stuck at node " << id << " (" << cert.nodes[id].stuck << "): " << cert.nodes[id].label << "\n";
  }
  out << "strata:\n";
  std::function<void(std::size_t, int)> walk = [&](std::size_t id, int depth) {
    const auto& n = cert.nodes[id];
    out << std::string(static_cast<std::size_t>(2 * depth + 2), ' ') << "#" << id << " " << node_kind_name(n.kind) << " dim=" << n.dim
        << " class=" << n.cls.to_string();
    if (!n.stuck.empty()) out << " STUCK(" << n.stuck << ")";
    if (!n.label.empty()) out << "  -- " << n.label;
    out << "\n";
    for (std::size_t c : n.children) walk(c, depth + 1);
  };
  if (!cert.nodes.empty()) walk(cert.root, 0);
  if (report) out << verification_to_text(*report);
  return out.str();
}

std::string verification_to_text(const VerificationReport& report) {
  std::ostringstream out;
  out << "verification:\n";
  for (const auto& s : report.structural) out << "  structural issue at node " << s.node << ": " << s.what << "\n";
  if (report.structural.empty()) out << "  structure: ok\n";
  if (report.qs.empty()) out << "  no fields tested\n";
  for (std::uint64_t q : report.qs) {
    std::size_t leaves = 0, leaves_ok = 0, nodes = 0, nodes_ok = 0;
    std::string total;
    for (const auto& c : report.checks) {
      if (c.q != q) continue;
      ++nodes;
      nodes_ok += c.match;
      if (c.leaf) {
        ++leaves;
        leaves_ok += c.match;
      }
      if (c.node == 0) total = big(c.expected) + (c.match ? " = " : " != ") + big(c.observed);
    }
    out << "  q=" << q << ": total " << (total.empty() ? "unchecked" : total) << "; leaves " << leaves_ok << "/" << leaves
        << " match; nodes " << nodes_ok << "/" << nodes << " match\n";
    for (const auto& c : report.checks)
      if (c.q == q && !c.match)
        out << "    mismatch at node " << c.node << " (" << c.kind << "): class gives " << big(c.expected) << ", count gives "
            << big(c.observed) << (c.note.empty() ? "" : " [" + c.note + "]") << "\n";
  }
  if (!report.complete) out << "  certificate is incomplete\n";
  out << "  result: " << (report.ok() ? "ok" : "FAILED");
  if (auto fm = report.first_mismatch()) out << " (first mismatch at node " << *fm << ")";
  out << "\n";
  return out.str();
}

}  // namespace lincert
