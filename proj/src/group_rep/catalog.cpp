#include <algorithm>
#include <numeric>
#include <sstream>

#include "lincert/exact_math.hpp"
#include "lincert/group_rep.hpp"

namespace lincert {
namespace {

unsigned long ipow(unsigned long b, unsigned k) {
  unsigned long r = 1;
  while (k--) r *= b;
  return r;
}

// Data for Ind_N^G psi with G = N x| <tau>, N abelian, coset representatives
// t^i where t = tau^-1.
struct InductionData {
  std::vector<std::string> names;          // generators of N
  std::vector<long> orders;                // their orders
  std::vector<std::vector<long>> conj;     // conj[j] = exponents of tau n_j tau^-1
  std::vector<long> tau_power;             // exponents of tau^p in N
  std::vector<long> psi;                   // psi(n_j) = zeta_e^{psi[j]}
  std::string tau_name;
  unsigned e = 1;
};

std::vector<long> apply_conj(const InductionData& d, const std::vector<long>& x) {
  std::vector<long> out(x.size(), 0);
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < x.size(); ++k) out[k] += x[j] * d.conj[j][k];
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = mod_floor(out[k], d.orders[k]);
  return out;
}

long apply_psi(const InductionData& d, const std::vector<long>& x) {
  long s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * d.psi[k];
  return mod_floor(s, static_cast<long>(d.e));
}

std::vector<std::pair<std::string, MonomialElement>> induce(const InductionData& d, unsigned p) {
  std::vector<std::pair<std::string, MonomialElement>> gens;
  const std::size_t n = p;
  for (std::size_t j = 0; j < d.names.size(); ++j) {
    std::vector<long> x(d.names.size(), 0);
    x[j] = 1;
    std::vector<long> diag(n);
    // entry i is psi(t^-i n t^i) = psi(tau^i n tau^-i)
    for (std::size_t i = 0; i < n; ++i) {
      diag[i] = apply_psi(d, x);
      x = apply_conj(d, x);
    }
    gens.emplace_back(d.names[j], MonomialElement::diagonal(diag, d.e));
  }
  MonomialElement tau = MonomialElement::identity(n, d.e);
  for (std::size_t j = 0; j < n; ++j) tau.perm[j] = static_cast<int>((j + n - 1) % n);
  tau.scalars[n - 1] = apply_psi(d, d.tau_power);
  gens.emplace_back(d.tau_name, tau);
  return gens;
}

Relation rel(std::string text, std::vector<std::pair<std::string, long>> word) {
  return Relation{std::move(text), std::move(word)};
}

}  // namespace

std::string GroupKind::to_string() const {
  switch (family) {
    case GroupFamily::Heisenberg: return "heisenberg";
    case GroupFamily::Modular: return "modular";
    case GroupFamily::Dihedral8: return "dihedral8";
    case GroupFamily::Quaternion8: return "quaternion8";
    case GroupFamily::Semidirect: return "semidirect:" + std::to_string(s);
    case GroupFamily::Abelian: {
      std::string out = "abelian:";
      for (std::size_t i = 0; i < abelian.size(); ++i) out += (i ? "," : "") + std::to_string(abelian[i]);
      return out;
    }
  }
  return "?";
}

GroupKind parse_group_kind(const std::string& text) {
  GroupKind k;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto parse_uint = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit) || s.size() > 6)
      throw GroupError("invalid number in group kind '" + text + "'");
    return static_cast<unsigned>(std::stoul(s));
  };
  if (head == "heisenberg" && tail.empty()) {
    k.family = GroupFamily::Heisenberg;
  } else if (head == "modular" && tail.empty()) {
    k.family = GroupFamily::Modular;
  } else if (head == "dihedral8" && tail.empty()) {
    k.family = GroupFamily::Dihedral8;
  } else if (head == "quaternion8" && tail.empty()) {
    k.family = GroupFamily::Quaternion8;
  } else if (head == "semidirect" && !tail.empty()) {
    k.family = GroupFamily::Semidirect;
    k.s = parse_uint(tail);
    if (k.s < 2) throw GroupError("semidirect:s requires s >= 2");
  } else if (head == "abelian" && !tail.empty()) {
    k.family = GroupFamily::Abelian;
    std::stringstream ss(tail);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const unsigned d = parse_uint(part);
      if (d < 1) throw GroupError("abelian factors must be positive");
      k.abelian.push_back(d);
    }
    if (k.abelian.empty()) throw GroupError("abelian kind needs at least one factor");
  } else {
    throw GroupError("unknown group kind '" + text + "'");
  }
  return k;
}

const MonomialElement& MonomialRep::generator(const std::string& name) const {
  for (const auto& [n, g] : generators)
    if (n == name) return g;
  throw GroupError("unknown generator '" + name + "'");
}

MonomialElement MonomialRep::evaluate(const std::vector<std::pair<std::string, long>>& word) const {
  MonomialElement x = MonomialElement::identity(n, e);
  for (const auto& [name, k] : word) x = x * generator(name).pow(k);
  return x;
}

const MonomialElement* MonomialRep::cycle_generator() const {
  const MonomialElement* found = nullptr;
  for (const auto& [name, g] : generators) {
    if (g.is_diagonal()) continue;
    if (found) return nullptr;
    found = &g;
  }
  return found;
}

std::string MonomialRep::descriptor() const {
  std::ostringstream out;
  out << kind.to_string() << " p=" << p << " n=" << n << " e=" << e << " order=" << order;
  return out.str();
}

MonomialRep induce_monomial_rep(const GroupKind& kind, unsigned p) {
  MonomialRep rep;
  rep.kind = kind;
  rep.p = p;
  if (kind.family == GroupFamily::Abelian) {
    const std::size_t n = kind.abelian.size();
    unsigned e = 1;
    for (unsigned d : kind.abelian) e = std::lcm(e, d);
    rep.n = n;
    rep.e = e;
    rep.order = 1;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long> s(n, 0);
      s[i] = static_cast<long>(e / kind.abelian[i]);
      const std::string name = "g" + std::to_string(i + 1);
      rep.generators.emplace_back(name, MonomialElement::diagonal(s, e));
      rep.relations.push_back(rel(name + "^" + std::to_string(kind.abelian[i]), {{name, kind.abelian[i]}}));
      rep.order *= kind.abelian[i];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::string a = "g" + std::to_string(i + 1), b = "g" + std::to_string(j + 1);
        rep.relations.push_back(rel(a + " " + b + " = " + b + " " + a, {{a, 1}, {b, 1}, {a, -1}, {b, -1}}));
      }
    return rep;
  }

  if (!is_prime(p)) throw GroupError("p = " + std::to_string(p) + " is not prime");
  const long lp = static_cast<long>(p);
  InductionData d;
  switch (kind.family) {
    case GroupFamily::Heisenberg: {
      d.names = {"sigma", "pi"};
      d.orders = {lp, lp};
      d.conj = {{1, 0}, {1, 1}};  // tau pi tau^-1 = sigma pi
      d.tau_power = {0, 0};
      d.psi = {1, 0};
      d.tau_name = "tau";
      d.e = p;
      rep.order = ipow(p, 3);
      rep.relations = {
          rel("sigma^p", {{"sigma", lp}}),
          rel("pi^p", {{"pi", lp}}),
          rel("tau^p", {{"tau", lp}}),
          rel("sigma pi = pi sigma", {{"sigma", 1}, {"pi", 1}, {"sigma", -1}, {"pi", -1}}),
          rel("sigma tau = tau sigma", {{"sigma", 1}, {"tau", 1}, {"sigma", -1}, {"tau", -1}}),
          rel("tau pi tau^-1 = sigma pi", {{"tau", 1}, {"pi", 1}, {"tau", -1}, {"pi", -1}, {"sigma", -1}}),
      };
      break;
    }
    case GroupFamily::Modular:
    case GroupFamily::Semidirect: {
      const unsigned s = kind.family == GroupFamily::Modular ? 2 : kind.s;
      const long order_n = static_cast<long>(ipow(p, s));
      const long twist = 1 + static_cast<long>(ipow(p, s - 1));
      d.names = {"sigma"};
      d.orders = {order_n};
      d.conj = {{twist % order_n}};
      d.tau_power = {0};
      d.psi = {1};
      d.tau_name = "tau";
      d.e = static_cast<unsigned>(order_n);
      rep.order = ipow(p, s + 1);
      rep.relations = {
          rel("sigma^" + std::to_string(order_n), {{"sigma", order_n}}),
          rel("tau^p", {{"tau", lp}}),
          rel("tau sigma tau^-1 = sigma^" + std::to_string(twist), {{"tau", 1}, {"sigma", 1}, {"tau", -1}, {"sigma", -twist}}),
      };
      break;
    }
    case GroupFamily::Dihedral8: {
      if (p != 2) throw GroupError("dihedral8 requires p = 2");
      d.names = {"r"};
      d.orders = {4};
      d.conj = {{3}};
      d.tau_power = {0};
      d.psi = {1};
      d.tau_name = "s";
      d.e = 4;
      rep.order = 8;
      rep.relations = {
          rel("r^4", {{"r", 4}}),
          rel("s^2", {{"s", 2}}),
          rel("s r s^-1 = r^-1", {{"s", 1}, {"r", 1}, {"s", -1}, {"r", 1}}),
      };
      break;
    }
    case GroupFamily::Quaternion8: {
      if (p != 2) throw GroupError("quaternion8 requires p = 2");
      d.names = {"i"};
      d.orders = {4};
      d.conj = {{3}};
      d.tau_power = {2};  // j^2 = i^2
      d.psi = {1};
      d.tau_name = "j";
      d.e = 4;
      rep.order = 8;
      rep.relations = {
          rel("i^4", {{"i", 4}}),
          rel("i^2 = j^2", {{"i", 2}, {"j", -2}}),
          rel("j i j^-1 = i^-1", {{"j", 1}, {"i", 1}, {"j", -1}, {"i", 1}}),
      };
      break;
    }
    case GroupFamily::Abelian: break;
  }
  rep.n = p;
  rep.e = d.e;
  rep.generators = induce(d, p);
  return rep;
}

std::vector<MonomialElement> enumerate_group(const MonomialRep& rep) {
  std::vector<MonomialElement> gens;
  for (const auto& [name, g] : rep.generators) gens.push_back(g);
  if (gens.empty()) return {MonomialElement::identity(rep.n, rep.e)};
  return closure(gens);
}

bool PresentationReport::ok() const {
  return faithful && closure_size == declared_order &&
         std::all_of(relations.begin(), relations.end(), [](const Entry& e) { return e.pass; });
}

PresentationReport verify_presentation(const MonomialRep& rep) {
  PresentationReport report;
  for (const auto& r : rep.relations) report.relations.push_back({r.text, rep.evaluate(r.word).is_identity()});
  report.declared_order = rep.order;
  report.closure_size = enumerate_group(rep).size();
  // elements are stored as matrices, so the closure is the image of the group;
  // the presentation has `order` elements, hence faithful iff sizes agree.
  report.faithful = report.closure_size == rep.order;
  return report;
}

std::vector<MonomialElement> compute_center(const MonomialRep& rep) {
  std::vector<MonomialElement> out;
  for (const auto& x : enumerate_group(rep)) {
    bool central = true;
    for (const auto& [name, g] : rep.generators)
      if (!(x * g == g * x)) {
        central = false;
        break;
      }
    if (central) out.push_back(x);
  }
  return out;
}

std::vector<MonomialElement> diagonal_subgroup(const MonomialRep& rep) {
  std::vector<MonomialElement> out;
  for (const auto& x : enumerate_group(rep))
    if (x.is_diagonal()) out.push_back(x);
  return out;
}

}  // namespace lincert
