// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "lincert/document.hpp"

using namespace lincert;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

MonomialRep rep_of(const std::string& kind, unsigned p) { return induce_monomial_rep(parse_group_kind(kind), p); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BigInt big_pow(long q, unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= q;
  return r;
}

std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "/" : "") + v[i].get_str();
  return s;
}

// certify + verify in process; checks total, every leaf, and the node-0 counts
struct Headline {
  bool ok = false;
  std::string detail;
};

Headline headline(const std::string& kind, unsigned p, const std::vector<std::uint64_t>& qs, double limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = rep_of(kind, p);
  const Certificate cert = certify_quotient(rep);
  const VerificationReport r = verify_certificate(cert, qs);
  const double t = seconds_since(t0);

  const ClassPoly want = ClassPoly::L_pow(static_cast<unsigned>(rep.n));
  bool ok = cert.complete() && cert.total == want && r.ok() && r.structural.empty();
  std::vector<BigInt> counts;
  std::size_t leaves = 0;
  for (const auto& c : r.checks) {
    if (c.node == 0) {
      counts.push_back(c.observed);
      ok = ok && c.observed == big_pow(static_cast<long>(c.q), static_cast<unsigned>(rep.n)) && c.match;
    }
    if (c.leaf) {
      ++leaves;
      ok = ok && c.match;
    }
  }
  ok = ok && counts.size() == qs.size() && leaves > 0 && t < limit;
  std::ostringstream d;
  d << kind << " p=" << p << " total " << cert.total.to_string() << ", counts " << join(counts) << ", " << leaves
    << " leaf checks, " << t << " s";
  return {ok, d.str()};
}

ClassPoly open_class(const Certificate& c) {
  for (const auto& n : c.nodes)
    if (n.kind == NodeKind::CenterReduction) return n.cls;
  return ClassPoly::constant(-999);
}

BigInt oracle_S(unsigned p, long q) {
  BigInt a = big_pow(q - 1, p - 1), b = big_pow(q, p);
  return (a + BigInt(p - 1) * ((b - 1) / (q - 1))) / p;
}

BigInt oracle_T(unsigned p, long q) { return (big_pow(q - 1, p) + BigInt(p - 1) * (big_pow(q, p) - 1)) / p; }

std::size_t image_order(const std::vector<std::vector<long>>& chars, std::size_t n, unsigned e) {
  std::set<std::vector<long>> seen{std::vector<long>(chars.size(), 0)};
  std::vector<std::vector<long>> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& x : frontier)
      for (std::size_t i = 0; i < n; ++i) {
        auto y = x;
        for (std::size_t c = 0; c < chars.size(); ++c) y[c] = (y[c] + chars[c][i]) % static_cast<long>(e);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cli_binary(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(LINCERT_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

// Independent re-check of the structural rules on a certificate.
std::string structural_problems(const Certificate& c) {
  std::ostringstream bad;
  for (const auto& n : c.nodes) {
    if (n.kind == NodeKind::OpenClosedSplit || n.kind == NodeKind::CyclicStrata) {
      ClassPoly s;
      for (std::size_t ch : n.children) s = s + c.nodes[ch].cls;
      if (!(s == n.cls)) bad << " additivity@" << n.id;
    }
    if (n.payload.contains("matrix")) {
      const IntMatrix m = matrix_from_json(n.payload.at("matrix"));
      if (abs(m.determinant()) != 1) bad << " unimodular@" << n.id;
    } else if (n.kind == NodeKind::Substitution && n.stuck.empty()) {
      bad << " nomatrix@" << n.id;
    }
    if (n.payload.contains("tau_matrix")) {
      const IntMatrix a = matrix_from_json(n.payload.at("tau_matrix"));
      const unsigned p = n.payload.at("tau_order").get<unsigned>();
      IntMatrix sum(a.rows(), a.cols()), pw = IntMatrix::identity(a.rows());
      for (unsigned k = 0; k < p; ++k) {
        sum = sum + pw;
        pw = pw * a;
      }
      if (!pw.is_identity()) bad << " order@" << n.id;
      if (n.payload.value("tau_relation", std::string()) == "cyclotomic" && !sum.is_zero()) bad << " cyclotomic@" << n.id;
    }
  }
  return bad.str();
}

}  // namespace

int main() {
  std::cout << "acceptance run" << std::endl;

  // 1-3 headline certificates
  {
    const auto h = headline("heisenberg", 3, {7, 13, 19}, 10.0);
    report(1, h.ok, h.detail);
  }
  {
    const auto h = headline("modular", 3, {19, 37, 73}, 10.0);
    report(2, h.ok, h.detail);
  }
  {
    const auto d = headline("dihedral8", 2, {5, 13, 17}, 5.0);
    const auto q = headline("quaternion8", 2, {5, 13, 17}, 5.0);
    report(3, d.ok && q.ok, d.detail + "; " + q.detail);
  }

  // 4 cyclic quotient classes against the averaging formulas
  {
    struct Case {
      unsigned p;
      CyclicVariant v;
      ClassPoly want;
    };
    const std::vector<Case> cases{{2, CyclicVariant::S, ClassPoly({0, 1})},
                                  {3, CyclicVariant::S, ClassPoly({1, 0, 1})},
                                  {5, CyclicVariant::S, ClassPoly({1, 0, 2, 0, 1})},
                                  {2, CyclicVariant::T, ClassPoly({0, -1, 1})},
                                  {3, CyclicVariant::T, ClassPoly({-1, 1, -1, 1})}};
    bool ok = true;
    std::ostringstream d;
    for (const auto& c : cases) {
      const ClassPoly got = cyclic_quotient_class(c.p, c.v);
      const auto qs = default_qs(c.p, 4);
      bool each = got == c.want;
      for (std::uint64_t q : qs) {
        const BigInt o = c.v == CyclicVariant::S ? oracle_S(c.p, static_cast<long>(q)) : oracle_T(c.p, static_cast<long>(q));
        each = each && got.evaluate(q) == o;
      }
      ok = ok && each;
      d << (c.v == CyclicVariant::S ? "S" : "T") << c.p << "=" << got.to_string() << (each ? "" : "(!)") << " ";
    }
    d << "at 4 q each";
    report(4, ok, d.str());
  }

  // 5 open-stratum subtrees
  {
    const ClassPoly h = open_class(certify_quotient(rep_of("heisenberg", 3)));
    const ClassPoly m = open_class(certify_quotient(rep_of("modular", 3)));
    const ClassPoly hw = ClassPoly({-1, 1}) * cyclic_quotient_class(3, CyclicVariant::S);
    const ClassPoly mw = cyclic_quotient_class(3, CyclicVariant::T);
    report(5, h == hw && m == mw, "heisenberg open " + h.to_string() + ", modular open " + m.to_string());
  }

  // 6 random diagonal abelian actions
  {
    std::mt19937 rng(20260101);
    const std::vector<unsigned> es{2, 3, 4, 8, 9};
    int good = 0, total = 0;
    std::string first_bad;
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + rng() % 4;
      const unsigned e = es[rng() % es.size()];
      std::vector<std::vector<long>> chars(1 + rng() % 3, std::vector<long>(n));
      for (auto& c : chars)
        for (auto& x : c) x = static_cast<long>(rng() % e);
      ++total;
      const auto lat = abelian_invariant_lattice(chars, n, e);
      bool ok = lat.index == image_order(chars, n, e);

      MonomialRep rep;
      rep.kind = parse_group_kind("abelian:" + std::to_string(e));
      rep.p = e % 2 == 0 ? 2 : 3;
      rep.n = n;
      rep.e = e;
      std::vector<MonomialElement> gens;
      for (std::size_t i = 0; i < chars.size(); ++i) {
        gens.push_back(MonomialElement::diagonal(chars[i], e));
        rep.generators.emplace_back("g" + std::to_string(i + 1), gens.back());
      }
      rep.order = closure(gens).size();
      const Certificate cert = certify_quotient(rep);
      ok = ok && cert.complete() && cert.total == ClassPoly::L_pow(static_cast<unsigned>(n));
      ok = ok && verify_certificate(cert, default_qs(e, 2)).ok();
      good += ok;
      if (!ok && first_bad.empty()) first_bad = " first failure at trial " + std::to_string(t);
    }
    // single generator (1, a_2, ..., a_d) mod p^s
    bool single = true;
    for (unsigned pe : {2u, 3u, 4u, 8u, 9u}) {
      for (std::size_t d = 1; d <= 4; ++d) {
        std::vector<long> chi(d);
        chi[0] = 1;
        for (std::size_t i = 1; i < d; ++i) chi[i] = static_cast<long>(rng() % pe);
        single = single && abelian_invariant_lattice({chi}, d, pe).index == pe;
      }
    }
    report(6, good == total && single,
           std::to_string(good) + "/" + std::to_string(total) + " random actions, single-generator index " +
               (single ? "= p^s" : "WRONG") + first_bad);
  }

  // 7 determinant formula against enumeration
  {
    const std::vector<std::pair<std::string, unsigned>> catalog{
        {"heisenberg", 2}, {"heisenberg", 3}, {"modular", 2}, {"modular", 3}, {"dihedral8", 2}, {"quaternion8", 2},
        {"semidirect:2", 2}, {"semidirect:3", 2}, {"semidirect:2", 3}, {"abelian:2,2", 2}, {"abelian:3,3", 3}};
    std::size_t agree = 0, disagree = 0, over_budget = 0, bad_char = 0;
    for (const auto& [k, p] : catalog) {
      const auto rep = rep_of(k, p);
      for (std::uint64_t q : {4u, 7u}) {
        for (const auto& g : enumerate_group(rep)) {
          const auto a = TwistedMonomialAction::from_element(g);
          unsigned m = 0;
          try {
            m = brute_force_degree(a, q);
          } catch (const CountError&) {
            ++bad_char;  // characteristic divides the conductor: no roots of unity to twist by
            continue;
          }
          try {
            if (brute_force_twisted_count(a, q, m) == twisted_torus_count(a, q))
              ++agree;
            else
              ++disagree;
          } catch (const CountError& ex) {
            if (ex.code() != CountError::Code::BudgetExceeded) throw;
            ++over_budget;
          }
        }
      }
    }
    report(7, disagree == 0 && agree > 0,
           std::to_string(agree) + " agree, " + std::to_string(disagree) + " disagree, " + std::to_string(over_budget) +
               " beyond the 10^7 budget (skipped), " + std::to_string(bad_char) + " excluded (characteristic divides e)");
  }

  // 8 structure on every certificate, plus byte-identical reruns of the binary
  {
    const std::vector<std::pair<std::string, unsigned>> all{
        {"heisenberg", 2}, {"heisenberg", 3}, {"heisenberg", 5}, {"modular", 2}, {"modular", 3}, {"modular", 5},
        {"dihedral8", 2}, {"quaternion8", 2}, {"semidirect:3", 2}, {"semidirect:2", 3}, {"abelian:3,3", 3}, {"abelian:2,4,8", 2}};
    bool ok = true;
    std::string problems;
    std::size_t nodes = 0;
    for (const auto& [k, p] : all) {
      EngineConfig cfg;
      cfg.search_bound = std::max<long>(3, p);
      const Certificate c = certify_quotient(rep_of(k, p), cfg);
      nodes += c.nodes.size();
      const std::string mine = structural_problems(c);
      const auto lib = check_structure(c);
      if (!mine.empty() || !lib.empty() || !c.complete()) {
        ok = false;
        problems += " " + k + std::to_string(p) + ":" + mine + (lib.empty() ? "" : " " + lib.front().what);
      }
    }
    for (const auto& lp : std::vector<std::pair<unsigned, CyclicVariant>>{{5, CyclicVariant::S}, {7, CyclicVariant::T}}) {
      const Draft d = cyclic_quotient_subtree(lp.first, lp.second);
      const Certificate c = Certificate::from_draft(d, {{"kind", "cyclic"}, {"p", lp.first}, {"e", lp.first}, {"n", d.dim}});
      nodes += c.nodes.size();
      const std::string mine = structural_problems(c);
      if (!mine.empty() || !check_structure(c).empty()) {
        ok = false;
        problems += " cyclic" + std::to_string(lp.first) + ":" + mine;
      }
    }
    const fs::path dir = fs::temp_directory_path() / "lincert_acceptance";
    fs::create_directories(dir);
    std::size_t identical = 0, runs = 0;
    for (const std::string args : {"certify --group heisenberg --p 3", "certify --group modular --p 3", "certify --group quaternion8 --p 2",
                                   "certify --group heisenberg --p 3 --format text", "lemma --variant S --p 5"}) {
      ++runs;
      const int c1 = run_cli_binary(args, dir / "a.out");
      const int c2 = run_cli_binary(args, dir / "b.out");
      const std::string a = slurp(dir / "a.out"), b = slurp(dir / "b.out");
      if (c1 == 0 && c2 == 0 && !a.empty() && a == b) ++identical;
    }
    ok = ok && identical == runs;
    report(8, ok,
           std::to_string(all.size() + 2) + " certificates, " + std::to_string(nodes) + " nodes clean" + problems + "; " +
               std::to_string(identical) + "/" + std::to_string(runs) + " reruns byte-identical");
  }

  // 9 negative paths
  {
    const fs::path dir = fs::temp_directory_path() / "lincert_acceptance";
    fs::create_directories(dir);
    const int code = run_cli_binary("certify --group heisenberg --p 3 --search-bound 0", dir / "stuck.json");
    std::string stage;
    try {
      const auto doc = nlohmann::json::parse(slurp(dir / "stuck.json"));
      if (doc.at("stuck").size() == 1) stage = doc.at("stuck")[0].at("kind").get<std::string>();
    } catch (const std::exception&) {
    }
    const bool stuck_ok = code == 2 && stage == "invariant_split";

    Certificate cert = certify_quotient(rep_of("heisenberg", 3));
    std::size_t target = 0;
    for (const auto& n : cert.nodes)
      if (n.kind == NodeKind::TorusQuotientLeaf && n.cls == ClassPoly::torus(2)) {
        target = n.id;
        break;
      }
    cert.nodes[target].cls = ClassPoly::torus(1);
    const std::vector<std::uint64_t> qs{7, 13, 19, 31, 37};
    const VerificationReport r = verify_certificate(cert, qs);
    std::size_t caught = 0;
    for (std::uint64_t q : qs)
      for (const auto& c : r.checks)
        if (c.q == q && c.node == target && !c.match) ++caught;
    const bool fault_ok = target != 0 && caught == qs.size() && !r.ok() && r.first_mismatch() == target;

    // same through the files and the verify command
    const fs::path bad = dir / "corrupt.json";
    {
      std::ofstream f(bad, std::ios::binary);
      f << dump_document(certificate_to_json(cert, EngineConfig{}, std::nullopt));
    }
    const int vcode = run_cli_binary("verify " + bad.string() + " --qs 7,13,19", dir / "verify.txt");

    report(9, stuck_ok && fault_ok && vcode == 2,
           "bound 0 exit " + std::to_string(code) + " stuck at " + (stage.empty() ? "?" : stage) + "; corrupted leaf #" +
               std::to_string(target) + " caught at " + std::to_string(caught) + "/" + std::to_string(qs.size()) +
               " q, verify exit " + std::to_string(vcode));
  }

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
