#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lincert/document.hpp"

namespace lincert {
namespace {

bool write_output(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

bool validate_qs(const std::vector<std::uint64_t>& qs, unsigned e, std::ostream& err) {
  for (std::uint64_t q : qs) {
    try {
      check_field(FieldSpec{q, e, 12});
    } catch (const CountError& ex) {
      err << "error: " << ex.what() << "\n";
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::uint64_t> parse_q_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 12)
      throw std::invalid_argument("bad q value '" + tok + "'");
    out.push_back(std::stoull(tok));
  }
  return out;
}

int cmd_certify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  MonomialRep rep;
  try {
    const GroupKind kind = parse_group_kind(config.group);
    if (!is_prime(config.p)) {
      err << "error: p = " << config.p << " is not prime\n";
      return 1;
    }
    if (config.p > config.p_cap) {
      err << "error: p = " << config.p << " exceeds the cap " << config.p_cap << "\n";
      return 1;
    }
    rep = induce_monomial_rep(kind, config.p);
  } catch (const GroupError& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  const std::vector<std::uint64_t> qs = config.qs ? *config.qs : default_qs(rep.e);
  if (!validate_qs(qs, rep.e, err)) return 1;

  EngineConfig ec;
  ec.search_bound = config.search_bound;
  ec.p_cap = config.p_cap;
  Certificate cert;
  try {
    cert = certify_quotient(rep, ec);
  } catch (const EngineError& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  const VerificationReport report = verify_certificate(cert, qs);
  const std::string text = config.format == OutputFormat::Json ? dump_document(certificate_to_json(cert, ec, report))
                                                               : certificate_to_text(cert, report);
  if (!write_output(text, config.out, out, err)) return 1;
  if (!cert.complete()) {
    for (std::size_t id : cert.stuck_nodes())
      err << "stuck at node " << id << " (" << cert.nodes[id].stuck << "): " << cert.nodes[id].label << "\n";
    return 2;
  }
  if (!report.ok()) {
    const auto fm = report.first_mismatch();
    err << "verification failed" << (fm ? " at node " + std::to_string(*fm) : std::string()) << "\n";
    return 2;
  }
  return 0;
}

int cmd_verify(const std::string& path, const std::optional<std::vector<std::uint64_t>>& qs, OutputFormat format, std::ostream& out,
               std::ostream& err) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot read " << path << "\n";
    return 1;
  }
  Certificate cert;
  try {
    const nlohmann::json doc = nlohmann::json::parse(f);
    cert = certificate_from_json(doc);
  } catch (const nlohmann::json::exception& ex) {
    err << "error: " << path << " is not valid JSON: " << ex.what() << "\n";
    return 1;
  } catch (const DocumentError& ex) {
    err << "error: " << path << ": " << ex.what() << "\n";
    return 1;
  }
  const unsigned e = certificate_conductor(cert);
  const std::vector<std::uint64_t> list = qs ? *qs : default_qs(e);
  if (!validate_qs(list, e, err)) return 1;
  const VerificationReport report = verify_certificate(cert, list);
  if (format == OutputFormat::Json)
    out << dump_document(verification_to_json(report));
  else
    out << verification_to_text(report);
  if (!report.ok()) {
    const auto fm = report.first_mismatch();
    err << "verification failed" << (fm ? " at node " + std::to_string(*fm) : std::string()) << "\n";
    return 2;
  }
  return 0;
}

int cmd_lemma(const std::string& variant, unsigned p, unsigned p_cap, OutputFormat format, std::ostream& out, std::ostream& err) {
  if (variant != "S" && variant != "T") {
    err << "error: variant must be S or T\n";
    return 1;
  }
  if (!is_prime(p)) {
    err << "error: p = " << p << " is not prime\n";
    return 1;
  }
  if (p > p_cap) {
    err << "error: p = " << p << " exceeds the cap " << p_cap << "\n";
    return 1;
  }
  const Draft d = cyclic_quotient_subtree(p, variant == "S" ? CyclicVariant::S : CyclicVariant::T);
  const nlohmann::json group{{"kind", "cyclic:" + variant}, {"p", p}, {"e", p}, {"n", d.dim}};
  const Certificate cert = Certificate::from_draft(d, group);
  if (format == OutputFormat::Json) {
    EngineConfig ec;
    ec.p_cap = p_cap;
    out << dump_document(certificate_to_json(cert, ec, std::nullopt));
  } else {
    out << "variant " << variant << ", p=" << p << "\n";
    out << "class: " << cert.total.to_string() << "\n";
    out << "coefficients: " << cert.total.coeff_string() << "\n";
    out << certificate_to_text(cert, std::nullopt);
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify that V/G is a linear scheme for monomial representations of small p-groups"};
  app.require_subcommand(1);
  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::Json}, {"text", OutputFormat::Text}};

  RunConfig rc;
  std::string qs_text;
  auto* certify = app.add_subcommand("certify", "stratify V/G and emit a certificate");
  certify->add_option("--group", rc.group, "heisenberg, modular, dihedral8, quaternion8, semidirect:s, abelian:d1,d2,...")->required();
  certify->add_option("--p", rc.p, "the prime p")->required();
  auto* cq = certify->add_option("--qs", qs_text, "comma-separated field sizes (default: three smallest primes = 1 mod e)");
  certify->add_option("--search-bound", rc.search_bound, "max-norm for searches")->capture_default_str();
  certify->add_option("--p-cap", rc.p_cap, "largest accepted p")->capture_default_str();
  certify->add_option("--out", rc.out, "output file (default stdout)");
  certify->add_option("--format", rc.format, "json or text")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  std::string cert_path;
  std::string vqs_text;
  OutputFormat vformat = OutputFormat::Text;
  auto* verify = app.add_subcommand("verify", "check a certificate document against point counts");
  verify->add_option("certificate", cert_path, "certificate JSON file")->required();
  auto* vq = verify->add_option("--qs", vqs_text, "comma-separated field sizes; empty for structural checks only");
  verify->add_option("--format", vformat, "json or text")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  std::string variant;
  unsigned lp = 0;
  unsigned lcap = 7;
  OutputFormat lformat = OutputFormat::Text;
  auto* lemma = app.add_subcommand("lemma", "stratify the cyclic torus quotients S and T");
  lemma->add_option("--variant", variant, "S or T")->required();
  lemma->add_option("--p", lp, "the prime p")->required();
  lemma->add_option("--p-cap", lcap, "largest accepted p")->capture_default_str();
  lemma->add_option("--format", lformat, "json or text")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    if (certify->parsed()) {
      if (*cq) rc.qs = parse_q_list(qs_text);
      return cmd_certify(rc, out, err);
    }
    if (verify->parsed()) {
      std::optional<std::vector<std::uint64_t>> vqs;
      if (*vq) vqs = parse_q_list(vqs_text);
      return cmd_verify(cert_path, vqs, vformat, out, err);
    }
    if (lemma->parsed()) return cmd_lemma(variant, lp, lcap, lformat, out, err);
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lincert
