#pragma once

// Versioned JSON certificate documents and the command implementations behind
// the `lincert` executable.

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lincert/certificate.hpp"
#include "lincert/point_count.hpp"
#include "lincert/strat_engine.hpp"

namespace lincert {

inline constexpr const char* kSchemaVersion = "lincert-certificate/1";

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json verification_to_json(const VerificationReport& report);

// Certificate plus optional verification block. Node array sorted by id.
nlohmann::json certificate_to_json(const Certificate& cert, const EngineConfig& config,
                                   const std::optional<VerificationReport>& report);

// Validates the document shape and rebuilds the certificate; throws DocumentError.
Certificate certificate_from_json(const nlohmann::json& doc);

// Stable serialization: two-space indentation, sorted keys, trailing newline.
std::string dump_document(const nlohmann::json& doc);

std::string certificate_to_text(const Certificate& cert, const std::optional<VerificationReport>& report);
std::string verification_to_text(const VerificationReport& report);

// ---------------------------------------------------------------------------
// Commands. Exit codes: 0 success, 1 usage or configuration error,
// 2 stuck pipeline or verification mismatch.

enum class OutputFormat { Json, Text };

struct RunConfig {
  std::string group;
  unsigned p = 0;
  std::optional<std::vector<std::uint64_t>> qs;  // nullopt: defaults
  long search_bound = 3;
  unsigned p_cap = 7;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::Json;
};

std::vector<std::uint64_t> parse_q_list(const std::string& text);

int cmd_certify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, const std::optional<std::vector<std::uint64_t>>& qs, OutputFormat format,
               std::ostream& out, std::ostream& err);
int cmd_lemma(const std::string& variant, unsigned p, unsigned p_cap, OutputFormat format, std::ostream& out, std::ostream& err);

// Full command line (without the program name); used by main and the tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lincert
