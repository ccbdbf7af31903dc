#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fanocert/certify.hpp"
#include "json.hpp"

namespace fanocert {

inline constexpr std::string_view kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// "25^20", "2^3,5", "2,3,3". Throws std::invalid_argument on malformed text,
// an entry below 2 or an empty tuple.
DegreeTuple parse_degrees(std::string_view text);

// A result that is not tied to a degree tuple: an analytic sign claim, a
// sampled value, or an informational quantity (no status).
struct Finding {
  std::string name;
  std::optional<CheckStatus> status;
  std::string value;
  std::string bound;
  std::string paper_anchor;
  Json detail;

  bool operator==(const Finding&) const = default;
};

struct Summary {
  long pass = 0;
  long fail = 0;
  long inconclusive = 0;
  long out_of_hypotheses = 0;

  bool operator==(const Summary&) const = default;
};

struct ReportDocument {
  std::string tool_version{kToolVersion};
  Json spec_echo = Json::object();
  std::vector<Certificate> certificates;
  std::vector<Finding> findings;
  Summary summary;

  bool operator==(const ReportDocument&) const = default;
};

// Tally of certificate overall states and finding statuses.
Summary tally(const std::vector<Certificate>& certificates, const std::vector<Finding>& findings);

ReportDocument make_report(Json spec_echo, std::vector<Certificate> certificates, std::vector<Finding> findings = {});

// 1 if anything failed, else 2 if anything is inconclusive, else 0.
int exit_code(const Summary& summary);

Json to_json(const CheckResult& c);
Json to_json(const Certificate& c);
Json to_json(const SignCertificate& c);
Json to_json(const Finding& f);
Json to_json(const ReportDocument& doc);

// Throws std::invalid_argument on schema violations, including an overall
// status that does not follow from the listed checks.
ReportDocument report_from_json(const Json& j);

std::string render_json(const ReportDocument& doc);
std::string render_csv(const ReportDocument& doc);
std::string render_text(const ReportDocument& doc);

enum class Format { json, csv, text };

std::optional<Format> parse_format(std::string_view tag);
std::string render(const ReportDocument& doc, Format format);

}  // namespace fanocert
