#include "fanocert/report.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace fanocert {

// ------------------------------------------------------------------ parsing

namespace {

long parse_positive(std::string_view text, std::string_view whole) {
  long v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw std::invalid_argument("malformed degree list '" + std::string(whole) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

DegreeTuple parse_degrees(std::string_view text) {
  std::vector<int> degrees;
  std::string_view rest = trim(text);
  if (rest.empty()) throw std::invalid_argument("empty degree list");
  while (true) {
    auto comma = rest.find(',');
    std::string_view item = trim(rest.substr(0, comma));
    auto caret = item.find('^');
    long degree = parse_positive(trim(item.substr(0, caret)), text);
    long count = caret == std::string_view::npos ? 1 : parse_positive(trim(item.substr(caret + 1)), text);
    if (degree < 2) throw std::invalid_argument("every degree must be at least 2, got " + std::to_string(degree));
    if (count < 1) throw std::invalid_argument("repeat count must be positive");
    if (degree > 1'000'000 || count > 1'000'000 || degrees.size() + static_cast<std::size_t>(count) > 1'000'000)
      throw std::invalid_argument("degree list too large");
    degrees.insert(degrees.end(), static_cast<std::size_t>(count), static_cast<int>(degree));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return DegreeTuple(std::move(degrees));
}

// ------------------------------------------------------------------ summary

Summary tally(const std::vector<Certificate>& certificates, const std::vector<Finding>& findings) {
  Summary s;
  for (const auto& c : certificates) {
    switch (c.overall) {
      case Overall::pass:
        ++s.pass;
        break;
      case Overall::fail:
        ++s.fail;
        break;
      case Overall::inconclusive:
        ++s.inconclusive;
        break;
      case Overall::out_of_hypotheses:
        ++s.out_of_hypotheses;
        break;
    }
  }
  for (const auto& f : findings) {
    if (!f.status) continue;
    switch (*f.status) {
      case CheckStatus::pass:
        ++s.pass;
        break;
      case CheckStatus::fail:
        ++s.fail;
        break;
      case CheckStatus::inconclusive:
        ++s.inconclusive;
        break;
    }
  }
  return s;
}

ReportDocument make_report(Json spec_echo, std::vector<Certificate> certificates, std::vector<Finding> findings) {
  ReportDocument doc;
  doc.spec_echo = std::move(spec_echo);
  doc.certificates = std::move(certificates);
  doc.findings = std::move(findings);
  doc.summary = tally(doc.certificates, doc.findings);
  return doc;
}

int exit_code(const Summary& summary) {
  if (summary.fail > 0) return 1;
  if (summary.inconclusive > 0) return 2;
  return 0;
}

// --------------------------------------------------------------------- JSON

namespace {

Json interval_json(const Interval& x) { return Json::array({x.lo().to_decimal(), x.hi().to_decimal()}); }

Json box_json(const VarBox& box) {
  Json out = Json::object();
  for (const auto& [name, iv] : box) out[name] = interval_json(iv);
  return out;
}

CheckStatus parse_check_status(const std::string& tag) {
  for (CheckStatus s : {CheckStatus::pass, CheckStatus::fail, CheckStatus::inconclusive})
    if (check_status_tag(s) == tag) return s;
  throw std::invalid_argument("unknown check status '" + tag + "'");
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad field '") + key + "': " + e.what());
  }
}

void assert_consistent(const Certificate& c) {
  if (derive_overall(c.hypothesis_ok, c.checks) != c.overall)
    throw std::logic_error("certificate overall status does not follow from its checks");
}

}  // namespace

Json to_json(const CheckResult& c) {
  Json j{{"name", c.name},
         {"status", check_status_tag(c.status)},
         {"value", c.value},
         {"bound", c.bound},
         {"paper_anchor", c.paper_anchor}};
  if (c.level) j["level"] = *c.level;
  return j;
}

Json to_json(const Certificate& c) {
  assert_consistent(c);
  Json checks = Json::array();
  for (const auto& ch : c.checks) checks.push_back(to_json(ch));
  Json values = Json::array();
  for (const auto& v : c.values) values.push_back({{"name", v.name}, {"value", v.value}});
  return Json{{"params", {{"degrees", c.degrees.to_string()}, {"k", c.k}, {"M", c.M}, {"levels", c.levels}}},
              {"hypothesis_ok", c.hypothesis_ok},
              {"checks", std::move(checks)},
              {"values", std::move(values)},
              {"overall", overall_tag(c.overall)}};
}

Json to_json(const SignCertificate& c) {
  Json leaves = Json::array();
  for (const auto& leaf : c.leaves)
    leaves.push_back({{"depth", leaf.depth},
                      {"box", box_json(leaf.box)},
                      {"enclosure", interval_json(leaf.enclosure)},
                      {"precision", leaf.precision}});
  Json j{{"expr", expr_tag(c.expr)},
         {"box", box_json(c.box)},
         {"params", c.params},
         {"claimed_sign", sign_tag(c.claimed_sign)},
         {"precision", c.precision},
         {"max_depth", c.max_depth},
         {"status", status_tag(c.status)},
         {"nodes", c.nodes},
         {"leaf_count", c.leaves.size()}};
  if (c.certified()) j["margin"] = c.margin().to_decimal();
  if (c.blocking_box) j["blocking_box"] = box_json(*c.blocking_box);
  if (c.blocking_enclosure) j["blocking_enclosure"] = interval_json(*c.blocking_enclosure);
  j["refuted"] = c.refuted;
  j["leaves"] = std::move(leaves);
  return j;
}

Json to_json(const Finding& f) {
  return Json{{"name", f.name},
              {"status", f.status ? Json(check_status_tag(*f.status)) : Json(nullptr)},
              {"value", f.value},
              {"bound", f.bound},
              {"paper_anchor", f.paper_anchor},
              {"detail", f.detail}};
}

Json to_json(const ReportDocument& doc) {
  if (tally(doc.certificates, doc.findings) != doc.summary)
    throw std::logic_error("report summary does not match its certificates");
  Json certs = Json::array();
  for (const auto& c : doc.certificates) certs.push_back(to_json(c));
  Json findings = Json::array();
  for (const auto& f : doc.findings) findings.push_back(to_json(f));
  return Json{{"tool_version", doc.tool_version},
              {"spec_echo", doc.spec_echo},
              {"certificates", std::move(certs)},
              {"findings", std::move(findings)},
              {"summary",
               {{"pass", doc.summary.pass},
                {"fail", doc.summary.fail},
                {"inconclusive", doc.summary.inconclusive},
                {"out_of_hypotheses", doc.summary.out_of_hypotheses}}}};
}

ReportDocument report_from_json(const Json& j) {
  ReportDocument doc;
  doc.tool_version = field<std::string>(j, "tool_version");
  doc.spec_echo = field<Json>(j, "spec_echo");
  for (const Json& cj : field<Json>(j, "certificates")) {
    Json params = field<Json>(cj, "params");
    DegreeTuple degrees = parse_degrees(field<std::string>(params, "degrees"));
    Certificate c{degrees,
                  field<long>(params, "k"),
                  field<long>(params, "M"),
                  field<std::vector<int>>(params, "levels"),
                  field<bool>(cj, "hypothesis_ok"),
                  {},
                  {},
                  Overall::pass};
    if (c.k != degrees.k() || c.M != degrees.M()) throw std::invalid_argument("params k, M disagree with degrees");
    for (const Json& ch : field<Json>(cj, "checks")) {
      CheckResult r{field<std::string>(ch, "name"),       parse_check_status(field<std::string>(ch, "status")),
                    field<std::string>(ch, "value"),      field<std::string>(ch, "bound"),
                    field<std::string>(ch, "paper_anchor"), std::nullopt};
      if (ch.contains("level")) r.level = field<int>(ch, "level");
      c.checks.push_back(std::move(r));
    }
    for (const Json& v : field<Json>(cj, "values"))
      c.values.push_back({field<std::string>(v, "name"), field<std::string>(v, "value")});
    auto overall = parse_overall(field<std::string>(cj, "overall"));
    if (!overall) throw std::invalid_argument("unknown overall status");
    c.overall = *overall;
    if (derive_overall(c.hypothesis_ok, c.checks) != c.overall)
      throw std::invalid_argument("certificate overall status does not follow from its checks");
    doc.certificates.push_back(std::move(c));
  }
  for (const Json& fj : field<Json>(j, "findings")) {
    Finding f{field<std::string>(fj, "name"),  std::nullopt, field<std::string>(fj, "value"),
              field<std::string>(fj, "bound"), field<std::string>(fj, "paper_anchor"), field<Json>(fj, "detail")};
    if (!fj.at("status").is_null()) f.status = parse_check_status(field<std::string>(fj, "status"));
    doc.findings.push_back(std::move(f));
  }
  Json s = field<Json>(j, "summary");
  doc.summary = {field<long>(s, "pass"), field<long>(s, "fail"), field<long>(s, "inconclusive"),
                 field<long>(s, "out_of_hypotheses")};
  if (tally(doc.certificates, doc.findings) != doc.summary)
    throw std::invalid_argument("summary counts do not match the certificates");
  return doc;
}

std::string render_json(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

// ---------------------------------------------------------------------- CSV

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_row(std::ostringstream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << csv_field(c);
    first = false;
  }
  os << '\n';
}

}  // namespace

std::string render_csv(const ReportDocument& doc) {
  std::ostringstream os;
  csv_row(os, {"k", "M", "degrees", "l", "check", "status", "value", "bound"});
  for (const auto& c : doc.certificates) {
    for (const auto& ch : c.checks)
      csv_row(os, {std::to_string(c.k), std::to_string(c.M), c.degrees.to_string(),
                   ch.level ? std::to_string(*ch.level) : "", ch.name, std::string(check_status_tag(ch.status)),
                   ch.value, ch.bound});
  }
  for (const auto& f : doc.findings) {
    std::string k = f.detail.contains("k") ? f.detail["k"].dump() : "";
    std::string M = f.detail.contains("M") ? f.detail["M"].dump() : "";
    csv_row(os, {k, M, "", "", f.name, f.status ? std::string(check_status_tag(*f.status)) : "info", f.value,
                 f.bound});
  }
  return os.str();
}

// --------------------------------------------------------------------- text

std::string render_text(const ReportDocument& doc) {
  std::ostringstream os;
  os << "fanocert " << doc.tool_version << "\n";
  for (const auto& c : doc.certificates) {
    os << "\nd = (" << c.degrees.to_string() << ")  k = " << c.k << "  M = " << c.M
       << "  hypotheses (k >= 20, M >= 8k ln k): " << (c.hypothesis_ok ? "yes" : "no") << "\n";
    for (const auto& ch : c.checks)
      os << "  [" << check_status_tag(ch.status) << "] " << ch.name << ": " << ch.value << " vs " << ch.bound << "  ("
         << ch.paper_anchor << ")\n";
    for (const auto& v : c.values) os << "  " << v.name << " = " << v.value << "\n";
    os << "  overall: " << overall_tag(c.overall) << "\n";
  }
  if (!doc.certificates.empty())
    os << "\nnote: c(j) counts pairs (i, alpha) with 2 <= alpha <= min(j, d_i - 1); the printed lower limit"
          " alpha >= 1 would not give M - l slopes.\n";
  if (!doc.findings.empty()) os << "\n";
  for (const auto& f : doc.findings) {
    os << "  [" << (f.status ? check_status_tag(*f.status) : "info") << "] " << f.name << ": " << f.value;
    if (!f.bound.empty()) os << " vs " << f.bound;
    if (!f.paper_anchor.empty()) os << "  (" << f.paper_anchor << ")";
    os << "\n";
  }
  os << "\nsummary: pass " << doc.summary.pass << ", fail " << doc.summary.fail << ", inconclusive "
     << doc.summary.inconclusive << ", out_of_hypotheses " << doc.summary.out_of_hypotheses << "\n";
  return os.str();
}

std::optional<Format> parse_format(std::string_view tag) {
  if (tag == "json") return Format::json;
  if (tag == "csv") return Format::csv;
  if (tag == "text") return Format::text;
  return std::nullopt;
}

std::string render(const ReportDocument& doc, Format format) {
  switch (format) {
    case Format::json:
      return render_json(doc);
    case Format::csv:
      return render_csv(doc);
    case Format::text:
      return render_text(doc);
  }
  return render_text(doc);
}

}  // namespace fanocert
