#include "fanocert/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace fanocert {

// ---------------------------------------------------------- analytic suites

namespace {

const std::vector<long> kDefaultSampleTs{20, 30, 50, 100, 200};

Json km_detail(long k, long M) { return Json{{"k", k}, {"M", M}}; }

std::string range_label(long lo, long hi) { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }

std::string interval_text(const Interval& x) { return "[" + x.lo().to_decimal() + ", " + x.hi().to_decimal() + "]"; }

CheckStatus sign_status(const SignCertificate& c) {
  if (c.certified()) return CheckStatus::pass;
  return c.refuted ? CheckStatus::fail : CheckStatus::inconclusive;
}

Finding sign_finding(std::string name, const SignCertificate& c, std::string anchor, Json extra = Json::object()) {
  std::string value = "undecided";
  if (c.certified())
    value = c.margin().to_decimal();
  else if (c.blocking_enclosure)
    value = interval_text(*c.blocking_enclosure);
  Json detail = std::move(extra);
  detail["scope"] = "verified on the stated box only";
  detail["certificate"] = to_json(c);
  return {std::move(name), sign_status(c), std::move(value), "0", std::move(anchor), std::move(detail)};
}

std::pair<long, long> require_km(const AnalyticRequest& r) {
  if (!r.k || !r.M) throw std::invalid_argument("--lemma " + r.lemma + " needs --k and --M");
  return {*r.k, *r.M};
}

std::vector<Finding> lemma13(const AnalyticRequest& r) {
  std::optional<DegreeTuple> d = r.degrees;
  if (!d) {
    auto [k, M] = require_km(r);
    if (M % k != 0) throw std::invalid_argument("--lemma 1.3 with --k/--M needs k | M; pass --degrees otherwise");
    d = DegreeTuple::equal(static_cast<int>(M / k + 1), static_cast<int>(k));
  }
  Certificate cert = certify_tuple(*d, {{0}});
  std::vector<Finding> out;
  for (const auto& c : cert.checks) {
    if (c.name != "tail_product_lt_4_3/l=0" && c.name != "tail_slopes_le_1_plus_1_over_a") continue;
    Json detail = km_detail(cert.k, cert.M);
    detail["degrees"] = d->to_string();
    detail["hypothesis_ok"] = cert.hypothesis_ok;
    out.push_back({"lemma13/" + c.name, c.status, c.value, c.bound, c.paper_anchor, std::move(detail)});
  }
  return out;
}

std::vector<Finding> lemma31(const AnalyticRequest& r) {
  auto [k, M] = require_km(r);
  auto certs = lemma31_regions(k, M, r.options);
  const char* names[3] = {"lemma31/region1_dlog_positive", "lemma31/region2_dlog_negative",
                          "lemma31/region3_d2log_negative"};
  const char* anchors[3] = {"d/dt log eps(t) > 0 on [2, (M+k)/2k]", "d/dt log eps(t) < 0 on [(M+1)/(k+1), M/k]",
                            "d2/dt2 log eps(t) < 0 on [(M+k)/2k, (M+1)/(k+1)]"};
  std::vector<Finding> out;
  for (int i = 0; i < 3; ++i) out.push_back(sign_finding(names[i], certs[i], anchors[i], km_detail(k, M)));
  return out;
}

std::vector<Finding> lemma32(const AnalyticRequest& r) {
  auto [k, M] = require_km(r);
  Lemma32Result res = lemma32_check(k, M, r.options.precision);
  Json detail = km_detail(k, M);
  detail["beta2"] = res.beta2.get_str();
  detail["beta3"] = res.beta3.get_str();
  detail["eps3"] = Json::array({res.eps3.lo().to_decimal(), res.eps3.hi().to_decimal()});
  detail["ratio_beta3_over_eps3"] = Json::array({res.ratio.lo().to_decimal(), res.ratio.hi().to_decimal()});
  Rational scaled = Rational(57, 50) * Rational(res.beta2);
  scaled.canonicalize();
  std::string ratio = interval_text(res.ratio);
  return {
      {"lemma32/exact", res.exact_check, res.beta3.get_str(), to_exact_string(scaled), "1.14 beta(2) < beta(3)",
       detail},
      {"lemma32/sandwich_lower", res.lower_leg, ratio, "563/500", "1.126 eps(3) <= beta(3)", detail},
      {"lemma32/sandwich_upper", res.upper_leg, ratio, "283/250", "beta(3) <= 1.132 eps(3)", detail},
      {"lemma32/beta2_le_eps3", res.conclusion, res.beta2.get_str(), interval_text(res.eps3), "beta(2) <= eps(3)",
       detail},
  };
}

std::vector<Finding> boundary_findings(ExprId expr, const AnalyticRequest& r, const char* anchor) {
  const auto& ts = r.t_values.empty() ? kDefaultSampleTs : r.t_values;
  for (long t : ts)
    if (t < 2) throw std::invalid_argument("sampled t must be at least 2");
  std::vector<Finding> out;
  for (const auto& s : boundary_samples(expr, ts, r.options.precision)) {
    Json detail{{"t", to_exact_string(s.t)}, {"s", Json::array({s.s.lo().to_decimal(), s.s.hi().to_decimal()})}};
    out.push_back({std::string(expr_tag(expr)) + "_boundary/t=" + to_exact_string(s.t), s.status,
                   interval_text(s.value), "0", anchor, std::move(detail)});
  }
  return out;
}

std::pair<long, long> t_range_or(const AnalyticRequest& r, long lo, long hi) {
  auto range = r.t_range.value_or(std::pair{lo, hi});
  if (range.first < 2 || range.second <= range.first) throw std::invalid_argument("--t-range needs 2 <= lo < hi");
  return range;
}

std::vector<Finding> cell_findings(ExprId expr, const std::string& prefix, const std::vector<VarBox>& boxes,
                                   const AnalyticRequest& r, const char* anchor) {
  std::vector<Finding> out;
  for (const auto& box : boxes) {
    SignCertificate c = certify_sign(expr, box, {}, Sign::positive, r.options);
    const Interval& t = box.at("t");
    std::string label = "[" + t.lo().to_decimal() + "," + t.hi().to_decimal() + "]";
    out.push_back(sign_finding(prefix + "/t=" + label, c, anchor));
  }
  return out;
}

std::vector<Finding> lemma34(const AnalyticRequest& r) {
  auto [lo, hi] = t_range_or(r, 20, 200);
  VarBox box = make_box({{"t", {Rational(lo), Rational(hi)}}}, r.options.precision);
  SignCertificate c = certify_sign(ExprId::G3, box, {}, Sign::positive, r.options);
  return {sign_finding("G3_positive/t=" + range_label(lo, hi), c, "G3(t) > 0 for t >= 20")};
}

std::vector<Finding> lemma35(const AnalyticRequest& r) {
  auto [lo, hi] = t_range_or(r, 20, 60);
  Bits p = r.options.precision;
  auto lower = t_cell_boxes(lo, hi, r.cell_step, 0, 1, true, p);
  auto upper = t_cell_boxes(lo, hi, r.cell_step, 1, 4, false, p);
  auto out = cell_findings(ExprId::G4, "G4_positive/s_to_t2", lower, r, "G4(s,t) > 0 for 8t ln t - t <= s <= t^2");
  auto more = cell_findings(ExprId::G4, "G4_positive/t2_to_4t2", upper, r, "G4(s,t) > 0 for t^2 <= s <= 4t^2");
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<Finding> lemma36(const AnalyticRequest& r) {
  auto out = boundary_findings(ExprId::G6, r, "G6(8t ln t - t, t) >= 0");
  auto [lo, hi] = t_range_or(r, 20, 60);
  auto boxes = t_cell_boxes(lo, hi, r.cell_step, 0, 4, true, r.options.precision);
  auto cells = cell_findings(ExprId::G7, "G7_positive", boxes, r, "G7(s,t) >= 0 for s >= 8t ln t - t");
  out.insert(out.end(), cells.begin(), cells.end());
  return out;
}

}  // namespace

const std::vector<std::string>& lemma_tags() {
  static const std::vector<std::string> tags{"1.3", "3.1", "3.2", "3.3-sample", "3.4", "3.5", "3.6-sample"};
  return tags;
}

std::vector<Finding> analytic_findings(const AnalyticRequest& r) {
  if (r.cell_step < 1) throw std::invalid_argument("--cell-step must be positive");
  if (r.lemma == "1.3") return lemma13(r);
  if (r.lemma == "3.1") return lemma31(r);
  if (r.lemma == "3.2") return lemma32(r);
  if (r.lemma == "3.3-sample") return boundary_findings(ExprId::G2, r, "G2(8t ln t - t, t) > 0");
  if (r.lemma == "3.4") return lemma34(r);
  if (r.lemma == "3.5") return lemma35(r);
  if (r.lemma == "3.6-sample") return lemma36(r);
  throw std::invalid_argument("unknown lemma '" + r.lemma + "'");
}

// --------------------------------------------------------------- front end

namespace {

struct Options {
  std::string degrees;
  std::optional<long> k;
  std::optional<long> M;
  std::vector<int> levels;
  bool all_l = false;
  std::vector<std::string> lemmas;
  long precision = kDefaultPrecision;
  int max_depth = 40;
  std::string format = "text";
  std::string out_file;
  std::string k_range;
  std::string m_rule = "min-multiple";
  std::string m_range;
  std::string shape = "equal";
  std::string tuples;
  unsigned threads = 1;
  std::string t_range;
  std::vector<long> t_values;
  long cell_step = 5;
  std::vector<std::string> names;
  std::vector<std::string> params;
  std::optional<long> d_k;
};

std::pair<long, long> parse_range(const std::string& text, const char* flag) {
  auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      long v = std::stol(text);
      return {v, v};
    }
    std::size_t used = 0;
    long lo = std::stol(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("");
    std::string rest = text.substr(colon + 1);
    long hi = std::stol(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw std::invalid_argument(std::string(flag) + " expects LO:HI, got '" + text + "'");
  }
}

std::vector<int> levels_for(const Options& o, const DegreeTuple& d) {
  if (o.all_l) {
    std::vector<int> all;
    for (int l = 0; l <= d.k(); ++l) all.push_back(l);
    return all;
  }
  std::vector<int> levels = o.levels.empty() ? std::vector<int>{0} : o.levels;
  for (int l : levels)
    if (l < 0 || l > d.k()) throw std::invalid_argument("--l must lie in [0, k]");
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

DegreeTuple tuple_from(const Options& o) {
  if (!o.degrees.empty()) return parse_degrees(o.degrees);
  if (!o.k || !o.M) throw std::invalid_argument("give --degrees, or --k and --M");
  long k = *o.k, M = *o.M;
  if (k < 1 || M <= k) throw std::invalid_argument("--k/--M need k >= 1 and M > k for a tuple with degrees >= 2");
  if (M % k == 0) return DegreeTuple::equal(static_cast<int>(M / k + 1), static_cast<int>(k));
  return star_tuple(M, k);
}

std::string runs_text(const SlopeSequence& seq) {
  std::string out;
  for (const auto& run : seq.runs()) {
    if (run.count == 0) continue;
    if (!out.empty()) out += ',';
    out += to_exact_string(run.value());
    if (run.count > 1) out += "^" + std::to_string(run.count);
  }
  return out.empty() ? "(empty)" : out;
}

std::vector<Finding> slopes_findings(const DegreeTuple& d, const std::vector<int>& levels) {
  std::vector<Finding> out;
  for (int l : levels) {
    SlopeSequence seq = slope_sequence(d, l);
    std::string suffix = "/l=" + std::to_string(l);
    Json detail = km_detail(d.k(), d.M());
    detail["degrees"] = d.to_string();
    detail["level"] = l;
    detail["length"] = seq.size();
    detail["cutoff"] = seq.cutoff();
    Json runs = Json::array();
    for (const auto& run : seq.runs()) runs.push_back({{"value", to_exact_string(run.value())}, {"count", run.count}});
    detail["runs"] = std::move(runs);
    out.push_back({"slopes" + suffix, std::nullopt, runs_text(seq), "", "slopes in standard order", detail});
    out.push_back({"N" + suffix, std::nullopt, std::to_string(seq.cutoff()), "", "N_l = M - max([2 ln k], l)",
                   detail});
    out.push_back({"tail_product" + suffix, std::nullopt, to_exact_string(tail_product(d, l)), "",
                   "beta(l) = product of slopes past N_l", detail});
    out.push_back({"gamma_threshold" + suffix, std::nullopt, to_exact_string(gamma_threshold(d, l)), "",
                   "gamma_l = (4/3) / beta(l)", detail});
  }
  return out;
}

std::vector<Finding> gamma_findings(const DegreeTuple& d, const std::vector<int>& levels) {
  std::vector<Finding> out;
  RestrictedDegreeProfile profile = restricted_degrees(d);
  for (int l : levels) {
    std::string suffix = "/l=" + std::to_string(l);
    Json detail = km_detail(d.k(), d.M());
    detail["degrees"] = d.to_string();
    detail["level"] = l;
    detail["cutoff"] = slope_cutoff(d, l);
    if (slope_cutoff(d, l) < 1) {
      out.push_back({"gamma_min" + suffix, std::nullopt, "inf", "", "min over an empty range of e", detail});
      continue;
    }
    GammaMinimum gm = gamma_min(profile, l);
    detail["argmin_e"] = gm.argmin;
    out.push_back({"gamma_min" + suffix, std::nullopt, gm.value.get_str(), "",
                   "min over 1 <= e <= N_l of C(M+l-e+m_e, M+l-e)", detail});
    out.push_back({"gamma_min_argmin_e" + suffix, std::nullopt, std::to_string(gm.argmin), "", "", detail});
  }
  return out;
}

std::vector<Finding> bounds_findings(const Options& o) {
  if (!o.k || !o.M) throw std::invalid_argument("bounds needs --k and --M");
  BoundParams available{{"M", *o.M}, {"k", *o.k}};
  if (o.d_k) available["d_k"] = *o.d_k;
  if (o.levels.size() > 1) throw std::invalid_argument("bounds takes at most one --l");
  if (!o.levels.empty()) available["l"] = o.levels.front();
  for (const auto& kv : o.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--param expects KEY=VALUE, got '" + kv + "'");
    try {
      available[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("--param value must be an integer: '" + kv + "'");
    }
  }
  std::vector<BoundName> names;
  if (o.names.empty()) {
    for (auto tag : {"A", "thm01", "thm02", "thm04", "thm31_target", "hyp_reducible", "hyp_singular",
                     "step_irreducible", "rank_locus", "lemma22", "prop22", "b_of"}) {
      BoundName n = *parse_bound_name(tag);
      auto need = bound_parameters(n);
      if (std::all_of(need.begin(), need.end(), [&](const std::string& key) { return available.contains(key); }))
        names.push_back(n);
    }
  } else {
    for (const auto& tag : o.names) {
      auto n = parse_bound_name(tag);
      if (!n) throw std::invalid_argument("unknown bound name '" + tag + "'");
      names.push_back(*n);
    }
  }
  std::vector<Finding> out;
  Json base = km_detail(*o.k, *o.M);
  for (BoundName n : names) {
    BoundParams p;
    for (const auto& key : bound_parameters(n)) {
      auto it = available.find(key);
      if (it == available.end())
        throw std::invalid_argument("bound " + std::string(bound_tag(n)) + " needs --param " + key + "=...");
      p[key] = it->second;
    }
    Json detail = base;
    detail["params"] = p;
    out.push_back({std::string(bound_tag(n)), std::nullopt, to_exact_string(closed_form_bound(n, p)), "", "",
                   std::move(detail)});
  }
  if (o.names.empty()) {
    out.push_back({"thm01_attained_by", std::nullopt, std::string(bound_tag(thm01_attained_by(*o.M, *o.k))), "",
                   "thm01 = min(thm02, thm04)", base});
    PropTwoTwoMinimum p22 = prop22_minimum(*o.M, *o.k);
    out.push_back({"prop22_min", std::nullopt, to_exact_string(p22.value), "", "min over 1 <= l <= k", base});
    out.push_back({"prop22_argmin_l", std::nullopt, std::to_string(p22.argmin_l), "", "", base});
  }
  return out;
}

Json echo_options(const CLI::App& sub) {
  Json echo{{"command", sub.get_name()}};
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string key = opt->get_name();
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    const auto& results = opt->results();
    if (opt->get_expected_max() == 0)
      echo[key] = true;
    else if (results.size() == 1)
      echo[key] = results.front();
    else
      echo[key] = results;
  }
  return echo;
}

GridSpec grid_from(const Options& o) {
  GridSpec g;
  auto shape = parse_shape(o.shape);
  if (!shape) throw std::invalid_argument("--shape must be equal, star or explicit");
  g.shape = *shape;
  if (g.shape == Shape::explicit_tuples) {
    if (o.tuples.empty()) throw std::invalid_argument("--shape explicit needs --tuples");
    std::stringstream ss(o.tuples);
    for (std::string item; std::getline(ss, item, ';');) g.tuples.push_back(parse_degrees(item));
    return g;
  }
  if (o.k_range.empty()) throw std::invalid_argument("sweep needs --k-range");
  std::tie(g.k_lo, g.k_hi) = parse_range(o.k_range, "--k-range");
  if (g.k_lo < 1) throw std::invalid_argument("--k-range must start at 1 or above");
  if (g.k_hi - g.k_lo > 100'000) throw std::invalid_argument("--k-range is too large");
  auto rule = parse_m_rule(o.m_rule);
  if (!rule) throw std::invalid_argument("--M-rule must be min-multiple, min or range");
  g.m_rule = *rule;
  if (g.m_rule == MRule::range) {
    if (o.m_range.empty()) throw std::invalid_argument("--M-rule range needs --M-range");
    std::tie(g.m_lo, g.m_hi) = parse_range(o.m_range, "--M-range");
  }
  return g;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Report format: json, csv or text")->capture_default_str();
  sub->add_option("--out", o.out_file, "Write the report to FILE instead of standard output");
  sub->add_option("--precision", o.precision, "Working precision in bits for interval evaluation")
      ->capture_default_str();
  sub->add_option("--max-depth", o.max_depth, "Bisection depth limit for sign certificates")->capture_default_str();
}

void add_levels(CLI::App* sub, Options& o) {
  sub->add_option("--l", o.levels, "Singularity level(s) to examine (default 0)");
  sub->add_flag("--all-l", o.all_l, "Examine every level 0..k");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact and interval certification of the slope and codimension inequalities", "fanocert"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* slopes = app.add_subcommand("slopes", "Slope sequence, cutoff N_l and tail products of a degree tuple");
  auto* gamma = app.add_subcommand("gamma", "Exhaustive minimum of gamma(e, d, l) over e");
  auto* certify = app.add_subcommand("certify", "Full inequality chain for one tuple");
  auto* sweep_cmd = app.add_subcommand("sweep", "Certify every tuple of a parameter grid");
  auto* analytic = app.add_subcommand("verify-analytic", "Interval sign certificates for the analytic estimates");
  auto* bounds = app.add_subcommand("bounds", "Evaluate closed-form codimension bounds");

  for (auto* sub : {slopes, gamma, certify}) {
    sub->add_option("--degrees", o.degrees, "Degree tuple, e.g. 25^20 or 2^3,5");
    add_levels(sub, o);
    add_common(sub, o);
  }
  slopes->get_option("--degrees")->required();
  gamma->get_option("--degrees")->required();
  certify->add_option("--k", o.k, "Number of equations (with --M, picks the equal or star-shaped tuple)");
  certify->add_option("--M", o.M, "M = |d| - k");

  sweep_cmd->add_option("--k-range", o.k_range, "k range LO:HI");
  sweep_cmd->add_option("--M-rule", o.m_rule, "min-multiple, min or range")->capture_default_str();
  sweep_cmd->add_option("--M-range", o.m_range, "M range LO:HI for --M-rule range");
  sweep_cmd->add_option("--shape", o.shape, "equal, star or explicit")->capture_default_str();
  sweep_cmd->add_option("--tuples", o.tuples, "Semicolon-separated degree tuples for --shape explicit");
  sweep_cmd->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  add_levels(sweep_cmd, o);
  add_common(sweep_cmd, o);

  analytic->add_option("--lemma", o.lemmas, "1.3, 3.1, 3.2, 3.3-sample, 3.4, 3.5 or 3.6-sample")
      ->required()
      ->check(CLI::IsMember(lemma_tags()));
  analytic->add_option("--k", o.k, "Number of equations");
  analytic->add_option("--M", o.M, "M = |d| - k");
  analytic->add_option("--degrees", o.degrees, "Degree tuple for --lemma 1.3");
  analytic->add_option("--t-range", o.t_range, "t range LO:HI for certified boxes");
  analytic->add_option("--t-values", o.t_values, "Sampled t values")->delimiter(',');
  analytic->add_option("--cell-step", o.cell_step, "Width in t of each certified cell")->capture_default_str();
  add_common(analytic, o);

  bounds->add_option("--k", o.k, "Number of equations")->required();
  bounds->add_option("--M", o.M, "M = |d| - k")->required();
  bounds->add_option("--l", o.levels, "Singularity level");
  bounds->add_option("--d-k", o.d_k, "Largest degree, for hyp_reducible");
  bounds->add_option("--name", o.names, "Catalog entries to evaluate (default: all computable)");
  bounds->add_option("--param", o.params, "Extra parameter KEY=VALUE (a, e, j, d_j, ...)");
  add_common(bounds, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  ReportDocument doc;
  Format format = Format::text;
  try {
    auto f = parse_format(o.format);
    if (!f) throw std::invalid_argument("--format must be json, csv or text");
    format = *f;
    if (o.precision < 16 || o.precision > 65536) throw std::invalid_argument("--precision must lie in [16, 65536]");
    if (o.max_depth < 1 || o.max_depth > 400) throw std::invalid_argument("--max-depth must lie in [1, 400]");
    Json echo = echo_options(*sub);
    std::string name = sub->get_name();
    if (name == "slopes" || name == "gamma") {
      DegreeTuple d = parse_degrees(o.degrees);
      auto levels = levels_for(o, d);
      doc = make_report(echo, {}, name == "slopes" ? slopes_findings(d, levels) : gamma_findings(d, levels));
    } else if (name == "certify") {
      DegreeTuple d = tuple_from(o);
      doc = make_report(echo, {certify_tuple(d, {levels_for(o, d)})});
    } else if (name == "sweep") {
      GridSpec grid = grid_from(o);
      SweepConfig config;
      config.threads = std::max(1u, o.threads);
      if (o.all_l) {
        config.certify.levels = {};
      } else {
        config.certify.levels = o.levels.empty() ? std::vector<int>{0} : o.levels;
      }
      doc = make_report(echo, sweep(grid, config));
    } else if (name == "verify-analytic") {
      std::vector<Finding> findings;
      for (const auto& lemma : o.lemmas) {
        AnalyticRequest r;
        r.lemma = lemma;
        r.k = o.k;
        r.M = o.M;
        if (!o.degrees.empty()) r.degrees = parse_degrees(o.degrees);
        if (!o.t_range.empty()) r.t_range = parse_range(o.t_range, "--t-range");
        r.t_values = o.t_values;
        r.cell_step = o.cell_step;
        r.options.precision = o.precision;
        r.options.max_depth = o.max_depth;
        r.options.max_precision = std::max<Bits>(512, o.precision);
        auto part = analytic_findings(r);
        findings.insert(findings.end(), part.begin(), part.end());
      }
      doc = make_report(echo, {}, std::move(findings));
    } else {
      doc = make_report(echo, {}, bounds_findings(o));
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 70;
  }

  std::string text = render(doc, format);
  if (o.out_file.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out_file, std::ios::binary);
    file << text;
    if (!file) {
      err << "error: cannot write " << o.out_file << "\n";
      return 74;
    }
  }
  return exit_code(doc.summary);
}

}  // namespace fanocert
