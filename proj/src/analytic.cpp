#include "fanocert/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fanocert/exact.hpp"

namespace fanocert {

namespace {

struct ExprEntry {
  ExprId id;
  std::string_view tag;
  std::vector<std::string> variables;
  std::vector<std::string> parameters;
};

const std::vector<ExprEntry>& expr_table() {
  static const std::vector<ExprEntry> table{
      {ExprId::epsilon, "epsilon", {"t"}, {"k", "M"}},
      {ExprId::dlog_epsilon, "dlog_epsilon", {"t"}, {"k", "M"}},
      {ExprId::d2log_epsilon, "d2log_epsilon", {"t"}, {"k", "M"}},
      {ExprId::ine1_lhs, "ine1_lhs", {"t"}, {"k", "M"}},
      {ExprId::G1, "G1", {}, {"M", "k"}},
      {ExprId::G2, "G2", {"s", "t"}, {}},
      {ExprId::G3, "G3", {"t"}, {}},
      {ExprId::G4, "G4", {"s", "t"}, {}},
      {ExprId::G5, "G5", {"s", "t", "r"}, {}},
      {ExprId::G6, "G6", {"s", "t"}, {}},
      {ExprId::G7, "G7", {"s", "t"}, {}},
      {ExprId::H1, "H1", {"t"}, {}},
      {ExprId::H2, "H2", {"t"}, {}},
      {ExprId::A_real, "A_real", {"s", "t"}, {}},
  };
  return table;
}

const ExprEntry& expr_entry(ExprId id) {
  for (const auto& e : expr_table())
    if (e.id == id) return e;
  throw std::logic_error("unknown expression");
}

Interval rational(long num, long den, Bits p) { return Interval::from_rational(Rational(num, den), p); }

// log(sqrt(2 pi) / e^2) = log(2 pi) / 2 - 2
Interval log_stirling_constant(Bits p) { return log(pi_enclosure(p) * 2) / 2 - 2; }

struct EvalContext {
  const VarBox& point;
  const IntParams& params;
  Bits precision;

  Interval var(const std::string& name) const {
    auto it = point.find(name);
    if (it == point.end()) throw std::invalid_argument("missing variable " + name);
    const Interval& v = it->second;
    return v.precision() >= precision ? v : v.with_precision(precision);
  }

  long param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) throw std::invalid_argument("missing parameter " + name);
    return it->second;
  }
};

// k b(t) = k (M/k - t + 1) = M + k - k t and b(t) = (M + k)/k - t.
struct SlopeTerms {
  Interval t;
  Interval b;
  Interval kb;
  long k;
};

SlopeTerms slope_terms(const EvalContext& ctx) {
  long k = ctx.param("k");
  long M = ctx.param("M");
  if (k < 1) throw std::invalid_argument("parameter k must be positive");
  Interval t = ctx.var("t");
  Interval b = Interval::from_rational(Rational(M + k, k), ctx.precision) - t;
  Interval kb = Interval::from_integer(M + k, ctx.precision) - t * k;
  return {t, b, kb, k};
}

Interval log_epsilon(const SlopeTerms& v, Bits p) {
  Interval half = rational(1, 2, p);
  Interval n = v.kb + v.t;
  return log_stirling_constant(p) + (n + half) * log(n) - (v.kb + half) * log(v.kb) - (v.t + half) * log(v.t);
}

Interval eval_dlog(const SlopeTerms& v) {
  Interval lead = (sqr(v.t) - sqr(v.b) * v.k) / (v.b * v.t * (v.kb + v.t) * 2);
  return lead - log(1 + v.t / v.kb) * v.k + log(1 + v.kb / v.t);
}

Interval eval_d2log(const SlopeTerms& v) {
  Interval diff = sqr(v.t) - sqr(v.b) * v.k;
  Interval n = v.kb + v.t;
  Interval bt = v.b * v.t;
  return 1 / bt + sqr(diff) / (sqr(bt) * sqr(n) * 2) + diff * (v.k - 1) / (bt * sqr(n)) -
         sqr(v.t + v.b) * v.k / (bt * n);
}

Interval eval_A(const Interval& s, const Interval& t) { return (s - t * 4) * (s - t * 5) / 2 + s + t * 2; }

Interval eval_G2(const Interval& s, const Interval& t, Bits p) {
  Interval half = rational(1, 2, p);
  Interval x = s / t;
  Interval log_eps_a = log_stirling_constant(p) + (t + x + half) * log(t + x) - (t + half) * log(t) -
                       (x + half) * log(x);
  Interval beta2 = (s - t + 2) * (s - t + 1) / 2;
  return log_eps_a - log(beta2);
}

Interval eval_H1(const Interval& t, Bits p) {
  Interval L8 = log(t) * 8;
  Interval half = rational(1, 2, p);
  return (8 / t + 1) * (L8 + t - half) / (L8 + t - 1) - (8 / t) * (L8 - half) / (L8 - 1) - 1;
}

Interval eval_H2(const Interval& t) {
  Interval L = log(t);
  Interval tL8 = t * L * 8;
  return -(L * 8 + 6) * (1 / (tL8 - t * 2 + 2) + 1 / (tL8 - t * 2 + 1));
}

Interval eval_G3(const Interval& t, Bits p) {
  Interval L8m1 = log(t) * 8 - 1;
  return log(1 + L8m1 / t) + (8 / t) * log(1 + t / L8m1) - 1 / (t * 2) + eval_H1(t, p) + eval_H2(t);
}

Interval eval_G4(const Interval& s, const Interval& t) {
  Interval t2 = sqr(t);
  // s^2 + (3 - 2t) s + t^2 - 3t + 2 in factored form
  Interval denom = (s - t + 1) * (s - t + 2);
  return log(1 + t2 / s) / t - t2 / (s * (t2 + s) * 2) - (s * 2 + 3 - t * 2) / denom;
}

Interval eval_G5(const Interval& s, const Interval& t, const Interval& r, Bits p) {
  Interval half = rational(1, 2, p);
  Interval three_halves = rational(3, 2, p);
  Interval x = s / t;
  return (x + r + three_halves) * log(x + r + 1) - (r + half) * log(r) - (x + three_halves) * log(x + 1) +
         log_stirling_constant(p) - log(eval_A(s, t));
}

Interval eval_G7(const Interval& s, const Interval& t) {
  Interval r = log(t) * 2 - 1;
  Interval x = s / t;
  // s^2 - 9ts + 2s + 20t^2 + 4t completed in s
  Interval denom = sqr(s - t * 9 / 2 + 1) - (sqr(t) / 4 - t * 13 + 1);
  return log(1 + r / (x + 1)) / t - r / (t * (x + 1) * (x + log(t) * 2) * 2) - (s * 2 - t * 9 + 2) / denom;
}

}  // namespace

std::string_view expr_tag(ExprId id) { return expr_entry(id).tag; }

std::optional<ExprId> parse_expr_id(std::string_view tag) {
  for (const auto& e : expr_table())
    if (e.tag == tag) return e.id;
  return std::nullopt;
}

std::vector<std::string> expr_variables(ExprId id) { return expr_entry(id).variables; }
std::vector<std::string> expr_parameters(ExprId id) { return expr_entry(id).parameters; }

const std::vector<ExprId>& all_expressions() {
  static const std::vector<ExprId> ids = [] {
    std::vector<ExprId> out;
    for (const auto& e : expr_table()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

VarBox make_box(const std::map<std::string, std::pair<Rational, Rational>>& corners, Bits precision) {
  VarBox box;
  for (const auto& [name, range] : corners) box.emplace(name, Interval::from_bounds(range.first, range.second, precision));
  return box;
}

Rational g1_exact(long M, long k) {
  const Rational m(M), kk(k);
  Rational v = m * m * m + m * m * (Rational(258, 100) - 6 * kk) +
               m * (12 * kk * kk - Rational(1716, 100) * kk + Rational(74, 100)) - 8 * kk * kk * kk +
               Rational(2058, 100) * kk * kk - Rational(1174, 100) * kk - Rational(84, 100);
  v.canonicalize();
  return v;
}

BigInt beta_integer(long k, long M, long t) {
  long kb = M - k * (t - 1);
  if (kb < 0 || t < 0) throw std::invalid_argument("beta(t) needs M >= k (t - 1)");
  return binomial(static_cast<unsigned long>(kb + t), static_cast<unsigned long>(t));
}

Rational g1_identity(long M, long k) {
  Rational v = 6 * (Rational(beta_integer(k, M, 3)) - Rational(114, 100) * Rational(beta_integer(k, M, 2)));
  v.canonicalize();
  return v;
}

Interval iv_eval(ExprId expr, const VarBox& point, const IntParams& params, Bits precision) {
  EvalContext ctx{point, params, precision};
  Bits p = precision;
  switch (expr) {
    case ExprId::epsilon: {
      SlopeTerms v = slope_terms(ctx);
      return exp(log_epsilon(v, p));
    }
    case ExprId::dlog_epsilon:
      return eval_dlog(slope_terms(ctx));
    case ExprId::d2log_epsilon:
      return eval_d2log(slope_terms(ctx));
    case ExprId::ine1_lhs: {
      SlopeTerms v = slope_terms(ctx);
      return abs((sqr(v.t) - sqr(v.b) * v.k) / (v.b * v.t * (v.kb + v.t) * 2));
    }
    case ExprId::G1:
      return Interval::from_rational(g1_exact(ctx.param("M"), ctx.param("k")), p);
    case ExprId::G2:
      return eval_G2(ctx.var("s"), ctx.var("t"), p);
    case ExprId::G3:
      return eval_G3(ctx.var("t"), p);
    case ExprId::G4:
      return eval_G4(ctx.var("s"), ctx.var("t"));
    case ExprId::G5:
      return eval_G5(ctx.var("s"), ctx.var("t"), ctx.var("r"), p);
    case ExprId::G6: {
      Interval t = ctx.var("t");
      return eval_G5(ctx.var("s"), t, log(t) * 2 - 1, p);
    }
    case ExprId::G7:
      return eval_G7(ctx.var("s"), ctx.var("t"));
    case ExprId::H1:
      return eval_H1(ctx.var("t"), p);
    case ExprId::H2:
      return eval_H2(ctx.var("t"));
    case ExprId::A_real:
      return eval_A(ctx.var("s"), ctx.var("t"));
  }
  throw std::logic_error("unknown expression");
}

// ------------------------------------------------------------ sign search

std::string_view sign_tag(Sign s) { return s == Sign::positive ? "+" : "-"; }

std::string_view status_tag(CertificateStatus s) {
  return s == CertificateStatus::certified ? "certified" : "inconclusive";
}

std::string_view check_status_tag(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Dyadic SignCertificate::margin() const {
  Dyadic best(precision);
  bool first = true;
  for (const auto& leaf : leaves) {
    Dyadic d = leaf.enclosure.lo();
    if (claimed_sign == Sign::negative) mpfr_neg(d.get(), leaf.enclosure.hi().get(), MPFR_RNDN);
    if (first || d < best) best = d;
    first = false;
  }
  return best;
}

namespace {

class SignSearch {
 public:
  SignSearch(ExprId expr, const IntParams& params, Sign sign, const SignOptions& options, SignCertificate& cert)
      : expr_(expr), params_(params), sign_(sign), options_(options), cert_(cert) {}

  bool run(const VarBox& box, int depth) {
    if (++cert_.nodes > options_.node_budget) return block(box, std::nullopt);
    Bits p = options_.precision;
    std::optional<Interval> evaluated;
    try {
      evaluated = iv_eval(expr_, box, params_, p);
    } catch (const DomainError&) {
      // Overestimation can push a denominator or log argument across zero on
      // a wide box; only a box at full depth is reported as a domain error.
      if (depth >= options_.max_depth) throw;
      auto [low, high] = split(box);
      return run(low, depth + 1) && run(high, depth + 1);
    }
    Interval enclosure = std::move(*evaluated);
    while (!decided(enclosure) && !opposite(enclosure) && p < options_.max_precision) {
      p = std::min(p * 2, options_.max_precision);
      enclosure = iv_eval(expr_, box, params_, p);
    }
    if (decided(enclosure)) {
      cert_.leaves.push_back({depth, box, enclosure, p});
      return true;
    }
    if (opposite(enclosure)) {
      cert_.refuted = true;
      return block(box, enclosure);
    }
    if (depth >= options_.max_depth) return block(box, enclosure);
    auto [low, high] = split(box);
    return run(low, depth + 1) && run(high, depth + 1);
  }

 private:
  bool decided(const Interval& e) const {
    return sign_ == Sign::positive ? e.strictly_positive() : e.strictly_negative();
  }
  bool opposite(const Interval& e) const {
    return sign_ == Sign::positive ? e.strictly_negative() : e.strictly_positive();
  }

  bool block(const VarBox& box, std::optional<Interval> enclosure) {
    cert_.blocking_box = box;
    cert_.blocking_enclosure = std::move(enclosure);
    return false;
  }

  // Widest dimension by width / max(1, |lo|, |hi|); first name wins ties.
  static std::pair<VarBox, VarBox> split(const VarBox& box) {
    const std::string* widest = nullptr;
    double best = -1;
    for (const auto& [name, iv] : box) {
      double scale = std::max({1.0, std::fabs(iv.lo().to_double()), std::fabs(iv.hi().to_double())});
      double rel = iv.width_double() / scale;
      if (rel > best) {
        best = rel;
        widest = &name;
      }
    }
    auto halves = box.at(*widest).bisect();
    VarBox low = box, high = box;
    low.insert_or_assign(*widest, halves.first);
    high.insert_or_assign(*widest, halves.second);
    return {std::move(low), std::move(high)};
  }

  ExprId expr_;
  const IntParams& params_;
  Sign sign_;
  const SignOptions& options_;
  SignCertificate& cert_;
};

}  // namespace

SignCertificate certify_sign(ExprId expr, const VarBox& box, const IntParams& params, Sign sign,
                             const SignOptions& options) {
  if (options.max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  for (const auto& name : expr_variables(expr)) {
    auto it = box.find(name);
    if (it == box.end()) throw std::invalid_argument("box is missing variable " + name);
  }
  bool degenerate = std::all_of(box.begin(), box.end(), [](const auto& kv) { return kv.second.is_point(); });
  if (box.empty() || degenerate) throw std::invalid_argument("sign certification needs a non-degenerate box");

  SignCertificate cert{expr, box, params, sign, options.precision, options.max_depth,
                       CertificateStatus::inconclusive, {}, 0, std::nullopt, std::nullopt, false};
  SignSearch search(expr, params, sign, options, cert);
  if (search.run(box, 0)) {
    cert.status = CertificateStatus::certified;
  } else {
    cert.leaves.clear();
  }
  return cert;
}

// --------------------------------------------------------------- Stirling

Interval stirling_log_factorial(long n, Bits precision) {
  if (n < 1) throw std::invalid_argument("stirling_log_factorial needs n >= 1");
  Bits p = precision;
  Interval nn = Interval::from_integer(n, p);
  // ln n! = ln sqrt(2 pi n) + n ln n - n + theta / (12 n), theta in (0, 1)
  Interval base = log(pi_enclosure(p) * 2 * nn) / 2 + nn * log(nn) - nn;
  Interval top = base + rational(1, 12 * n, p);
  return Interval::from_endpoints(Dyadic(base.lo()), Dyadic(top.hi()));
}

// ---------------------------------------------------------- lemma checks

namespace {

// Decides x <= y for enclosures.
CheckStatus leq(const Interval& x, const Interval& y) {
  if (x.hi() <= y.lo()) return CheckStatus::pass;
  if (y.hi() < x.lo()) return CheckStatus::fail;
  return CheckStatus::inconclusive;
}

CheckStatus combine(std::initializer_list<CheckStatus> parts) {
  bool undecided = false;
  for (CheckStatus s : parts) {
    if (s == CheckStatus::fail) return CheckStatus::fail;
    if (s == CheckStatus::inconclusive) undecided = true;
  }
  return undecided ? CheckStatus::inconclusive : CheckStatus::pass;
}

}  // namespace

Lemma32Result lemma32_check(long k, long M, Bits precision) {
  if (k < 2) throw std::invalid_argument("lemma32_check needs k >= 2");
  if (M < 3 * k) throw std::invalid_argument("lemma32_check needs a = M/k >= 3");
  Bits p = precision;
  BigInt beta2 = beta_integer(k, M, 2);
  BigInt beta3 = beta_integer(k, M, 3);
  CheckStatus exact = BigInt(114 * beta2) < BigInt(100 * beta3) ? CheckStatus::pass : CheckStatus::fail;

  Interval eps3 = iv_eval(ExprId::epsilon, {{"t", Interval::from_integer(3, p)}}, {{"k", k}, {"M", M}}, p);
  Interval b3 = Interval::from_integer(beta3, p);
  Interval b2 = Interval::from_integer(beta2, p);
  CheckStatus lower = leq(eps3 * Interval::from_rational(Rational(1126, 1000), p), b3);
  CheckStatus upper = leq(b3, eps3 * Interval::from_rational(Rational(1132, 1000), p));
  CheckStatus conclusion = leq(b2, eps3);
  return {k,     M,     beta2, beta3, exact,      eps3, b3 / eps3,
          lower, upper, conclusion, combine({exact, lower, upper})};
}

std::array<SignCertificate, 3> lemma31_regions(long k, long M, const SignOptions& options) {
  if (k < 2 || M < 2 * k) throw std::invalid_argument("lemma31_regions needs k >= 2 and M >= 2k");
  Bits p = options.precision;
  IntParams params{{"k", k}, {"M", M}};
  Rational left_end(M + k, 2 * k);
  Rational right_start(M + 1, k + 1);
  Rational a(M, k);
  auto box = [p](Rational lo, Rational hi) { return make_box({{"t", {lo, hi}}}, p); };
  return {certify_sign(ExprId::dlog_epsilon, box(2, left_end), params, Sign::positive, options),
          certify_sign(ExprId::dlog_epsilon, box(right_start, a), params, Sign::negative, options),
          certify_sign(ExprId::d2log_epsilon, box(left_end, right_start), params, Sign::negative, options)};
}

Interval hypothesis_boundary(const Interval& t) { return t * log(t) * 8 - t; }

std::vector<PointSample> boundary_samples(ExprId expr, const std::vector<long>& ts, Bits precision) {
  if (expr != ExprId::G2 && expr != ExprId::G6) throw std::invalid_argument("boundary samples are for G2 or G6");
  std::vector<PointSample> out;
  for (long tv : ts) {
    Interval t = Interval::from_integer(tv, precision);
    Interval s = hypothesis_boundary(t);
    Interval value = iv_eval(expr, {{"s", s}, {"t", t}}, {}, precision);
    CheckStatus status;
    if (expr == ExprId::G2) {
      status = value.strictly_positive() ? CheckStatus::pass
                                         : (value.hi().sign() <= 0 ? CheckStatus::fail : CheckStatus::inconclusive);
    } else {
      status = value.lo().sign() >= 0 ? CheckStatus::pass
                                      : (value.strictly_negative() ? CheckStatus::fail : CheckStatus::inconclusive);
    }
    out.push_back({expr, Rational(tv), s, value, status});
  }
  return out;
}

std::vector<VarBox> t_cell_boxes(long t_lo, long t_hi, long step, Rational lower_factor, Rational upper_factor,
                                 bool from_boundary, Bits precision) {
  if (step < 1 || t_hi <= t_lo) throw std::invalid_argument("t cells need t_lo < t_hi and step >= 1");
  std::vector<VarBox> out;
  for (long t0 = t_lo; t0 < t_hi; t0 += step) {
    long t1 = std::min(t0 + step, t_hi);
    Rational s_lo;
    if (from_boundary) {
      Interval b = hypothesis_boundary(Interval::from_integer(t0, precision));
      s_lo = Rational(mpfr_get_si(b.lo().get(), MPFR_RNDD));
    } else {
      s_lo = lower_factor * t0 * t0;
    }
    Rational s_hi = upper_factor * t1 * t1;
    out.push_back(make_box({{"s", {s_lo, s_hi}}, {"t", {Rational(t0), Rational(t1)}}}, precision));
  }
  return out;
}

}  // namespace fanocert
