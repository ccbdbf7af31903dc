#include "fanocert/certify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace fanocert {

HypothesisCheck hypothesis_check(long k, long M) {
  if (k < 1 || M < 1) throw std::invalid_argument("hypothesis_check needs k, M >= 1");
  Interval boundary = Interval::from_integer(0, kDefaultPrecision);
  bool m_ok = true;
  if (k > 1) {
    // 8 k ln k is irrational for k > 1, so refinement separates it from M.
    for (Bits p = 64;; p *= 2) {
      Interval kk = Interval::from_integer(k, p);
      boundary = log(kk) * kk * 8;
      Interval m = Interval::from_integer(M, p);
      if (boundary.hi() < m.lo()) break;
      if (m.hi() < boundary.lo()) {
        m_ok = false;
        break;
      }
    }
  }
  bool k_ok = k >= 20;
  return {k_ok && m_ok, k_ok, m_ok, boundary};
}

long smallest_hypothesis_M(long k) {
  if (k < 1) throw std::invalid_argument("smallest_hypothesis_M needs k >= 1");
  if (k == 1) return 1;
  for (Bits p = 64;; p *= 2) {
    Interval kk = Interval::from_integer(k, p);
    Interval b = log(kk) * kk * 8;
    long lo = mpfr_get_si(b.lo().get(), MPFR_RNDD);
    long hi = mpfr_get_si(b.hi().get(), MPFR_RNDD);
    if (lo == hi) return lo + 1;
  }
}

long smallest_hypothesis_multiple(long k) {
  long m = smallest_hypothesis_M(k);
  return (m + k - 1) / k * k;
}

std::string_view overall_tag(Overall o) {
  switch (o) {
    case Overall::pass:
      return "pass";
    case Overall::fail:
      return "fail";
    case Overall::inconclusive:
      return "inconclusive";
    case Overall::out_of_hypotheses:
      return "out_of_hypotheses";
  }
  return "inconclusive";
}

std::optional<Overall> parse_overall(std::string_view tag) {
  for (Overall o : {Overall::pass, Overall::fail, Overall::inconclusive, Overall::out_of_hypotheses})
    if (overall_tag(o) == tag) return o;
  return std::nullopt;
}

Overall derive_overall(bool hypothesis_ok, const std::vector<CheckResult>& checks) {
  if (!hypothesis_ok) return Overall::out_of_hypotheses;
  bool undecided = false;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) return Overall::fail;
    if (c.status == CheckStatus::inconclusive) undecided = true;
  }
  return undecided ? Overall::inconclusive : Overall::pass;
}

namespace {

CheckStatus holds(bool b) { return b ? CheckStatus::pass : CheckStatus::fail; }

std::string str(const BigInt& v) { return v.get_str(); }
std::string str(const Rational& v) { return to_exact_string(v); }
std::string str(long v) { return std::to_string(v); }

std::string level_name(const char* base, int l) { return std::string(base) + "/l=" + std::to_string(l); }

class CertificateBuilder {
 public:
  CertificateBuilder(const DegreeTuple& d, const CertifyConfig& config)
      : d_(d),
        k_(d.k()),
        M_(d.M()),
        profile_(restricted_degrees(d)),
        star_(reduce_tuple(d, ReductionMode::star)),
        star_profile_(restricted_degrees(star_)) {
    if (config.levels.empty()) {
      for (int l = 0; l <= k_; ++l) levels_.push_back(l);
    } else {
      std::set<int> unique(config.levels.begin(), config.levels.end());
      for (int l : unique)
        if (l < 0 || l > k_) throw std::invalid_argument("singularity level must lie in [0, k]");
      levels_.assign(unique.begin(), unique.end());
    }
    StarShape shape = star_shape(M_, k_);
    if (shape.a >= 1) {
      plus_.emplace(reduce_tuple(d, ReductionMode::plus));
      plus_profile_.emplace(restricted_degrees(*plus_));
    }
  }

  Certificate build() {
    HypothesisCheck hyp = hypothesis_check(k_, M_);
    for (int l : levels_) level_checks(l);
    global_checks();
    Certificate cert{d_, k_, M_, levels_, hyp.ok, std::move(checks_), std::move(values_), Overall::pass};
    cert.overall = derive_overall(cert.hypothesis_ok, cert.checks);
    return cert;
  }

 private:
  void add(std::string name, CheckStatus status, std::string value, std::string bound, std::string anchor,
           std::optional<int> level = std::nullopt) {
    checks_.push_back({std::move(name), status, std::move(value), std::move(bound), std::move(anchor), level});
  }

  void report(std::string name, std::string value) { values_.push_back({std::move(name), std::move(value)}); }

  void level_checks(int l) {
    Rational tail = tail_product(d_, l);
    Rational gamma = gamma_threshold(d_, l);
    add(level_name("tail_product_lt_4_3", l), holds(tail < Rational(4, 3)), str(tail), "4/3", "beta(l) < 4/3", l);
    add(level_name("gamma_threshold_gt_1", l), holds(gamma > 1), str(gamma), "1", "gamma_l = (4/3) / beta(l) > 1", l);

    long cutoff = slope_cutoff(d_, l);
    Rational target = closed_form_bound(BoundName::thm31_target, {{"M", M_}, {"k", k_}});
    if (cutoff >= 1) {
      GammaMinimum gm = gamma_min(profile_, l);
      add(level_name("gamma_min_ge_thm31_target", l), holds(Rational(gm.value) >= target), str(gm.value),
          str(target), "min_e gamma(e,d,l) >= (M-5k)(M-6k)/2 + M + k", l);
      report(level_name("gamma_min_argmin_e", l), str(gm.argmin));
      gamma_mins_.push_back({l, gm.value});
    } else {
      // Empty minimum: no failure mode to exclude.
      add(level_name("gamma_min_ge_thm31_target", l), CheckStatus::pass, "inf", str(target),
          "min_e gamma(e,d,l) >= (M-5k)(M-6k)/2 + M + k", l);
    }

    if (l >= 1) {
      Rational tail0 = tail_product(d_, 0);
      add(level_name("tail_product_le_level0", l), holds(tail <= tail0), str(tail), str(tail0), "beta(l) <= beta(0)",
          l);
      Rational gamma0 = gamma_threshold(d_, 0);
      add(level_name("gamma_threshold_ge_level0", l), holds(gamma >= gamma0), str(gamma), str(gamma0),
          "gamma_l >= gamma_0", l);
      if (cutoff >= 1) {
        BigInt worst = min_difference(1, cutoff, [&](long e) -> BigInt {
          return gamma_e(profile_, l, e) - gamma_e(profile_, 0, e);
        });
        add(level_name("gamma_e_ge_level0", l), holds(worst >= 0), str(worst), "0",
            "gamma(e,d,l) >= gamma(e,d,0)", l);
      }
    }

    if (cutoff >= 1) {
      BigInt worst = min_difference(1, cutoff, [&](long e) -> BigInt {
        return gamma_e(profile_, l, e) - gamma_e(star_profile_, l, e);
      });
      add(level_name("gamma_e_ge_star", l), holds(worst >= 0), str(worst), "0", "gamma(e,d,l) >= gamma(e,d*,l)", l);
    }
    plus_checks(l, cutoff);
  }

  // gamma(e,d*,l) >= gamma(e,d+,l) for e <= N+_l, and at the shifted tail
  // gamma(N_l - i, d*, l) >= gamma(N+_l - i, d+, l) for i < N_l - N+_l.
  void plus_checks(int l, long cutoff) {
    if (!plus_ || l > plus_->k()) return;
    long plus_cutoff = slope_cutoff(*plus_, l);
    if (plus_cutoff < 1 || cutoff < 1) return;
    BigInt worst = min_difference(1, std::min(plus_cutoff, cutoff), [&](long e) -> BigInt {
      return gamma_e(star_profile_, l, e) - gamma_e(*plus_profile_, l, e);
    });
    long shift = cutoff - plus_cutoff;
    for (long i = 0; i < shift && plus_cutoff - i >= 1; ++i) {
      BigInt diff = gamma_e(star_profile_, l, cutoff - i) - gamma_e(*plus_profile_, l, plus_cutoff - i);
      if (diff < worst) worst = diff;
    }
    add(level_name("gamma_e_star_ge_plus", l), holds(worst >= 0), str(worst), "0",
        "gamma(e,d*,l) >= gamma(e',d+,l) with e' aligned at both ends", l);
    GammaMinimum plus_min = gamma_min(*plus_profile_, l);
    report(level_name("gamma_min_plus", l), str(plus_min.value));
  }

  template <class F>
  static BigInt min_difference(long first, long last, F diff) {
    BigInt worst = diff(first);
    for (long e = first + 1; e <= last; ++e) {
      BigInt v = diff(e);
      if (v < worst) worst = std::move(v);
    }
    return worst;
  }

  void global_checks() {
    // Restricted degrees: sorted enumeration versus the cumulative-count formula.
    long mismatches = 0;
    for (long e = 1; e <= M_; ++e)
      if (profile_.at(e) != restricted_degree_by_count(d_, e)) ++mismatches;
    add("restricted_degree_formula", holds(mismatches == 0), str(mismatches), "0",
        "m_e = min{j : sum_{alpha<=j} sum_{beta>=alpha} k_beta >= e}");

    long worst_m = profile_.at(1) - star_profile_.at(1);
    for (long e = 2; e <= M_; ++e) worst_m = std::min<long>(worst_m, profile_.at(e) - star_profile_.at(e));
    add("m_e_ge_star", holds(worst_m >= 0), str(worst_m), "0", "m_e >= m_e*");

    SlopeSequence slopes = slope_sequence(d_, 0);
    Rational product = slopes.product();
    BigInt degree = total_degree(d_);
    add("slope_product_identity", holds(product == Rational(degree)), str(product), str(degree),
        "product of all slopes at l = 0 equals d_1 ... d_k");

    long a = M_ / k_;
    if (a >= 1) {
      Rational cap = 1 + Rational(1, a);
      Rational largest = slopes.cutoff() < slopes.size() ? slopes.at(slopes.cutoff() + 1) : Rational(1);
      add("tail_slopes_le_1_plus_1_over_a", holds(largest <= cap), str(largest), str(cap),
          "slopes past N_0 are at most 1 + 1/[M/k]");
    }

    if (!gamma_mins_.empty()) {
      auto it = std::min_element(gamma_mins_.begin(), gamma_mins_.end(),
                                 [](const auto& x, const auto& y) { return x.second < y.second; });
      auto level0 = std::find_if(gamma_mins_.begin(), gamma_mins_.end(), [](const auto& x) { return x.first == 0; });
      if (level0 != gamma_mins_.end())
        add("level0_attains_min_over_l", holds(level0->second == it->second), str(level0->second), str(it->second),
            "min over l of gamma(d,l) is attained at l = 0");
    }

    if (d_.is_equal_degree()) equal_degree_checks();

    BoundParams mk{{"M", M_}, {"k", k_}};
    Rational thm02 = closed_form_bound(BoundName::thm02, mk);
    Rational thm04 = closed_form_bound(BoundName::thm04, mk);
    add("thm02_ge_thm04", holds(thm02 >= thm04), str(thm02), str(thm04),
        "(M-4k+1)(M-4k+2)/2 - (k-1) >= (M-5k)(M-6k)/2");
    PropTwoTwoMinimum p22 = prop22_minimum(M_, k_);
    add("prop22_min_equals_thm02", holds(p22.value == thm02 && p22.argmin_l == k_), str(p22.value), str(thm02),
        "min over l in [1,k] of the incorrect-tuple bound is attained at l = k");

    report("thm01", str(closed_form_bound(BoundName::thm01, mk)));
    report("thm01_attained_by", std::string(bound_tag(thm01_attained_by(M_, k_))));
    report("thm02", str(thm02));
    report("thm04", str(thm04));
    report("thm31_target", str(closed_form_bound(BoundName::thm31_target, mk)));
    report("prop22_min", str(p22.value));
    report("prop22_argmin_l", str(p22.argmin_l));
    report("A", str(closed_form_bound(BoundName::A, mk)));
  }

  void equal_degree_checks() {
    long a = M_ / k_;
    BigInt alpha = alpha_fn(M_, k_);
    report("alpha", str(alpha));
    std::optional<std::pair<long, BigInt>> best_beta;
    for (long t = 2; t <= a; ++t) {
      BigInt b = beta_fn(k_, a, t);
      if (!best_beta || b < best_beta->second) best_beta = {t, std::move(b)};
    }
    if (slope_cutoff(d_, 0) >= 1) {
      BigInt expected = alpha;
      if (best_beta && best_beta->second < expected) expected = best_beta->second;
      BigInt actual = gamma_min(profile_, 0).value;
      add("gamma_min_equals_beta_alpha_min", holds(actual == expected), str(actual), str(expected),
          "gamma(d,0) = min{min_t beta(t), alpha(M,k)}");
    }
    if (best_beta) {
      add("beta_argmin_t_eq_2", holds(best_beta->first == 2), str(best_beta->first), "2",
          "min over 2 <= t <= a of beta(t) is attained at t = 2");
      report("beta_min", str(best_beta->second));
    }
    Rational A = closed_form_bound(BoundName::A, {{"M", M_}, {"k", k_}});
    add("alpha_ge_A", holds(Rational(alpha) >= A), str(alpha), str(A), "alpha(M,k) >= (M-4k)(M-5k)/2 + M + 2k");
  }

  DegreeTuple d_;
  long k_;
  long M_;
  std::vector<int> levels_;
  RestrictedDegreeProfile profile_;
  DegreeTuple star_;
  RestrictedDegreeProfile star_profile_;
  std::optional<DegreeTuple> plus_;
  std::optional<RestrictedDegreeProfile> plus_profile_;
  std::vector<CheckResult> checks_;
  std::vector<ReportedValue> values_;
  std::vector<std::pair<int, BigInt>> gamma_mins_;
};

}  // namespace

Certificate certify_tuple(const DegreeTuple& d, const CertifyConfig& config) {
  return CertificateBuilder(d, config).build();
}

std::string_view m_rule_tag(MRule r) {
  switch (r) {
    case MRule::min_multiple:
      return "min-multiple";
    case MRule::min:
      return "min";
    case MRule::range:
      return "range";
  }
  return "range";
}

std::string_view shape_tag(Shape s) {
  switch (s) {
    case Shape::equal:
      return "equal";
    case Shape::star:
      return "star";
    case Shape::explicit_tuples:
      return "explicit";
  }
  return "explicit";
}

std::optional<MRule> parse_m_rule(std::string_view tag) {
  for (MRule r : {MRule::min_multiple, MRule::min, MRule::range})
    if (m_rule_tag(r) == tag) return r;
  return std::nullopt;
}

std::optional<Shape> parse_shape(std::string_view tag) {
  for (Shape s : {Shape::equal, Shape::star, Shape::explicit_tuples})
    if (shape_tag(s) == tag) return s;
  return std::nullopt;
}

namespace {

std::vector<long> m_values(const GridSpec& spec, long k) {
  switch (spec.m_rule) {
    case MRule::min_multiple:
      return {smallest_hypothesis_multiple(k)};
    case MRule::min:
      return {smallest_hypothesis_M(k)};
    case MRule::range: {
      std::vector<long> out;
      for (long M = std::max(spec.m_lo, 1L); M <= spec.m_hi; ++M) out.push_back(M);
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<DegreeTuple> grid_points(const GridSpec& spec) {
  std::vector<DegreeTuple> out;
  if (spec.shape == Shape::explicit_tuples) {
    out = spec.tuples;
  } else {
    for (long k = std::max(spec.k_lo, 1L); k <= spec.k_hi; ++k) {
      for (long M : m_values(spec, k)) {
        if (spec.shape == Shape::equal) {
          if (M % k == 0) out.push_back(DegreeTuple::equal(static_cast<int>(M / k + 1), static_cast<int>(k)));
        } else if (M > k) {
          out.push_back(star_tuple(M, k));
        }
      }
    }
  }
  if (out.empty()) throw std::invalid_argument("sweep grid is empty");
  std::sort(out.begin(), out.end(), [](const DegreeTuple& x, const DegreeTuple& y) {
    if (x.k() != y.k()) return x.k() < y.k();
    if (x.M() != y.M()) return x.M() < y.M();
    return x < y;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Certificate> sweep(const GridSpec& spec, const SweepConfig& config) {
  std::vector<DegreeTuple> points = grid_points(spec);
  std::vector<std::optional<Certificate>> slots(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        slots[i] = certify_tuple(points[i], config.certify);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  std::vector<Certificate> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace fanocert
