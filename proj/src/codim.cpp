#include "fanocert/codim.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace fanocert {

RestrictedDegreeProfile restricted_degrees(const DegreeTuple& d) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(d.M()));
  for (int di : d.degrees())
    for (int j = 2; j <= di; ++j) out.push_back(j);
  std::sort(out.begin(), out.end());
  return RestrictedDegreeProfile(d, std::move(out));
}

int restricted_degree_by_count(const DegreeTuple& d, long e) {
  if (e < 1 || e > d.M()) throw std::invalid_argument("restricted degree index out of range");
  int top = d.max_degree();
  std::vector<long> k_beta(static_cast<std::size_t>(top) + 1, 0);
  for (int di : d.degrees()) ++k_beta[static_cast<std::size_t>(di)];
  long cumulative = 0;
  for (int j = 2; j <= top; ++j) {
    for (int beta = j; beta <= top; ++beta) cumulative += k_beta[static_cast<std::size_t>(beta)];
    if (cumulative >= e) return j;
  }
  throw std::logic_error("restricted degree count exhausted");
}

BigInt gamma_e(const RestrictedDegreeProfile& profile, int l, long e, Precondition mode) {
  const DegreeTuple& d = profile.source();
  long upper = mode == Precondition::strict ? slope_cutoff(d, l) : d.M();
  if (l < 0 || l > d.k()) throw std::invalid_argument("singularity level must lie in [0, k]");
  if (e < 1 || e > upper) throw std::invalid_argument("gamma_e index outside [1, N_l]");
  long shift = d.M() + l - e;
  return binomial(static_cast<unsigned long>(shift + profile.at(e)), static_cast<unsigned long>(shift));
}

BigInt gamma_e(const DegreeTuple& d, int l, long e, Precondition mode) {
  return gamma_e(restricted_degrees(d), l, e, mode);
}

GammaMinimum gamma_min(const RestrictedDegreeProfile& profile, int l) {
  long cutoff = slope_cutoff(profile.source(), l);
  if (cutoff < 1) throw std::invalid_argument("gamma_min needs N_l >= 1");
  GammaMinimum best{1, gamma_e(profile, l, 1)};
  for (long e = 2; e <= cutoff; ++e) {
    BigInt v = gamma_e(profile, l, e);
    if (v < best.value) best = {e, std::move(v)};
  }
  return best;
}

GammaMinimum gamma_min(const DegreeTuple& d, int l) { return gamma_min(restricted_degrees(d), l); }

BigInt beta_fn(long k, long a, long t) {
  if (k < 1) throw std::invalid_argument("beta_fn needs k >= 1");
  if (t < 2 || t > a) throw std::invalid_argument("beta_fn needs 2 <= t <= a");
  long kb = k * (a - t + 1);
  return binomial(static_cast<unsigned long>(kb + t), static_cast<unsigned long>(t));
}

BigInt alpha_fn(long M, long k) {
  if (k < 1 || M < 1) throw std::invalid_argument("alpha_fn needs k, M >= 1");
  if (M % k != 0) throw std::invalid_argument("alpha_fn needs k to divide M");
  long a = M / k;
  return binomial(static_cast<unsigned long>(a + 1 + floor_two_log(k)), static_cast<unsigned long>(a + 1));
}

namespace {

struct BoundEntry {
  BoundName name;
  std::string_view tag;
  std::vector<std::string> params;
};

const std::array<BoundEntry, 12>& bound_table() {
  static const std::array<BoundEntry, 12> table{{
      {BoundName::A, "A", {"M", "k"}},
      {BoundName::thm01, "thm01", {"M", "k"}},
      {BoundName::thm02, "thm02", {"M", "k"}},
      {BoundName::thm04, "thm04", {"M", "k"}},
      {BoundName::thm31_target, "thm31_target", {"M", "k"}},
      {BoundName::hyp_reducible, "hyp_reducible", {"M", "k", "d_k"}},
      {BoundName::hyp_singular, "hyp_singular", {"M", "k"}},
      {BoundName::step_irreducible, "step_irreducible", {"M", "k", "j", "d_j"}},
      {BoundName::rank_locus, "rank_locus", {"M", "l", "a"}},
      {BoundName::lemma22, "lemma22", {"M", "l", "a", "e"}},
      {BoundName::prop22, "prop22", {"M", "k", "l"}},
      {BoundName::b_of, "b_of", {"k", "l"}},
  }};
  return table;
}

const BoundEntry& entry(BoundName name) {
  for (const auto& e : bound_table())
    if (e.name == name) return e;
  throw std::logic_error("unknown bound name");
}

Rational half_product(long x, long y) {
  Rational q(BigInt(x) * y, 2);
  q.canonicalize();
  return q;
}

// Binomial with a possibly negative upper argument is rejected rather than
// silently zeroed.
BigInt binomial_checked(long n, long r) {
  if (n < 0 || r < 0) throw std::invalid_argument("binomial arguments must be non-negative");
  return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(r));
}

Rational evaluate(BoundName name, const BoundParams& p) {
  auto get = [&p](const char* key) { return p.at(key); };
  switch (name) {
    case BoundName::A: {
      long M = get("M"), k = get("k");
      return half_product(M - 4 * k, M - 5 * k) + Rational(M + 2 * k);
    }
    case BoundName::thm04: {
      long M = get("M"), k = get("k");
      return half_product(M - 5 * k, M - 6 * k);
    }
    case BoundName::thm02: {
      long M = get("M"), k = get("k");
      return half_product(M - 4 * k + 1, M - 4 * k + 2) - Rational(k - 1);
    }
    case BoundName::thm01: {
      Rational a = evaluate(BoundName::thm02, p);
      Rational b = evaluate(BoundName::thm04, p);
      return a < b ? a : b;
    }
    case BoundName::thm31_target: {
      long M = get("M"), k = get("k");
      return half_product(M - 5 * k, M - 6 * k) + Rational(M + k);
    }
    case BoundName::hyp_reducible: {
      long M = get("M"), k = get("k"), dk = get("d_k");
      return Rational(binomial_checked(M + k + dk - 1, dk) - (M + k + 1));
    }
    case BoundName::hyp_singular: {
      long M = get("M"), k = get("k");
      return half_product(M + k - 6, M + k - 5) + 1;
    }
    case BoundName::step_irreducible: {
      long M = get("M"), k = get("k"), j = get("j"), dj = get("d_j");
      return Rational(binomial_checked(M + k + dj - 1, dj) - (M + k + 1) - (k - j));
    }
    case BoundName::rank_locus: {
      long M = get("M"), l = get("l"), a = get("a");
      return half_product(M + l + 1 - a, M + l + 2 - a);
    }
    case BoundName::lemma22: {
      BoundParams rank{{"M", get("M")}, {"l", get("l")}, {"a", get("a")}};
      return evaluate(BoundName::rank_locus, rank) - Rational(get("e") - 1);
    }
    case BoundName::b_of: {
      long k = get("k"), l = get("l");
      return Rational(std::max(k + l + 1, 4 * l + 2));
    }
    case BoundName::prop22: {
      long M = get("M"), k = get("k"), l = get("l");
      long b = std::max(k + l + 1, 4 * l + 2);
      return half_product(M + 3 - b, M + 4 - b) - Rational(l - 1);
    }
  }
  throw std::logic_error("unknown bound name");
}

}  // namespace

std::string_view bound_tag(BoundName name) { return entry(name).tag; }

std::optional<BoundName> parse_bound_name(std::string_view tag) {
  for (const auto& e : bound_table())
    if (e.tag == tag) return e.name;
  return std::nullopt;
}

std::vector<std::string> bound_parameters(BoundName name) { return entry(name).params; }

Rational closed_form_bound(BoundName name, const BoundParams& params) {
  const auto& expected = entry(name).params;
  for (const auto& key : expected)
    if (!params.contains(key))
      throw std::invalid_argument("bound " + std::string(entry(name).tag) + " is missing parameter " + key);
  for (const auto& [key, value] : params)
    if (std::find(expected.begin(), expected.end(), key) == expected.end())
      throw std::invalid_argument("bound " + std::string(entry(name).tag) + " does not take parameter " + key);
  Rational out = evaluate(name, params);
  out.canonicalize();
  return out;
}

BoundName thm01_attained_by(long M, long k) {
  BoundParams p{{"M", M}, {"k", k}};
  return closed_form_bound(BoundName::thm02, p) < closed_form_bound(BoundName::thm04, p) ? BoundName::thm02
                                                                                         : BoundName::thm04;
}

PropTwoTwoMinimum prop22_minimum(long M, long k) {
  if (k < 1) throw std::invalid_argument("prop22_minimum needs k >= 1");
  PropTwoTwoMinimum best{1, closed_form_bound(BoundName::prop22, {{"M", M}, {"k", k}, {"l", 1}})};
  for (long l = 2; l <= k; ++l) {
    Rational v = closed_form_bound(BoundName::prop22, {{"M", M}, {"k", k}, {"l", l}});
    if (v < best.value) best = {l, v};
  }
  return best;
}

StarShape star_shape(long M, long k) {
  if (k < 1) throw std::invalid_argument("star_shape needs k >= 1");
  // k a - r = M - k with 0 <= r <= k - 1  =>  a = ceil((M - k) / k)
  long n = M - k;
  long a = n >= 0 ? (n + k - 1) / k : -((-n) / k);
  long r = k * a - n;
  return {a, r};
}

DegreeTuple star_tuple(long M, long k) {
  StarShape s = star_shape(M, k);
  if (s.a < 1) throw std::domain_error("star tuple needs M > k");
  std::vector<int> out(static_cast<std::size_t>(k), static_cast<int>(s.a + 2));
  std::fill_n(out.begin(), s.r, static_cast<int>(s.a + 1));
  return DegreeTuple(std::move(out));
}

DegreeTuple reduce_tuple(const DegreeTuple& d, ReductionMode mode) {
  if (mode == ReductionMode::star) return star_tuple(d.M(), d.k());
  StarShape s = star_shape(d.M(), d.k());
  if (s.a < 1) throw std::domain_error("plus reduction needs a >= 1");
  return DegreeTuple::equal(static_cast<int>(s.a + 1), d.k());
}

}  // namespace fanocert
