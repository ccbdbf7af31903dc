#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fanocert/exact.hpp"

namespace fanocert {

// Degrees m_1 <= ... <= m_M of the restricted polynomials g_e: the sorted
// multiset {j : 2 <= j <= d_i}.
class RestrictedDegreeProfile {
 public:
  RestrictedDegreeProfile(DegreeTuple source, std::vector<int> degrees)
      : source_(std::move(source)), degrees_(std::move(degrees)) {}

  const DegreeTuple& source() const { return source_; }
  std::span<const int> degrees() const { return degrees_; }
  long size() const { return static_cast<long>(degrees_.size()); }
  // 1-based.
  int at(long e) const { return degrees_.at(static_cast<std::size_t>(e - 1)); }

 private:
  DegreeTuple source_;
  std::vector<int> degrees_;
};

RestrictedDegreeProfile restricted_degrees(const DegreeTuple& d);

// m_e = min{ j : sum_{alpha=2}^{j} sum_{beta>=alpha} k_beta >= e }, where k_beta
// counts the degrees equal to beta. Independent of restricted_degrees.
int restricted_degree_by_count(const DegreeTuple& d, long e);

enum class Precondition { strict, relaxed };

// gamma(e, d, l) = C(M + l - e + m_e, M + l - e). Strict mode requires
// 1 <= e <= N_l; relaxed mode accepts any 1 <= e <= M.
BigInt gamma_e(const DegreeTuple& d, int l, long e, Precondition mode = Precondition::strict);
BigInt gamma_e(const RestrictedDegreeProfile& profile, int l, long e, Precondition mode = Precondition::strict);

struct GammaMinimum {
  long argmin;
  BigInt value;
};

// Exhaustive minimum over e = 1..N_l, ties to the smallest e.
GammaMinimum gamma_min(const DegreeTuple& d, int l);
GammaMinimum gamma_min(const RestrictedDegreeProfile& profile, int l);

// beta(t) = C(k b(t) + t, t), b(t) = a - t + 1, for 2 <= t <= a.
BigInt beta_fn(long k, long a, long t);

// alpha(M, k) = C(a + 1 + floor(2 ln k), a + 1), a = M / k; requires k | M.
BigInt alpha_fn(long M, long k);

enum class BoundName {
  A,
  thm01,
  thm02,
  thm04,
  thm31_target,
  hyp_reducible,
  hyp_singular,
  step_irreducible,
  rank_locus,
  lemma22,
  prop22,
  b_of,
};

std::string_view bound_tag(BoundName name);
std::optional<BoundName> parse_bound_name(std::string_view tag);
// Parameter keys the bound consumes, e.g. {"M", "k"}.
std::vector<std::string> bound_parameters(BoundName name);

using BoundParams = std::map<std::string, long>;

// Exact value of a catalogued closed form. Throws std::invalid_argument when a
// parameter is missing or unexpected.
Rational closed_form_bound(BoundName name, const BoundParams& params);

// Which side realizes thm01 = min(thm02, thm04); ties go to thm04.
BoundName thm01_attained_by(long M, long k);

struct PropTwoTwoMinimum {
  long argmin_l;
  Rational value;
};

// min over l = 1..k of prop22(M, k, l), ties to the smallest l.
PropTwoTwoMinimum prop22_minimum(long M, long k);

enum class ReductionMode { star, plus };

// M = k a + (k - r) with 0 <= r <= k - 1.
struct StarShape {
  long a;
  long r;
};

StarShape star_shape(long M, long k);

// The star-shaped tuple with the given M and k: r degrees a+1 then k-r
// degrees a+2. Throws std::domain_error when a < 1 (some degree would be 1).
DegreeTuple star_tuple(long M, long k);

// star: r degrees a+1 then k-r degrees a+2, same M.
// plus: k degrees a+1, M+ = k a. Throws std::domain_error when a < 1.
DegreeTuple reduce_tuple(const DegreeTuple& d, ReductionMode mode);

}  // namespace fanocert
