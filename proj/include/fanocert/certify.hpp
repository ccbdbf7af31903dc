#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fanocert/analytic.hpp"
#include "fanocert/codim.hpp"
#include "fanocert/exact.hpp"

namespace fanocert {

struct HypothesisCheck {
  bool ok;
  bool k_ok;  // k >= 20
  bool m_ok;  // M >= 8 k ln k
  Interval boundary;  // enclosure of 8 k ln k, refined until it decides m_ok
};

// k >= 20 and M >= 8 k ln k; the comparison is decided by refining ln k.
HypothesisCheck hypothesis_check(long k, long M);

// Smallest integer M (resp. multiple of k) with M >= 8 k ln k.
long smallest_hypothesis_M(long k);
long smallest_hypothesis_multiple(long k);

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string value;
  std::string bound;
  std::string paper_anchor;
  std::optional<int> level;

  bool operator==(const CheckResult&) const = default;
};

// Reported quantities that are not comparisons (bound values, argmins).
struct ReportedValue {
  std::string name;
  std::string value;

  bool operator==(const ReportedValue&) const = default;
};

enum class Overall { pass, fail, inconclusive, out_of_hypotheses };

std::string_view overall_tag(Overall o);
std::optional<Overall> parse_overall(std::string_view tag);

struct Certificate {
  DegreeTuple degrees;
  long k;
  long M;
  std::vector<int> levels;
  bool hypothesis_ok;
  std::vector<CheckResult> checks;
  std::vector<ReportedValue> values;
  Overall overall;

  bool operator==(const Certificate&) const = default;
};

// pass iff hypotheses hold and every check passes; fail beats inconclusive.
Overall derive_overall(bool hypothesis_ok, const std::vector<CheckResult>& checks);

struct CertifyConfig {
  // Empty means every level 0..k.
  std::vector<int> levels;
};

Certificate certify_tuple(const DegreeTuple& d, const CertifyConfig& config = {});

enum class MRule { min_multiple, min, range };
enum class Shape { equal, star, explicit_tuples };

std::string_view m_rule_tag(MRule r);
std::string_view shape_tag(Shape s);
std::optional<MRule> parse_m_rule(std::string_view tag);
std::optional<Shape> parse_shape(std::string_view tag);

struct GridSpec {
  long k_lo = 0;
  long k_hi = -1;
  MRule m_rule = MRule::min_multiple;
  long m_lo = 0;  // range rule only
  long m_hi = -1;
  Shape shape = Shape::equal;
  std::vector<DegreeTuple> tuples;  // explicit shape only
};

// Grid points in canonical (k, M, tuple) order. Equal shape keeps only the M
// divisible by k. Throws std::invalid_argument when the grid is empty.
std::vector<DegreeTuple> grid_points(const GridSpec& spec);

struct SweepConfig {
  CertifyConfig certify;
  unsigned threads = 1;
};

std::vector<Certificate> sweep(const GridSpec& spec, const SweepConfig& config = {});

}  // namespace fanocert
