#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fanocert/interval.hpp"

namespace fanocert {

// Catalogued real expressions.
//   epsilon        Stirling-type lower approximation eps(t) of beta(t)
//   dlog_epsilon   printed first derivative of log eps(t)
//   d2log_epsilon  printed second derivative of log eps(t)
//   ine1_lhs       |t^2 - k b^2| / (2 b t (k b + t))
//   G1             printed cubic, exact rational in (M, k)
//   G2..G7, H1, H2 the auxiliary functions of the alpha/beta estimates
//   A_real         (s - 4t)(s - 5t)/2 + s + 2t
enum class ExprId {
  epsilon,
  dlog_epsilon,
  d2log_epsilon,
  ine1_lhs,
  G1,
  G2,
  G3,
  G4,
  G5,
  G6,
  G7,
  H1,
  H2,
  A_real,
};

std::string_view expr_tag(ExprId id);
std::optional<ExprId> parse_expr_id(std::string_view tag);
std::vector<std::string> expr_variables(ExprId id);
std::vector<std::string> expr_parameters(ExprId id);
const std::vector<ExprId>& all_expressions();

using VarBox = std::map<std::string, Interval>;
using IntParams = std::map<std::string, long>;

// Box with rational corners, rounded outward to dyadics.
VarBox make_box(const std::map<std::string, std::pair<Rational, Rational>>& corners, Bits precision);

// Enclosure of the expression over the box. Variables are widened to at least
// `precision` bits. Throws std::invalid_argument for missing variables or
// parameters and DomainError when the box leaves the expression's domain.
Interval iv_eval(ExprId expr, const VarBox& point, const IntParams& params, Bits precision = kDefaultPrecision);

// G1(M, k) with its decimal coefficients read as exact rationals.
Rational g1_exact(long M, long k);
// 6 (beta(3) - 1.14 beta(2)) with beta(t) = C(M - k(t-1) + t, t).
Rational g1_identity(long M, long k);

// beta(t) = C(kb + t, t) with kb = M - k(t - 1); M need not be a multiple of k.
BigInt beta_integer(long k, long M, long t);

enum class Sign { positive, negative };

std::string_view sign_tag(Sign s);

enum class CertificateStatus { certified, inconclusive };

std::string_view status_tag(CertificateStatus s);

struct SignLeaf {
  int depth;
  VarBox box;
  Interval enclosure;
  Bits precision;
};

// Bisection tree proving a constant sign on a box. Leaves are listed in
// canonical depth-first, low-half-first order; their depths determine the tree.
struct SignCertificate {
  ExprId expr;
  VarBox box;
  IntParams params;
  Sign claimed_sign;
  Bits precision;
  int max_depth;
  CertificateStatus status;
  std::vector<SignLeaf> leaves;
  long nodes = 0;
  // First box whose enclosure could not be decided (or lies on the wrong side).
  std::optional<VarBox> blocking_box;
  std::optional<Interval> blocking_enclosure;
  bool refuted = false;

  bool certified() const { return status == CertificateStatus::certified; }
  // Smallest distance of a leaf enclosure from zero, as a lower bound on
  // |expr| over the box (only meaningful when certified).
  Dyadic margin() const;
};

struct SignOptions {
  Bits precision = kDefaultPrecision;
  int max_depth = 40;
  Bits max_precision = 512;
  long node_budget = 2'000'000;
};

// Adaptive bisection: certify a leaf when its enclosure excludes zero on the
// claimed side, otherwise raise the precision (doubling up to max_precision)
// and then split the widest dimension in relative width.
SignCertificate certify_sign(ExprId expr, const VarBox& box, const IntParams& params, Sign sign,
                             const SignOptions& options = {});

// Enclosure of ln(n!) from the two-sided Stirling bound with theta in [0, 1].
Interval stirling_log_factorial(long n, Bits precision = kDefaultPrecision);

enum class CheckStatus { pass, fail, inconclusive };

std::string_view check_status_tag(CheckStatus s);

struct Lemma32Result {
  long k;
  long M;
  BigInt beta2;
  BigInt beta3;
  CheckStatus exact_check;  // 114 beta(2) < 100 beta(3)
  Interval eps3;
  Interval ratio;  // beta(3) / eps(3)
  CheckStatus lower_leg;  // 1.126 eps(3) <= beta(3)
  CheckStatus upper_leg;  // beta(3) <= 1.132 eps(3)
  CheckStatus conclusion;  // beta(2) <= eps(3)
  CheckStatus overall;  // exact check and both legs
};

// Requires k >= 2 and M >= 3k.
Lemma32Result lemma32_check(long k, long M, Bits precision = kDefaultPrecision);

// The three regional claims on log eps: increasing on [2, (M+k)/2k], decreasing
// on [(M+1)/(k+1), M/k], concave on [(M+k)/2k, (M+1)/(k+1)].
std::array<SignCertificate, 3> lemma31_regions(long k, long M, const SignOptions& options = {});

// s = 8 t ln t - t as an enclosure.
Interval hypothesis_boundary(const Interval& t);

struct PointSample {
  ExprId expr;
  Rational t;
  Interval s;
  Interval value;
  CheckStatus status;
};

// Sign of G2 (or G6) at (8 t ln t - t, t) for each sampled t.
std::vector<PointSample> boundary_samples(ExprId expr, const std::vector<long>& ts, Bits precision);

// Boxes t in [t0, t1] (cells of width `step`), s between the hypothesis
// boundary at t0 (rounded down to an integer) and `upper_factor` * t1^2, or
// in [lower_factor * t0^2, upper_factor * t1^2].
std::vector<VarBox> t_cell_boxes(long t_lo, long t_hi, long step, Rational lower_factor, Rational upper_factor,
                                 bool from_boundary, Bits precision);

}  // namespace fanocert
