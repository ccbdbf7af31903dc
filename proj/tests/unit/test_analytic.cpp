#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fanocert/analytic.hpp"
#include "fanocert/exact.hpp"

using namespace fanocert;

namespace {

using LD = long double;

// Plain floating evaluation of the printed formulas (unfactored denominators).
struct Oracle {
  long k = 0, M = 0;

  LD log_c() const { return std::log(2 * std::acos(LD(-1))) / 2 - 2; }

  LD log_eps(LD t) const {
    LD kb = M + k - k * t;
    return log_c() + (kb + t + 0.5L) * std::log(kb + t) - (kb + 0.5L) * std::log(kb) - (t + 0.5L) * std::log(t);
  }
  LD eps(LD t) const { return std::exp(log_eps(t)); }
  LD dlog(LD t) const {
    LD b = LD(M + k) / k - t, kb = k * b;
    return (t * t - k * b * b) / (2 * b * t * (kb + t)) - k * std::log(1 + t / kb) + std::log(1 + kb / t);
  }
  LD d2log(LD t) const {
    LD b = LD(M + k) / k - t, kb = k * b, n = kb + t, d = t * t - k * b * b;
    return 1 / (b * t) + d * d / (2 * b * b * t * t * n * n) + (k - 1) * d / (b * t * n * n) -
           k * (t + b) * (t + b) / (b * t * n);
  }
  LD ine1(LD t) const {
    LD b = LD(M + k) / k - t, kb = k * b;
    return std::fabs(t * t - k * b * b) / (2 * b * t * (kb + t));
  }
};

LD A_real(LD s, LD t) { return (s - 4 * t) * (s - 5 * t) / 2 + s + 2 * t; }

LD G2(LD s, LD t) {
  Oracle o;
  LD x = s / t;
  LD le = o.log_c() + (t + x + 0.5L) * std::log(t + x) - (t + 0.5L) * std::log(t) - (x + 0.5L) * std::log(x);
  return le - std::log((s - t + 2) * (s - t + 1) / 2);
}

LD H1(LD t) {
  LD L = 8 * std::log(t);
  return (1 + 8 / t) * (L + t - 0.5L) / (L + t - 1) - (8 / t) * (L - 0.5L) / (L - 1) - 1;
}

LD H2(LD t) {
  LD L = std::log(t);
  return -(8 * L + 6) * (1 / (8 * t * L - 2 * t + 2) + 1 / (8 * t * L - 2 * t + 1));
}

LD G3(LD t) {
  LD u = 8 * std::log(t) - 1;
  return std::log(1 + u / t) + (8 / t) * std::log(1 + t / u) - 1 / (2 * t) + H1(t) + H2(t);
}

LD G4(LD s, LD t) {
  return std::log(1 + t * t / s) / t - t * t / (2 * s * (t * t + s)) -
         (2 * s + 3 - 2 * t) / (s * s + (3 - 2 * t) * s + t * t - 3 * t + 2);
}

LD G5(LD s, LD t, LD r) {
  Oracle o;
  LD x = s / t;
  return (x + r + 1.5L) * std::log(x + r + 1) - (r + 0.5L) * std::log(r) - (x + 1.5L) * std::log(x + 1) + o.log_c() -
         std::log(A_real(s, t));
}

LD G7(LD s, LD t) {
  LD r = 2 * std::log(t) - 1, x = s / t;
  return std::log(1 + r / (x + 1)) / t - r / (2 * t * (x + 1) * (x + 2 * std::log(t))) -
         (2 * s - 9 * t + 2) / (s * s - 9 * t * s + 2 * s + 20 * t * t + 4 * t);
}

bool near_contains(const Interval& iv, LD v, LD rel = 1e-12L) {
  LD tol = rel * std::max<LD>(1, std::fabs(v));
  return iv.lo().to_double() - tol <= v && v <= iv.hi().to_double() + tol;
}

Interval pt(LD v, Bits p = 128) { return Interval::from_rational(Rational(static_cast<double>(v)), p); }

LD uniform(std::mt19937_64& rng, LD lo, LD hi) {
  // dyadic so the oracle and the interval see the same input
  return static_cast<double>(std::uniform_real_distribution<double>(static_cast<double>(lo), static_cast<double>(hi))(rng));
}

Rational pow2_neg(long e) {
  Rational q = 1;
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  return q;
}

}  // namespace

TEST_CASE("expression catalogue") {
  for (ExprId id : all_expressions()) {
    auto back = parse_expr_id(expr_tag(id));
    REQUIRE(back);
    CHECK(*back == id);
  }
  CHECK_FALSE(parse_expr_id("G8"));
  CHECK(expr_variables(ExprId::G5) == std::vector<std::string>{"s", "t", "r"});
  CHECK(expr_parameters(ExprId::epsilon) == std::vector<std::string>{"k", "M"});
}

TEST_CASE("iv_eval examples") {
  Interval a = iv_eval(ExprId::A_real, {{"s", Interval::from_integer(480)}, {"t", Interval::from_integer(20)}}, {});
  CHECK(a.contains(Rational(76520)));
  Interval g1 = iv_eval(ExprId::G1, {}, {{"M", 480}, {"k", 20}});
  CHECK(g1.contains(Rational(8562204756, 100)));
  CHECK(g1_exact(480, 20) == Rational(2140551189, 25));
  Interval e3 = iv_eval(ExprId::epsilon, {{"t", Interval::from_integer(3)}}, {{"k", 20}, {"M", 480}});
  Oracle o{20, 480};
  CHECK(near_contains(e3, o.eps(3)));
  CHECK(e3.width() / e3.lo().to_rational() < pow2_neg(100));
}

TEST_CASE("iv_eval rejects missing inputs and domain violations") {
  CHECK_THROWS_AS(iv_eval(ExprId::G2, {{"t", Interval::from_integer(20)}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(iv_eval(ExprId::epsilon, {{"t", Interval::from_integer(3)}}, {{"k", 20}}), std::invalid_argument);
  CHECK_THROWS_AS(iv_eval(ExprId::G3, {{"t", Interval::from_bounds(-1, 1)}}, {}), DomainError);
  // kb(t) = 0 at t = (M + k)/k
  CHECK_THROWS_AS(iv_eval(ExprId::dlog_epsilon, {{"t", Interval::from_integer(25)}}, {{"k", 20}, {"M", 480}}),
                  DomainError);
}

TEST_CASE("enclosures contain the floating oracle at random points") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 1000; ++i) {
    long k = std::uniform_int_distribution<long>(20, 40)(rng);
    long a = std::uniform_int_distribution<long>(24, 60)(rng);
    Oracle o{k, k * a + std::uniform_int_distribution<long>(0, k - 1)(rng)};
    IntParams km{{"k", o.k}, {"M", o.M}};
    LD t = uniform(rng, 2, LD(o.M) / k);
    VarBox vt{{"t", pt(t)}};
    CHECK(near_contains(iv_eval(ExprId::epsilon, vt, km), o.eps(t), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::dlog_epsilon, vt, km), o.dlog(t), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::d2log_epsilon, vt, km), o.d2log(t), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::ine1_lhs, vt, km), o.ine1(t), 1e-10L));

    LD tt = uniform(rng, 20, 200);
    LD s = uniform(rng, 8 * tt * std::log(tt) - tt, 4 * tt * tt);
    LD r = uniform(rng, 1, 20);
    VarBox st{{"s", pt(s)}, {"t", pt(tt)}};
    VarBox one{{"t", pt(tt)}};
    CHECK(near_contains(iv_eval(ExprId::A_real, st, {}), A_real(s, tt)));
    CHECK(near_contains(iv_eval(ExprId::G2, st, {}), G2(s, tt), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::G3, one, {}), G3(tt), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::H1, one, {}), H1(tt), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::H2, one, {}), H2(tt), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::G4, st, {}), G4(s, tt), 1e-10L));
    VarBox str = st;
    str.emplace("r", pt(r));
    CHECK(near_contains(iv_eval(ExprId::G5, str, {}), G5(s, tt, r), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::G6, st, {}), G5(s, tt, 2 * std::log(tt) - 1), 1e-10L));
    CHECK(near_contains(iv_eval(ExprId::G7, st, {}), G7(s, tt), 1e-10L));
  }
}

TEST_CASE("higher precision refines point enclosures") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    LD t = uniform(rng, 20, 200);
    LD s = uniform(rng, t * t, 4 * t * t);
    for (Bits p : {64, 128, 256}) {
      VarBox box{{"s", pt(s, p)}, {"t", pt(t, p)}};
      for (ExprId id : {ExprId::G2, ExprId::G4, ExprId::G6, ExprId::G7}) {
        Interval coarse = iv_eval(id, box, {}, p);
        Interval fine = iv_eval(id, box, {}, p + 32);
        REQUIRE(coarse.intersects(fine));
        REQUIRE(fine.width() <= coarse.width());
      }
    }
  }
}

TEST_CASE("box enclosures contain every sampled point") {
  std::mt19937_64 rng(19);
  VarBox box = make_box({{"s", {Rational(900), Rational(1600)}}, {"t", {Rational(20), Rational(25)}}}, 128);
  for (ExprId id : {ExprId::G2, ExprId::G4, ExprId::G6, ExprId::G7, ExprId::A_real}) {
    Interval whole = iv_eval(id, box, {});
    for (int i = 0; i < 50; ++i) {
      LD t = uniform(rng, 20, 25), s = uniform(rng, 900, 1600);
      REQUIRE(whole.contains(iv_eval(id, {{"s", pt(s)}, {"t", pt(t)}}, {})));
    }
  }
}

TEST_CASE("certify_sign on simple boxes") {
  VarBox box = make_box({{"t", {Rational(20), Rational(200)}}}, 128);
  SignCertificate g3 = certify_sign(ExprId::G3, box, {}, Sign::positive);
  CHECK(g3.certified());
  CHECK_FALSE(g3.leaves.empty());
  CHECK(g3.margin().sign() > 0);

  SignCertificate wrong = certify_sign(ExprId::G3, box, {}, Sign::negative);
  CHECK_FALSE(wrong.certified());
  CHECK(wrong.refuted);
  CHECK(wrong.leaves.empty());
  CHECK(wrong.blocking_box.has_value());

  // dlog changes sign inside [2, a]: no constant sign, the search stops undecided.
  IntParams km{{"k", 20}, {"M", 480}};
  SignOptions shallow;
  shallow.max_depth = 6;
  SignCertificate mixed =
      certify_sign(ExprId::dlog_epsilon, make_box({{"t", {Rational(2), Rational(24)}}}, 128), km, Sign::positive, shallow);
  CHECK_FALSE(mixed.certified());

  CHECK_THROWS_AS(certify_sign(ExprId::G3, make_box({{"t", {Rational(20), Rational(20)}}}, 128), {}, Sign::positive),
                  std::invalid_argument);
  CHECK_THROWS_AS(certify_sign(ExprId::G2, box, {}, Sign::positive), std::invalid_argument);
}

TEST_CASE("certified leaves tile the box in depth-first order") {
  VarBox box = make_box({{"s", {Rational(400), Rational(1600)}}, {"t", {Rational(20), Rational(25)}}}, 128);
  SignCertificate cert = certify_sign(ExprId::G4, box, {}, Sign::positive);
  REQUIRE(cert.certified());
  Rational area = 0;
  for (const auto& leaf : cert.leaves) {
    REQUIRE(leaf.enclosure.strictly_positive());
    REQUIRE(leaf.depth <= cert.max_depth);
    area += leaf.box.at("s").width() * leaf.box.at("t").width();
    // the leaf enclosure really covers the leaf box at its recorded precision
    REQUIRE(leaf.enclosure.contains(iv_eval(ExprId::G4, leaf.box, {}, leaf.precision)));
  }
  CHECK(area == box.at("s").width() * box.at("t").width());
  // depth-first: a leaf at depth d accounts for 2^-d of the tree
  Rational mass = 0;
  for (const auto& leaf : cert.leaves) mass += pow2_neg(leaf.depth);
  CHECK(mass == 1);
}

TEST_CASE("Stirling enclosure of ln n!") {
  for (long n : {1, 10, 100}) {
    Interval s = stirling_log_factorial(n, 128);
    CHECK(near_contains(s, std::lgamma(static_cast<LD>(n + 1)), 1e-15L));
  }
  CHECK_THROWS(stirling_log_factorial(0));
  BigInt f = 1;
  for (long n = 1; n <= 200; ++n) {
    f *= n;
    Interval range = exp(stirling_log_factorial(n, 256));
    REQUIRE(range.contains(Rational(f)));
  }
}

TEST_CASE("the cubic equals 6 (beta(3) - 1.14 beta(2)) exactly") {
  for (long k = 20; k <= 40; ++k)
    for (long M = 3 * k; M <= 3 * k + 500; M += 17) REQUIRE(g1_exact(M, k) == g1_identity(M, k));
  CHECK(beta_integer(20, 480, 2) == 106491);
  CHECK(beta_integer(20, 481, 3) == binomial(444, 3));
}

TEST_CASE("lemma32 check at the flagship") {
  Lemma32Result r = lemma32_check(20, 480);
  CHECK(r.beta2 == 106491);
  CHECK(r.beta3 == 14391741);
  CHECK(r.exact_check == CheckStatus::pass);
  CHECK(r.lower_leg == CheckStatus::pass);
  CHECK(r.upper_leg == CheckStatus::fail);
  CHECK(r.conclusion == CheckStatus::pass);
  CHECK(r.overall == CheckStatus::fail);
  CHECK(r.ratio.lo().to_double() > 1.1438);
  CHECK(r.ratio.hi().to_double() < 1.1440);
  CHECK_THROWS_AS(lemma32_check(20, 59), std::invalid_argument);
  CHECK_THROWS_AS(lemma32_check(1, 480), std::invalid_argument);
}

TEST_CASE("lemma31 regions certify at the flagship") {
  auto regions = lemma31_regions(20, 480);
  for (const auto& c : regions) CHECK(c.certified());
  CHECK_THROWS_AS(lemma31_regions(20, 39), std::invalid_argument);
}

TEST_CASE("the ine1 bound holds where b <= t and fails at t = 2") {
  for (auto [k, M] : {std::pair<long, long>{20, 480}, {30, 900}, {25, 700}}) {
    IntParams km{{"k", k}, {"M", M}};
    // |t^2 - k b^2| / (2 b t (k b + t)) - 1/(2b) < 0 is checked through the oracle at many points
    Oracle o{k, M};
    for (int i = 0; i <= 50; ++i) {
      LD t = LD(M + k) / (2 * k) + (LD(M) / k - LD(M + k) / (2 * k)) * i / 50;
      LD b = LD(M + k) / k - t;
      Interval lhs = iv_eval(ExprId::ine1_lhs, {{"t", pt(t)}}, km);
      REQUIRE(lhs.hi().to_double() <= 1 / (2 * b));
      REQUIRE(near_contains(lhs, o.ine1(t), 1e-10L));
    }
  }
  IntParams km{{"k", 20}, {"M", 480}};
  Interval at2 = iv_eval(ExprId::ine1_lhs, {{"t", Interval::from_integer(2)}}, km);
  CHECK(at2.lo().to_double() > 1.0 / (2 * 23));
}

TEST_CASE("printed derivatives match finite differences of log epsilon") {
  for (auto [k, M] : {std::pair<long, long>{20, 480}, {30, 1000}}) {
    Oracle o{k, M};
    IntParams km{{"k", k}, {"M", M}};
    for (int i = 1; i <= 20; ++i) {
      LD t = 2 + (LD(M) / k - 2.5L) * i / 21;
      LD h = 1e-4L;
      LD fd1 = (o.log_eps(t + h) - o.log_eps(t - h)) / (2 * h);
      LD fd2 = (o.dlog(t + h) - o.dlog(t - h)) / (2 * h);
      LD d1 = iv_eval(ExprId::dlog_epsilon, {{"t", pt(t)}}, km).lo().to_double();
      LD d2 = iv_eval(ExprId::d2log_epsilon, {{"t", pt(t)}}, km).lo().to_double();
      CHECK(std::fabs(fd1 - d1) <= 1e-5L * std::max<LD>(1, std::fabs(d1)));
      CHECK(std::fabs(fd2 - d2) <= 1e-5L * std::max<LD>(1, std::fabs(d2)));
    }
  }
}

TEST_CASE("boundary samples and cells") {
  for (ExprId id : {ExprId::G2, ExprId::G6}) {
    auto samples = boundary_samples(id, {20, 30, 50, 100, 200}, 128);
    REQUIRE(samples.size() == 5);
    for (const auto& s : samples) CHECK(s.status == CheckStatus::pass);
  }
  CHECK_THROWS(boundary_samples(ExprId::G3, {20}, 128));
  auto cells = t_cell_boxes(20, 60, 5, 1, 4, false, 128);
  CHECK(cells.size() == 8);
  CHECK(cells.front().at("s").contains(Rational(400)));
  CHECK(cells.back().at("s").contains(Rational(4 * 3600)));
  auto edge = t_cell_boxes(20, 22, 5, 1, 4, true, 128);
  REQUIRE(edge.size() == 1);
  CHECK(edge[0].at("s").lo().to_rational() == 459);  // floor(160 ln 20 - 20)
  CHECK(edge[0].at("t").hi().to_rational() == 22);
}
