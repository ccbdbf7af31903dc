#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fanocert/certify.hpp"
#include "test_support.hpp"

using namespace fanocert;

namespace {

const CheckResult* find_check(const Certificate& c, const std::string& name) {
  for (const auto& r : c.checks)
    if (r.name == name) return &r;
  return nullptr;
}

const ReportedValue* find_value(const Certificate& c, const std::string& name) {
  for (const auto& v : c.values)
    if (v.name == name) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("hypothesis examples") {
  CHECK(hypothesis_check(20, 480).ok);
  auto low = hypothesis_check(20, 479);
  CHECK_FALSE(low.ok);
  CHECK(low.k_ok);
  CHECK_FALSE(low.m_ok);
  auto small_k = hypothesis_check(19, 1000000);
  CHECK_FALSE(small_k.ok);
  CHECK_FALSE(small_k.k_ok);
  CHECK(small_k.m_ok);
  CHECK(smallest_hypothesis_M(20) == 480);
  CHECK(smallest_hypothesis_multiple(20) == 480);
  CHECK(smallest_hypothesis_M(30) == 817);
  CHECK(smallest_hypothesis_multiple(30) == 840);
}

TEST_CASE("hypothesis threshold agrees with floating 8 k ln k away from integers") {
  for (long k = 20; k <= 400; ++k) {
    double b = 8.0 * k * std::log(static_cast<double>(k));
    REQUIRE(smallest_hypothesis_M(k) == static_cast<long>(std::ceil(b)));
    long mult = smallest_hypothesis_multiple(k);
    REQUIRE(mult % k == 0);
    REQUIRE(mult >= b);
    REQUIRE(mult - k < b);
  }
}

TEST_CASE("flagship certificate") {
  Certificate c = certify_tuple(DegreeTuple::equal(25, 20));
  CHECK(c.k == 20);
  CHECK(c.M == 480);
  CHECK(c.hypothesis_ok);
  CHECK(c.overall == Overall::pass);
  CHECK(c.levels.size() == 21);
  for (const auto& r : c.checks) CHECK_MESSAGE(r.status == CheckStatus::pass, r.name);
  REQUIRE(find_value(c, "alpha"));
  CHECK(find_value(c, "alpha")->value == "142506");
  CHECK(find_value(c, "beta_min")->value == "106491");
  CHECK(find_value(c, "thm31_target")->value == "68900");
  CHECK(find_value(c, "thm04")->value == "68400");
  CHECK(find_value(c, "thm02")->value == "80582");
  CHECK(find_value(c, "A")->value == "76520");
  CHECK(find_value(c, "prop22_argmin_l")->value == "20");
  const CheckResult* gm = find_check(c, "gamma_min_ge_thm31_target/l=0");
  REQUIRE(gm);
  CHECK(gm->value == "106491");
  CHECK(gm->bound == "68900");
  CHECK(gm->level == 0);
}

TEST_CASE("certificate with one level") {
  CertifyConfig cfg;
  cfg.levels = {0};
  Certificate c = certify_tuple(DegreeTuple::equal(25, 20), cfg);
  CHECK(c.levels == std::vector<int>{0});
  CHECK(find_check(c, "gamma_min_ge_thm31_target/l=0"));
  CHECK_FALSE(find_check(c, "gamma_min_ge_thm31_target/l=1"));
  CHECK(c.overall == Overall::pass);
  cfg.levels = {21};
  CHECK_THROWS_AS(certify_tuple(DegreeTuple::equal(25, 20), cfg), std::invalid_argument);
}

TEST_CASE("out of hypotheses tuples are marked but still evaluated") {
  Certificate c = certify_tuple(DegreeTuple({2, 3, 3}));
  CHECK_FALSE(c.hypothesis_ok);
  CHECK(c.overall == Overall::out_of_hypotheses);
  CHECK_FALSE(c.checks.empty());
}

TEST_CASE("derive_overall") {
  CheckResult pass{"a", CheckStatus::pass, "1", "0", "", std::nullopt};
  CheckResult fail{"b", CheckStatus::fail, "0", "1", "", std::nullopt};
  CheckResult unk{"c", CheckStatus::inconclusive, "?", "1", "", std::nullopt};
  CHECK(derive_overall(true, {pass}) == Overall::pass);
  CHECK(derive_overall(true, {pass, unk}) == Overall::inconclusive);
  CHECK(derive_overall(true, {unk, fail}) == Overall::fail);
  CHECK(derive_overall(false, {pass}) == Overall::out_of_hypotheses);
  for (Overall o : {Overall::pass, Overall::fail, Overall::inconclusive, Overall::out_of_hypotheses})
    CHECK(parse_overall(overall_tag(o)) == o);
}

TEST_CASE("certificates in the hypothesis range pass for star and equal shapes") {
  for (long k : {20, 25, 30}) {
    long m0 = smallest_hypothesis_M(k);
    for (long M = m0; M <= m0 + k; M += 5) {
      Certificate c = certify_tuple(star_tuple(M, k));
      CHECK_MESSAGE(c.overall == Overall::pass, c.degrees.to_string());
    }
    Certificate e = certify_tuple(DegreeTuple::equal(static_cast<int>(smallest_hypothesis_multiple(k) / k + 1),
                                                     static_cast<int>(k)));
    CHECK(e.overall == Overall::pass);
  }
}

TEST_CASE("random in-hypothesis tuples pass") {
  std::mt19937_64 rng(77);
  CertifyConfig cfg;
  cfg.levels = {0, 1, 5};
  for (int i = 0; i < 20; ++i) {
    DegreeTuple d = testing::random_hypothesis_tuple(rng, 30);
    Certificate c = certify_tuple(d, cfg);
    REQUIRE(c.hypothesis_ok);
    for (const auto& r : c.checks) CHECK_MESSAGE(r.status == CheckStatus::pass, std::string(d.to_string() + " " + r.name));
  }
}

TEST_CASE("grid points") {
  GridSpec g;
  g.k_lo = 20;
  g.k_hi = 22;
  auto pts = grid_points(g);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == DegreeTuple::equal(25, 20));
  CHECK(pts[1].k() == 21);
  CHECK(pts[1].M() == smallest_hypothesis_multiple(21));

  GridSpec star;
  star.k_lo = star.k_hi = 20;
  star.m_rule = MRule::range;
  star.m_lo = 480;
  star.m_hi = 500;
  star.shape = Shape::star;
  auto sp = grid_points(star);
  CHECK(sp.size() == 21);
  for (std::size_t i = 1; i < sp.size(); ++i) CHECK(sp[i - 1].M() < sp[i].M());

  GridSpec eq = star;
  eq.shape = Shape::equal;
  CHECK(grid_points(eq).size() == 2);  // 480 and 500

  GridSpec empty = eq;
  empty.m_lo = 481;
  empty.m_hi = 499;
  CHECK_THROWS_AS(grid_points(empty), std::invalid_argument);

  GridSpec ex;
  ex.shape = Shape::explicit_tuples;
  ex.tuples = {DegreeTuple::equal(25, 20), DegreeTuple({2, 3, 3}), DegreeTuple::equal(25, 20)};
  auto ep = grid_points(ex);
  REQUIRE(ep.size() == 2);
  CHECK(ep[0] == DegreeTuple({2, 3, 3}));

  for (MRule r : {MRule::min_multiple, MRule::min, MRule::range}) CHECK(parse_m_rule(m_rule_tag(r)) == r);
  for (Shape s : {Shape::equal, Shape::star, Shape::explicit_tuples}) CHECK(parse_shape(shape_tag(s)) == s);
}

TEST_CASE("sweep is deterministic across thread counts") {
  GridSpec g;
  g.k_lo = 20;
  g.k_hi = 26;
  g.m_rule = MRule::min;
  g.shape = Shape::star;
  SweepConfig one;
  one.certify.levels = {0, 3};
  SweepConfig many = one;
  many.threads = 4;
  auto a = sweep(g, one);
  auto b = sweep(g, many);
  REQUIRE(a.size() == 7);
  CHECK(a == b);
  for (const auto& c : a) CHECK(c.overall == Overall::pass);
}
