#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fanocert/codim.hpp"
#include "fanocert/exact.hpp"
#include "test_support.hpp"

using namespace fanocert;

namespace {

BigInt factorial(unsigned long n) {
  BigInt f = 1;
  for (unsigned long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("degree tuples validate and sort") {
  DegreeTuple d({3, 2, 3});
  CHECK(d.k() == 3);
  CHECK(d.M() == 5);
  CHECK(d.degrees()[0] == 2);
  CHECK(d.to_string() == "2,3^2");
  CHECK_THROWS_AS(DegreeTuple({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeTuple(std::vector<int>{}), std::invalid_argument);
  CHECK(DegreeTuple::equal(25, 20).M() == 480);
  CHECK(DegreeTuple({2}).M() == 1);
}

TEST_CASE("binomial examples") {
  CHECK(binomial(6, 4) == 15);
  CHECK(binomial(30, 5) == 142506);
  for (unsigned long n : {0ul, 1ul, 17ul, 1000ul}) CHECK(binomial(n, 0) == 1);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("binomial matches the factorial-ratio oracle") {
  for (unsigned long n = 0; n <= 80; ++n)
    for (unsigned long r = 0; r <= n; ++r) CHECK(binomial(n, r) == factorial(n) / (factorial(r) * factorial(n - r)));
}

TEST_CASE("binomial satisfies Pascal's rule and symmetry up to 200") {
  for (unsigned long n = 1; n <= 200; ++n) {
    for (unsigned long r = 0; r <= n; ++r) {
      REQUIRE(binomial(n, r) == binomial(n, n - r));
      if (r >= 1) REQUIRE(binomial(n, r) == binomial(n - 1, r - 1) + binomial(n - 1, r));
    }
  }
}

TEST_CASE("floor of 2 ln k") {
  CHECK(floor_two_log(1) == 0);
  CHECK(floor_two_log(20) == 5);
  CHECK(floor_two_log(3) == 2);
  // e^{n/2} lies between consecutive integers; compare with a float away from the jumps.
  for (long k = 2; k <= 5000; ++k) {
    double v = 2 * std::log(static_cast<double>(k));
    if (std::fabs(v - std::round(v)) > 1e-9) CHECK(floor_two_log(k) == static_cast<long>(std::floor(v)));
  }
  // Jumps: floor changes exactly between floor(e^{n/2}) and its successor.
  for (int n = 1; n <= 16; ++n) {
    long below = static_cast<long>(std::floor(std::exp(n / 2.0)));
    CHECK(floor_two_log(below) == n - 1);
    CHECK(floor_two_log(below + 1) == n);
  }
}

TEST_CASE("slope sequence examples") {
  DegreeTuple d({2, 3, 3});
  auto s0 = slope_sequence(d, 0).expand();
  CHECK(s0 == std::vector<Rational>{2, 2, 2, Rational(3, 2), Rational(3, 2)});
  CHECK(slope_sequence(d, 0).cutoff() == 3);
  CHECK(slope_sequence(d, 3).expand() == std::vector<Rational>{Rational(3, 2), Rational(3, 2)});
  CHECK_THROWS(slope_sequence(d, 4));

  DegreeTuple flag = DegreeTuple::equal(25, 20);
  SlopeSequence s = slope_sequence(flag, 0);
  CHECK(s.size() == 480);
  CHECK(s.at(1) == 2);
  CHECK(s.at(20) == 2);
  CHECK(s.at(21) == Rational(3, 2));
  CHECK(s.at(480) == Rational(25, 24));
  for (long j = 2; j <= 24; ++j) CHECK(s.at(20 + 20 * (j - 2) + 1) == Rational(j + 1, j));
}

TEST_CASE("all-quadric tuples have only the tangent block") {
  DegreeTuple q = DegreeTuple::equal(2, 6);
  SlopeSequence s = slope_sequence(q, 2);
  CHECK(s.size() == 4);
  CHECK(tail_product(q, 0) == 8);
  CHECK(gamma_threshold(q, 6) == Rational(4, 3));
}

TEST_CASE("total degree") {
  CHECK(total_degree(DegreeTuple({2, 3, 3})) == 18);
  CHECK(total_degree(DegreeTuple({2})) == 2);
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 25, 20);
  CHECK(total_degree(DegreeTuple::equal(25, 20)) == p);
}

TEST_CASE("tail products and gamma thresholds") {
  DegreeTuple flag = DegreeTuple::equal(25, 20);
  CHECK(tail_product(flag, 0) == Rational(9765625, 7962624));
  CHECK(tail_product(flag, 7) == 1);
  CHECK(gamma_threshold(flag, 0) == Rational(10616832, 9765625));
  CHECK(gamma_threshold(flag, 0) > 1);
  DegreeTuple small({2, 3, 3});
  CHECK(tail_product(small, 0) == Rational(9, 4));
  CHECK(gamma_threshold(small, 0) == Rational(16, 27));
}

TEST_CASE("slope product equals the total degree on random tuples") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    DegreeTuple d = testing::random_tuple(rng, 30, 40);
    REQUIRE(slope_sequence(d, 0).product() == Rational(total_degree(d)));
  }
}

TEST_CASE("slope sequence structure on random tuples") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    DegreeTuple d = testing::random_tuple(rng, 12, 25);
    Rational tail0 = tail_product(d, 0);
    Rational gamma0 = gamma_threshold(d, 0);
    for (int l = 0; l <= d.k(); ++l) {
      SlopeSequence s = slope_sequence(d, l);
      REQUIRE(s.size() == d.M() - l);
      auto v = s.expand();
      for (std::size_t j = 0; j < v.size(); ++j) {
        REQUIRE(v[j] > 1);
        REQUIRE(v[j] <= 2);
        if (j > 0) REQUIRE(v[j] <= v[j - 1]);
      }
      for (long j = 0; j < std::min<long>(d.k() - l, s.size()); ++j) REQUIRE(v[static_cast<std::size_t>(j)] == 2);
      REQUIRE(s.cutoff() == d.M() - std::max<long>(floor_two_log(d.k()), l));
      // product over a sub-range matches the expanded product
      Rational direct = 1;
      for (long j = s.cutoff() + 1; j <= s.size(); ++j) direct *= v[static_cast<std::size_t>(j - 1)];
      REQUIRE(direct == tail_product(d, l));
      if (l >= 1) {
        REQUIRE(tail_product(d, l) <= tail0);
        REQUIRE(gamma_threshold(d, l) >= gamma0);
      }
    }
  }
}

TEST_CASE("slopes past N_0 are at most 1 + 1/[M/k] and the tail is below 4/3 in the hypothesis range") {
  for (long k = 20; k <= 40; ++k) {
    long m_min = static_cast<long>(std::floor(8 * k * std::log(static_cast<double>(k)))) + 1;
    for (long M = m_min; M <= m_min + k; ++M) {
      DegreeTuple d = star_tuple(M, k);
      SlopeSequence seq = slope_sequence(d, 0);
      Rational cap = 1 + Rational(1, M / k);
      for (long j = seq.cutoff() + 1; j <= seq.size(); ++j) REQUIRE(seq.at(j) <= cap);
      REQUIRE(tail_product(d, 0) < Rational(4, 3));
    }
  }
}

TEST_CASE("exact strings") {
  CHECK(to_exact_string(Rational(3, 2)) == "3/2");
  CHECK(to_exact_string(Rational(-2)) == "-2");
  CHECK(to_exact_string(Rational(0)) == "0");
}
