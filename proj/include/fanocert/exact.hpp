#pragma once

#include <span>
#include <string>
#include <vector>

#include "fanocert/interval.hpp"

namespace fanocert {

// Sorted degrees 2 <= d_1 <= ... <= d_k of a complete intersection, with
// M = |d| - k >= 1.
class DegreeTuple {
 public:
  // Sorts the input; throws std::invalid_argument on an empty list or any
  // degree below 2.
  explicit DegreeTuple(std::vector<int> degrees);

  // k copies of one degree.
  static DegreeTuple equal(int degree, int count);

  std::span<const int> degrees() const { return degrees_; }
  int k() const { return static_cast<int>(degrees_.size()); }
  long M() const { return M_; }
  int max_degree() const { return degrees_.back(); }
  bool is_equal_degree() const { return degrees_.front() == degrees_.back(); }

  // Compact power notation, e.g. "2^3,5".
  std::string to_string() const;

  friend bool operator==(const DegreeTuple&, const DegreeTuple&) = default;
  friend auto operator<=>(const DegreeTuple& a, const DegreeTuple& b) { return a.degrees_ <=> b.degrees_; }

 private:
  std::vector<int> degrees_;
  long M_ = 0;
};

// C(n, r), zero when r > n.
BigInt binomial(unsigned long n, unsigned long r);

// floor(2 ln k), decided on certified enclosures of ln k.
long floor_two_log(long k);

// N_l = M - max(floor(2 ln k), l).
long slope_cutoff(const DegreeTuple& d, int l);

// `count` consecutive slopes equal to (j+1)/j.
struct SlopeRun {
  long j;
  long count;

  Rational value() const { return Rational(j + 1, j); }
  friend bool operator==(const SlopeRun&, const SlopeRun&) = default;
};

// Hypertangent slopes beta_{l,1}, ..., beta_{l,M-l} in standard order, stored
// run-length encoded by j.
class SlopeSequence {
 public:
  SlopeSequence(DegreeTuple source, int level, std::vector<SlopeRun> runs, long cutoff);

  std::span<const SlopeRun> runs() const { return runs_; }
  const DegreeTuple& source() const { return source_; }
  int level() const { return level_; }
  long cutoff() const { return cutoff_; }
  long size() const { return size_; }

  // 1-based, like the slope indices.
  Rational at(long index) const;
  std::vector<Rational> expand() const;

  // Product of entries first..last (1-based, inclusive); 1 for an empty range.
  Rational product(long first, long last) const;
  Rational product() const { return product(1, size_); }

 private:
  DegreeTuple source_;
  int level_;
  std::vector<SlopeRun> runs_;
  long cutoff_;
  long size_ = 0;
};

SlopeSequence slope_sequence(const DegreeTuple& d, int l);

BigInt total_degree(const DegreeTuple& d);

// beta(l): product of the slopes past the cutoff N_l.
Rational tail_product(const DegreeTuple& d, int l);

// gamma_l = (4/3) / beta(l).
Rational gamma_threshold(const DegreeTuple& d, int l);

// Exact decimal rendering: "p" for integers, "p/q" otherwise.
std::string to_exact_string(const Rational& q);

}  // namespace fanocert
