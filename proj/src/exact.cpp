#include "fanocert/exact.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fanocert {

DegreeTuple::DegreeTuple(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw std::invalid_argument("degree tuple is empty");
  std::sort(degrees_.begin(), degrees_.end());
  if (degrees_.front() < 2) throw std::invalid_argument("every degree must be at least 2");
  long sum = std::accumulate(degrees_.begin(), degrees_.end(), 0L);
  M_ = sum - k();
}

DegreeTuple DegreeTuple::equal(int degree, int count) {
  if (count < 1) throw std::invalid_argument("degree tuple is empty");
  return DegreeTuple(std::vector<int>(static_cast<std::size_t>(count), degree));
}

std::string DegreeTuple::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < degrees_.size();) {
    std::size_t j = i;
    while (j < degrees_.size() && degrees_[j] == degrees_[i]) ++j;
    if (i != 0) os << ',';
    os << degrees_[i];
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  return os.str();
}

BigInt binomial(unsigned long n, unsigned long r) {
  BigInt out;
  if (r > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, std::min(r, n - r));
  return out;
}

long floor_two_log(long k) {
  if (k < 1) throw std::invalid_argument("floor_two_log needs k >= 1");
  if (k == 1) return 0;
  thread_local std::unordered_map<long, long> cache;
  if (auto it = cache.find(k); it != cache.end()) return it->second;
  // 2 ln k is irrational for k > 1, so the loop terminates.
  for (Bits p = 64;; p *= 2) {
    Interval v = log(Interval::from_integer(k, p)) * 2;
    long lo = mpfr_get_si(v.lo().get(), MPFR_RNDD);
    long hi = mpfr_get_si(v.hi().get(), MPFR_RNDD);
    if (lo == hi) return cache[k] = lo;
  }
}

long slope_cutoff(const DegreeTuple& d, int l) {
  if (l < 0 || l > d.k()) throw std::invalid_argument("singularity level must lie in [0, k]");
  return d.M() - std::max<long>(floor_two_log(d.k()), l);
}

SlopeSequence::SlopeSequence(DegreeTuple source, int level, std::vector<SlopeRun> runs, long cutoff)
    : source_(std::move(source)), level_(level), runs_(std::move(runs)), cutoff_(cutoff) {
  for (const auto& run : runs_) size_ += run.count;
}

Rational SlopeSequence::at(long index) const {
  if (index < 1 || index > size_) throw std::out_of_range("slope index out of range");
  for (const auto& run : runs_) {
    if (index <= run.count) return run.value();
    index -= run.count;
  }
  throw std::logic_error("unreachable");
}

std::vector<Rational> SlopeSequence::expand() const {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (const auto& run : runs_) out.insert(out.end(), static_cast<std::size_t>(run.count), run.value());
  return out;
}

Rational SlopeSequence::product(long first, long last) const {
  first = std::max(first, 1L);
  last = std::min(last, size_);
  if (first > last) return Rational(1);
  BigInt num = 1, den = 1, power;
  long position = 1;  // index of the first entry of the current run
  for (const auto& run : runs_) {
    long lo = std::max(first, position);
    long hi = std::min(last, position + run.count - 1);
    if (lo <= hi) {
      auto e = static_cast<unsigned long>(hi - lo + 1);
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(run.j + 1), e);
      num *= power;
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(run.j), e);
      den *= power;
    }
    position += run.count;
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

SlopeSequence slope_sequence(const DegreeTuple& d, int l) {
  long cutoff = slope_cutoff(d, l);
  std::vector<SlopeRun> runs;
  if (d.k() - l > 0) runs.push_back({1, d.k() - l});
  // m(j) = #{(i, alpha) : 2 <= alpha <= min(j, d_i - 1)} increments, i.e. the
  // number of degrees exceeding j.
  for (long j = 2; j < d.max_degree(); ++j) {
    auto count = std::count_if(d.degrees().begin(), d.degrees().end(), [j](int di) { return di > j; });
    runs.push_back({j, static_cast<long>(count)});
  }
  return SlopeSequence(d, l, std::move(runs), cutoff);
}

BigInt total_degree(const DegreeTuple& d) {
  BigInt out = 1;
  for (int di : d.degrees()) out *= di;
  return out;
}

Rational tail_product(const DegreeTuple& d, int l) {
  SlopeSequence seq = slope_sequence(d, l);
  return seq.product(seq.cutoff() + 1, seq.size());
}

Rational gamma_threshold(const DegreeTuple& d, int l) {
  Rational g = Rational(4, 3) / tail_product(d, l);
  g.canonicalize();
  return g;
}

std::string to_exact_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace fanocert
