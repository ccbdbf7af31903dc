#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fanocert/exact.hpp"

namespace fanocert::testing {

// k in [1, max_k], degrees in [2, max_degree].
inline DegreeTuple random_tuple(std::mt19937_64& rng, int max_k, int max_degree) {
  std::uniform_int_distribution<int> kd(1, max_k), dd(2, max_degree);
  std::vector<int> deg(static_cast<std::size_t>(kd(rng)));
  for (int& x : deg) x = dd(rng);
  return DegreeTuple(std::move(deg));
}

// k in [20, max_k] and degrees spread around a common value so that
// M >= 8 k ln k holds (M is re-drawn until it does).
inline DegreeTuple random_hypothesis_tuple(std::mt19937_64& rng, int max_k) {
  std::uniform_int_distribution<int> kd(20, max_k), spread(0, 12);
  int k = kd(rng);
  int base = static_cast<int>(8 * std::log(static_cast<double>(k))) + 2;
  while (true) {
    std::vector<int> deg(static_cast<std::size_t>(k));
    for (int& x : deg) x = base + spread(rng) - 3;
    DegreeTuple d(std::move(deg));
    if (static_cast<double>(d.M()) >= 8.0 * k * std::log(static_cast<double>(k)) + 1e-6) return d;
  }
}

}  // namespace fanocert::testing
