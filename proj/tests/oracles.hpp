#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check.

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "cssgames/boolfn.hpp"

namespace oracles {

// O(4^d) Walsh transform straight from the definition.
inline std::vector<std::int64_t> walsh_bruteforce(const cssgames::boolfn::BooleanFunction& f) {
  std::uint64_t n = f.table_size();
  std::vector<std::int64_t> w(n, 0);
  for (std::uint64_t y = 0; y < n; ++y)
    for (std::uint64_t x = 0; x < n; ++x) {
      bool exp = (std::popcount(x & y) & 1) ^ f.value(x);
      w[y] += exp ? -1 : 1;
    }
  return w;
}

inline cssgames::boolfn::BooleanFunction random_function(std::mt19937_64& rng, int d) {
  cssgames::boolfn::BooleanFunction f(d);
  for (std::uint64_t x = 0; x < f.table_size(); ++x) f.set(x, rng() & 1);
  return f;
}

// GHZ target with x fixed to 1 on n z-variables: XOR of adjacent products
// plus all linear terms (open chain).
inline cssgames::boolfn::BooleanFunction ghz_chain_function(int n) {
  return cssgames::boolfn::BooleanFunction::from_lambda(n, [n](std::uint64_t z) {
    int acc = 0;
    for (int i = 0; i + 1 < n; ++i) acc ^= (z >> i) & (z >> (i + 1)) & 1;
    acc ^= std::popcount(z) & 1;
    return acc & 1;
  });
}

// Same game written with the all-to-all stabilizer basis.
inline cssgames::boolfn::BooleanFunction ghz_all_to_all_function(int n) {
  return cssgames::boolfn::BooleanFunction::from_lambda(n, [n](std::uint64_t z) {
    int w = std::popcount(z);
    int pairs = w * (w - 1) / 2;
    return (pairs ^ w) & 1;
  });
}

inline std::uint64_t hamming_distance(const cssgames::boolfn::BooleanFunction& a,
                                      const cssgames::boolfn::BooleanFunction& b) {
  return (a ^ b).weight();
}

}  // namespace oracles
