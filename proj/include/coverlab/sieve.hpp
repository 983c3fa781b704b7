#pragma once

#include <cstdint>
#include <vector>

namespace coverlab::sieve {

/// Smallest-prime-factor table on [0, n]; spf[0] = spf[1] = 0.
inline std::vector<uint32_t> smallest_prime_factor(uint32_t n) {
  std::vector<uint32_t> spf(n + 1, 0);
  std::vector<uint32_t> primes;
  for (uint32_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      primes.push_back(i);
    }
    for (uint32_t p : primes) {
      const uint64_t j = uint64_t(p) * i;
      if (p > spf[i] || j > n) break;
      spf[j] = p;
    }
  }
  return spf;
}

inline std::vector<uint32_t> primes_up_to(uint32_t n) {
  std::vector<uint32_t> out;
  if (n < 2) return out;
  std::vector<uint8_t> composite(n + 1, 0);
  for (uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

}  // namespace coverlab::sieve
