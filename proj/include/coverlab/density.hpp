#pragma once

// Exact desk-scale counts behind the density statements: the sumsets
// p^2 + b^2 + 2^n and b1^2 + b2^2 + 2^{n^2}, sums of two squares, the set Q of
// integers free of primes = 3 (mod 4), and Romanoff-type order sums.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coverlab/arith.hpp"
#include "coverlab/error.hpp"
#include "coverlab/parallel.hpp"
#include "coverlab/sieve.hpp"

namespace coverlab::density {

inline constexpr uint64_t kMaxSieveN = 100'000'000;

enum class SetTag { S3, S4, two_squares, Q_set, prime_sq_plus_sq };

inline const char* to_string(SetTag t) {
  switch (t) {
    case SetTag::S3: return "S3";
    case SetTag::S4: return "S4";
    case SetTag::two_squares: return "two_squares";
    case SetTag::Q_set: return "Q_set";
    case SetTag::prime_sq_plus_sq: return "prime_sq_plus_sq";
  }
  return "?";
}

struct DensityReport {
  uint64_t N = 0;
  SetTag set = SetTag::S3;
  uint64_t member_count = 0;
  uint64_t sum_r = 0;
  unsigned __int128 sum_r_sq = 0;
  double cs_lower_bound = 0;  // (sum r)^2 / (sum r^2 * N)
  std::map<std::pair<unsigned, unsigned>, uint64_t> residue_profile;  // (modulus, residue) -> members

  double density() const { return N ? double(member_count) / double(N) : 0.0; }
  /// (sum r)^2 <= |S cap [1,N]| * sum r^2, in exact integers.
  bool cauchy_schwarz_holds() const {
    const unsigned __int128 lhs = (unsigned __int128)sum_r * sum_r;
    // sum_r_sq * member_count fits: both are bounded well below 2^64 at N <= 10^8
    return lhs <= sum_r_sq * member_count;
  }
};

namespace detail {

inline void guard(uint64_t N) {
  if (N > kMaxSieveN) throw Error(ErrorKind::guard_exceeded, "N above 10^8");
}

inline uint64_t isqrt(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(double(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// r(x) for x in [0, N]: each work item adds its own p^2 + 2^n (or 2^{n^2})
/// shift to every b^2. Increments are atomic, so the histogram does not depend
/// on scheduling.
inline std::vector<uint32_t> histogram(uint64_t N, const std::vector<uint64_t>& bases, const std::vector<uint64_t>& squares,
                                       unsigned threads) {
  std::vector<uint32_t> r(N + 1, 0);
  const auto chunks = split_range(0, bases.size(), std::max(1u, threads) * 4);
  for_each_chunk(chunks, threads, [&](const Chunk& ch) {
    for (uint64_t i = ch.begin; i < ch.end; ++i) {
      const uint64_t base = bases[i];
      for (uint64_t b2 : squares) {
        if (base + b2 > N) break;
        std::atomic_ref<uint32_t>(r[base + b2]).fetch_add(1, std::memory_order_relaxed);
      }
    }
  });
  return r;
}

inline DensityReport tally(uint64_t N, SetTag tag, const std::vector<uint32_t>& r) {
  DensityReport rep;
  rep.N = N;
  rep.set = tag;
  for (uint64_t x = 1; x <= N; ++x) {
    if (!r[x]) continue;
    ++rep.member_count;
    rep.sum_r += r[x];
    rep.sum_r_sq += uint64_t(r[x]) * r[x];
    ++rep.residue_profile[{4, unsigned(x % 4)}];
    ++rep.residue_profile[{8, unsigned(x % 8)}];
  }
  if (rep.sum_r_sq > 0) rep.cs_lower_bound = double(rep.sum_r) * double(rep.sum_r) / (double(rep.sum_r_sq) * double(N));
  return rep;
}

inline bool is_square(uint64_t n) {
  const uint64_t r = isqrt(n);
  return r * r == n;
}

inline std::vector<uint64_t> squares_up_to(uint64_t N) {
  std::vector<uint64_t> sq;
  for (uint64_t b = 0; b * b <= N; ++b) sq.push_back(b * b);
  return sq;
}

}  // namespace detail

inline std::vector<uint64_t> s3_bases(uint64_t N) {
  std::vector<uint64_t> bases;
  for (uint32_t p : sieve::primes_up_to(static_cast<uint32_t>(detail::isqrt(N))))
    for (uint64_t t = 1; uint64_t(p) * p + t <= N; t *= 2) bases.push_back(uint64_t(p) * p + t);
  return bases;
}

/// Exponents n >= 0 with 2^{n^2} <= N.
inline std::vector<unsigned> s4_exponents(uint64_t N) {
  std::vector<unsigned> out;
  for (unsigned n = 0; n * n < 64 && (uint64_t(1) << (n * n)) <= N; ++n) out.push_back(n);
  return out;
}

inline std::vector<uint64_t> s4_bases(uint64_t N) {
  std::vector<uint64_t> bases;
  for (unsigned n : s4_exponents(N)) {
    const uint64_t t = uint64_t(1) << (n * n);
    for (uint64_t b = 0; t + b * b <= N; ++b) bases.push_back(t + b * b);
  }
  return bases;
}

/// r(x) = #{(p, b, n) : p^2 + b^2 + 2^n = x}, p prime, b, n >= 0.
inline std::vector<uint32_t> s3_histogram(uint64_t N, unsigned threads = 1) {
  detail::guard(N);
  return detail::histogram(N, s3_bases(N), detail::squares_up_to(N), threads);
}

/// r(x) = #{(b1, b2, n) : b1^2 + b2^2 + 2^{n^2} = x}.
inline std::vector<uint32_t> s4_histogram(uint64_t N, unsigned threads = 1) {
  detail::guard(N);
  return detail::histogram(N, s4_bases(N), detail::squares_up_to(N), threads);
}

/// S3 = {p^2 + b^2 + 2^n} on [1, N] with moments of r(x).
inline DensityReport sieve_s3(uint64_t N, unsigned threads = 1) {
  return detail::tally(N, SetTag::S3, s3_histogram(N, threads));
}

/// S4 = {b1^2 + b2^2 + 2^{n^2}} on [1, N] with moments of r(x).
inline DensityReport sieve_s4(uint64_t N, unsigned threads = 1) {
  return detail::tally(N, SetTag::S4, s4_histogram(N, threads));
}

/// Per-x oracle: is x = p^2 + b^2 + 2^n?
inline bool in_s3_direct(uint64_t x) {
  for (uint64_t t = 1; t < x; t *= 2)
    for (uint64_t p = 2; p * p + t <= x; ++p)
      if (arith::is_prime_u64(p) && detail::is_square(x - t - p * p)) return true;
  return false;
}

inline bool in_s4_direct(uint64_t x) {
  for (unsigned n : s4_exponents(x)) {
    const uint64_t t = uint64_t(1) << (n * n);
    for (uint64_t b = 0; b * b + t <= x; ++b)
      if (detail::is_square(x - t - b * b)) return true;
  }
  return false;
}

struct LandauConstant {
  double raw = 0;
  double corrected = 0;
  uint64_t p_max = 0;
};

inline constexpr double kLandauReference = 0.764223653;

/// K = 2^{-1/2} prod_{p = 3 (4)} (1 - p^-2)^{-1/2}, truncated at p_max, plus the
/// tail factor exp(sum_{p > p_max} 1/(2p^2)) with sum_{p > P, p = 3 (4)} p^-2 ~ 1/(2 P ln P).
inline LandauConstant landau_constant(uint64_t p_max) {
  if (p_max < 3) throw Error(ErrorKind::invalid_argument, "landau_constant: p_max must be >= 3");
  detail::guard(p_max);
  double log_prod = 0;
  for (uint32_t p : sieve::primes_up_to(static_cast<uint32_t>(p_max)))
    if (p % 4 == 3) log_prod += -0.5 * std::log1p(-1.0 / (double(p) * double(p)));
  LandauConstant k;
  k.p_max = p_max;
  k.raw = std::exp(log_prod) / std::sqrt(2.0);
  const double P = double(p_max);
  k.corrected = k.raw * std::exp(1.0 / (4.0 * P * std::log(P)));
  return k;
}

/// Membership of [0, N] in the two-squares set via the spf table: every prime
/// = 3 (mod 4) must appear to an even power.
inline std::vector<uint8_t> two_squares_bitmap(uint64_t N) {
  detail::guard(N);
  const auto spf = sieve::smallest_prime_factor(static_cast<uint32_t>(std::max<uint64_t>(N, 2)));
  std::vector<uint8_t> ok(N + 1, 0);
  ok[0] = 1;
  if (N >= 1) ok[1] = 1;
  for (uint64_t x = 2; x <= N; ++x) {
    uint64_t y = x;
    bool good = true;
    while (y > 1 && good) {
      const uint32_t p = spf[y];
      unsigned e = 0;
      while (y % p == 0) y /= p, ++e;
      if (p % 4 == 3 && e % 2 == 1) good = false;
    }
    ok[x] = good;
  }
  return ok;
}

inline uint64_t count_two_squares(uint64_t N) {
  const auto ok = two_squares_bitmap(N);
  uint64_t c = 0;
  for (uint64_t x = 1; x <= N; ++x) c += ok[x];
  return c;
}

/// Q = integers with no prime factor = 3 (mod 4); includes 1.
inline std::vector<uint8_t> q_set_bitmap(uint64_t N) {
  detail::guard(N);
  std::vector<uint8_t> ok(N + 1, 1);
  ok[0] = 0;
  for (uint32_t p : sieve::primes_up_to(static_cast<uint32_t>(N)))
    if (p % 4 == 3)
      for (uint64_t x = p; x <= N; x += p) ok[x] = 0;
  return ok;
}

inline uint64_t count_q_set(uint64_t N) {
  const auto ok = q_set_bitmap(N);
  uint64_t c = 0;
  for (uint64_t x = 1; x <= N; ++x) c += ok[x];
  return c;
}

/// |{p^2 + b^2 <= N : p prime, b >= 0}|.
inline uint64_t count_prime_sq_plus_sq(uint64_t N) {
  detail::guard(N);
  std::vector<uint8_t> hit(N + 1, 0);
  for (uint32_t p : sieve::primes_up_to(static_cast<uint32_t>(detail::isqrt(N))))
    for (uint64_t b = 0; uint64_t(p) * p + b * b <= N; ++b) hit[uint64_t(p) * p + b * b] = 1;
  uint64_t c = 0;
  for (uint64_t x = 1; x <= N; ++x) c += hit[x];
  return c;
}

/// ord_2(d) for odd d if it is <= cap, else 0. ord_2(1) = 1 by convention.
inline unsigned ord2_capped(uint64_t d, unsigned cap) {
  if (d == 1) return 1;
  uint64_t v = 2 % d;
  for (unsigned k = 1; k <= cap; ++k) {
    if (v == 1) return k;
    v = v * 2 % d;
  }
  return 0;
}

/// E(x) truncated: sum of 1/d over odd d <= d_max with ord_2(d) <= x.
inline double romanoff_sum(unsigned x, uint64_t d_max) {
  if (x > 64) throw Error(ErrorKind::invalid_argument, "romanoff_sum: x must be <= 64");
  double s = 0;
  for (uint64_t d = 1; d <= d_max; d += 2)
    if (ord2_capped(d, x)) s += 1.0 / double(d);
  return s;
}

struct PairSum {
  uint64_t N = 0;
  double value = 0;
  double ratio = 0;  // value / (log N)^2
  std::vector<unsigned> incomplete_k;  // differences whose 2^k - 1 was only partly factored
};

/// sum over 0 <= n1 < n2 with 2^{n2} <= N of prod_{p | 2^{n2-n1} - 1} (1 + 1/p).
inline PairSum romanoff_pair_sum(uint64_t N, const arith::FactorBudget& budget = {}) {
  if (N < 2) throw Error(ErrorKind::invalid_argument, "romanoff_pair_sum: N must be >= 2");
  unsigned L = 0;
  while (L < 63 && (uint64_t(1) << (L + 1)) <= N) ++L;
  PairSum out;
  out.N = N;
  for (unsigned k = 1; k <= L; ++k) {
    const auto f = arith::factorize((Natural(1) << k) - 1, budget);
    double prod = 1;
    for (const auto& pp : f.factors) prod *= 1 + 1 / pp.prime.get_d();
    if (!f.complete()) out.incomplete_k.push_back(k);
    out.value += double(L - k + 1) * prod;
  }
  const double lg = std::log(double(N));
  out.ratio = out.value / (lg * lg);
  return out;
}

struct WeightedOrdSum {
  uint64_t d_max = 0;
  double value = 0;
  std::vector<std::pair<uint64_t, double>> checkpoints;  // (10^k, partial sum) up to d_max
};

/// sum over odd d <= d_max of 2^{omega(ord_2 d)} / (d sqrt(ord_2 d)).
inline WeightedOrdSum weighted_ord_sum(uint64_t d_max) {
  if (d_max > 10'000'000) throw Error(ErrorKind::guard_exceeded, "weighted_ord_sum: d_max above 10^7");
  const auto spf = sieve::smallest_prime_factor(static_cast<uint32_t>(std::max<uint64_t>(d_max, 2)));
  auto omega = [&](uint64_t n) {
    unsigned w = 0;
    while (n > 1) {
      const uint32_t p = spf[n];
      while (n % p == 0) n /= p;
      ++w;
    }
    return w;
  };
  // ord of p^k, memoised by prime power
  std::map<uint64_t, uint64_t> ord_pp;
  auto ord_prime_power = [&](uint64_t p, unsigned k) {
    uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    auto it = ord_pp.find(pk);
    if (it != ord_pp.end()) return it->second;
    uint64_t o;
    if (k == 1) {
      // ord divides p - 1, whose factors are all <= d_max
      o = p - 1;
      uint64_t t = p - 1;
      while (t > 1) {
        const uint32_t q = spf[t];
        while (t % q == 0) t /= q;
        while (o % q == 0 && arith::pow_mod(2, o / q, p) == 1) o /= q;
      }
    } else {
      const uint64_t prev = ord_pp.at(pk / p);
      o = arith::pow_mod(2, prev, pk) == 1 ? prev : prev * p;
    }
    ord_pp.emplace(pk, o);
    return o;
  };
  WeightedOrdSum out;
  out.d_max = d_max;
  double s = 0;
  uint64_t next_check = 10;
  for (uint64_t d = 1; d <= d_max; d += 2) {
    uint64_t ord = 1, n = d;
    while (n > 1) {
      const uint32_t p = spf[n];
      unsigned e = 0;
      while (n % p == 0) n /= p, ++e;
      for (unsigned k = 1; k <= e; ++k) ord_prime_power(p, k);
      ord = std::lcm(ord, ord_prime_power(p, e));
    }
    s += std::ldexp(1.0, int(omega(ord))) / (double(d) * std::sqrt(double(ord)));
    while (next_check <= d_max && d + 2 > next_check) {
      out.checkpoints.push_back({next_check, s});
      next_check *= 10;
    }
  }
  if (out.checkpoints.empty() || out.checkpoints.back().first != d_max) out.checkpoints.push_back({d_max, s});
  out.value = s;
  return out;
}

struct PairCount {
  uint64_t N = 0;
  uint64_t m = 0;
  uint64_t count = 0;
  double bound_factor = 1;  // prod_{p | m, p = 3 (4)} (1 + 1/p)
  double ratio = 0;         // count / (N / log N * bound_factor)
};

/// |{x : x, x + m in Q cap [1, N]}|.
inline PairCount q_pair_count(uint64_t N, uint64_t m) {
  if (N < 3) throw Error(ErrorKind::invalid_argument, "q_pair_count: N must be >= 3");
  const auto q = q_set_bitmap(N);
  PairCount out{N, m, 0, 1, 0};
  for (uint64_t x = 1; x + m <= N; ++x) out.count += q[x] & q[x + m];
  for (const auto& [p, e] : arith::factorize_u64(m))
    if (p % 4 == 3) out.bound_factor *= 1 + 1.0 / double(p);
  out.ratio = double(out.count) / (double(N) / std::log(double(N)) * out.bound_factor);
  return out;
}

}  // namespace coverlab::density
