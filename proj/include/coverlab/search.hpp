#pragma once

// Residues c whose whole orbit c + 2^n avoids squares modulo a squarefree odd
// modulus, plus near misses (long non-residue runs) modulo a single prime.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coverlab/arith.hpp"
#include "coverlab/error.hpp"
#include "coverlab/parallel.hpp"

namespace coverlab::search {

struct NearMiss {
  Natural c;
  uint64_t run_length = 0;         // longest cyclic run of non-residues within one period
  std::vector<uint64_t> failures;  // n in [0, period) with c + 2^n a square
};

struct OrbitResult {
  Natural modulus;
  std::vector<uint64_t> factors;
  uint64_t period = 0;
  std::vector<Natural> full_blockers;
  std::optional<NearMiss> best_near_miss;
};

inline constexpr uint64_t kMaxExhaustiveModulus = 1'000'000'000'000ULL;
inline constexpr uint64_t kMaxNearMissPrime = 1'000'000'000ULL;
inline constexpr uint64_t kMaxPeriod = 1ULL << 20;

namespace detail {

inline void check_factors(const std::vector<uint64_t>& factors) {
  if (factors.empty()) throw Error(ErrorKind::invalid_argument, "factor list is empty");
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 3 || !arith::is_prime_u64(factors[i]))
      throw Error(ErrorKind::invalid_argument, std::to_string(factors[i]) + " is not an odd prime");
    for (size_t j = 0; j < i; ++j)
      if (factors[j] == factors[i]) throw Error(ErrorKind::invalid_argument, "factors must be distinct");
  }
}

/// Per-factor orbit of 2 and a residue test.
struct FactorOrbit {
  uint64_t p = 0;
  uint64_t ord = 0;
  std::vector<uint64_t> pow2;  // 2^n mod p, n in [0, ord)
  std::vector<bool> qr;        // squares mod p (0 included) when p is small enough

  /// The residue bitmap pays off only when many c are scanned against p.
  explicit FactorOrbit(uint64_t prime, bool bitmap = false) : p(prime), ord(arith::mult_order_u64(2, prime)) {
    if (ord > kMaxPeriod) throw Error(ErrorKind::range_too_large, "ord_2(" + std::to_string(p) + ") above 2^20");
    pow2.resize(ord);
    uint64_t v = 1;
    for (uint64_t n = 0; n < ord; ++n, v = v * 2 % p) pow2[n] = v;
    if (bitmap && p <= kMaxNearMissPrime) {
      qr.assign(p, false);
      for (uint64_t x = 0; x <= p / 2; ++x) qr[x * x % p] = true;
    }
  }

  bool non_residue(uint64_t c_mod_p, uint64_t n) const {
    const uint64_t v = (c_mod_p + pow2[n % ord]) % p;
    return qr.empty() ? arith::jacobi_u64(v, p) == -1 : !qr[v];
  }
};

inline uint64_t period_of(const std::vector<FactorOrbit>& orbits) {
  uint64_t T = 1;
  for (const auto& o : orbits) {
    T = std::lcm(T, o.ord);
    if (T > kMaxPeriod) throw Error(ErrorKind::range_too_large, "period above 2^20");
  }
  return T;
}

/// Square positions and the longest cyclic non-residue run for one c.
inline NearMiss scan_c(const Natural& c, const std::vector<FactorOrbit>& orbits, uint64_t T, bool stop_at_first) {
  NearMiss nm;
  nm.c = c;
  std::vector<uint64_t> cm;
  for (const auto& o : orbits) cm.push_back(mpz_fdiv_ui(c.get_mpz_t(), o.p));
  for (uint64_t n = 0; n < T; ++n) {
    bool blocked = false;
    for (size_t i = 0; i < orbits.size() && !blocked; ++i) blocked = orbits[i].non_residue(cm[i], n);
    if (!blocked) {
      nm.failures.push_back(n);
      if (stop_at_first) break;
    }
  }
  if (nm.failures.empty()) {
    nm.run_length = T;
  } else if (!stop_at_first) {
    const auto& f = nm.failures;
    uint64_t best = f.front() + (T - 1 - f.back());  // wrap-around gap
    for (size_t i = 1; i < f.size(); ++i) best = std::max(best, f[i] - f[i - 1] - 1);
    nm.run_length = best;
  }
  return nm;
}

inline bool better(const NearMiss& a, const std::optional<NearMiss>& b) {
  return !b || a.run_length > b->run_length;
}

}  // namespace detail

/// c with c + 2^n a non-residue mod prod(factors) for every n. Scans
/// c = 1..modulus unless an explicit candidate list is given.
inline OrbitResult qnr_orbit_set(const std::vector<uint64_t>& factors,
                                 const std::optional<std::vector<Natural>>& candidates = std::nullopt,
                                 unsigned threads = 1) {
  detail::check_factors(factors);
  OrbitResult out;
  out.factors = factors;
  out.modulus = 1;
  for (uint64_t p : factors) out.modulus *= arith::nat(p);
  if (!candidates && out.modulus > kMaxExhaustiveModulus)
    throw Error(ErrorKind::range_too_large, "modulus above 10^12 needs an explicit c list");
  std::vector<detail::FactorOrbit> orbits;
  for (uint64_t p : factors) orbits.emplace_back(p, !candidates);
  out.period = detail::period_of(orbits);

  const uint64_t count = candidates ? candidates->size() : arith::to_u64(out.modulus);
  auto candidate = [&](uint64_t i) { return candidates ? (*candidates)[i] : arith::nat(i + 1); };
  const auto chunks = split_range(0, count, std::max(1u, threads) * 4);
  std::vector<std::vector<Natural>> found(chunks.size());
  std::vector<std::optional<NearMiss>> best(chunks.size());
  for_each_chunk(chunks, threads, [&](const Chunk& ch) {
    for (uint64_t i = ch.begin; i < ch.end; ++i) {
      auto nm = detail::scan_c(candidate(i), orbits, out.period, false);
      if (nm.failures.empty()) found[ch.index].push_back(nm.c);
      if (detail::better(nm, best[ch.index])) best[ch.index] = std::move(nm);
    }
  });
  for (size_t i = 0; i < chunks.size(); ++i) {
    out.full_blockers.insert(out.full_blockers.end(), found[i].begin(), found[i].end());
    if (best[i] && detail::better(*best[i], out.best_near_miss)) out.best_near_miss = best[i];
  }
  return out;
}

/// All c in [1, p] whose longest cyclic non-residue run is at least min_run.
inline std::vector<NearMiss> near_miss_scan(uint64_t p, uint64_t min_run, unsigned threads = 1) {
  detail::check_factors({p});
  if (p > kMaxNearMissPrime) throw Error(ErrorKind::guard_exceeded, "near_miss_scan: p above 10^9");
  const std::vector<detail::FactorOrbit> orbits{detail::FactorOrbit(p, true)};
  const uint64_t T = orbits[0].ord;
  const auto chunks = split_range(1, p + 1, std::max(1u, threads) * 4);
  std::vector<std::vector<NearMiss>> found(chunks.size());
  for_each_chunk(chunks, threads, [&](const Chunk& ch) {
    const auto& o = orbits[0];
    std::vector<uint64_t> fails;
    for (uint64_t c = ch.begin; c < ch.end; ++c) {
      fails.clear();
      const uint64_t cm = c % p;
      for (uint64_t n = 0; n < T; ++n)
        if (!o.non_residue(cm, n)) fails.push_back(n);
      uint64_t run = T;
      if (!fails.empty()) {
        run = fails.front() + (T - 1 - fails.back());
        for (size_t i = 1; i < fails.size(); ++i) run = std::max(run, fails[i] - fails[i - 1] - 1);
      }
      if (run >= min_run) found[ch.index].push_back({arith::nat(c), run, fails});
    }
  });
  std::vector<NearMiss> out;
  for (auto& f : found) out.insert(out.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
  return out;
}

namespace detail {

using Bits = std::vector<uint64_t>;

inline void set_bit(Bits& b, uint64_t i) { b[i / 64] |= uint64_t(1) << (i % 64); }
inline bool get_bit(const Bits& b, uint64_t i) { return (b[i / 64] >> (i % 64)) & 1; }

inline bool superset(const Bits& big, const Bits& small) {
  for (size_t w = 0; w < small.size(); ++w)
    if (small[w] & ~big[w]) return false;
  return true;
}

/// Blocked exponents n mod ord for c mod p: c + 2^n a non-residue.
inline Bits blocked_mask(const FactorOrbit& o, uint64_t c) {
  Bits b((o.ord + 63) / 64, 0);
  for (uint64_t n = 0; n < o.ord; ++n)
    if (o.non_residue(c, n)) set_bit(b, n);
  return b;
}

inline constexpr uint64_t kMaxSmallCombos = 10'000'000;

inline OrbitResult blockers_for_subset(const std::vector<uint64_t>& primes) {
  std::vector<FactorOrbit> orbits;
  for (uint64_t p : primes) orbits.emplace_back(p, true);
  OrbitResult out;
  out.factors = primes;
  out.modulus = 1;
  for (uint64_t p : primes) out.modulus *= arith::nat(p);
  out.period = period_of(orbits);
  const uint64_t T = out.period;
  const size_t k = primes.size() - 1;  // the largest prime is matched by mask lookup

  uint64_t combos = 1;
  for (size_t i = 0; i < k; ++i) {
    combos *= primes[i];
    if (combos > kMaxSmallCombos) throw Error(ErrorKind::range_too_large, "too many residue combinations in subset");
  }

  // residues of the largest prime grouped by their blocked-exponent mask
  const auto& big = orbits[k];
  std::map<Bits, std::vector<uint64_t>> by_mask;
  for (uint64_t c = 0; c < big.p; ++c) by_mask[blocked_mask(big, c)].push_back(c);

  std::vector<std::vector<Bits>> small_masks(k);
  for (size_t i = 0; i < k; ++i)
    for (uint64_t c = 0; c < primes[i]; ++c) small_masks[i].push_back(blocked_mask(orbits[i], c));

  std::vector<uint64_t> idx(k, 0);
  std::vector<Natural> found;
  for (uint64_t combo = 0; combo < combos; ++combo) {
    // exponents in Z/T left unblocked by the small factors, projected mod ord_big
    Bits need((big.ord + 63) / 64, 0);
    for (uint64_t n = 0; n < T; ++n) {
      bool blocked = false;
      for (size_t i = 0; i < k && !blocked; ++i) blocked = get_bit(small_masks[i][idx[i]], n % orbits[i].ord);
      if (!blocked) set_bit(need, n % big.ord);
    }
    for (const auto& [mask, cs] : by_mask) {
      if (!superset(mask, need)) continue;
      for (uint64_t cb : cs) {
        std::vector<arith::Congruence> cong;
        for (size_t i = 0; i < k; ++i) cong.push_back({arith::nat(idx[i]), arith::nat(primes[i])});
        cong.push_back({arith::nat(cb), arith::nat(big.p)});
        found.push_back(arith::crt(cong).residue);
      }
    }
    for (size_t i = 0; i < k; ++i) {  // odometer
      if (++idx[i] < primes[i]) break;
      idx[i] = 0;
    }
  }
  std::sort(found.begin(), found.end());
  out.full_blockers = std::move(found);
  return out;
}

}  // namespace detail

/// For every subset of the pool with 1..max_factors primes (sorted, in
/// lexicographic order), the residues mod the subset product whose orbit is
/// blocked: per-factor blocked-exponent sets are combined by CRT.
inline std::vector<OrbitResult> search_composite_blockers(std::vector<uint64_t> pool, unsigned max_factors,
                                                          unsigned threads = 1) {
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  detail::check_factors(pool);
  if (max_factors < 1 || max_factors > 4) throw Error(ErrorKind::invalid_argument, "max_factors must be in 1..4");
  std::vector<std::vector<uint64_t>> subsets;
  std::vector<uint64_t> cur;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (!cur.empty()) subsets.push_back(cur);
    if (cur.size() == max_factors) return;
    for (size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::vector<OrbitResult> out(subsets.size());
  std::vector<Chunk> chunks;
  for (size_t i = 0; i < subsets.size(); ++i) chunks.push_back({i, i, i + 1});
  for_each_chunk(chunks, threads, [&](const Chunk& ch) { out[ch.index] = detail::blockers_for_subset(subsets[ch.index]); });
  return out;
}

}  // namespace coverlab::search
