#pragma once

// Finite systems of residue classes and exhaustive covering checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coverlab/arith.hpp"
#include "coverlab/error.hpp"
#include "coverlab/parallel.hpp"

namespace coverlab::cover {

/// The class a(n) = {x : x = a (mod n)}, stored with 0 <= a < n.
struct ResidueClass {
  uint64_t a = 0;
  uint64_t n = 1;

  bool contains(int64_t x) const {
    const int64_t r = x % static_cast<int64_t>(n);
    return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(n) : r) == a;
  }
  bool operator==(const ResidueClass&) const = default;
};

inline ResidueClass make_class(uint64_t a, uint64_t n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "residue class modulus must be >= 1");
  return {a % n, n};
}

struct CoverSystem {
  std::vector<ResidueClass> classes;
  bool operator==(const CoverSystem&) const = default;
};

/// Exhaustion works on a bitmap over [0, L); L above this is refused.
inline constexpr uint64_t kMaxCoverLcm = 1'000'000'000;

inline Natural lcm_of_moduli(const CoverSystem& cs) {
  Natural l = 1;
  for (const auto& c : cs.classes) l = arith::lcm(l, arith::nat(c.n));
  return l;
}

struct CoverVerdict {
  bool covered = false;
  uint64_t lcm = 0;
  std::optional<uint64_t> witness;  // least residue in [0, L) hit by no class
};

namespace detail {

inline uint64_t checked_lcm(const CoverSystem& cs) {
  if (cs.classes.empty()) throw Error(ErrorKind::invalid_argument, "cover system must be nonempty");
  const Natural l = lcm_of_moduli(cs);
  if (l > kMaxCoverLcm)
    throw Error(ErrorKind::lcm_too_large, "lcm of moduli " + arith::to_decimal(l) + " exceeds 10^9");
  return arith::to_u64(l);
}

/// Hit counts for residues in [lo, hi).
inline void count_hits(const CoverSystem& cs, uint64_t lo, uint64_t hi, uint32_t* out) {
  for (const auto& c : cs.classes) {
    // first x >= lo with x = a (mod n)
    uint64_t x = lo + (c.a + c.n - lo % c.n) % c.n;
    for (; x < hi; x += c.n) ++out[x - lo];
  }
}

}  // namespace detail

/// Per-residue number of classes containing it, over [0, L).
inline std::vector<uint32_t> covering_multiplicity(const CoverSystem& cs, unsigned threads = 1) {
  const uint64_t L = detail::checked_lcm(cs);
  std::vector<uint32_t> hits(L, 0);
  const auto chunks = split_range(0, L, std::max(1u, threads));
  for_each_chunk(chunks, threads, [&](const Chunk& ch) { detail::count_hits(cs, ch.begin, ch.end, hits.data() + ch.begin); });
  return hits;
}

inline CoverVerdict verify_cover(const CoverSystem& cs, unsigned threads = 1) {
  const uint64_t L = detail::checked_lcm(cs);
  std::vector<uint8_t> hit(L, 0);
  const auto chunks = split_range(0, L, std::max(1u, threads));
  std::vector<std::optional<uint64_t>> first_miss(chunks.size());
  for_each_chunk(chunks, threads, [&](const Chunk& ch) {
    for (const auto& c : cs.classes) {
      uint64_t x = ch.begin + (c.a + c.n - ch.begin % c.n) % c.n;
      for (; x < ch.end; x += c.n) hit[x] = 1;
    }
    for (uint64_t x = ch.begin; x < ch.end; ++x) {
      if (!hit[x]) {
        first_miss[ch.index] = x;
        break;
      }
    }
  });
  CoverVerdict v;
  v.lcm = L;
  for (const auto& m : first_miss) {
    if (m) {
      v.witness = m;
      break;
    }
  }
  v.covered = !v.witness.has_value();
  return v;
}

/// Lift a cover with odd moduli n' to moduli 2n': each class a'(n') becomes
/// a(2n') with a the least nonnegative odd integer = a' (mod n'); the class
/// 0(2) is appended last.
inline CoverSystem double_cover(const CoverSystem& odd_cover) {
  CoverSystem out;
  for (const auto& c : odd_cover.classes) {
    if (c.n % 2 == 0) throw Error(ErrorKind::even_modulus, "double_cover: modulus " + std::to_string(c.n) + " is even");
    const uint64_t a = (c.a % 2 == 1) ? c.a : c.a + c.n;
    out.classes.push_back({a, 2 * c.n});
  }
  out.classes.push_back({0, 2});
  return out;
}

inline CoverSystem translate(const CoverSystem& cs, uint64_t shift) {
  CoverSystem out;
  for (const auto& c : cs.classes) out.classes.push_back({(c.a + shift % c.n) % c.n, c.n});
  return out;
}

}  // namespace coverlab::cover
