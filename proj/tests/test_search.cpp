#include <gtest/gtest.h>

#include "coverlab/search.hpp"
#include "coverlab/tables.hpp"
#include "oracles.hpp"

using namespace coverlab;
using namespace coverlab::search;

namespace {

/// c is a full blocker modulo r = prod(factors) iff c + 2^n is a non-square for all n.
bool blocks(uint64_t c, const std::vector<uint64_t>& factors) {
  uint64_t r = 1;
  for (auto p : factors) r *= p;
  const uint64_t T = oracle::order(2, r);
  for (uint64_t n = 0; n < T; ++n)
    if (oracle::is_square_mod(c + oracle::powmod(2, n, r), r)) return false;
  return true;
}

}  // namespace

TEST(Orbit, SevenHasNoBlocker) {
  const auto r = qnr_orbit_set({7});
  EXPECT_TRUE(r.full_blockers.empty());
  EXPECT_EQ(r.period, 3u);
  for (uint64_t c = 1; c <= 7; ++c) EXPECT_FALSE(blocks(c, {7}));
}

TEST(Orbit, ExhaustiveMatchesOracle) {
  for (const auto& f : std::vector<std::vector<uint64_t>>{{3, 5}, {3, 5, 7}, {5, 13}, {3, 11}, {7, 31}, {3, 5, 17}}) {
    const auto res = qnr_orbit_set(f, std::nullopt, 3);
    uint64_t r = 1;
    for (auto p : f) r *= p;
    std::vector<Natural> expect;
    for (uint64_t c = 1; c <= r; ++c)
      if (blocks(c, f)) expect.push_back(c);
    EXPECT_EQ(res.full_blockers, expect);
    if (res.best_near_miss) EXPECT_LE(res.best_near_miss->run_length, res.period);
  }
}

TEST(Orbit, ConfirmsEveryAddcongRow) {
  for (const auto& e : tables::builtin_addcong_table()) {
    std::vector<uint64_t> f;
    for (const auto& p : e.prime_factors) f.push_back(arith::to_u64(p));
    const auto res = qnr_orbit_set(f, std::vector<Natural>{e.c});
    ASSERT_EQ(res.full_blockers.size(), 1u) << e.c.get_str();
    // second code path: the table checker
    EXPECT_FALSE(tables::first_square_in_orbit(e.c, e.prime_factors, res.period).has_value());
  }
}

TEST(Orbit, NonBlockerIsRejected) {
  const auto res = qnr_orbit_set({47, 178481}, std::vector<Natural>{504});
  EXPECT_TRUE(res.full_blockers.empty());
}

TEST(Orbit, Guards) {
  EXPECT_THROW(qnr_orbit_set({}), Error);
  EXPECT_THROW(qnr_orbit_set({1000003, 1000033}), Error);
}

TEST(NearMiss, Known27006) {
  const auto hits = near_miss_scan(524287, 18, 4);
  bool found = false;
  for (const auto& nm : hits) {
    EXPECT_GE(nm.run_length, 18u);
    EXPECT_LE(nm.run_length, 19u);
    if (nm.c == 27006) {
      found = true;
      EXPECT_EQ(nm.failures, std::vector<uint64_t>{0});
      EXPECT_EQ(nm.run_length, 18u);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(arith::jacobi(27007, 524287), 1);
  for (uint64_t n = 1; n <= 18; ++n) EXPECT_EQ(oracle::legendre(int64_t(27006 + (1ULL << n)), 524287), -1) << n;
}

TEST(NearMiss, SevenIsEmpty) { EXPECT_TRUE(near_miss_scan(7, 3).empty()); }

TEST(NearMiss, ThreadIndependent) {
  const auto a = near_miss_scan(8191, 9, 1), b = near_miss_scan(8191, 9, 8);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].c, b[i].c);
    EXPECT_EQ(a[i].run_length, b[i].run_length);
  }
}

TEST(Composite, RediscoversTableRows) {
  auto find = [](std::vector<uint64_t> pool, unsigned long target) {
    for (const auto& r : search_composite_blockers(pool, 4, 2))
      if (r.factors == pool) return std::binary_search(r.full_blockers.begin(), r.full_blockers.end(), Natural(target));
    return false;
  };
  EXPECT_TRUE(find({47, 178481}, 505));
  EXPECT_TRUE(find({5, 17, 257}, 37));
}

TEST(Composite, AgreesWithExhaustiveScan) {
  const auto res = search_composite_blockers({3, 5, 7, 13, 17}, 3, 4);
  for (const auto& r : res) {
    const auto ex = qnr_orbit_set(r.factors);
    EXPECT_EQ(r.full_blockers, ex.full_blockers);
    EXPECT_EQ(r.period, ex.period);
    for (const auto& c : r.full_blockers) EXPECT_TRUE(blocks(arith::to_u64(c), r.factors));
  }
  const auto single = search_composite_blockers({7}, 1);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_TRUE(single[0].full_blockers.empty());
}

TEST(Composite, SubsetOrderIsDeterministic) {
  const auto a = search_composite_blockers({17, 5, 3}, 2, 1);
  const auto b = search_composite_blockers({3, 5, 17}, 2, 8);
  ASSERT_EQ(a.size(), 6u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].factors, b[i].factors);
    EXPECT_EQ(a[i].full_blockers, b[i].full_blockers);
  }
  EXPECT_EQ(a[0].factors, (std::vector<uint64_t>{3}));
  EXPECT_EQ(a[1].factors, (std::vector<uint64_t>{3, 5}));
}
