#include <gtest/gtest.h>

#include "coverlab/construct.hpp"
#include "oracles.hpp"

using namespace coverlab;
using namespace coverlab::construct;
using arith::nat;

namespace {

const ForbiddenClassCertificate& thm2() {
  static const auto c = build_thm2();
  return c;
}
const ForbiddenClassCertificate& thm3() {
  static const auto c = build_thm3();
  return c;
}
const ForbiddenClassCertificate& corollary() {
  static const auto c = build_thm5_corollary();
  return c;
}

/// Residue of (alpha, M) modulo every component modulus, by direct reduction.
void expect_components(const ForbiddenClassCertificate& cert) {
  Natural prod = 1;
  for (const auto& r : cert.per_index) {
    if (const auto* x = std::get_if<SquareShiftAux>(&r.aux)) {
      EXPECT_EQ(arith::mod(cert.alpha, r.p), arith::mod_pow(2, r.a, r.p));
      EXPECT_EQ(arith::mod(cert.alpha, x->q), arith::mod(r.p * r.p, x->q));
      prod *= r.p * x->q;
    } else if (const auto* x = std::get_if<AddcongAux>(&r.aux)) {
      EXPECT_EQ(arith::mod(cert.alpha + arith::mod_pow(2, r.a, r.p), r.p), 0);
      Natural rr = 1;
      for (const auto& f : x->r_factors) rr *= f;
      EXPECT_EQ(arith::mod(cert.alpha, rr), arith::mod(x->c + r.p * r.p, rr));
      prod *= r.p * rr;
    } else if (const auto* x = std::get_if<SquareModulusAux>(&r.aux)) {
      const Natural p2 = r.p * r.p;
      EXPECT_EQ(arith::mod(cert.alpha, p2), arith::mod_pow(2, x->a_star, p2));
      prod *= p2;
      for (const auto& h : x->exceptions) {
        const Natural q2 = h.q * h.q;
        EXPECT_EQ(arith::mod(cert.alpha, q2), arith::mod(arith::mod_pow(2, h.h, q2) + h.q, q2));
        prod *= q2;
      }
    }
  }
  EXPECT_EQ(prod, cert.M);
  EXPECT_LT(cert.alpha, cert.M);
}

}  // namespace

TEST(PrimePlusCert, AuxiliaryPrimes) {
  std::vector<uint64_t> qs;
  for (const auto& r : thm2().per_index) qs.push_back(arith::to_u64(std::get<SquareShiftAux>(r.aux).q));
  // Smallest primes = 7 (mod 8) outside the cover primes, in order.
  std::vector<uint64_t> expect;
  std::set<uint64_t> ps;
  for (const auto& r : thm2().per_index)
    if (arith::fits_u64(r.p)) ps.insert(arith::to_u64(r.p));
  for (uint64_t q = 7; expect.size() < qs.size(); q += 8)
    if (oracle::is_prime(q) && !ps.count(q)) expect.push_back(q);
  EXPECT_EQ(qs, expect);
}

TEST(PrimePlusCert, Congruences) {
  EXPECT_EQ(arith::mod(thm2().alpha, 7), 1);
  expect_components(thm2());
}

TEST(PrimePlusCert, FullPeriodProof) {
  const auto rep = verify_thm2(thm2());
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.period, 62370u);
  EXPECT_EQ(rep.n_checked, 62370u);
  EXPECT_TRUE(rep.uncovered_n.empty());
  EXPECT_TRUE(rep.failed_n.empty());
}

TEST(PrimePlusCert, TwoPeriodsAgree) {
  VerifyOptions o;
  o.periods = 2;
  o.threads = 4;
  const auto rep = verify_thm2(thm2(), o);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.n_checked, 2 * 62370u);
}

TEST(PrimePlusCert, MinusTwoToTheNIsNonResidue) {
  for (uint64_t q : {7, 23, 31, 47, 71, 79})
    for (int64_t n = 0; n < 40; ++n) EXPECT_EQ(oracle::legendre(-int64_t(oracle::powmod(2, n, q)), q), -1);
}

TEST(PrimePlusCert, MutationsAreDetected) {
  auto c = thm2();
  c.alpha += 1;
  EXPECT_FALSE(verify_thm2(c).pass);
  c = thm2();
  mpz_combit(c.alpha.get_mpz_t(), 0);
  EXPECT_FALSE(verify_thm2(c).pass);
  c = thm2();
  c.per_index[5].a = (c.per_index[5].a + 2) % c.per_index[5].n;
  const auto rep = verify_thm2(c);
  EXPECT_FALSE(rep.pass);
}

TEST(PrimePlusCert, Deterministic) {
  const auto again = build_thm2();
  EXPECT_EQ(again.alpha, thm2().alpha);
  EXPECT_EQ(again.M, thm2().M);
}

TEST(PrimeMinusCert, Congruences) {
  const auto& r1 = thm3().per_index[0];
  const auto& x = std::get<AddcongAux>(r1.aux);
  EXPECT_EQ(x.c, 505);
  EXPECT_EQ(arith::mod(thm3().alpha, 8388607), 554);
  expect_components(thm3());
}

TEST(PrimeMinusCert, PrimeSupportOfModulus) {
  Natural M = thm3().M;
  for (const auto& r : thm3().per_index) {
    ASSERT_EQ(arith::mod(M, r.p), 0);
    M /= r.p;
    for (const auto& f : std::get<AddcongAux>(r.aux).r_factors) {
      ASSERT_EQ(arith::mod(M, f), 0);
      M /= f;
    }
  }
  EXPECT_EQ(M, 1);
}

TEST(PrimeMinusCert, FullPeriodProof) {
  const auto rep = verify_thm3(thm3());
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.uncovered_n.empty());
  EXPECT_TRUE(rep.failed_n.empty());
}

TEST(PrimeMinusCert, Row1SpotCheck) {
  const auto& x = std::get<AddcongAux>(thm3().per_index[0].aux);
  const Natural r1 = x.r_factors[0] * x.r_factors[1];
  for (uint64_t n = 0; n < 50; ++n) {
    const Natural lhs = arith::mod(thm3().alpha + arith::pow(2, n) - 49, r1);
    EXPECT_EQ(lhs, arith::mod(505 + arith::pow(2, n), r1));
  }
}

TEST(PrimeMinusCert, MutatedRowIsReported) {
  auto c = thm3();
  std::get<AddcongAux>(c.per_index[0].aux).c = 504;
  EXPECT_FALSE(verify_thm3(c).pass);
  c = thm3();
  mpz_combit(c.alpha.get_mpz_t(), 0);
  EXPECT_FALSE(verify_thm3(c).pass);
}

TEST(SquaresCert, OrderLift) {
  const auto l7 = order_lift(7, 6);
  EXPECT_EQ(l7.n_star, 3);
  EXPECT_TRUE(l7.lifts);
  EXPECT_EQ(oracle::order(2, 49), 21u);
  EXPECT_NE(oracle::powmod(2, 3, 49), 1u);
}

TEST(SquaresCert, WieferichSentinel) {
  const auto l = order_lift(1093, 1092);
  EXPECT_EQ(l.n_star, 364);
  EXPECT_FALSE(l.lifts);
  EXPECT_EQ(arith::mod_pow(2, 364, 1093 * 1093), 1);
  EXPECT_FALSE(order_lift(3511, 3510).lifts);
}

TEST(SquaresCert, EveryTablePrimeLifts) {
  for (const auto& r : corollary().per_index) {
    const auto& x = std::get<SquareModulusAux>(r.aux);
    const Natural p2 = r.p * r.p;
    EXPECT_NE(arith::mod_pow(2, x.n_star, p2), 1);
    EXPECT_EQ(arith::mult_order_dividing(2, p2, nat(x.n_star) * r.p), nat(x.n_star) * r.p);
  }
}

TEST(SquaresCert, AllOnesInstance) {
  Natural root = 1;
  for (const auto& r : corollary().per_index) {
    root *= r.p;
    EXPECT_TRUE(std::get<SquareModulusAux>(r.aux).exceptions.empty());
  }
  EXPECT_EQ(corollary().M, root * root);
  expect_components(corollary());
  const auto& x1 = std::get<SquareModulusAux>(corollary().per_index[0].aux);
  EXPECT_EQ(x1.n_star, 3u);
  // a1* = a1 (mod 3), = 1 (mod 7)
  EXPECT_EQ(arith::mod(x1.a_star, 3), corollary().per_index[0].a % 3);
  EXPECT_EQ(arith::mod(x1.a_star, 7), 1);
  EXPECT_LT(x1.a_star, 21);
  EXPECT_TRUE(verify_thm5(corollary()).pass);
}

TEST(SquaresCert, ExceptionalExponentUsesSmallestFreePrime) {
  const size_t k = tables::builtin_cover_table().size();
  std::vector<std::vector<uint64_t>> H(k);
  std::vector<Natural> e(k, Natural(1));
  e[0] = 0;
  H[0] = {0, 7};
  const auto cert = build_thm5(H, e);
  const auto& x = std::get<SquareModulusAux>(cert.per_index[0].aux);
  ASSERT_EQ(x.exceptions.size(), 2u);
  std::set<uint64_t> ps;
  for (const auto& r : cert.per_index)
    if (arith::fits_u64(r.p)) ps.insert(arith::to_u64(r.p));
  std::vector<uint64_t> expect;
  for (uint64_t q = 3; expect.size() < 2; q += 4)
    if (oracle::is_prime(q) && !ps.count(q)) expect.push_back(q);
  EXPECT_EQ(x.exceptions[0].q, expect[0]);
  EXPECT_EQ(x.exceptions[1].q, expect[1]);
  expect_components(cert);
  EXPECT_TRUE(verify_thm5(cert).pass);
}

TEST(SquaresCert, RejectsExponentOutsideResidueClass) {
  const size_t k = tables::builtin_cover_table().size();
  std::vector<std::vector<uint64_t>> H(k);
  H[0] = {2};
  EXPECT_THROW(build_thm5(H, std::vector<Natural>(k, Natural(1))), Error);
}

TEST(SquaresCert, TwoSquaresObstruction) {
  // Brute force over all 81 pairs for q = 3.
  bool hit = false;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) hit = hit || (a * a + b * b) % 9 == 3;
  EXPECT_FALSE(hit);
  EXPECT_FALSE(two_squares_congruence_solvable(3, 3));
  for (uint64_t q = 3; q <= 200; q += 4)
    if (oracle::is_prime(q)) EXPECT_FALSE(two_squares_congruence_solvable(q, q));
  EXPECT_TRUE(two_squares_congruence_solvable(5, 5));
}

TEST(SquaresCert, MutationIsDetected) {
  auto c = corollary();
  mpz_combit(c.alpha.get_mpz_t(), 0);
  EXPECT_FALSE(verify_thm5(c).pass);
}

TEST(Build, InvalidTableIsRefused) {
  BuildOptions o;
  o.cover_table[2].p += 4;
  try {
    build_thm2(o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::table_validation_failed);
  }
}
