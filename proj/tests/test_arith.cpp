#include <gtest/gtest.h>

#include <random>

#include "coverlab/arith.hpp"
#include "oracles.hpp"

using namespace coverlab;
using arith::nat;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::io;
}

}  // namespace

TEST(ModPow, Examples) {
  EXPECT_EQ(arith::mod_pow(2, 10, 1000), 24);
  EXPECT_EQ(arith::mod_pow(12345, 0, 97), 1);
  EXPECT_EQ(arith::mod_pow(2, 23, Natural(47) * 178481), 1);
  EXPECT_EQ(Natural(47) * 178481, 8388607);
}

TEST(ModPow, AgreesWithU64Kernel) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const uint64_t m = rng() % 1'000'000'007ULL + 2, b = rng(), e = rng() % 100000;
    EXPECT_EQ(arith::to_u64(arith::mod_pow(nat(b), nat(e), nat(m))), oracle::powmod(b, e, m));
    EXPECT_EQ(arith::pow_mod(b, e, m), oracle::powmod(b, e, m));
  }
}

TEST(MultOrder, Examples) {
  EXPECT_EQ(arith::mult_order(2, 7), 3);
  EXPECT_EQ(arith::mult_order(2, Natural(47) * 178481), 23);
  EXPECT_EQ(arith::mult_order(2, 49), 21);
}

TEST(MultOrder, MatchesIterationForAllSmallModuli) {
  for (uint64_t m = 2; m <= 2000; ++m)
    for (uint64_t a : {uint64_t{2}, uint64_t{3}, uint64_t{10}, m - 1}) {
      if (std::gcd(a, m) != 1) continue;
      const uint64_t t = arith::mult_order_u64(a, m);
      ASSERT_EQ(t, oracle::order(a, m)) << a << " mod " << m;
      EXPECT_EQ(oracle::powmod(a, t, m), 1 % m);
    }
}

TEST(MultOrder, MinimalOnDivisorsUpTo1e4) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 400; ++i) {
    const uint64_t m = rng() % 9999 + 2;
    const uint64_t a = rng() % m;
    if (std::gcd(a, m) != 1) continue;
    const uint64_t t = arith::mult_order_u64(a, m);
    EXPECT_EQ(oracle::powmod(a, t, m), 1 % m);
    for (uint64_t s = 1; s < t; ++s)
      if (t % s == 0) EXPECT_NE(oracle::powmod(a, s, m), 1u);
  }
}

TEST(MultOrder, RejectsNonCoprime) {
  EXPECT_EQ(kind_of([] { arith::mult_order(6, 9); }), ErrorKind::not_coprime);
}

TEST(Jacobi, Examples) {
  EXPECT_EQ(arith::jacobi(-1, 7), -1);
  EXPECT_EQ(arith::jacobi(2, 7), 1);
  EXPECT_EQ(arith::jacobi(27007, 524287), 1);
}

TEST(Jacobi, AgreesWithGmp) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5000; ++i) {
    Natural a = nat(rng()) - nat(rng());
    Natural n = nat(rng() | 1);
    EXPECT_EQ(arith::jacobi(a, n), mpz_jacobi(a.get_mpz_t(), n.get_mpz_t()));
  }
}

TEST(Jacobi, EulerCriterionAndMultiplicativity) {
  for (uint64_t p = 3; p < 1000; p += 2) {
    if (!oracle::is_prime(p)) continue;
    for (int64_t a = -20; a < 40; ++a) EXPECT_EQ(arith::jacobi(a, p), oracle::legendre(a, p)) << a << "|" << p;
  }
  for (int64_t a = 1; a < 30; ++a)
    for (int64_t b = 1; b < 30; ++b)
      for (uint64_t n = 1; n < 60; n += 2) {
        EXPECT_EQ(arith::jacobi(a * b, n), arith::jacobi(a, n) * arith::jacobi(b, n));
        for (uint64_t k = 1; k < 12; k += 2) EXPECT_EQ(arith::jacobi(a, n * k), arith::jacobi(a, n) * arith::jacobi(a, k));
      }
}

TEST(SquareModSquarefree, Examples) {
  const std::vector<Natural> f35{3, 5}, f_r1{47, 178481}, f7{7};
  EXPECT_TRUE(arith::is_square_mod_squarefree(4, f35));
  EXPECT_FALSE(arith::is_square_mod_squarefree(506, f_r1));
  EXPECT_TRUE(arith::is_square_mod_squarefree(2, f7));
}

TEST(SquareModSquarefree, BruteForce) {
  const std::vector<std::vector<uint64_t>> sets{{3}, {5, 7}, {3, 11, 13}, {17, 19}};
  for (const auto& s : sets) {
    uint64_t r = 1;
    for (auto p : s) r *= p;
    std::vector<Natural> big(s.begin(), s.end());
    for (uint64_t x = 0; x < 2 * r; ++x) {
      EXPECT_EQ(arith::is_square_mod_squarefree(x, big), oracle::is_square_mod(x, r));
      EXPECT_EQ(arith::is_square_mod_squarefree_u64(x, s), oracle::is_square_mod(x, r));
    }
  }
}

TEST(Crt, Examples) {
  auto c = arith::crt({{1, 3}, {2, 5}});
  EXPECT_EQ(c.residue, 7);
  EXPECT_EQ(c.modulus, 15);
  c = arith::crt({{0, 2}});
  EXPECT_EQ(c.residue, 0);
  EXPECT_EQ(c.modulus, 2);
}

TEST(Crt, ReReducesToEveryInput) {
  std::mt19937_64 rng(5);
  const uint64_t moduli[] = {7, 11, 13, 64, 81, 25, 1'000'003, 998'244'353};
  std::vector<arith::Congruence> cs;
  for (uint64_t m : moduli) cs.push_back({nat(rng() % m), nat(m)});
  const auto out = arith::crt(cs);
  Natural M = 1;
  for (const auto& c : cs) {
    EXPECT_EQ(arith::mod(out.residue, c.modulus), c.residue);
    M *= c.modulus;
  }
  EXPECT_EQ(out.modulus, M);
  EXPECT_LT(out.residue, M);
}

TEST(Crt, RejectsCommonFactor) {
  EXPECT_EQ(kind_of([] { arith::crt({{1, 6}, {2, 9}}); }), ErrorKind::non_coprime_moduli);
}

TEST(Primality, Examples) {
  EXPECT_TRUE(arith::is_prime(524287));
  EXPECT_FALSE(arith::is_prime(891));
  const auto big = arith::primality(nat("14973866897175265228063698945547"));
  EXPECT_TRUE(big.prime);
  EXPECT_FALSE(big.proven);
  EXPECT_TRUE(arith::primality(524287).proven);
}

TEST(Primality, AgreesWithTrialDivisionAndGmp) {
  for (uint64_t n = 0; n < 100000; ++n) ASSERT_EQ(arith::is_prime_u64(n), oracle::is_prime(n)) << n;
  std::mt19937_64 rng(13);
  for (int i = 0; i < 3000; ++i) {
    Natural n = nat(rng()) * nat(rng()) + nat(rng());
    if (i % 3 == 0) n = nat(rng());
    const bool gmp = mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
    EXPECT_EQ(arith::is_prime(n), gmp) << n.get_str();
  }
}

TEST(Primality, StrongPseudoprimesAreRejected) {
  // Strong pseudoprimes to several small bases, and Carmichael numbers.
  for (const char* s : {"3215031751", "2152302898747", "3474749660383", "341550071728321", "3825123056546413051",
                        "318665857834031151167461", "3317044064679887385961981", "561", "41041", "825265"})
    EXPECT_FALSE(arith::is_prime(nat(s))) << s;
}

TEST(Factorize, Examples) {
  auto f = arith::factorize(8388607);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].prime, 47);
  EXPECT_EQ(f.factors[1].prime, 178481);
  EXPECT_TRUE(arith::factorize(1).factors.empty());
  f = arith::factorize(65537);
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].prime, 65537);
}

TEST(Factorize, ExhaustiveProductCheck) {
  for (uint64_t n = 1; n <= 1'000'000; n += (n < 20000 ? 1 : 97)) {
    const auto f = arith::factorize(n);
    ASSERT_TRUE(f.complete());
    Natural v = 1, last = 0;
    for (const auto& pp : f.factors) {
      EXPECT_GT(pp.prime, last);
      EXPECT_TRUE(oracle::is_prime(arith::to_u64(pp.prime)));
      last = pp.prime;
      v *= arith::pow(pp.prime, pp.exponent);
    }
    ASSERT_EQ(v, n);
    EXPECT_EQ(f.value, n);
  }
}

TEST(Factorize, SemiprimesNeedRho) {
  const Natural p = nat("1000000007"), q = nat("998244353"), r = nat("2305843009213693951");
  const auto f = arith::factorize(p * q * r);
  ASSERT_TRUE(f.complete());
  ASSERT_EQ(f.factors.size(), 3u);
  EXPECT_EQ(f.factors[0].prime, q);
  EXPECT_EQ(f.factors[2].prime, r);
}

TEST(Factorize, BudgetLeavesCofactor) {
  arith::FactorBudget b;
  b.rho_iterations = 1;
  b.trial_bound = 10;
  const Natural n = nat("1000000007") * nat("998244353");
  const auto f = arith::factorize(n, b);
  EXPECT_FALSE(f.complete());
  Natural v = f.cofactor;
  for (const auto& pp : f.factors) v *= arith::pow(pp.prime, pp.exponent);
  EXPECT_EQ(v, n);
}

TEST(PerfectSquare, Examples) {
  EXPECT_EQ(arith::is_perfect_square(0), Natural(0));
  EXPECT_EQ(arith::is_perfect_square(25), Natural(5));
  EXPECT_FALSE(arith::is_perfect_square(26));
}

TEST(SumOfTwoSquares, ExamplesAndOracle) {
  EXPECT_TRUE(arith::is_sum_of_two_squares(25));
  EXPECT_FALSE(arith::is_sum_of_two_squares(21));
  EXPECT_TRUE(arith::is_sum_of_two_squares(2));
  std::vector<bool> hit(5001, false);
  for (uint64_t a = 0; a * a <= 5000; ++a)
    for (uint64_t b = 0; a * a + b * b <= 5000; ++b) hit[a * a + b * b] = true;
  for (uint64_t n = 0; n <= 5000; ++n) EXPECT_EQ(arith::is_sum_of_two_squares(n), bool(hit[n])) << n;
}

TEST(SquareRootsModPrimePower, Examples) {
  EXPECT_EQ(arith::square_roots_mod_prime_power(1, 3, 1), (std::vector<uint64_t>{1, 2}));
  EXPECT_EQ(arith::square_roots_mod_prime_power(0, 3, 2), (std::vector<uint64_t>{0, 3, 6}));
  EXPECT_TRUE(arith::square_roots_mod_prime_power(2, 3, 1).empty());
}

TEST(SquareRootsModPrimePower, BruteForceAndBound) {
  for (uint64_t p = 3; p < 100; p += 2) {
    if (!oracle::is_prime(p)) continue;
    uint64_t pk = 1;
    for (unsigned beta = 1; beta <= 3; ++beta) {
      pk *= p;
      if (pk > 40000) break;
      for (uint64_t a = 0; a < pk; ++a) {
        const auto roots = arith::square_roots_mod_prime_power(a, p, beta);
        ASSERT_EQ(roots, oracle::sqrt_mod(a, pk)) << a << " mod " << p << "^" << beta;
        const unsigned nu = a == 0 ? beta : arith::valuation_u64(a, p);
        uint64_t bound = 2;
        for (unsigned i = 0; i < nu / 2; ++i) bound *= p;
        EXPECT_LE(roots.size(), bound);
      }
    }
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(arith::valuation(12, 2), 2u);
  EXPECT_EQ(arith::valuation(7, 3), 0u);
  EXPECT_EQ(arith::valuation(243, 3), 5u);
  EXPECT_EQ(kind_of([] { arith::valuation(0, 3); }), ErrorKind::invalid_argument);
}
