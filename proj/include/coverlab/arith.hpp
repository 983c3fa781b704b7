#pragma once

// Exact integer and modular arithmetic. Arbitrary-precision values are GMP
// integers; hot paths that provably fit in 64 bits use the *_u64 kernels.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coverlab/error.hpp"

namespace coverlab {

using Natural = mpz_class;

namespace arith {

inline Natural nat(std::string_view decimal) { return Natural(std::string(decimal), 10); }

inline Natural nat(uint64_t v) {
  Natural r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

inline std::string to_decimal(const Natural& n) { return n.get_str(10); }

inline bool fits_u64(const Natural& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n)) throw Error(ErrorKind::invalid_argument, "value does not fit in 64 bits: " + to_decimal(n));
  uint64_t v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, n.get_mpz_t());
  return v;
}

/// Least nonnegative residue, also for negative inputs.
inline Natural mod(const Natural& a, const Natural& m) {
  Natural r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Natural gcd(const Natural& a, const Natural& b) {
  Natural g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Natural lcm(const Natural& a, const Natural& b) {
  Natural l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Natural pow(const Natural& base, unsigned long exp) {
  Natural r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

// ---------------------------------------------------------------------------
// 64-bit kernels

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m, or 0 when gcd(a, m) != 1.
inline uint64_t inv_mod(uint64_t a, uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) return 0;
  if (t < 0) t += m;
  return static_cast<uint64_t>(t);
}

inline Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus) {
  if (modulus < 1) throw Error(ErrorKind::invalid_argument, "mod_pow: modulus must be >= 1");
  Natural r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// Jacobi symbol

inline int jacobi_u64(uint64_t a, uint64_t n) {
  if ((n & 1) == 0) throw Error(ErrorKind::even_modulus, "jacobi: modulus must be odd");
  a %= n;
  int result = 1;
  while (a != 0) {
    int twos = std::countr_zero(a);
    a >>= twos;
    if ((twos & 1) && ((n & 7) == 3 || (n & 7) == 5)) result = -result;
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// Jacobi symbol (a|n) for odd n >= 1; a may be negative and is reduced mod n.
inline int jacobi(const Natural& a_in, const Natural& n_in) {
  if (n_in < 1 || mpz_even_p(n_in.get_mpz_t()))
    throw Error(ErrorKind::even_modulus, "jacobi: modulus must be odd and positive");
  if (fits_u64(n_in)) return jacobi_u64(to_u64(mod(a_in, n_in)), to_u64(n_in));
  Natural a = mod(a_in, n_in);
  Natural n = n_in;
  int result = 1;
  while (a != 0) {
    mp_bitcnt_t twos = mpz_scan1(a.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), twos);
    unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
    if ((twos & 1) && (n8 == 3 || n8 == 5)) result = -result;
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && (n8 & 3) == 3) result = -result;
    std::swap(a, n);
    a = mod(a, n);
  }
  return n == 1 ? result : 0;
}

// ---------------------------------------------------------------------------
// Primality

/// Bases for the Miller-Rabin stage. Deterministic for n < 3.3e24, so every
/// 64-bit verdict is exact.
inline constexpr std::array<unsigned, 12> kMillerRabinBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline bool strong_probable_prime_u64(uint64_t n, uint64_t base) {
  uint64_t d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  uint64_t x = pow_mod(base % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (unsigned p : kMillerRabinBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (unsigned base : kMillerRabinBases)
    if (!strong_probable_prime_u64(n, base)) return false;
  return true;
}

inline bool strong_probable_prime(const Natural& n, unsigned base) {
  Natural d = n - 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Natural x = mod_pow(Natural(base), d, n);
  const Natural n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = mod(x * x, n);
    if (x == n1) return true;
  }
  return false;
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice
/// (first D in 5, -7, 9, -11, ... with (D|n) = -1; P = 1, Q = (1 - D) / 4).
inline bool strong_lucas_probable_prime(const Natural& n) {
  if (n == 2) return true;
  if (n < 2 || mpz_even_p(n.get_mpz_t())) return false;
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long D = 5;
  for (;;) {
    int j = jacobi(Natural(D), n);
    if (j == -1) break;
    if (j == 0 && abs(Natural(D)) != n) return false;
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  const Natural P = 1;
  const Natural Q = Natural((1 - D) / 4);
  const Natural Dn = Natural(D);

  Natural d = n + 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  auto half = [&n](Natural v) {
    v = mod(v, n);
    if (mpz_odd_p(v.get_mpz_t())) v += n;
    mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
    return v;
  };

  Natural U = 1, V = P, Qk = mod(Q, n);
  for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
    U = mod(U * V, n);
    V = mod(V * V - 2 * Qk, n);
    Qk = mod(Qk * Qk, n);
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      Natural U2 = half(P * U + V);
      Natural V2 = half(Dn * U + P * V);
      U = U2;
      V = V2;
      Qk = mod(Qk * Q, n);
    }
  }
  if (U == 0 || V == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    V = mod(V * V - 2 * Qk, n);
    Qk = mod(Qk * Qk, n);
    if (V == 0) return true;
  }
  return false;
}

struct Primality {
  bool prime = false;
  /// True when the verdict is a proof: composite verdicts, and every verdict
  /// below 2^64. Prime verdicts above 2^64 are probable primes.
  bool proven = true;
};

inline Primality primality(const Natural& n) {
  if (fits_u64(n)) return {is_prime_u64(to_u64(n)), true};
  for (unsigned p : kMillerRabinBases)
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return {false, true};
  for (unsigned base : kMillerRabinBases)
    if (!strong_probable_prime(n, base)) return {false, true};
  if (!strong_lucas_probable_prime(n)) return {false, true};
  return {true, false};
}

inline bool is_prime(const Natural& n) { return primality(n).prime; }

// ---------------------------------------------------------------------------
// Factorization

struct FactorBudget {
  uint64_t trial_bound = 1u << 16;
  /// Cap on Pollard-Brent iterations spent on each composite piece.
  uint64_t rho_iterations = 1u << 24;
  uint64_t seed = 0x5eedc0de12345678ULL;
};

struct PrimePower {
  Natural prime;
  unsigned exponent = 0;
};

struct Factorization {
  std::vector<PrimePower> factors;  // strictly increasing primes
  Natural value = 1;
  Natural cofactor = 1;             // unfactored part; 1 when complete
  bool probable = false;            // some factor > 2^64 is only a probable prime

  bool complete() const { return cofactor == 1; }
};

namespace detail {

inline std::vector<uint32_t> small_primes(uint64_t bound) {
  std::vector<uint32_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

inline const std::vector<uint32_t>& trial_primes(uint64_t bound) {
  static const std::vector<uint32_t> primes = small_primes(1u << 20);
  if (bound > (1u << 20)) throw Error(ErrorKind::invalid_argument, "trial bound above 2^20");
  return primes;
}

/// Pollard-Brent on a 64-bit composite. Returns a nontrivial divisor or 0.
inline uint64_t brent_u64(uint64_t n, std::mt19937_64& rng, uint64_t budget) {
  if ((n & 1) == 0) return 2;
  uint64_t spent = 0;
  while (spent < budget) {
    const uint64_t c = rng() % (n - 1) + 1;
    uint64_t y = rng() % n, x = 0, ys = 0, q = 1, g = 1;
    const uint64_t m = 128;
    auto f = [&](uint64_t v) {
      return static_cast<uint64_t>((static_cast<unsigned __int128>(mul_mod(v, v, n)) + c) % n);
    };
    for (uint64_t r = 1; g == 1 && spent < budget; r <<= 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      for (uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        const uint64_t lim = std::min(m, r - k);
        for (uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        spent += lim;
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

inline Natural brent_big(const Natural& n, std::mt19937_64& rng, uint64_t budget) {
  uint64_t spent = 0;
  while (spent < budget) {
    const Natural c = mod(nat(rng()), n - 1) + 1;
    Natural y = mod(nat(rng()), n), x, ys, q = 1, g = 1;
    const uint64_t m = 128;
    auto f = [&](const Natural& v) { return mod(v * v + c, n); };
    for (uint64_t r = 1; g == 1 && spent < budget; r <<= 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      for (uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        const uint64_t lim = std::min(m, r - k);
        for (uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mod(q * abs(x - y), n);
        }
        g = gcd(q, n);
        spent += lim;
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return 0;
}

}  // namespace detail

/// Trial division to budget.trial_bound, then seeded Pollard-Brent. A piece
/// that resists the iteration cap is returned as the unfactored cofactor.
inline Factorization factorize(const Natural& n, const FactorBudget& budget = {}) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "factorize: n must be >= 1");
  Factorization out;
  out.value = n;
  std::map<Natural, unsigned> found;
  Natural rest = n;
  for (uint32_t p : detail::trial_primes(budget.trial_bound)) {
    if (p > budget.trial_bound) break;
    if (Natural(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++found[Natural(p)];
    }
  }
  std::mt19937_64 rng(budget.seed);
  std::vector<Natural> stack;
  if (rest > 1) stack.push_back(rest);
  while (!stack.empty()) {
    Natural piece = stack.back();
    stack.pop_back();
    if (piece == 1) continue;
    Primality pr = primality(piece);
    if (pr.prime) {
      ++found[piece];
      if (!pr.proven) out.probable = true;
      continue;
    }
    Natural root;
    if (mpz_perfect_square_p(piece.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), piece.get_mpz_t());
      stack.push_back(root);
      stack.push_back(root);
      continue;
    }
    Natural d;
    if (fits_u64(piece)) {
      d = nat(detail::brent_u64(to_u64(piece), rng, budget.rho_iterations));
    } else {
      d = detail::brent_big(piece, rng, budget.rho_iterations);
    }
    if (d == 0) {
      out.cofactor *= piece;
      continue;
    }
    stack.push_back(d);
    stack.push_back(piece / d);
  }
  for (auto& [p, e] : found) out.factors.push_back({p, e});
  return out;
}

inline std::vector<std::pair<uint64_t, unsigned>> factorize_u64(uint64_t n) {
  std::vector<std::pair<uint64_t, unsigned>> out;
  FactorBudget budget;
  budget.rho_iterations = ~uint64_t{0};
  for (const auto& pp : factorize(nat(n), budget).factors) out.emplace_back(to_u64(pp.prime), pp.exponent);
  return out;
}

// ---------------------------------------------------------------------------
// Multiplicative order

struct OrderOptions {
  FactorBudget budget;
  uint64_t iteration_cap = 10'000'000;
};

namespace detail {

/// Strip prime factors from a known exponent e (a^e = 1 mod m) down to the order.
inline Natural strip_to_order(const Natural& a, const Natural& m, Natural e,
                              const std::map<Natural, unsigned>& e_factors) {
  for (const auto& [r, k] : e_factors) {
    for (unsigned i = 0; i < k; ++i) {
      Natural t = e / r;
      if (mod_pow(a, t, m) != 1) break;
      e = t;
    }
  }
  return e;
}

inline Natural order_by_iteration(const Natural& a, const Natural& m, uint64_t cap) {
  Natural x = mod(a, m);
  if (m == 1) return 1;
  uint64_t t = 1;
  while (x != 1) {
    if (++t > cap) throw Error(ErrorKind::order_cap_exceeded, "order search exceeded iteration cap");
    x = mod(x * a, m);
  }
  return nat(t);
}

}  // namespace detail

/// Least t >= 1 with a^t = 1 (mod m), given a known multiple L of the order.
/// Only L needs factoring, which is how orders of huge table primes are found.
inline Natural mult_order_dividing(const Natural& a, const Natural& m, const Natural& multiple,
                                   const FactorBudget& budget = {}) {
  if (gcd(a, m) != 1) throw Error(ErrorKind::not_coprime, "mult_order: gcd(a, modulus) > 1");
  if (mod_pow(a, multiple, m) != (m == 1 ? 0 : 1))
    throw Error(ErrorKind::invalid_argument, "mult_order: supplied exponent is not a multiple of the order");
  Factorization f = factorize(multiple, budget);
  if (!f.complete()) throw Error(ErrorKind::factor_budget_exceeded, "mult_order: cannot factor supplied multiple");
  std::map<Natural, unsigned> fm;
  for (const auto& pp : f.factors) fm[pp.prime] = pp.exponent;
  return detail::strip_to_order(a, m, multiple, fm);
}

/// Multiplicative order via the factored group exponent (Carmichael lambda).
/// Falls back to capped iteration when a factorization stays partial.
inline Natural mult_order(const Natural& a, const Natural& m, const OrderOptions& opt = {}) {
  if (m < 1) throw Error(ErrorKind::invalid_argument, "mult_order: modulus must be >= 1");
  if (gcd(a, m) != 1) throw Error(ErrorKind::not_coprime, "mult_order: gcd(a, modulus) > 1");
  if (m == 1) return 1;
  Factorization fm = factorize(m, opt.budget);
  if (!fm.complete()) return detail::order_by_iteration(a, m, opt.iteration_cap);
  std::map<Natural, unsigned> exponent_factors;
  auto merge = [&](const Natural& p, unsigned k) {
    unsigned& slot = exponent_factors[p];
    slot = std::max(slot, k);
  };
  for (const auto& pp : fm.factors) {
    if (pp.prime == 2) {
      unsigned k = pp.exponent >= 3 ? pp.exponent - 2 : pp.exponent - 1;
      if (k > 0) merge(2, k);
      continue;
    }
    if (pp.exponent > 1) merge(pp.prime, pp.exponent - 1);
    Factorization fp = factorize(pp.prime - 1, opt.budget);
    if (!fp.complete()) return detail::order_by_iteration(a, m, opt.iteration_cap);
    for (const auto& q : fp.factors) merge(q.prime, q.exponent);
  }
  Natural e = 1;
  for (const auto& [p, k] : exponent_factors) e *= pow(p, k);
  return detail::strip_to_order(a, m, e, exponent_factors);
}

inline uint64_t mult_order_u64(uint64_t a, uint64_t m) { return to_u64(mult_order(nat(a), nat(m))); }

// ---------------------------------------------------------------------------
// Chinese remainder theorem

struct Congruence {
  Natural residue;
  Natural modulus;
};

/// Combine pairwise-coprime congruences into (alpha, M), 0 <= alpha < M.
inline Congruence crt(std::span<const Congruence> congruences) {
  for (size_t i = 0; i < congruences.size(); ++i) {
    if (congruences[i].modulus < 1) throw Error(ErrorKind::invalid_argument, "crt: modulus must be >= 1");
    for (size_t j = 0; j < i; ++j) {
      if (gcd(congruences[i].modulus, congruences[j].modulus) != 1)
        throw Error(ErrorKind::non_coprime_moduli,
                    "crt: moduli #" + std::to_string(j) + " (" + to_decimal(congruences[j].modulus) + ") and #" +
                        std::to_string(i) + " (" + to_decimal(congruences[i].modulus) + ") share a factor");
    }
  }
  Congruence acc{0, 1};
  for (const auto& c : congruences) {
    const Natural r = mod(c.residue, c.modulus);
    Natural inv;
    mpz_invert(inv.get_mpz_t(), mod(acc.modulus, c.modulus).get_mpz_t(), c.modulus.get_mpz_t());
    if (c.modulus == 1) inv = 0;
    const Natural t = mod((r - acc.residue) * inv, c.modulus);
    acc.residue += acc.modulus * t;
    acc.modulus *= c.modulus;
  }
  return acc;
}

inline Congruence crt(std::initializer_list<Congruence> congruences) {
  return crt(std::span<const Congruence>(congruences.begin(), congruences.size()));
}

// ---------------------------------------------------------------------------
// Squares

/// x is a square modulo the squarefree product of the given odd primes.
inline bool is_square_mod_squarefree(const Natural& x, std::span<const Natural> primes) {
  for (const auto& p : primes)
    if (jacobi(x, p) == -1) return false;
  return true;
}

inline bool is_square_mod_squarefree_u64(uint64_t x, std::span<const uint64_t> primes) {
  for (uint64_t p : primes)
    if (jacobi_u64(x % p, p) == -1) return false;
  return true;
}

inline std::optional<Natural> is_perfect_square(const Natural& n) {
  if (n < 0) return std::nullopt;
  Natural root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  if (rem != 0) return std::nullopt;
  return root;
}

inline bool is_sum_of_two_squares(const Natural& n, const FactorBudget& budget = {}) {
  if (n == 0) return true;
  Factorization f = factorize(n, budget);
  if (!f.complete())
    throw Error(ErrorKind::factor_budget_exceeded, "is_sum_of_two_squares: cannot factor " + to_decimal(n));
  for (const auto& pp : f.factors)
    if (mpz_fdiv_ui(pp.prime.get_mpz_t(), 4) == 3 && (pp.exponent & 1)) return false;
  return true;
}

inline unsigned valuation(const Natural& a, const Natural& p) {
  if (a < 1) throw Error(ErrorKind::invalid_argument, "valuation: a must be >= 1");
  if (p < 2) throw Error(ErrorKind::invalid_argument, "valuation: p must be >= 2");
  unsigned k = 0;
  Natural x = a;
  while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    x /= p;
    ++k;
  }
  return k;
}

inline unsigned valuation_u64(uint64_t a, uint64_t p) {
  unsigned k = 0;
  while (a != 0 && a % p == 0) {
    a /= p;
    ++k;
  }
  return k;
}

/// Tonelli-Shanks. Requires a to be a nonzero quadratic residue mod odd prime p.
inline uint64_t sqrt_mod_prime(uint64_t a, uint64_t p) {
  a %= p;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  uint64_t q = p - 1;
  int s = std::countr_zero(q);
  q >>= s;
  uint64_t z = 2;
  while (jacobi_u64(z, p) != -1) ++z;
  uint64_t c = pow_mod(z, q, p);
  uint64_t x = pow_mod(a, (q + 1) / 2, p);
  uint64_t t = pow_mod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    for (uint64_t tt = t; tt != 1; tt = mul_mod(tt, tt, p)) ++i;
    uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    x = mul_mod(x, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return x;
}

/// All x in [0, p^beta) with x^2 = a (mod p^beta), sorted ascending.
inline std::vector<uint64_t> square_roots_mod_prime_power(uint64_t a, uint64_t p, unsigned beta) {
  if (p < 3 || p % 2 == 0) throw Error(ErrorKind::invalid_argument, "square roots: p must be an odd prime");
  if (beta < 1) throw Error(ErrorKind::invalid_argument, "square roots: beta must be >= 1");
  uint64_t pk = 1;
  std::vector<uint64_t> pw{1};
  for (unsigned i = 0; i < beta; ++i) {
    if (pk > (uint64_t{1} << 62) / p) throw Error(ErrorKind::guard_exceeded, "square roots: p^beta exceeds 2^62");
    pk *= p;
    pw.push_back(pk);
  }
  if (a >= pk) throw Error(ErrorKind::invalid_argument, "square roots: a must be < p^beta");
  std::vector<uint64_t> roots;
  if (a == 0) {
    const uint64_t step = pw[(beta + 1) / 2];
    for (uint64_t x = 0; x < pk; x += step) roots.push_back(x);
    return roots;
  }
  const unsigned v = valuation_u64(a, p);
  if (v % 2 == 1) return roots;
  const uint64_t unit = a / pw[v];
  const unsigned w = beta - v;  // precision at which the unit part is pinned down
  if (jacobi_u64(unit % p, p) != 1) return roots;
  // Hensel-lift a root of unit mod p up to p^w.
  uint64_t y = sqrt_mod_prime(unit % p, p);
  for (unsigned j = 1; j < w; ++j) {
    const uint64_t mj = pw[j + 1];
    const uint64_t target = unit % mj;
    const uint64_t y2 = mul_mod(y, y, mj);
    const uint64_t diff = (y2 + mj - target) % mj;
    const uint64_t inv2y = inv_mod((2 * y) % mj, mj);
    y = (y + mj - mul_mod(diff, inv2y, mj)) % mj;
  }
  const uint64_t base = pw[v / 2];
  const uint64_t pw_w = pw[w];
  const uint64_t lifts = pw[v / 2];
  for (uint64_t y0 : {y, pw_w - y}) {
    for (uint64_t t = 0; t < lifts; ++t) {
      const uint64_t yy = y0 + pw_w * t;  // < p^(beta - v/2)
      roots.push_back(mul_mod(base, yy, pk));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Number of distinct prime factors.
inline unsigned omega_u64(uint64_t n) { return static_cast<unsigned>(factorize_u64(n).size()); }

}  // namespace arith
}  // namespace coverlab
