#pragma once

// Circle-method quantities for x1^2 + x4^2 = x2^2 + x3^2 + m: Gauss sums, the
// local sums A(m,q,d), truncated singular series, local factors, the weight
// integral, and exact lattice counts to compare the main term against.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "coverlab/arith.hpp"
#include "coverlab/error.hpp"
#include "coverlab/parallel.hpp"
#include "coverlab/sieve.hpp"

namespace coverlab::singular {

using Complex = std::complex<double>;

struct DTuple {
  std::array<uint64_t, 4> d{1, 1, 1, 1};

  uint64_t product() const { return d[0] * d[1] * d[2] * d[3]; }
  bool operator==(const DTuple&) const = default;
};

inline bool is_squarefree(uint64_t n) {
  if (n == 0) return false;
  for (const auto& [p, e] : arith::factorize_u64(n))
    if (e > 1) return false;
  return true;
}

inline DTuple make_dtuple(uint64_t d1, uint64_t d2, uint64_t d3, uint64_t d4) {
  DTuple t{{d1, d2, d3, d4}};
  for (auto x : t.d)
    if (!is_squarefree(x)) throw Error(ErrorKind::invalid_argument, "d entries must be squarefree and positive");
  return t;
}

namespace detail {

/// e(j/q) for j in [0, q).
inline std::vector<Complex> roots_of_unity(uint64_t q) {
  std::vector<Complex> w(q);
  for (uint64_t j = 0; j < q; ++j) w[j] = std::polar(1.0, 2.0 * std::numbers::pi * double(j) / double(q));
  return w;
}

inline uint64_t reduce(int64_t a, uint64_t q) {
  const int64_t r = a % static_cast<int64_t>(q);
  return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(q) : r);
}

}  // namespace detail

/// S(q, a) = sum_{x=1}^{q} e(a x^2 / q) by direct summation.
inline Complex gauss_sum(uint64_t q, int64_t a) {
  if (q == 0) throw Error(ErrorKind::invalid_argument, "gauss_sum: q must be >= 1");
  const uint64_t ar = detail::reduce(a, q);
  Complex s = 0;
  for (uint64_t x = 1; x <= q; ++x) {
    const uint64_t k = static_cast<uint64_t>((unsigned __int128)ar * x % q * x % q);
    s += std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(q));
  }
  return s;
}

/// S(q, k) for every k in [0, q), from the square-count distribution.
inline std::vector<Complex> gauss_sum_table(uint64_t q) {
  std::vector<uint32_t> count(q, 0);
  for (uint64_t x = 0; x < q; ++x) ++count[x * x % q];
  const auto w = detail::roots_of_unity(q);
  std::vector<Complex> S(q, 0);
  for (uint64_t r = 0; r < q; ++r) {
    if (!count[r]) continue;
    for (uint64_t k = 0; k < q; ++k) S[k] += double(count[r]) * w[k * r % q];
  }
  return S;
}

namespace detail {

inline double local_sum_from_table(const std::vector<Complex>& S, uint64_t m, uint64_t q, const DTuple& d) {
  const auto w = roots_of_unity(q);
  const uint64_t k1 = d.d[0] % q * (d.d[0] % q) % q;
  const uint64_t k2 = d.d[1] % q * (d.d[1] % q) % q;
  const uint64_t k3 = d.d[2] % q * (d.d[2] % q) % q;
  const uint64_t k4 = d.d[3] % q * (d.d[3] % q) % q;
  const uint64_t mr = m % q;
  Complex acc = 0;
  for (uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const uint64_t ar = a % q;
    const Complex term = w[(q - ar * mr % q) % q] * S[ar * k1 % q] * S[ar * k4 % q] * S[(q - ar * k2 % q) % q] *
                         S[(q - ar * k3 % q) % q];
    acc += term;
  }
  const double q4 = std::pow(double(q), 4);
  acc /= q4;
  if (std::abs(acc.imag()) > 1e-9 * std::abs(acc.real()) + 1e-12)
    throw Error(ErrorKind::imaginary_residual,
                "A(m,q,d) imaginary part " + std::to_string(acc.imag()) + " at q = " + std::to_string(q));
  return acc.real();
}

}  // namespace detail

/// A(m,q,d) = q^-4 sum_{(a,q)=1} e(-am/q) S(q,a d1^2) S(q,a d4^2) S(q,-a d2^2) S(q,-a d3^2).
inline double local_sum_A(uint64_t m, uint64_t q, const DTuple& d) {
  if (q == 0) throw Error(ErrorKind::invalid_argument, "local_sum_A: q must be >= 1");
  return detail::local_sum_from_table(gauss_sum_table(q), m, q, d);
}

struct SingularEvaluation {
  uint64_t m = 0;
  DTuple d;
  uint64_t q_max = 0;
  std::vector<double> partial_sums;  // partial_sums[q-1] = sum_{q' <= q} A(m,q',d)
  double value = 0;
  bool stabilized = false;
  double tail_spread = 0;  // max |partial(q) - value| over q in [q_max/10, q_max]
};

inline constexpr double kStabilizationTolerance = 1e-3;

/// Truncated singular series. A is multiplicative in q, so only prime-power
/// terms are summed directly; the Gauss-sum tables for those are built once.
class SeriesEngine {
 public:
  explicit SeriesEngine(uint64_t q_max, double tolerance = kStabilizationTolerance)
      : q_max_(q_max), tol_(tolerance), spf_(sieve::smallest_prime_factor(static_cast<uint32_t>(std::max<uint64_t>(q_max, 2)))) {
    if (q_max < 1) throw Error(ErrorKind::invalid_argument, "q_max must be >= 1");
    if (q_max > 100000) throw Error(ErrorKind::guard_exceeded, "q_max above 10^5");
    for (uint64_t q = 2; q <= q_max; ++q)
      if (is_prime_power(q)) tables_.emplace(q, gauss_sum_table(q));
  }

  uint64_t q_max() const { return q_max_; }

  SingularEvaluation evaluate(uint64_t m, const DTuple& d) const {
    SingularEvaluation ev;
    ev.m = m;
    ev.d = d;
    ev.q_max = q_max_;
    std::vector<double> A(q_max_ + 1, 0.0);
    A[1] = 1.0;
    for (const auto& [q, S] : tables_) A[q] = detail::local_sum_from_table(S, m, q, d);
    for (uint64_t q = 2; q <= q_max_; ++q) {
      uint64_t p = spf_[q], pk = 1, rest = q;
      while (rest % p == 0) rest /= p, pk *= p;
      if (rest != 1) A[q] = A[rest] * A[pk];
    }
    double s = 0;
    for (uint64_t q = 1; q <= q_max_; ++q) {
      s += A[q];
      ev.partial_sums.push_back(s);
    }
    ev.value = s;
    const uint64_t lo = std::max<uint64_t>(1, q_max_ / 10);
    for (uint64_t q = lo; q <= q_max_; ++q) ev.tail_spread = std::max(ev.tail_spread, std::abs(ev.partial_sums[q - 1] - s));
    ev.stabilized = ev.tail_spread < tol_;
    return ev;
  }

 private:
  bool is_prime_power(uint64_t q) const {
    const uint64_t p = spf_[q];
    while (q % p == 0) q /= p;
    return q == 1;
  }

  uint64_t q_max_;
  double tol_;
  std::vector<uint32_t> spf_;
  std::map<uint64_t, std::vector<Complex>> tables_;
};

inline SingularEvaluation singular_series(uint64_t m, const DTuple& d, uint64_t q_max) {
  return SeriesEngine(q_max).evaluate(m, d);
}

/// Exact local factor omega_{u,v}(p) for odd p.
inline mpq_class omega_local(uint64_t p, unsigned u, unsigned v, uint64_t m) {
  if (p < 3 || !arith::is_prime_u64(p)) throw Error(ErrorKind::invalid_argument, "omega_local: p must be an odd prime");
  if (u == 0 && v == 0) return 1;
  const bool supported = (u == 1 && v == 0) || (u == 0 && v == 1) || (u == 1 && v == 1);
  if (!supported)
    throw Error(ErrorKind::unsupported, "omega_local: (u,v) = (" + std::to_string(u) + "," + std::to_string(v) + ")");
  if (m == 0) throw Error(ErrorKind::invalid_argument, "omega_local: m must be >= 1");
  const mpq_class P(arith::nat(p));
  const unsigned beta = arith::valuation_u64(m, p);
  if (beta == 0) {
    if (u == 1 && v == 1) return P / (P + 1);
    const int eta = arith::jacobi(u == 1 ? -arith::nat(m) : arith::nat(m), arith::nat(p));
    mpq_class r = eta == 1 ? mpq_class(P / (P - 1)) : mpq_class(P / (P + 1));
    r.canonicalize();
    return r;
  }
  auto inv_pow = [&](long e) {  // p^{-e}
    mpq_class r = 1;
    const mpq_class base = e >= 0 ? mpq_class(1) / P : P;
    for (long i = 0; i < std::labs(e); ++i) r *= base;
    return r;
  };
  const long b = beta;
  const mpq_class den = 1 + inv_pow(1) - inv_pow(b + 1) - inv_pow(b + 2);
  mpq_class num;
  if (u == 1 && v == 1)
    num = 3 - inv_pow(1) - inv_pow(b - 1) - inv_pow(b);
  else
    num = 1 + inv_pow(1) - inv_pow(b) - inv_pow(b + 1);
  mpq_class r = num / den;
  r.canonicalize();
  return r;
}

/// Product of omega_{u,v}(p) with p^u || d1 d4 and p^v || d2 d3.
inline mpq_class omega_product(const DTuple& d, uint64_t m) {
  std::map<uint64_t, std::pair<unsigned, unsigned>> uv;
  for (int i = 0; i < 4; ++i) {
    for (const auto& [p, e] : arith::factorize_u64(d.d[i])) {
      if (p == 2) throw Error(ErrorKind::even_prime_in_d, "omega_product: 2 divides d");
      auto& slot = uv[p];
      ((i == 0 || i == 3) ? slot.first : slot.second) += e;
    }
  }
  mpq_class r = 1;
  for (const auto& [p, e] : uv) r *= omega_local(p, e.first, e.second, m);
  r.canonicalize();
  return r;
}

/// Truncated prod_{3 <= p <= p_max} (1 + 1/p - p^{-beta-1} - p^{-beta-2}), beta = v_p(m).
inline double s_minus_bound(uint64_t m, uint64_t p_max) {
  if (p_max < 3) throw Error(ErrorKind::invalid_argument, "s_minus_bound: p_max must be >= 3");
  double r = 1;
  for (uint32_t p : sieve::primes_up_to(static_cast<uint32_t>(p_max))) {
    if (p == 2) continue;
    const unsigned beta = m == 0 ? 0 : arith::valuation_u64(m, p);
    const double pp = p;
    r *= 1 + 1 / pp - std::pow(pp, -double(beta) - 1) - std::pow(pp, -double(beta) - 2);
  }
  return r;
}

namespace detail {

/// Tanh-sinh quadrature of f over [a, b]; handles integrable endpoint behaviour.
template <class F>
double tanh_sinh(F&& f, double a, double b, double tol = 1e-13) {
  if (!(b > a)) return 0;
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  const double tmax = 3.2;
  auto node = [&](double t, double& x, double& w, double& dist) {
    const double s = std::numbers::pi / 2 * std::sinh(t);
    const double ch = std::cosh(s);
    w = r * (std::numbers::pi / 2) * std::cosh(t) / (ch * ch);
    // distance from the nearer endpoint, computed without cancellation
    dist = r / (std::exp(std::abs(s)) * ch);
    x = t < 0 ? a + dist : b - dist;
  };
  double h = 0.5;
  double sum = 0;
  {
    double x, w, dist;
    node(0, x, w, dist);
    sum = w * f(c);
    for (double t = h; t <= tmax; t += h) {
      node(t, x, w, dist);
      sum += w * f(x);
      node(-t, x, w, dist);
      sum += w * f(x);
    }
  }
  double est = sum * h;
  for (int level = 0; level < 12; ++level) {
    h /= 2;
    for (double t = h; t <= tmax; t += 2 * h) {
      double x, w, dist;
      node(t, x, w, dist);
      sum += w * f(x);
      node(-t, x, w, dist);
      sum += w * f(x);
    }
    const double next = sum * h;
    if (std::abs(next - est) < tol * std::max(1.0, std::abs(next))) return next;
    est = next;
  }
  return est;
}

}  // namespace detail

/// I(theta) = 2 int_{max(0,-theta)}^{min(1,1-theta)} t^{-1/2} (1-theta-t)^{1/2} dt,
/// evaluated as 4 int sqrt(1 - theta - u^2) du after t = u^2.
inline double frak_I(double theta) {
  const double lo = std::max(0.0, -theta), hi = std::min(1.0, 1.0 - theta);
  if (!(hi > lo)) return 0;
  const double c = 1.0 - theta;
  return 4 * detail::tanh_sinh([c](double u) { return std::sqrt(std::max(0.0, c - u * u)); }, std::sqrt(lo), std::sqrt(hi));
}

struct LatticeCount {
  uint64_t m = 0;
  uint64_t N = 0;
  DTuple d;
  bool prime_constrained = false;
  uint64_t count = 0;
};

inline constexpr uint64_t kMaxLatticeN = 100'000'000;

/// Quadruples of positive integers with x1^2 + x4^2 = x2^2 + x3^2 + m,
/// x_i^2 <= N, d_i | x_i; x1, x2 prime when `prime_constrained`.
inline LatticeCount lattice_count(uint64_t m, uint64_t N, const DTuple& d, bool prime_constrained = false,
                                  unsigned threads = 1) {
  if (m < 1) throw Error(ErrorKind::invalid_argument, "lattice_count: m must be >= 1");
  if (N > kMaxLatticeN) throw Error(ErrorKind::guard_exceeded, "lattice_count: N above 10^8");
  LatticeCount out{m, N, d, prime_constrained, 0};
  uint64_t X = static_cast<uint64_t>(std::sqrt(double(N)));
  while (X * X > N) --X;
  while ((X + 1) * (X + 1) <= N) ++X;
  auto ok = [&](uint64_t x, int i, bool prime) { return x % d.d[i] == 0 && (!prime || arith::is_prime_u64(x)); };
  std::vector<uint64_t> xs[4];
  for (int i = 0; i < 4; ++i)
    for (uint64_t x = 1; x <= X; ++x)
      if (ok(x, i, prime_constrained && i < 2)) xs[i].push_back(x);
  // r23[n] = #{(x2, x3) : x2^2 + x3^2 = n}
  std::vector<uint32_t> r23(2 * N + 1, 0);
  for (uint64_t x2 : xs[1])
    for (uint64_t x3 : xs[2]) ++r23[x2 * x2 + x3 * x3];
  const auto chunks = split_range(0, xs[0].size(), std::max(1u, threads) * 4);
  std::vector<uint64_t> partial(chunks.size(), 0);
  for_each_chunk(chunks, threads, [&](const Chunk& ch) {
    uint64_t acc = 0;
    for (uint64_t i = ch.begin; i < ch.end; ++i) {
      const uint64_t x1 = xs[0][i];
      for (uint64_t x4 : xs[3]) {
        const uint64_t s = x1 * x1 + x4 * x4;
        if (s >= m + 2 && s - m <= 2 * N) acc += r23[s - m];
      }
    }
    partial[ch.index] = acc;
  });
  for (auto v : partial) out.count += v;
  return out;
}

/// omega(d,m)/(d1 d2 d3 d4) * (pi/16) * S_-(m) * I(m/N) * N.
inline double main_term(uint64_t m, uint64_t N, const DTuple& d, const SeriesEngine& engine) {
  const double s_minus = engine.evaluate(m, DTuple{}).value;
  const double w = omega_product(d, m).get_d();
  return w / double(d.product()) * std::numbers::pi / 16 * s_minus * frak_I(double(m) / double(N)) * double(N);
}

inline double main_term(uint64_t m, uint64_t N, const DTuple& d, uint64_t q_max) {
  return main_term(m, N, d, SeriesEngine(q_max));
}

/// Prime-constrained count over N (log N)^-2 prod_{p | m} (1 + 1/p).
inline double thm24_ratio(uint64_t m, uint64_t N, unsigned threads = 1) {
  if (N < 16) throw Error(ErrorKind::invalid_argument, "thm24_ratio: N must be >= 16");
  double prod = 1;
  for (const auto& [p, e] : arith::factorize_u64(m)) prod *= 1 + 1.0 / double(p);
  const double L = std::log(double(N));
  const auto c = lattice_count(m, N, DTuple{}, true, threads);
  return double(c.count) / (double(N) / (L * L) * prod);
}

}  // namespace coverlab::singular
