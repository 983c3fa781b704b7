#pragma once

// Forbidden residue classes built by CRT from the doubled cover plus quadratic
// obstructions, and verifiers that re-run each non-representability argument
// case by case over one full period of the exponent n.

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "coverlab/arith.hpp"
#include "coverlab/cover.hpp"
#include "coverlab/parallel.hpp"
#include "coverlab/tables.hpp"

namespace coverlab::construct {

using arith::nat;
using tables::Check;

enum class Theorem { thm2, thm3, thm5 };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::thm2: return "thm2";
    case Theorem::thm3: return "thm3";
    case Theorem::thm5: return "thm5";
  }
  return "?";
}

/// q_s with alpha = p_s^2 (mod q_s).
struct SquareShiftAux {
  Natural q;
};

/// Row s of the additive table: alpha = c_s + p_s^2 (mod r_s).
struct AddcongAux {
  Natural c;
  std::vector<Natural> r_factors;
};

struct ExceptionalExponent {
  uint64_t h = 0;  // h_{s,t}
  Natural q;       // q_{s,t}, alpha = 2^h + q (mod q^2)
};

struct SquareModulusAux {
  uint64_t n_star = 0;  // ord_2(p_s)
  Natural a_star;       // = a_s (mod n_star), = e_s (mod p_s)
  Natural e;
  std::vector<ExceptionalExponent> exceptions;
};

struct IndexRecord {
  size_t s = 0;  // 1-based
  uint64_t a = 0;
  uint64_t n = 1;
  Natural p;
  std::variant<SquareShiftAux, AddcongAux, SquareModulusAux> aux;
};

struct ForbiddenClassCertificate {
  Theorem theorem = Theorem::thm2;
  Natural alpha;
  Natural M;
  std::vector<IndexRecord> per_index;
  std::vector<std::string> notes;
  bool probable_primality = false;
};

struct BuildOptions {
  std::vector<tables::CoverTriple> cover_table = tables::builtin_cover_table();
  std::vector<tables::AddcongEntry> addcong_table = tables::builtin_addcong_table();
  /// Refuse to build from tables that fail validation.
  bool require_valid_tables = true;
};

namespace detail {

inline void require_cover_table(const BuildOptions& opt) {
  if (!opt.require_valid_tables) return;
  const auto rep = tables::validate_cover_table(opt.cover_table);
  if (!rep.pass()) throw Error(ErrorKind::table_validation_failed, "cover table rows failing validation");
}

inline void require_addcong_table(const BuildOptions& opt) {
  if (!opt.require_valid_tables) return;
  const auto rep = tables::validate_addcong_table(opt.addcong_table, tables::cover_prime_product(opt.cover_table));
  if (!rep.pass()) throw Error(ErrorKind::table_validation_failed, "addcong table rows failing validation");
}

inline bool any_above_u64(const std::vector<Natural>& xs) {
  for (const auto& x : xs)
    if (!arith::fits_u64(x)) return true;
  return false;
}

/// Smallest `count` primes q with q = residue (mod modulus) outside `exclude`.
inline std::vector<Natural> smallest_primes_in_class(size_t count, uint64_t residue, uint64_t modulus,
                                                     const std::set<Natural>& exclude) {
  std::vector<Natural> out;
  for (uint64_t q = residue; out.size() < count; q += modulus) {
    if (!arith::is_prime_u64(q)) continue;
    if (exclude.count(nat(q))) continue;
    out.push_back(nat(q));
  }
  return out;
}

struct CoverData {
  cover::CoverSystem A;
  std::vector<Natural> primes;
};

inline CoverData cover_data(const BuildOptions& opt) {
  CoverData d{tables::doubled_cover(opt.cover_table), tables::cover_primes(opt.cover_table)};
  if (d.A.classes.size() != d.primes.size())
    throw Error(ErrorKind::invalid_argument, "cover table must have 49 printed rows plus the 0(2) row");
  return d;
}

}  // namespace detail

/// The (alpha_1, M_1) congruence: alpha_1 = 2^{a_s} (mod p_s) for all s.
inline arith::Congruence alpha1(const cover::CoverSystem& A, const std::vector<Natural>& primes) {
  std::vector<arith::Congruence> cs;
  for (size_t s = 0; s < primes.size(); ++s)
    cs.push_back({arith::mod_pow(2, nat(A.classes[s].a), primes[s]), primes[s]});
  return arith::crt(cs);
}

inline ForbiddenClassCertificate build_thm2(const BuildOptions& opt = {}) {
  detail::require_cover_table(opt);
  const auto data = detail::cover_data(opt);
  if (!cover::verify_cover(data.A).covered) throw Error(ErrorKind::table_validation_failed, "doubled cover does not cover Z");
  const auto a1 = alpha1(data.A, data.primes);
  const std::set<Natural> exclude(data.primes.begin(), data.primes.end());
  const auto qs = detail::smallest_primes_in_class(data.primes.size(), 7, 8, exclude);
  std::vector<arith::Congruence> c2;
  for (size_t s = 0; s < qs.size(); ++s) c2.push_back({arith::mod(data.primes[s] * data.primes[s], qs[s]), qs[s]});
  const auto a2 = arith::crt(c2);
  const auto all = arith::crt({a1, a2});

  ForbiddenClassCertificate cert;
  cert.theorem = Theorem::thm2;
  cert.alpha = all.residue;
  cert.M = all.modulus;
  for (size_t s = 0; s < data.primes.size(); ++s)
    cert.per_index.push_back({s + 1, data.A.classes[s].a, data.A.classes[s].n, data.primes[s], SquareShiftAux{qs[s]}});
  cert.probable_primality = detail::any_above_u64(data.primes);
  cert.notes.push_back("a_s: least nonnegative odd residue = a'_s (mod n'_s)");
  cert.notes.push_back("q_s: the smallest primes = 7 (mod 8) coprime to M1, increasing");
  if (cert.probable_primality) cert.notes.push_back("primality of p_s above 2^64 is probabilistic (BPSW-style battery)");
  return cert;
}

inline ForbiddenClassCertificate build_thm3(const BuildOptions& opt = {}) {
  detail::require_cover_table(opt);
  detail::require_addcong_table(opt);
  const auto data = detail::cover_data(opt);
  if (opt.addcong_table.size() != data.primes.size())
    throw Error(ErrorKind::invalid_argument, "addcong table must pair one row with each cover prime");
  const auto a1 = alpha1(data.A, data.primes);
  std::vector<arith::Congruence> c3;
  for (size_t s = 0; s < data.primes.size(); ++s) {
    const Natural r = opt.addcong_table[s].r();
    c3.push_back({arith::mod(opt.addcong_table[s].c + data.primes[s] * data.primes[s], r), r});
  }
  const auto a3 = arith::crt(c3);
  const auto all = arith::crt({arith::Congruence{arith::mod(-a1.residue, a1.modulus), a1.modulus}, a3});

  ForbiddenClassCertificate cert;
  cert.theorem = Theorem::thm3;
  cert.alpha = all.residue;
  cert.M = all.modulus;
  for (size_t s = 0; s < data.primes.size(); ++s)
    cert.per_index.push_back({s + 1, data.A.classes[s].a, data.A.classes[s].n, data.primes[s],
                              AddcongAux{opt.addcong_table[s].c, opt.addcong_table[s].prime_factors}});
  cert.probable_primality = detail::any_above_u64(data.primes);
  cert.notes.push_back("exponent n ranges over N = {0,1,2,...} (form p^2 + b^2 - 2^n)");
  cert.notes.push_back("addcong row s is paired with cover row s in table order");
  if (cert.probable_primality) cert.notes.push_back("primality of p_s above 2^64 is probabilistic (BPSW-style battery)");
  return cert;
}

/// ord_2(p) and whether the order lifts to p * ord_2(p) modulo p^2, i.e.
/// 2^{ord_2(p)} != 1 (mod p^2). `multiple` is any known multiple of ord_2(p).
struct OrderLift {
  Natural n_star;
  bool lifts = false;
};

inline OrderLift order_lift(const Natural& p, const Natural& multiple) {
  OrderLift out;
  out.n_star = arith::mult_order_dividing(2, p, multiple);
  const Natural p2 = p * p;
  out.lifts = arith::mod_pow(2, out.n_star, p2) != 1 && arith::mod_pow(2, out.n_star * p, p2) == 1;
  return out;
}

/// Build the class for sums b1^2 + b2^2 + 2^n with n restricted to a set whose
/// intersection with e_s (mod p_s) is the finite list H_s.
inline ForbiddenClassCertificate build_thm5(const std::vector<std::vector<uint64_t>>& H, const std::vector<Natural>& e,
                                            const BuildOptions& opt = {}) {
  detail::require_cover_table(opt);
  const auto data = detail::cover_data(opt);
  const size_t k = data.primes.size();
  if (H.size() != k || e.size() != k)
    throw Error(ErrorKind::invalid_argument, "build_thm5 needs one H_s and one e_s per cover row");

  ForbiddenClassCertificate cert;
  cert.theorem = Theorem::thm5;
  cover::CoverSystem Astar;
  std::vector<arith::Congruence> congr;
  const std::set<Natural> exclude(data.primes.begin(), data.primes.end());
  size_t total_h = 0;
  for (const auto& hs : H) total_h += hs.size();
  const auto qpool = detail::smallest_primes_in_class(total_h, 3, 4, exclude);
  size_t next_q = 0;

  Natural root = 1;
  for (size_t s = 0; s < k; ++s) {
    const auto& p = data.primes[s];
    const auto& cls = data.A.classes[s];
    const auto lift = order_lift(p, nat(cls.n));
    if (arith::gcd(lift.n_star, p) != 1)
      throw Error(ErrorKind::invalid_argument, "row " + std::to_string(s + 1) + ": ord_2(p) shares a factor with p");
    if (!lift.lifts)
      throw Error(ErrorKind::wieferich_violation, "row " + std::to_string(s + 1) + ": 2^{ord_2(p)} = 1 mod p^2");
    const uint64_t n_star = arith::to_u64(lift.n_star);
    const auto a_star = arith::crt({arith::Congruence{nat(cls.a % n_star), lift.n_star}, arith::Congruence{arith::mod(e[s], p), p}});
    Astar.classes.push_back({cls.a % n_star, n_star});
    const Natural p2 = p * p;
    congr.push_back({arith::mod_pow(2, a_star.residue, p2), p2});
    root *= p;

    SquareModulusAux aux{n_star, a_star.residue, e[s], {}};
    for (uint64_t h : H[s]) {
      if (arith::mod(nat(h) - e[s], p) != 0)
        throw Error(ErrorKind::invalid_argument, "row " + std::to_string(s + 1) + ": h = " + std::to_string(h) + " is not = e_s (mod p_s)");
      const Natural q = qpool[next_q++];
      const Natural q2 = q * q;
      congr.push_back({arith::mod(arith::mod_pow(2, nat(h), q2) + q, q2), q2});
      root *= q;
      aux.exceptions.push_back({h, q});
    }
    cert.per_index.push_back({s + 1, cls.a, cls.n, p, std::move(aux)});
  }
  if (!cover::verify_cover(Astar).covered) throw Error(ErrorKind::cover_failed, "A* does not cover Z");
  const auto all = arith::crt(congr);
  cert.alpha = all.residue;
  cert.M = all.modulus;
  cert.probable_primality = detail::any_above_u64(data.primes);
  cert.notes.push_back("q_{s,t}: smallest primes = 3 (mod 4) outside {p_s}, assigned in (s,t) order");
  cert.notes.push_back("e_s accepted as any residue mod p_s; recorded as given");
  if (cert.probable_primality) cert.notes.push_back("primality of p_s above 2^64 is probabilistic (BPSW-style battery)");
  return cert;
}

// ---------------------------------------------------------------------------
// Verification

struct ProofReport {
  Theorem theorem = Theorem::thm2;
  bool pass = false;
  uint64_t period = 0;      // lcm of the cover moduli
  uint64_t n_checked = 0;   // exponents scanned (period * periods)
  std::vector<uint64_t> uncovered_n;  // n in no cover class
  std::vector<uint64_t> failed_n;     // covered, but no class certifies the contradiction
  std::vector<Check> checks;          // structural and per-index checks
  std::vector<std::string> notes;
};

struct VerifyOptions {
  unsigned threads = 1;
  /// Scan n over [0, periods * L); 2 is used to confirm the period reduction.
  uint64_t periods = 1;
};

namespace detail {

inline void finish(ProofReport& rep) {
  rep.pass = rep.uncovered_n.empty() && rep.failed_n.empty();
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
}

/// Cover-chain scan. For every n, some index s must have n = a_s (mod n_s),
/// p_s | (sign * alpha - 2^n) ... expressed as `certifies(s, n)`.
template <class Certifies>
void scan_cover_chain(const std::vector<cover::ResidueClass>& classes, uint64_t L, const VerifyOptions& opt,
                      Certifies&& certifies, ProofReport& rep) {
  rep.period = L;
  rep.n_checked = L * opt.periods;
  const auto chunks = split_range(0, rep.n_checked, std::max(1u, opt.threads) * 4);
  std::vector<std::vector<uint64_t>> unc(chunks.size()), fail(chunks.size());
  for_each_chunk(chunks, opt.threads, [&](const Chunk& ch) {
    for (uint64_t n = ch.begin; n < ch.end; ++n) {
      bool covered = false, ok = false;
      for (size_t s = 0; s < classes.size() && !ok; ++s) {
        if (n % classes[s].n != classes[s].a) continue;
        covered = true;
        ok = certifies(s, n);
      }
      if (!covered) unc[ch.index].push_back(n);
      else if (!ok) fail[ch.index].push_back(n);
    }
  });
  for (size_t i = 0; i < chunks.size(); ++i) {
    rep.uncovered_n.insert(rep.uncovered_n.end(), unc[i].begin(), unc[i].end());
    rep.failed_n.insert(rep.failed_n.end(), fail[i].begin(), fail[i].end());
  }
}

inline uint64_t lcm_of(const std::vector<cover::ResidueClass>& classes) {
  uint64_t L = 1;
  for (const auto& c : classes) L = std::lcm(L, c.n);
  return L;
}

inline std::vector<cover::ResidueClass> classes_of(const ForbiddenClassCertificate& cert) {
  std::vector<cover::ResidueClass> cls;
  for (const auto& r : cert.per_index) cls.push_back({r.a % r.n, r.n});
  return cls;
}

inline Check minus_one_nonresidue(const IndexRecord& r) {
  const bool ok = arith::jacobi(-1, r.p) == -1;
  return {"s" + std::to_string(r.s) + "_minus1_nonresidue_mod_p", ok, ok ? "(-1|p) = -1" : "(-1|p) != -1"};
}

}  // namespace detail

inline ProofReport verify_thm2(const ForbiddenClassCertificate& cert, const VerifyOptions& opt = {}) {
  ProofReport rep;
  rep.theorem = Theorem::thm2;
  const auto classes = detail::classes_of(cert);

  Natural prod = 1;
  std::vector<Natural> alpha_mod_p;
  bool reduces = cert.alpha >= 0 && cert.alpha < cert.M;
  for (const auto& r : cert.per_index) {
    const auto& q = std::get<SquareShiftAux>(r.aux).q;
    prod *= r.p * q;
    alpha_mod_p.push_back(arith::mod(cert.alpha, r.p));
    reduces = reduces && alpha_mod_p.back() == arith::mod_pow(2, nat(r.a), r.p) &&
              arith::mod(cert.alpha, q) == arith::mod(r.p * r.p, q);
  }
  rep.checks.push_back({"modulus_is_product", prod == cert.M, "M = prod p_s * prod q_s"});
  rep.checks.push_back({"alpha_reduces_to_components", reduces, "alpha = 2^{a_s} (mod p_s), alpha = p_s^2 (mod q_s)"});
  for (const auto& r : cert.per_index) rep.checks.push_back(detail::minus_one_nonresidue(r));

  detail::scan_cover_chain(classes, detail::lcm_of(classes), opt, [&](size_t s, uint64_t n) {
    const auto& p = cert.per_index[s].p;
    return arith::mod(alpha_mod_p[s] - arith::mod_pow(2, nat(n), p), p) == 0;
  }, rep);

  for (const auto& r : cert.per_index) {
    const uint64_t q = arith::to_u64(std::get<SquareShiftAux>(r.aux).q);
    const std::string tag = "s" + std::to_string(r.s) + "_q" + std::to_string(q);
    const bool qr2 = arith::jacobi_u64(2, q) == 1;
    const bool nr1 = arith::jacobi_u64(q - 1, q) == -1;
    const uint64_t T = arith::mult_order_u64(2, q);
    const uint64_t base = arith::to_u64(arith::mod(cert.alpha - r.p * r.p, nat(q)));
    bool orbit = true;
    uint64_t pw = 1;
    for (uint64_t n = 0; n < T; ++n, pw = pw * 2 % q)
      orbit = orbit && arith::jacobi_u64((base + q - pw) % q, q) == -1;
    rep.checks.push_back({tag + "_symbols", qr2 && nr1, "(2|q) = 1 and (-1|q) = -1"});
    rep.checks.push_back({tag + "_orbit_nonresidue", orbit,
                          "alpha - p^2 - 2^n non-residue mod q for n in [0," + std::to_string(T) + ")"});
  }
  detail::finish(rep);
  return rep;
}

inline ProofReport verify_thm3(const ForbiddenClassCertificate& cert, const VerifyOptions& opt = {}) {
  ProofReport rep;
  rep.theorem = Theorem::thm3;
  rep.notes.push_back("exponent n taken in N; the 'b, n in Z' reading is not used");
  const auto classes = detail::classes_of(cert);

  Natural prod = 1;
  std::vector<Natural> alpha_mod_p;
  bool reduces = cert.alpha >= 0 && cert.alpha < cert.M;
  for (const auto& r : cert.per_index) {
    const auto& aux = std::get<AddcongAux>(r.aux);
    Natural rr = 1;
    for (const auto& f : aux.r_factors) rr *= f;
    prod *= r.p * rr;
    alpha_mod_p.push_back(arith::mod(cert.alpha, r.p));
    reduces = reduces && alpha_mod_p.back() == arith::mod(-arith::mod_pow(2, nat(r.a), r.p), r.p) &&
              arith::mod(cert.alpha, rr) == arith::mod(aux.c + r.p * r.p, rr);
  }
  rep.checks.push_back({"modulus_is_product", prod == cert.M, "M' = prod p_s * prod r_s"});
  rep.checks.push_back({"alpha_reduces_to_components", reduces, "alpha' = -2^{a_s} (mod p_s), alpha' = c_s + p_s^2 (mod r_s)"});
  for (const auto& r : cert.per_index) rep.checks.push_back(detail::minus_one_nonresidue(r));

  detail::scan_cover_chain(classes, detail::lcm_of(classes), opt, [&](size_t s, uint64_t n) {
    const auto& p = cert.per_index[s].p;
    return arith::mod(alpha_mod_p[s] + arith::mod_pow(2, nat(n), p), p) == 0;
  }, rep);

  for (const auto& r : cert.per_index) {
    const auto& aux = std::get<AddcongAux>(r.aux);
    const std::string tag = "s" + std::to_string(r.s);
    const uint64_t T = tables::two_order_of_product(aux.r_factors);
    // b^2 = alpha' + 2^n - p^2 (mod r); the orbit start is read off alpha', not c.
    Natural rr = 1;
    for (const auto& f : aux.r_factors) rr *= f;
    const Natural start = arith::mod(cert.alpha - r.p * r.p, rr);
    const auto hit = tables::first_square_in_orbit(start, aux.r_factors, T);
    rep.checks.push_back({tag + "_orbit_nonsquare", !hit.has_value(),
                          hit ? "alpha' + 2^" + std::to_string(*hit) + " - p^2 is a square mod r"
                              : "non-square mod r for n in [0," + std::to_string(T) + ")"});
  }
  detail::finish(rep);
  return rep;
}

/// Exhaustive: is b1^2 + b2^2 = target (mod q^2) solvable? Squares are
/// enumerated over b in [0, q^2/2] (b and q^2 - b give the same square).
inline bool two_squares_congruence_solvable(uint64_t q, uint64_t target) {
  const uint64_t Q = q * q;
  std::vector<uint8_t> is_sq(Q, 0);
  for (uint64_t b = 0; b <= Q / 2; ++b) is_sq[b * b % Q] = 1;
  target %= Q;
  for (uint64_t s = 0; s < Q; ++s)
    if (is_sq[s] && is_sq[(target + Q - s) % Q]) return true;
  return false;
}

inline constexpr uint64_t kBruteForceQLimit = 1000;

inline ProofReport verify_thm5(const ForbiddenClassCertificate& cert, const VerifyOptions& opt = {}) {
  ProofReport rep;
  rep.theorem = Theorem::thm5;
  cover::CoverSystem Astar;
  for (const auto& r : cert.per_index) {
    const auto& aux = std::get<SquareModulusAux>(r.aux);
    Astar.classes.push_back({r.a % aux.n_star, aux.n_star});
  }
  const auto cv = cover::verify_cover(Astar, opt.threads);
  rep.checks.push_back({"Astar_covers_Z", cv.covered,
                        cv.covered ? "lcm " + std::to_string(cv.lcm) : "witness " + std::to_string(*cv.witness)});

  std::set<Natural> ps, qs;
  Natural root = 1;
  bool reduces = cert.alpha >= 0 && cert.alpha < cert.M;
  std::vector<Natural> alpha_mod_p;
  for (const auto& r : cert.per_index) {
    const auto& aux = std::get<SquareModulusAux>(r.aux);
    const std::string tag = "s" + std::to_string(r.s);
    ps.insert(r.p);
    root *= r.p;
    const Natural p2 = r.p * r.p;
    const Natural ns = nat(aux.n_star);
    const bool is_order = arith::mod_pow(2, ns, r.p) == 1 && arith::mult_order_dividing(2, r.p, ns) == ns;
    const bool not_wieferich = arith::mod_pow(2, ns, p2) != 1;
    const bool lifted = arith::mod_pow(2, ns * r.p, p2) == 1;
    rep.checks.push_back({tag + "_n_star_is_order", is_order, "n* = " + std::to_string(aux.n_star)});
    rep.checks.push_back({tag + "_order_lifts_mod_p2", not_wieferich && lifted,
                          not_wieferich ? "ord_2(p^2) = n* p" : "2^{n*} = 1 (mod p^2)"});
    const bool astar_ok = arith::mod(aux.a_star, ns) == arith::mod(nat(r.a), ns) &&
                          arith::mod(aux.a_star - aux.e, r.p) == 0;
    rep.checks.push_back({tag + "_a_star", astar_ok, "a* = a (mod n*), a* = e (mod p)"});
    reduces = reduces && arith::mod(cert.alpha, p2) == arith::mod_pow(2, aux.a_star, p2);
    alpha_mod_p.push_back(arith::mod(cert.alpha, r.p));
    for (const auto& ex : aux.exceptions) {
      const std::string qtag = tag + "_q" + arith::to_decimal(ex.q);
      const bool shape = arith::is_prime(ex.q) && mpz_fdiv_ui(ex.q.get_mpz_t(), 4) == 3;
      const bool fresh = qs.insert(ex.q).second;
      rep.checks.push_back({qtag + "_admissible", shape && fresh, "prime, = 3 (mod 4), distinct"});
      rep.checks.push_back({qtag + "_h_in_class", arith::mod(nat(ex.h) - aux.e, r.p) == 0, "h = e_s (mod p_s)"});
      root *= ex.q;
      const Natural q2 = ex.q * ex.q;
      reduces = reduces && arith::mod(cert.alpha, q2) == arith::mod(arith::mod_pow(2, nat(ex.h), q2) + ex.q, q2);
      if (ex.q <= kBruteForceQLimit) {
        const uint64_t q = arith::to_u64(ex.q);
        const bool none = !two_squares_congruence_solvable(q, q);
        rep.checks.push_back({qtag + "_no_two_squares_mod_q2", none, "b1^2 + b2^2 = q (mod q^2) unsolvable"});
      }
    }
  }
  for (const auto& q : qs) {
    if (ps.count(q)) rep.checks.push_back({"q_outside_p_set", false, arith::to_decimal(q) + " is a cover prime"});
  }
  rep.checks.push_back({"modulus_is_square_of_product", cert.M == root * root, "M* = (prod p_s prod q_st)^2"});
  rep.checks.push_back({"alpha_reduces_to_components", reduces, "alpha* = 2^{a*_s} (mod p_s^2), 2^h + q (mod q^2)"});
  for (const auto& r : cert.per_index) rep.checks.push_back(detail::minus_one_nonresidue(r));

  // With n = a*_s (mod n*_s), p_s | b1^2 + b2^2 forces p_s | b1, b2.
  if (cv.covered) {
    detail::scan_cover_chain(Astar.classes, cv.lcm, opt, [&](size_t s, uint64_t n) {
      const auto& p = cert.per_index[s].p;
      return arith::mod(alpha_mod_p[s] - arith::mod_pow(2, nat(n), p), p) == 0;
    }, rep);
  }
  detail::finish(rep);
  return rep;
}

inline ProofReport verify(const ForbiddenClassCertificate& cert, const VerifyOptions& opt = {}) {
  switch (cert.theorem) {
    case Theorem::thm2: return verify_thm2(cert, opt);
    case Theorem::thm3: return verify_thm3(cert, opt);
    case Theorem::thm5: return verify_thm5(cert, opt);
  }
  throw Error(ErrorKind::invalid_argument, "unknown theorem tag");
}

/// Corollary instance: every H_s empty and every e_s = 1.
inline ForbiddenClassCertificate build_thm5_corollary(const BuildOptions& opt = {}) {
  const size_t k = opt.cover_table.size();
  return build_thm5(std::vector<std::vector<uint64_t>>(k), std::vector<Natural>(k, Natural(1)), opt);
}

}  // namespace coverlab::construct
