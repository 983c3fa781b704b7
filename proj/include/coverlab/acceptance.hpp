#pragma once

// The acceptance suite: fourteen end-to-end checks, shared by the acceptance
// test binary and the `bundle` subcommand.

#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coverlab/construct.hpp"
#include "coverlab/cover.hpp"
#include "coverlab/density.hpp"
#include "coverlab/search.hpp"
#include "coverlab/singular.hpp"
#include "coverlab/tables.hpp"

namespace coverlab::acceptance {

using json = nlohmann::json;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  json data = json::object();
};

struct Context {
  std::vector<tables::CoverTriple> cover_table = tables::builtin_cover_table();
  std::vector<tables::AddcongEntry> addcong_table = tables::builtin_addcong_table();
  unsigned threads = 1;

  construct::BuildOptions build_options() const {
    construct::BuildOptions o;
    o.cover_table = cover_table;
    o.addcong_table = addcong_table;
    return o;
  }

  const singular::SeriesEngine& engine() const {
    if (!engine_) engine_ = std::make_shared<singular::SeriesEngine>(2000);
    return *engine_;
  }

 private:
  mutable std::shared_ptr<singular::SeriesEngine> engine_;
};

namespace detail {

inline std::string fmt(double v, int prec = 6) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << v;
  return ss.str();
}

inline double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Quadruple loop over x1..x4 in [1, sqrt N]; reference for lattice_count.
inline uint64_t lattice_brute_force(uint64_t m, uint64_t N) {
  uint64_t X = 0;
  while ((X + 1) * (X + 1) <= N) ++X;
  uint64_t c = 0;
  for (uint64_t a = 1; a <= X; ++a)
    for (uint64_t b = 1; b <= X; ++b)
      for (uint64_t e = 1; e <= X; ++e)
        for (uint64_t f = 1; f <= X; ++f)
          if (a * a + f * f == b * b + e * e + m) ++c;
  return c;
}

inline bool relative_change_below(double a, double b, double tol) { return std::abs(b - a) / std::abs(a) < tol; }

}  // namespace detail

inline CriterionResult c1_cover_exhaustion(const Context& ctx) {
  CriterionResult r{1, "cover exhaustion"};
  auto t0 = std::chrono::steady_clock::now();
  const auto v49 = cover::verify_cover(tables::odd_cover(ctx.cover_table), ctx.threads);
  const double t49 = detail::since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto v50 = cover::verify_cover(tables::doubled_cover(ctx.cover_table), ctx.threads);
  const double t50 = detail::since(t0);
  r.pass = v49.covered && v49.lcm == 31185 && v50.covered && v50.lcm == 62370 && t49 < 1 && t50 < 1;
  r.detail = "A49 covered=" + std::to_string(v49.covered) + " lcm=" + std::to_string(v49.lcm) +
             "; A50 covered=" + std::to_string(v50.covered) + " lcm=" + std::to_string(v50.lcm);
  r.data = {{"A49_seconds", t49}, {"A50_seconds", t50}};
  return r;
}

inline CriterionResult c2_cover_table(const Context& ctx) {
  CriterionResult r{2, "cover table validation"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = tables::validate_cover_table(ctx.cover_table);
  const double t = detail::since(t0);
  const auto bad = rep.failing_rows();
  r.pass = bad.empty() && rep.rows.size() == tables::kPrintedCoverRows + 1 && t < 10;
  r.detail = std::to_string(rep.rows.size()) + " rows, " + std::to_string(bad.size()) + " failing";
  r.data = {{"failing_rows", bad}, {"probable_primality", rep.probable_primality}};
  return r;
}

inline CriterionResult c3_addcong_table(const Context& ctx) {
  CriterionResult r{3, "additive table validation"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = tables::validate_addcong_table(ctx.addcong_table, tables::cover_prime_product(ctx.cover_table));
  const double t = detail::since(t0);
  const auto bad = rep.failing_rows();
  r.pass = bad.empty() && rep.rows.size() == 50 && t < 120;
  r.detail = std::to_string(rep.rows.size()) + " rows, " + std::to_string(bad.size()) + " failing";
  r.data = {{"failing_rows", bad}};
  return r;
}

namespace detail {

inline CriterionResult certificate_criterion(int id, const std::string& name, const Context& ctx, double limit,
                                             construct::ForbiddenClassCertificate (*build)(const construct::BuildOptions&)) {
  CriterionResult r{id, name};
  const auto t0 = std::chrono::steady_clock::now();
  const auto cert = build(ctx.build_options());
  construct::VerifyOptions vo;
  vo.threads = ctx.threads;
  const auto rep = construct::verify(cert, vo);
  size_t failed_checks = 0;
  for (const auto& c : rep.checks) failed_checks += !c.pass;
  auto mutated = cert;
  mpz_combit(mutated.alpha.get_mpz_t(), 0);
  const auto mrep = construct::verify(mutated, vo);
  const double t = since(t0);
  r.pass = rep.pass && rep.period == 62370 && !mrep.pass && t < limit;
  r.detail = "period " + std::to_string(rep.period) + ", uncovered " + std::to_string(rep.uncovered_n.size()) +
             ", failed n " + std::to_string(rep.failed_n.size()) + ", failed checks " + std::to_string(failed_checks) +
             "; bit-0 mutation " + (mrep.pass ? "NOT detected" : "detected");
  r.data = {{"M_digits", arith::to_decimal(cert.M).size()}, {"mutation_failed_n", mrep.failed_n.size()}};
  return r;
}

}  // namespace detail

inline CriterionResult c4_thm2(const Context& ctx) {
  return detail::certificate_criterion(4, "forbidden class, p^2 + b^2 + 2^n", ctx, 60,
                                       [](const construct::BuildOptions& o) { return construct::build_thm2(o); });
}

inline CriterionResult c5_thm3(const Context& ctx) {
  return detail::certificate_criterion(5, "forbidden class, p^2 + b^2 - 2^n", ctx, 120,
                                       [](const construct::BuildOptions& o) { return construct::build_thm3(o); });
}

inline CriterionResult c6_thm5(const Context& ctx) {
  CriterionResult r{6, "square-modulus machinery"};
  const auto t0 = std::chrono::steady_clock::now();
  size_t lifts = 0;
  for (size_t i = 0; i < ctx.cover_table.size(); ++i) {
    const auto& t = ctx.cover_table[i];
    // ord_2(p) divides n_s = 2n' for printed rows, and 2 for the appended row
    const uint64_t n = i < tables::kPrintedCoverRows ? 2 * t.n_prime : t.n_prime;
    lifts += construct::order_lift(t.p, arith::nat(n)).lifts;
  }
  const bool wieferich_caught = !construct::order_lift(1093, 1092).lifts;
  const auto cert = construct::build_thm5_corollary(ctx.build_options());
  construct::VerifyOptions vo;
  vo.threads = ctx.threads;
  const auto rep = construct::verify_thm5(cert, vo);
  size_t qs = 0, unsolvable = 0;
  for (uint64_t q = 3; q <= construct::kBruteForceQLimit; q += 4) {
    if (!arith::is_prime_u64(q)) continue;
    ++qs;
    unsolvable += !construct::two_squares_congruence_solvable(q, q);
  }
  const double t = detail::since(t0);
  r.pass = lifts == ctx.cover_table.size() && wieferich_caught && rep.pass && qs == unsolvable && t < 120;
  r.detail = std::to_string(lifts) + "/" + std::to_string(ctx.cover_table.size()) + " orders lift mod p^2; 1093 " +
             (wieferich_caught ? "rejected" : "NOT rejected") + "; A* cover " + (rep.pass ? "verified" : "FAILED") +
             "; q = 3 (4) <= 1000: " + std::to_string(unsolvable) + "/" + std::to_string(qs) + " unsolvable";
  r.data = {{"Astar_lcm", rep.period}};
  return r;
}

inline CriterionResult c7_gauss(const Context&) {
  CriterionResult r{7, "Gauss-sum law"};
  double worst = 0;
  for (uint64_t p = 3; p <= 200; p += 2) {
    if (!arith::is_prime_u64(p)) continue;
    for (int64_t a = 1; a < int64_t(p); ++a)
      worst = std::max(worst, std::abs(std::abs(singular::gauss_sum(p, a)) - std::sqrt(double(p))) / std::sqrt(double(p)));
  }
  const double e4 = std::abs(singular::gauss_sum(4, 1) - singular::Complex(2, 2));
  const double e3 = std::abs(singular::gauss_sum(3, 1) - singular::Complex(0, std::sqrt(3.0)));
  r.pass = worst < 1e-9 && e4 < 1e-12 && e3 < 1e-12;
  r.detail = "max rel dev |S(p,a)| vs sqrt p = " + detail::fmt(worst, 3) + "; |S(4,1)-(2+2i)| = " + detail::fmt(e4, 3) +
             "; |S(3,1)-i sqrt3| = " + detail::fmt(e3, 3);
  return r;
}

/// d-tuples realising (u,v) = (1,0), (0,1), (1,1) at p in {3,5,7}.
inline std::vector<singular::DTuple> local_factor_tuples() {
  std::vector<singular::DTuple> ds;
  for (uint64_t p : {3, 5, 7}) {
    ds.push_back(singular::make_dtuple(p, 1, 1, 1));
    ds.push_back(singular::make_dtuple(1, p, 1, 1));
    ds.push_back(singular::make_dtuple(p, p, 1, 1));
  }
  return ds;
}

inline CriterionResult c8_local_factors(const Context& ctx) {
  CriterionResult r{8, "local-factor consistency"};
  const auto& eng = ctx.engine();
  const double tol = 1e-3;
  double worst = 0;
  std::string worst_at;
  size_t cases = 0, within = 0, stabilized = 0;
  json rows = json::array();
  for (uint64_t m = 1; m <= 20; ++m) {
    const auto base = eng.evaluate(m, singular::DTuple{});
    for (const auto& d : local_factor_tuples()) {
      const auto ev = eng.evaluate(m, d);
      const double ratio = ev.value / base.value;
      const double omega = singular::omega_product(d, m).get_d();
      const double err = std::abs(ratio - omega);
      ++cases;
      within += err < tol;
      stabilized += ev.stabilized && base.stabilized;
      if (err > worst) {
        worst = err;
        worst_at = "m=" + std::to_string(m) + " d=(" + std::to_string(d.d[0]) + "," + std::to_string(d.d[1]) + ",1,1)";
      }
      rows.push_back({{"m", m}, {"d", d.d}, {"ratio", ratio}, {"omega", omega}, {"abs_err", err}});
    }
  }
  r.pass = within == cases;
  r.detail = std::to_string(within) + "/" + std::to_string(cases) + " within 1e-3 at q_max 2000 (max err " +
             detail::fmt(worst, 3) + " at " + worst_at + "); " + std::to_string(stabilized) + " cases with stabilized partial sums";
  r.data = {{"q_max", eng.q_max()}, {"cases", rows}};
  return r;
}

inline CriterionResult c9_main_term(const Context& ctx) {
  CriterionResult r{9, "main-term tracking"};
  const auto& eng = ctx.engine();
  bool ok = true;
  std::string det;
  json table = json::array();
  for (uint64_t m : {1, 2, 5}) {
    const uint64_t brute = detail::lattice_brute_force(m, 400);
    const uint64_t fast = singular::lattice_count(m, 400, singular::DTuple{}, false, ctx.threads).count;
    ok = ok && brute == fast;
    std::vector<double> ratios;
    for (uint64_t N : {10'000ULL, 100'000ULL, 1'000'000ULL}) {
      const auto c = singular::lattice_count(m, N, singular::DTuple{}, false, ctx.threads);
      const double mt = singular::main_term(m, N, singular::DTuple{}, eng);
      ratios.push_back(double(c.count) / mt);
      table.push_back({{"m", m}, {"N", N}, {"exact", c.count}, {"main", mt}, {"ratio", ratios.back()}});
    }
    for (size_t i = 1; i < ratios.size(); ++i) ok = ok && detail::relative_change_below(ratios[i - 1], ratios[i], 0.10);
    det += (det.empty() ? "" : "; ") + std::string("m=") + std::to_string(m) + " ratios " + detail::fmt(ratios[0], 4) + "," +
           detail::fmt(ratios[1], 4) + "," + detail::fmt(ratios[2], 4) + (brute == fast ? "" : " BRUTE-FORCE MISMATCH");
  }
  r.pass = ok;
  r.detail = det;
  r.data = {{"table", table}};
  return r;
}

inline CriterionResult c10_thm24(const Context& ctx) {
  CriterionResult r{10, "prime-constrained count boundedness"};
  bool ok = true;
  json table = json::array();
  std::string det;
  for (uint64_t m : {1, 2, 6}) {
    double lo = 1e300, hi = 0;
    for (uint64_t N : {10'000ULL, 100'000ULL, 1'000'000ULL}) {
      const double v = singular::thm24_ratio(m, N, ctx.threads);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      table.push_back({{"m", m}, {"N", N}, {"ratio", v}});
      ok = ok && v > 0;
    }
    ok = ok && hi / lo < 10;
    det += (det.empty() ? "" : "; ") + std::string("m=") + std::to_string(m) + " max/min " + detail::fmt(hi / lo, 3);
  }
  r.pass = ok;
  r.detail = det;
  r.data = {{"table", table}};
  return r;
}

inline CriterionResult c11_landau(const Context&) {
  CriterionResult r{11, "Landau constant"};
  const auto k = density::landau_constant(10'000'000);
  const uint64_t N = 10'000'000;
  const uint64_t B = density::count_two_squares(N);
  const double scaled = double(B) * std::sqrt(std::log(double(N))) / double(N);
  const double dk = std::abs(k.corrected - density::kLandauReference);
  const double rel = std::abs(scaled - density::kLandauReference) / density::kLandauReference;
  r.pass = dk < 1e-5 && rel < 0.15;
  r.detail = "K(10^7) corrected " + detail::fmt(k.corrected, 10) + " (|diff| " + detail::fmt(dk, 2) +
             "); B(N) sqrt(log N)/N = " + detail::fmt(scaled, 6) + " (" + detail::fmt(100 * rel, 3) + "% from K)";
  r.data = {{"raw", k.raw}, {"corrected", k.corrected}, {"two_squares_count", B}};
  return r;
}

inline CriterionResult c12_density(const Context& ctx) {
  CriterionResult r{12, "density sieves"};
  bool ok = true;
  std::string det;
  json data = json::object();
  for (int which = 3; which <= 4; ++which) {
    auto sieve = [&](uint64_t N) { return which == 3 ? density::sieve_s3(N, ctx.threads) : density::sieve_s4(N, ctx.threads); };
    const auto hist = which == 3 ? density::s3_histogram(10'000, ctx.threads) : density::s4_histogram(10'000, ctx.threads);
    size_t mismatches = 0;
    for (uint64_t x = 1; x <= 10'000; ++x) {
      const bool direct = which == 3 ? density::in_s3_direct(x) : density::in_s4_direct(x);
      mismatches += direct != (hist[x] > 0);
    }
    bool cs = true;
    std::vector<double> dens;
    for (uint64_t N : {10'000ULL, 100'000ULL, 1'000'000ULL}) {
      const auto rep = sieve(N);
      cs = cs && rep.cauchy_schwarz_holds();
      dens.push_back(rep.density());
    }
    const bool stable = detail::relative_change_below(dens[1], dens[2], 0.20);
    ok = ok && mismatches == 0 && cs && stable;
    det += (det.empty() ? "" : "; ") + std::string("S") + std::to_string(which) + ": oracle " +
           (mismatches ? "MISMATCH" : "agrees") + ", C-S " + (cs ? "holds" : "FAILS") + ", density " +
           detail::fmt(dens[1], 4) + " -> " + detail::fmt(dens[2], 4);
    data["S" + std::to_string(which)] = dens;
  }
  r.pass = ok;
  r.detail = det;
  r.data = data;
  return r;
}

inline CriterionResult c13_romanoff(const Context&) {
  CriterionResult r{13, "Romanoff diagnostics"};
  std::vector<double> e;
  for (unsigned x : {8u, 16u, 32u, 64u}) e.push_back(density::romanoff_sum(x, 1'000'000) / std::log(double(x)));
  const auto [elo, ehi] = std::minmax_element(e.begin(), e.end());
  std::vector<double> pr;
  for (uint64_t N : {1ULL << 10, 1ULL << 20, 1ULL << 40}) pr.push_back(density::romanoff_pair_sum(N).ratio);
  const auto [plo, phi] = std::minmax_element(pr.begin(), pr.end());
  const auto w = density::weighted_ord_sum(1'000'000);
  std::vector<double> inc;
  for (size_t i = 1; i < w.checkpoints.size(); ++i) inc.push_back(w.checkpoints[i].second - w.checkpoints[i - 1].second);
  bool decays = !inc.empty();
  for (size_t i = 1; i < inc.size(); ++i) decays = decays && inc[i] < inc[i - 1];
  r.pass = *ehi / *elo < 5 && *phi / *plo < 5 && decays;
  r.detail = "E(x)/log x max/min " + detail::fmt(*ehi / *elo, 4) + "; pair sum/(log N)^2 max/min " +
             detail::fmt(*phi / *plo, 4) + "; weighted increments " + (decays ? "decay" : "do NOT decay");
  r.data = {{"E_over_log", e}, {"pair_ratio", pr}, {"weighted_increments", inc}};
  return r;
}

inline CriterionResult c14_search(const Context& ctx) {
  CriterionResult r{14, "orbit search"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto r7 = search::qnr_orbit_set({7}, std::nullopt, ctx.threads);
  size_t confirmed = 0;
  for (const auto& e : ctx.addcong_table) {
    std::vector<uint64_t> f;
    for (const auto& p : e.prime_factors) f.push_back(arith::to_u64(p));
    const auto res = search::qnr_orbit_set(f, std::vector<Natural>{e.c}, ctx.threads);
    confirmed += res.full_blockers.size() == 1;
  }
  bool near = false;
  for (const auto& nm : search::near_miss_scan(524287, 18, ctx.threads))
    if (nm.c == 27006) near = nm.failures == std::vector<uint64_t>{0} && nm.run_length == 18;
  auto rediscovers = [&](std::vector<uint64_t> pool, unsigned long target) {
    for (const auto& res : search::search_composite_blockers(pool, 4, ctx.threads))
      if (res.factors.size() == pool.size())
        return std::binary_search(res.full_blockers.begin(), res.full_blockers.end(), Natural(target));
    return false;
  };
  const bool f505 = rediscovers({47, 178481}, 505);
  const bool f37 = rediscovers({5, 17, 257}, 37);
  const double t = detail::since(t0);
  r.pass = r7.full_blockers.empty() && confirmed == ctx.addcong_table.size() && near && f505 && f37 && t < 300;
  r.detail = "blockers mod 7: " + std::to_string(r7.full_blockers.size()) + "; rows confirmed " + std::to_string(confirmed) +
             "/" + std::to_string(ctx.addcong_table.size()) + "; 27006 near miss " + (near ? "found" : "NOT found") +
             "; 505 " + (f505 ? "found" : "NOT found") + "; 37 " + (f37 ? "found" : "NOT found");
  return r;
}

using Runner = CriterionResult (*)(const Context&);

inline const std::vector<Runner>& all_criteria() {
  static const std::vector<Runner> runners{c1_cover_exhaustion, c2_cover_table, c3_addcong_table, c4_thm2, c5_thm3,
                                           c6_thm5, c7_gauss, c8_local_factors, c9_main_term, c10_thm24,
                                           c11_landau, c12_density, c13_romanoff, c14_search};
  return runners;
}

/// Runs one criterion; exceptions become failures with the error text.
inline CriterionResult run(int id, const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = all_criteria().at(id - 1)(ctx);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = detail::since(t0);
  return r;
}

inline json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}, {"data", r.data}};
}

}  // namespace coverlab::acceptance
