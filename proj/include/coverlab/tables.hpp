#pragma once

// The two embedded data tables (cover triples, additive-congruence pairs) and
// row-by-row validators for every property the constructions rely on.

#include <cstdint>
#include <string>
#include <vector>

#include "coverlab/arith.hpp"
#include "coverlab/cover.hpp"

namespace coverlab::tables {

using arith::nat;

/// Cover row: class a'(n') of the odd-moduli cover and its prime p, with
/// p = 3 (mod 4) dividing 2^{n'} - 1 or 2^{n'} + 1.
struct CoverTriple {
  uint64_t a_prime = 0;
  uint64_t n_prime = 1;
  Natural p;
};

/// Additive row: c + 2^n is a non-square modulo r = product of the factors.
struct AddcongEntry {
  Natural c;
  std::vector<Natural> prime_factors;

  Natural r() const {
    Natural v = 1;
    for (const auto& f : prime_factors) v *= f;
    return v;
  }
};

/// Number of rows of the printed cover table; the table returned by
/// builtin_cover_table() carries one extra row for the class 0(2).
inline constexpr size_t kPrintedCoverRows = 49;

inline std::vector<CoverTriple> builtin_cover_table() {
  struct Row {
    uint64_t a, n;
    const char* p;
  };
  static constexpr Row rows[] = {
      {0, 3, "7"},
      {1, 15, "11"},
      {4, 15, "31"},
      {7, 15, "151"},
      {10, 15, "331"},
      {13, 105, "43"},
      {28, 105, "71"},
      {43, 105, "127"},
      {58, 105, "211"},
      {73, 105, "29191"},
      {88, 105, "86171"},
      {103, 315, "870031"},
      {208, 315, "983431"},
      {313, 315, "1765891"},
      {2, 9, "19"},
      {5, 27, "87211"},
      {14, 81, "71119"},
      {41, 81, "97685839"},
      {68, 81, "163"},
      {23, 135, "271"},
      {50, 135, "631"},
      {77, 135, "811"},
      {104, 135, "23311"},
      {131, 135, "348031"},
      {8, 99, "23"},
      {17, 99, "67"},
      {26, 99, "199"},
      {35, 99, "683"},
      {44, 99, "5347"},
      {53, 99, "599479"},
      {62, 99, "33057806959"},
      {71, 99, "242099935645987"},
      {80, 495, "991"},
      {179, 495, "2971"},
      {278, 495, "3191"},
      {377, 495, "48912491"},
      {476, 495, "2252127523412251"},
      {89, 693, "463"},
      {188, 693, "5419"},
      {287, 693, "14323"},
      {386, 693, "289511839"},
      {485, 693, "35532364099"},
      {584, 693, "2868251407519807"},
      {683, 693, "581283643249112959"},
      {98, 297, "694387"},
      {197, 297, "14973866897175265228063698945547"},
      {296, 891, "1783"},
      {593, 891, "1409033313878253109224688819"},
      {890, 891, "12430037668834128259094186647"},
      // appended class 0(2) of the doubled cover, with its prime
      {0, 2, "3"},
  };
  std::vector<CoverTriple> out;
  for (const auto& r : rows) out.push_back({r.a, r.n, nat(r.p)});
  return out;
}

inline std::vector<AddcongEntry> builtin_addcong_table() {
  struct Row {
    const char* c;
    std::vector<const char*> factors;
  };
  static const Row rows[] = {
      {"505", {"47", "178481"}},
      {"5519", {"601", "1801"}},
      {"366", {"2731", "8191"}},
      {"1303", {"73", "262657"}},
      {"5149", {"233", "2089"}},
      {"5938", {"43691", "131071"}},
      {"182725", {"223", "616318177"}},
      {"12153", {"174763", "524287"}},
      {"148671", {"13367", "164511353"}},
      {"490297", {"431", "2099863"}},
      {"115115", {"2351", "13264529"}},
      {"2370639", {"6361", "20394401"}},
      {"37", {"5", "17", "257"}},
      {"5615", {"13", "37", "109"}},
      {"146", {"89", "397", "2113"}},
      {"637", {"97", "241", "673"}},
      {"6393", {"103", "2143", "11119"}},
      {"13847", {"53", "157", "1613"}},
      {"1799", {"29", "113", "15790321"}},
      {"335", {"59", "1103", "3033169"}},
      {"451", {"337", "92737", "649657"}},
      {"1479", {"641", "65537", "6700417"}},
      {"40655", {"137", "953", "26317"}},
      {"13353", {"228479", "48544121", "212885833"}},
      {"23775", {"439", "2298041", "9361973132609"}},
      {"10334", {"229", "457", "525313"}},
      {"65971", {"2687", "202029703", "1113491139767"}},
      {"5893", {"41", "61681", "4278255361"}},
      {"1344867", {"911", "112901153", "23140471537"}},
      {"560826", {"277", "1013", "30269"}},
      {"406789", {"283", "4513", "165768537521"}},
      {"415099", {"191", "420778751", "30327152671"}},
      {"61153", {"101", "4051", "8101"}},
      {"1261375", {"307", "2857", "6529"}},
      {"1324442", {"107", "69431", "28059810762433"}},
      {"1663519", {"321679", "26295457", "319020217"}},
      {"2094571", {"3391", "23279", "65993"}},
      {"1032375", {"571", "32377", "1212847"}},
      {"6321391", {"14951", "4036961", "2646507710984041"}},
      {"19031871", {"937", "6553", "7830118297"}},
      {"7918330", {"2833", "37171", "179951"}},
      {"2286429", {"61", "1321", "4562284561"}},
      {"2227201", {"5581", "8681", "49477"}},
      {"207773684", {"131", "409891", "7623851"}},
      {"2526613", {"281", "122921", "7416361"}},
      {"5596695", {"433", "577", "38737"}},
      {"25234915", {"593", "1777", "25781083"}},
      {"7950774", {"251", "100801", "10567201"}},
      {"10130779", {"313", "21841", "121369"}},
      {"14272093", {"1429", "3361", "14449"}},
  };
  std::vector<AddcongEntry> out;
  for (const auto& r : rows) {
    AddcongEntry e{nat(r.c), {}};
    for (const char* f : r.factors) e.prime_factors.push_back(nat(f));
    out.push_back(std::move(e));
  }
  return out;
}

/// The printed 49-class cover with odd moduli.
inline cover::CoverSystem odd_cover(const std::vector<CoverTriple>& table) {
  cover::CoverSystem cs;
  for (size_t i = 0; i < std::min(table.size(), kPrintedCoverRows); ++i)
    cs.classes.push_back(cover::make_class(table[i].a_prime, table[i].n_prime));
  return cs;
}

/// The doubled 50-class cover (printed rows lifted to moduli 2n', then 0(2)).
inline cover::CoverSystem doubled_cover(const std::vector<CoverTriple>& table) {
  return cover::double_cover(odd_cover(table));
}

/// Primes p_1..p_50 attached to the doubled cover, in row order.
inline std::vector<Natural> cover_primes(const std::vector<CoverTriple>& table) {
  std::vector<Natural> ps;
  for (const auto& t : table) ps.push_back(t.p);
  return ps;
}

inline Natural cover_prime_product(const std::vector<CoverTriple>& table) {
  Natural m = 1;
  for (const auto& t : table) m *= t.p;
  return m;
}

// ---------------------------------------------------------------------------
// Validation reports

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  bool probable = false;  // verdict rests on a probable-prime test
};

struct RowReport {
  size_t row = 0;  // 1-based, as printed
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct ValidationReport {
  std::string table;
  std::vector<RowReport> rows;
  bool probable_primality = false;  // some prime verdict is a probable-prime verdict

  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass()) return false;
    return true;
  }
  std::vector<size_t> failing_rows() const {
    std::vector<size_t> out;
    for (const auto& r : rows)
      if (!r.pass()) out.push_back(r.row);
    return out;
  }
};

namespace detail {

inline Check primality_check(const std::string& name, const Natural& p, bool& probable) {
  const auto pr = arith::primality(p);
  if (pr.prime && !pr.proven) probable = true;
  std::string detail = arith::to_decimal(p) + (pr.prime ? (pr.proven ? " prime" : " probable prime") : " composite");
  return {name, pr.prime, detail, pr.prime && !pr.proven};
}

}  // namespace detail

/// Checks each cover row: primality, p = 3 (mod 4), 2^{n'} = +-1 (mod p)
/// (recording which sign), odd n', a' < n', and distinct primes. The appended
/// row 0(2) is checked against 2^2 = 1 (mod p).
inline ValidationReport validate_cover_table(const std::vector<CoverTriple>& table) {
  ValidationReport rep;
  rep.table = "cover";
  for (size_t i = 0; i < table.size(); ++i) {
    const auto& t = table[i];
    RowReport row;
    row.row = i + 1;
    row.checks.push_back(detail::primality_check("prime", t.p, rep.probable_primality));
    const bool p3 = mpz_fdiv_ui(t.p.get_mpz_t(), 4) == 3;
    row.checks.push_back({"p_mod_4_is_3", p3, "p mod 4 = " + std::to_string(mpz_fdiv_ui(t.p.get_mpz_t(), 4))});
    row.checks.push_back({"residue_below_modulus", t.a_prime < t.n_prime,
                          std::to_string(t.a_prime) + " < " + std::to_string(t.n_prime)});
    if (i < kPrintedCoverRows) {
      row.checks.push_back({"modulus_odd", t.n_prime % 2 == 1, "n' = " + std::to_string(t.n_prime)});
      const Natural r = arith::mod_pow(2, arith::nat(t.n_prime), t.p);
      const bool plus = r == t.p - 1;
      const bool minus = r == 1;
      row.checks.push_back({"divides_2^n'-1_or_2^n'+1", plus || minus,
                            minus ? "p | 2^n' - 1" : (plus ? "p | 2^n' + 1" : "2^n' mod p = " + arith::to_decimal(r))});
    } else {
      const Natural r = arith::mod_pow(2, arith::nat(t.n_prime), t.p);
      row.checks.push_back({"2^n=1_mod_p", r == 1, "2^n mod p = " + arith::to_decimal(r)});
    }
    std::string dup;
    for (size_t j = 0; j < table.size(); ++j)
      if (j != i && table[j].p == t.p) dup += (dup.empty() ? "" : ",") + std::to_string(j + 1);
    row.checks.push_back({"prime_distinct", dup.empty(), dup.empty() ? "distinct" : "repeated in rows " + dup});
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// 2-order of the squarefree product of the given primes: lcm of the orders.
inline uint64_t two_order_of_product(std::span<const Natural> primes) {
  uint64_t T = 1;
  for (const auto& p : primes) T = std::lcm(T, arith::to_u64(arith::mult_order(2, p)));
  return T;
}

/// First n in [0, period) at which c + 2^n is a square mod every factor, if any.
/// Evaluates one Jacobi symbol per factor and exponent.
inline std::optional<uint64_t> first_square_in_orbit(const Natural& c, std::span<const Natural> primes, uint64_t period) {
  std::vector<uint64_t> ps, cs, pow2;
  for (const auto& p : primes) {
    ps.push_back(arith::to_u64(p));
    cs.push_back(arith::to_u64(arith::mod(c, p)));
    pow2.push_back(1 % ps.back());
  }
  for (uint64_t n = 0; n < period; ++n) {
    bool square = true;
    for (size_t i = 0; i < ps.size() && square; ++i) {
      const uint64_t v = static_cast<uint64_t>((static_cast<unsigned __int128>(cs[i]) + pow2[i]) % ps[i]);
      if (arith::jacobi_u64(v, ps[i]) == -1) square = false;
    }
    if (square) return n;
    for (size_t i = 0; i < ps.size(); ++i) pow2[i] = arith::mul_mod(pow2[i], 2, ps[i]);
  }
  return std::nullopt;
}

/// Checks each additive row: prime factors, distinctness, 1 <= c < r,
/// gcd(r, M1) = 1, pairwise coprime moduli, and that c + 2^n is a non-square
/// mod r for every n in one period [0, ord_2(r)).
inline ValidationReport validate_addcong_table(const std::vector<AddcongEntry>& table, const Natural& M1) {
  ValidationReport rep;
  rep.table = "addcong";
  for (size_t i = 0; i < table.size(); ++i) {
    const auto& e = table[i];
    RowReport row;
    row.row = i + 1;
    bool all_prime = !e.prime_factors.empty();
    for (size_t k = 0; k < e.prime_factors.size(); ++k) {
      auto chk = detail::primality_check("factor_" + std::to_string(k + 1) + "_prime", e.prime_factors[k],
                                         rep.probable_primality);
      all_prime = all_prime && chk.pass;
      row.checks.push_back(std::move(chk));
    }
    bool distinct = true, odd = true;
    for (size_t a = 0; a < e.prime_factors.size(); ++a) {
      if (mpz_even_p(e.prime_factors[a].get_mpz_t())) odd = false;
      for (size_t b = a + 1; b < e.prime_factors.size(); ++b)
        if (e.prime_factors[a] == e.prime_factors[b]) distinct = false;
    }
    const Natural r = e.r();
    row.checks.push_back({"factors_distinct_odd", distinct && odd, "r = " + arith::to_decimal(r)});
    row.checks.push_back({"c_in_range", e.c >= 1 && e.c < r, "c = " + arith::to_decimal(e.c)});
    const Natural g = arith::gcd(r, M1);
    row.checks.push_back({"coprime_to_M1", g == 1, "gcd(r, M1) = " + arith::to_decimal(g)});
    std::string clash;
    for (size_t j = 0; j < table.size(); ++j)
      if (j != i && arith::gcd(table[j].r(), r) != 1) clash += (clash.empty() ? "" : ",") + std::to_string(j + 1);
    row.checks.push_back({"pairwise_coprime", clash.empty(), clash.empty() ? "coprime to all rows" : "shares a factor with rows " + clash});

    bool fits = true;
    for (const auto& p : e.prime_factors) fits = fits && arith::fits_u64(p) && p > 2;
    if (!(all_prime && distinct && odd && fits)) {
      row.checks.push_back({"non_square_orbit", false, "skipped: factor list invalid"});
    } else {
      const uint64_t T = two_order_of_product(e.prime_factors);
      const auto hit = first_square_in_orbit(e.c, e.prime_factors, T);
      row.checks.push_back({"non_square_orbit", !hit.has_value(),
                            hit ? "c + 2^" + std::to_string(*hit) + " is a square mod r"
                                : "period " + std::to_string(T) + ", all non-squares"});
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Transcription checksums (FNV-1a over a canonical rendering)

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t table_checksum(const std::vector<CoverTriple>& table) {
  std::string s;
  for (const auto& t : table) s += std::to_string(t.a_prime) + "," + std::to_string(t.n_prime) + "," + arith::to_decimal(t.p) + ";";
  return fnv1a(s);
}

inline uint64_t table_checksum(const std::vector<AddcongEntry>& table) {
  std::string s;
  for (const auto& e : table) {
    s += arith::to_decimal(e.c) + ":";
    for (const auto& f : e.prime_factors) s += arith::to_decimal(f) + "x";
    s += ";";
  }
  return fnv1a(s);
}

}  // namespace coverlab::tables
