#pragma once

// JSON reading and writing. Keys are emitted sorted; big integers are decimal
// strings; any value whose primality rests on a probable-prime test carries
// "primality": "probable".

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coverlab/arith.hpp"
#include "coverlab/construct.hpp"
#include "coverlab/cover.hpp"
#include "coverlab/density.hpp"
#include "coverlab/error.hpp"
#include "coverlab/search.hpp"
#include "coverlab/singular.hpp"
#include "coverlab/tables.hpp"

namespace coverlab::io {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed for " + path);
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_argument, what + ": " + e.what());
  }
}

/// Accepts a JSON number or a decimal string.
inline Natural to_natural(const json& j, const std::string& what) {
  if (j.is_string()) {
    try {
      return arith::nat(j.get<std::string>());
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_argument, what + ": not a decimal integer");
    }
  }
  if (j.is_number_unsigned()) return arith::nat(j.get<uint64_t>());
  if (j.is_number_integer() && j.get<int64_t>() >= 0) return arith::nat(static_cast<uint64_t>(j.get<int64_t>()));
  throw Error(ErrorKind::invalid_argument, what + ": expected a nonnegative integer");
}

inline uint64_t to_u64(const json& j, const std::string& what) {
  const Natural n = to_natural(j, what);
  if (!arith::fits_u64(n)) throw Error(ErrorKind::invalid_argument, what + ": exceeds 64 bits");
  return arith::to_u64(n);
}

inline std::string dec(const Natural& n) { return arith::to_decimal(n); }

/// A prime written with its confidence: above 2^64 the verdict is probabilistic.
inline void annotate_prime(json& obj, const Natural& p) {
  if (!arith::fits_u64(p)) obj["primality"] = "probable";
}

// ---------------------------------------------------------------------------
// Covers and tables

inline cover::CoverSystem cover_from_json(const json& j) {
  if (!j.contains("classes") || !j["classes"].is_array())
    throw Error(ErrorKind::invalid_argument, "cover file needs a \"classes\" array");
  cover::CoverSystem cs;
  for (const auto& c : j["classes"]) cs.classes.push_back(cover::make_class(to_u64(c.at("a"), "a"), to_u64(c.at("n"), "n")));
  return cs;
}

inline json to_json(const cover::CoverSystem& cs) {
  json arr = json::array();
  for (const auto& c : cs.classes) arr.push_back({{"a", c.a}, {"n", c.n}});
  return {{"classes", arr}};
}

inline json to_json(const cover::CoverVerdict& v) {
  json j{{"covered", v.covered}, {"lcm", v.lcm}};
  if (v.witness) j["witness"] = *v.witness;
  return j;
}

inline std::vector<tables::CoverTriple> cover_table_from_json(const json& j) {
  std::vector<tables::CoverTriple> out;
  for (const auto& r : j.at("rows"))
    out.push_back({to_u64(r.at("a"), "a"), to_u64(r.at("n"), "n"), to_natural(r.at("p"), "p")});
  return out;
}

inline json to_json(const std::vector<tables::CoverTriple>& table) {
  json rows = json::array();
  for (const auto& t : table) {
    json r{{"a", t.a_prime}, {"n", t.n_prime}, {"p", dec(t.p)}};
    annotate_prime(r, t.p);
    rows.push_back(r);
  }
  return {{"rows", rows}};
}

inline std::vector<tables::AddcongEntry> addcong_table_from_json(const json& j) {
  std::vector<tables::AddcongEntry> out;
  for (const auto& r : j.at("rows")) {
    tables::AddcongEntry e;
    e.c = to_natural(r.at("c"), "c");
    for (const auto& f : r.at("factors")) e.prime_factors.push_back(to_natural(f, "factor"));
    out.push_back(std::move(e));
  }
  return out;
}

inline json to_json(const std::vector<tables::AddcongEntry>& table) {
  json rows = json::array();
  for (const auto& e : table) {
    json f = json::array();
    for (const auto& p : e.prime_factors) f.push_back(dec(p));
    rows.push_back({{"c", dec(e.c)}, {"factors", f}});
  }
  return {{"rows", rows}};
}

inline json to_json(const tables::Check& c) {
  json j{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
  if (c.probable) j["primality"] = "probable";
  return j;
}

inline json checks_json(const std::vector<tables::Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back(to_json(c));
  return arr;
}

inline json to_json(const tables::ValidationReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) rows.push_back({{"row", r.row}, {"pass", r.pass()}, {"checks", checks_json(r.checks)}});
  return {{"table", rep.table}, {"pass", rep.pass()}, {"failing_rows", rep.failing_rows()}, {"rows", rows}};
}

// ---------------------------------------------------------------------------
// Certificates

inline json to_json(const construct::ForbiddenClassCertificate& cert) {
  json comps = json::array();
  for (const auto& r : cert.per_index) {
    json c{{"s", r.s}, {"a", r.a}, {"n", r.n}, {"p", dec(r.p)}};
    annotate_prime(c, r.p);
    if (const auto* x = std::get_if<construct::SquareShiftAux>(&r.aux)) {
      c["q"] = dec(x->q);
    } else if (const auto* x = std::get_if<construct::AddcongAux>(&r.aux)) {
      c["c"] = dec(x->c);
      json f = json::array();
      for (const auto& p : x->r_factors) f.push_back(dec(p));
      c["r_factors"] = f;
    } else if (const auto* x = std::get_if<construct::SquareModulusAux>(&r.aux)) {
      c["n_star"] = x->n_star;
      c["a_star"] = dec(x->a_star);
      c["e"] = dec(x->e);
      json ex = json::array();
      for (const auto& h : x->exceptions) ex.push_back({{"h", h.h}, {"q", dec(h.q)}});
      c["exceptions"] = ex;
    }
    comps.push_back(c);
  }
  return {{"theorem", construct::to_string(cert.theorem)},
          {"alpha", dec(cert.alpha)},
          {"M", dec(cert.M)},
          {"components", comps},
          {"notes", cert.notes}};
}

inline construct::ForbiddenClassCertificate certificate_from_json(const json& j) {
  construct::ForbiddenClassCertificate cert;
  const std::string tag = j.at("theorem").get<std::string>();
  if (tag == "thm2") cert.theorem = construct::Theorem::thm2;
  else if (tag == "thm3") cert.theorem = construct::Theorem::thm3;
  else if (tag == "thm5") cert.theorem = construct::Theorem::thm5;
  else throw Error(ErrorKind::invalid_argument, "unknown theorem tag " + tag);
  cert.alpha = to_natural(j.at("alpha"), "alpha");
  cert.M = to_natural(j.at("M"), "M");
  for (const auto& c : j.at("components")) {
    construct::IndexRecord r;
    r.s = to_u64(c.at("s"), "s");
    r.a = to_u64(c.at("a"), "a");
    r.n = to_u64(c.at("n"), "n");
    if (r.n == 0) throw Error(ErrorKind::invalid_argument, "component modulus n must be >= 1");
    r.p = to_natural(c.at("p"), "p");
    if (!arith::fits_u64(r.p)) cert.probable_primality = true;
    switch (cert.theorem) {
      case construct::Theorem::thm2:
        r.aux = construct::SquareShiftAux{to_natural(c.at("q"), "q")};
        break;
      case construct::Theorem::thm3: {
        construct::AddcongAux x{to_natural(c.at("c"), "c"), {}};
        for (const auto& f : c.at("r_factors")) x.r_factors.push_back(to_natural(f, "r factor"));
        r.aux = std::move(x);
        break;
      }
      case construct::Theorem::thm5: {
        construct::SquareModulusAux x;
        x.n_star = to_u64(c.at("n_star"), "n_star");
        x.a_star = to_natural(c.at("a_star"), "a_star");
        x.e = to_natural(c.at("e"), "e");
        for (const auto& h : c.at("exceptions")) x.exceptions.push_back({to_u64(h.at("h"), "h"), to_natural(h.at("q"), "q")});
        r.aux = std::move(x);
        break;
      }
    }
    cert.per_index.push_back(std::move(r));
  }
  if (j.contains("notes"))
    for (const auto& n : j["notes"]) cert.notes.push_back(n.get<std::string>());
  return cert;
}

/// Exponent lists in reports are capped; the full count is kept alongside.
inline constexpr size_t kMaxListedExponents = 100;

inline json capped(const std::vector<uint64_t>& xs) {
  std::vector<uint64_t> head(xs.begin(), xs.begin() + std::min(xs.size(), kMaxListedExponents));
  return {{"count", xs.size()}, {"first", head}};
}

inline json to_json(const construct::ProofReport& rep) {
  return {{"theorem", construct::to_string(rep.theorem)},
          {"pass", rep.pass},
          {"period", rep.period},
          {"n_checked", rep.n_checked},
          {"uncovered_n", capped(rep.uncovered_n)},
          {"failed_n", capped(rep.failed_n)},
          {"checks", checks_json(rep.checks)},
          {"notes", rep.notes}};
}

// ---------------------------------------------------------------------------
// Analytic and density reports

inline json to_json(const singular::SingularEvaluation& ev, size_t trace_every = 0) {
  json j{{"m", ev.m},
         {"d", ev.d.d},
         {"q_max", ev.q_max},
         {"value", ev.value},
         {"stabilized", ev.stabilized},
         {"tail_spread", ev.tail_spread}};
  if (trace_every) {
    json tr = json::array();
    for (size_t q = trace_every; q <= ev.partial_sums.size(); q += trace_every) tr.push_back({q, ev.partial_sums[q - 1]});
    j["trace"] = tr;
  }
  return j;
}

inline std::string u128_decimal(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), char('0' + int(v % 10)));
    v /= 10;
  }
  return s;
}

inline json to_json(const density::DensityReport& r) {
  json prof = json::object();
  for (const auto& [key, count] : r.residue_profile)
    prof["mod" + std::to_string(key.first)][std::to_string(key.second)] = count;
  return {{"N", r.N},
          {"set", density::to_string(r.set)},
          {"member_count", r.member_count},
          {"density", r.density()},
          {"sum_r", r.sum_r},
          {"sum_r_sq", u128_decimal(r.sum_r_sq)},
          {"cs_lower_bound", r.cs_lower_bound},
          {"cauchy_schwarz_holds", r.cauchy_schwarz_holds()},
          {"residue_profile", prof}};
}

inline json to_json(const search::NearMiss& nm) {
  return {{"c", dec(nm.c)}, {"run_length", nm.run_length}, {"failures", nm.failures}};
}

inline json to_json(const search::OrbitResult& r) {
  json b = json::array();
  for (const auto& c : r.full_blockers) b.push_back(dec(c));
  json j{{"modulus", dec(r.modulus)}, {"factors", r.factors}, {"period", r.period}, {"full_blockers", b}};
  if (r.best_near_miss) j["best_near_miss"] = to_json(*r.best_near_miss);
  return j;
}

}  // namespace coverlab::io
