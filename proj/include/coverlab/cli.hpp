#pragma once

// Command-line front end. Exit codes: 0 success, 1 a verification found a
// violation, 2 usage or environment error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coverlab/acceptance.hpp"
#include "coverlab/io.hpp"

#ifndef COVERLAB_VERSION
#define COVERLAB_VERSION "0.0.0"
#endif

namespace coverlab::cli {

using json = nlohmann::json;

inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<uint64_t> u64_list(const std::string& s) {
  std::vector<uint64_t> out;
  for (const auto& t : split_list(s)) out.push_back(arith::to_u64(arith::nat(t)));
  return out;
}

/// Violations found by computation are exit 1; everything else is exit 2.
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::table_validation_failed:
    case ErrorKind::cover_failed:
    case ErrorKind::wieferich_violation:
      return kViolation;
    default:
      return kUsage;
  }
}

struct Emitter {
  std::ostream& out;
  void operator()(const json& j, const std::string& path = "") const {
    const std::string text = io::dump(j);
    if (!path.empty()) io::write_file(path, text);
    out << text;
  }
};

struct TableFiles {
  std::string cover;
  std::string addcong;

  void add(CLI::App* app) {
    app->add_option("--cover-table", cover, "JSON cover table replacing the built-in one");
    app->add_option("--addcong-table", addcong, "JSON additive table replacing the built-in one");
  }
  std::vector<tables::CoverTriple> cover_table() const {
    return cover.empty() ? tables::builtin_cover_table()
                         : io::cover_table_from_json(io::parse(io::read_file(cover), cover));
  }
  std::vector<tables::AddcongEntry> addcong_table() const {
    return addcong.empty() ? tables::builtin_addcong_table()
                           : io::addcong_table_from_json(io::parse(io::read_file(addcong), addcong));
  }
};

inline cover::CoverSystem astar_cover(const construct::ForbiddenClassCertificate& cert) {
  cover::CoverSystem cs;
  for (const auto& r : cert.per_index) {
    const auto& aux = std::get<construct::SquareModulusAux>(r.aux);
    cs.classes.push_back({r.a % aux.n_star, aux.n_star});
  }
  return cs;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"covering systems, forbidden residue classes and additive-density diagnostics", "coverlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(COVERLAB_VERSION));
  unsigned threads = default_threads();
  uint64_t seed = arith::FactorBudget{}.seed;
  app.add_option("--threads", threads, "worker threads (default: COVERLAB_THREADS or 1)")->check(CLI::Range(1, 256));
  app.add_option("--seed", seed, "seed for randomized factoring");
  const detail::Emitter emit{out};
  int code = kOk;
  std::function<void()> action;

  // arith -------------------------------------------------------------------
  auto* arith_cmd = app.add_subcommand("arith", "modular arithmetic utilities");
  arith_cmd->require_subcommand(1);
  std::string a_str, m_str, n_str;
  auto* order = arith_cmd->add_subcommand("order", "multiplicative order of a modulo m");
  order->add_option("--a", a_str)->required();
  order->add_option("--m", m_str)->required();
  order->callback([&] {
    action = [&] {
      arith::OrderOptions oo;
      oo.budget.seed = seed;
      const Natural m = arith::nat(m_str), a = arith::nat(a_str);
      emit({{"a", a_str}, {"m", m_str}, {"order", io::dec(arith::mult_order(a, m, oo))}});
    };
  });
  auto* jac = arith_cmd->add_subcommand("jacobi", "Jacobi symbol (a | n) for odd n");
  jac->add_option("--a", a_str)->required();
  jac->add_option("--n", n_str)->required();
  jac->callback([&] {
    action = [&] { emit({{"a", a_str}, {"n", n_str}, {"jacobi", arith::jacobi(Natural(a_str), arith::nat(n_str))}}); };
  });
  auto* fac = arith_cmd->add_subcommand("factor", "factor n with trial division and Pollard-Brent");
  fac->add_option("--n", n_str)->required();
  uint64_t rho_iters = arith::FactorBudget{}.rho_iterations;
  fac->add_option("--budget", rho_iters, "Pollard-Brent iteration budget per split");
  fac->callback([&] {
    action = [&] {
      arith::FactorBudget fb;
      fb.seed = seed;
      fb.rho_iterations = rho_iters;
      const auto f = arith::factorize(arith::nat(n_str), fb);
      json fs = json::array();
      for (const auto& pp : f.factors) {
        json o{{"p", io::dec(pp.prime)}, {"e", pp.exponent}};
        io::annotate_prime(o, pp.prime);
        fs.push_back(o);
      }
      json j{{"n", n_str}, {"factors", fs}, {"complete", f.complete()}};
      if (!f.complete()) j["cofactor"] = io::dec(f.cofactor);
      emit(j);
    };
  });

  // cover -------------------------------------------------------------------
  auto* cover_cmd = app.add_subcommand("cover", "covering systems");
  cover_cmd->require_subcommand(1);
  auto* cverify = cover_cmd->add_subcommand("verify", "exhaustively check that a system covers Z");
  std::string cover_file, builtin, json_out;
  auto* file_opt = cverify->add_option("--file", cover_file, "JSON {\"classes\":[{\"a\":..,\"n\":..}]}");
  cverify->add_option("--builtin", builtin, "A49 | A50 | Astar")
      ->check(CLI::IsMember({"A49", "A50", "Astar"}))
      ->excludes(file_opt);
  cverify->add_option("--json", json_out, "also write the verdict here");
  cverify->callback([&] {
    action = [&] {
      cover::CoverSystem cs;
      if (!cover_file.empty()) cs = io::cover_from_json(io::parse(io::read_file(cover_file), cover_file));
      else if (builtin == "A49") cs = tables::odd_cover(tables::builtin_cover_table());
      else if (builtin == "A50") cs = tables::doubled_cover(tables::builtin_cover_table());
      else if (builtin == "Astar") cs = detail::astar_cover(construct::build_thm5_corollary());
      else throw Error(ErrorKind::invalid_argument, "cover verify needs --file or --builtin");
      const auto v = cover::verify_cover(cs, threads);
      emit(io::to_json(v), json_out);
      code = v.covered ? kOk : kViolation;
    };
  });

  // tables ------------------------------------------------------------------
  auto* tables_cmd = app.add_subcommand("tables", "embedded data tables");
  tables_cmd->require_subcommand(1);
  auto* tvalidate = tables_cmd->add_subcommand("validate", "re-check every table row");
  std::string which = "both";
  detail::TableFiles tf;
  tvalidate->add_option("--which", which)->check(CLI::IsMember({"cover", "addcong", "both"}));
  tvalidate->add_option("--json", json_out, "also write the report here");
  tf.add(tvalidate);
  tvalidate->callback([&] {
    action = [&] {
      const auto ct = tf.cover_table();
      json j = json::object();
      bool ok = true;
      if (which != "addcong") {
        const auto rep = tables::validate_cover_table(ct);
        j["cover"] = io::to_json(rep);
        ok = ok && rep.pass();
      }
      if (which != "cover") {
        const auto rep = tables::validate_addcong_table(tf.addcong_table(), tables::cover_prime_product(ct));
        j["addcong"] = io::to_json(rep);
        ok = ok && rep.pass();
      }
      emit(j, json_out);
      code = ok ? kOk : kViolation;
    };
  });
  auto* texport = tables_cmd->add_subcommand("export", "print a built-in table as JSON");
  texport->add_option("--which", which)->check(CLI::IsMember({"cover", "addcong"}))->required();
  texport->callback([&] {
    action = [&] {
      emit(which == "cover" ? io::to_json(tables::builtin_cover_table()) : io::to_json(tables::builtin_addcong_table()));
    };
  });

  // construct ---------------------------------------------------------------
  auto* construct_cmd = app.add_subcommand("construct", "forbidden residue classes");
  construct_cmd->require_subcommand(1);
  auto* build = construct_cmd->add_subcommand("build", "build a certificate");
  std::string theorem, hs_file, es_file, out_file;
  build->add_option("theorem", theorem, "thm2 | thm3 | thm5")->required()->check(CLI::IsMember({"thm2", "thm3", "thm5"}));
  build->add_option("--hs", hs_file, "thm5: JSON {\"H\":[[h,...],...]} with one list per row");
  build->add_option("--es", es_file, "thm5: JSON {\"e\":[e_1,...]} with one entry per row");
  build->add_option("--out", out_file, "certificate output path");
  tf.add(build);
  build->callback([&] {
    action = [&] {
      construct::BuildOptions bo;
      bo.cover_table = tf.cover_table();
      bo.addcong_table = tf.addcong_table();
      construct::ForbiddenClassCertificate cert;
      if (theorem == "thm2") {
        cert = construct::build_thm2(bo);
      } else if (theorem == "thm3") {
        cert = construct::build_thm3(bo);
      } else {
        const size_t k = bo.cover_table.size();
        std::vector<std::vector<uint64_t>> H(k);
        std::vector<Natural> e(k, Natural(1));
        if (!hs_file.empty()) {
          H.clear();
          const json hj = io::parse(io::read_file(hs_file), hs_file);
          for (const auto& row : hj.at("H")) {
            H.emplace_back();
            for (const auto& h : row) H.back().push_back(io::to_u64(h, "h"));
          }
        }
        if (!es_file.empty()) {
          e.clear();
          const json ej = io::parse(io::read_file(es_file), es_file);
          for (const auto& v : ej.at("e")) e.push_back(io::to_natural(v, "e"));
        }
        cert = construct::build_thm5(H, e, bo);
      }
      emit(io::to_json(cert), out_file);
    };
  });
  auto* cverify2 = construct_cmd->add_subcommand("verify", "re-run the proof case analysis for a certificate");
  std::string cert_file, report_file;
  uint64_t periods = 1;
  cverify2->add_option("certificate", cert_file)->required();
  cverify2->add_option("--report", report_file, "also write the report here");
  cverify2->add_option("--periods", periods, "scan this many periods of n")->check(CLI::Range(1, 4));
  cverify2->callback([&] {
    action = [&] {
      const auto cert = io::certificate_from_json(io::parse(io::read_file(cert_file), cert_file));
      construct::VerifyOptions vo;
      vo.threads = threads;
      vo.periods = periods;
      const auto rep = construct::verify(cert, vo);
      emit(io::to_json(rep), report_file);
      code = rep.pass ? kOk : kViolation;
    };
  });

  // singular ----------------------------------------------------------------
  auto* singular_cmd = app.add_subcommand("singular", "singular series and lattice counts");
  singular_cmd->require_subcommand(1);
  uint64_t m = 1, N = 10000, q_max = 2000, trace = 0;
  std::string d_str = "1,1,1,1", n_list;
  bool primes = false;
  auto parse_d = [&] {
    const auto v = detail::u64_list(d_str);
    if (v.size() != 4) throw Error(ErrorKind::invalid_argument, "--d needs four entries");
    return singular::make_dtuple(v[0], v[1], v[2], v[3]);
  };
  auto* series = singular_cmd->add_subcommand("series", "truncated singular series with partial-sum trace");
  series->add_option("--m", m)->required();
  series->add_option("--d", d_str, "d1,d2,d3,d4 (squarefree)");
  series->add_option("--qmax", q_max);
  series->add_option("--trace", trace, "emit every k-th partial sum");
  series->callback([&] {
    action = [&] {
      const auto d = parse_d();
      auto j = io::to_json(singular::singular_series(m, d, q_max), trace);
      try {
        j["omega_product"] = singular::omega_product(d, m).get_str();
      } catch (const Error&) {
      }
      emit(j);
    };
  });
  auto* latcount = singular_cmd->add_subcommand("latcount", "exact count of x1^2+x4^2 = x2^2+x3^2+m");
  latcount->add_option("--m", m)->required();
  latcount->add_option("--N", N)->required();
  latcount->add_option("--d", d_str);
  latcount->add_flag("--primes", primes, "restrict x1, x2 to primes");
  latcount->callback([&] {
    action = [&] {
      const auto c = singular::lattice_count(m, N, parse_d(), primes, threads);
      emit({{"m", m}, {"N", N}, {"d", c.d.d}, {"prime_constrained", primes}, {"count", c.count}});
    };
  });
  auto* maincheck = singular_cmd->add_subcommand("maincheck", "CSV N,exact,main,ratio");
  maincheck->add_option("--m", m)->required();
  maincheck->add_option("--N-list", n_list)->required();
  maincheck->add_option("--qmax", q_max);
  maincheck->callback([&] {
    action = [&] {
      const singular::SeriesEngine eng(q_max);
      out << "N,exact,main,ratio\n";
      for (uint64_t n : detail::u64_list(n_list)) {
        const auto c = singular::lattice_count(m, n, singular::DTuple{}, false, threads);
        const double mt = singular::main_term(m, n, singular::DTuple{}, eng);
        out << n << "," << c.count << "," << acceptance::detail::fmt(mt, 12) << ","
            << acceptance::detail::fmt(double(c.count) / mt, 12) << "\n";
      }
    };
  });

  // density -----------------------------------------------------------------
  auto* density_cmd = app.add_subcommand("density", "sumset densities and Romanoff sums");
  density_cmd->require_subcommand(1);
  uint64_t limit = 1'000'000, pmax = 10'000'000, dmax = 1'000'000;
  unsigned x_exp = 16;
  std::string series_list;
  for (const char* name : {"s3", "s4"}) {
    auto* sc = density_cmd->add_subcommand(name, std::string("sieve ") + name + " on [1, N]");
    sc->add_option("--limit", limit);
    sc->add_option("--report", report_file, "also write the report here");
    sc->add_option("--series", series_list, "comma list of N: print CSV N,count,density,cs_bound instead");
    const bool s3 = std::string(name) == "s3";
    sc->callback([&, s3] {
      action = [&, s3] {
        auto run = [&](uint64_t n) { return s3 ? density::sieve_s3(n, threads) : density::sieve_s4(n, threads); };
        if (!series_list.empty()) {
          out << "N,count,density,cs_bound\n";
          for (uint64_t n : detail::u64_list(series_list)) {
            const auto r = run(n);
            out << n << "," << r.member_count << "," << acceptance::detail::fmt(r.density(), 10) << ","
                << acceptance::detail::fmt(r.cs_lower_bound, 10) << "\n";
          }
          return;
        }
        const auto r = run(limit);
        emit(io::to_json(r), report_file);
        code = r.cauchy_schwarz_holds() ? kOk : kViolation;
      };
    });
  }
  auto* landau = density_cmd->add_subcommand("landau", "Landau-Ramanujan constant by truncated product");
  landau->add_option("--pmax", pmax);
  landau->callback([&] {
    action = [&] {
      const auto k = density::landau_constant(pmax);
      emit({{"p_max", k.p_max}, {"raw", k.raw}, {"corrected", k.corrected}});
    };
  });
  auto* romanoff = density_cmd->add_subcommand("romanoff", "sum of 1/d over odd d with ord_2(d) <= x");
  romanoff->add_option("--x", x_exp)->check(CLI::Range(1, 64));
  romanoff->add_option("--dmax", dmax);
  romanoff->callback([&] {
    action = [&] { emit({{"x", x_exp}, {"d_max", dmax}, {"E", density::romanoff_sum(x_exp, dmax)}}); };
  });
  auto* pairs = density_cmd->add_subcommand("pairs", "pairs x, x+m both free of primes = 3 (mod 4)");
  pairs->add_option("--m", m)->required();
  pairs->add_option("--limit", limit);
  pairs->callback([&] {
    action = [&] {
      const auto p = density::q_pair_count(limit, m);
      emit({{"N", p.N}, {"m", p.m}, {"count", p.count}, {"bound_factor", p.bound_factor}, {"ratio", p.ratio}});
    };
  });

  // search ------------------------------------------------------------------
  auto* search_cmd = app.add_subcommand("search", "non-square orbits of c + 2^n");
  search_cmd->require_subcommand(1);
  std::string factors_str, c_str, pool_file;
  bool all = false;
  unsigned max_factors = 2;
  uint64_t p_val = 0, min_run = 1;
  auto* orbit = search_cmd->add_subcommand("orbit", "test c, or all c, modulo a product of odd primes");
  orbit->add_option("--factors", factors_str)->required();
  auto* c_opt = orbit->add_option("--c", c_str, "comma list of candidates");
  orbit->add_flag("--all", all, "scan c = 1..modulus")->excludes(c_opt);
  orbit->callback([&] {
    action = [&] {
      std::optional<std::vector<Natural>> cands;
      if (!all) {
        if (c_str.empty()) throw Error(ErrorKind::invalid_argument, "search orbit needs --c or --all");
        cands.emplace();
        for (const auto& t : detail::split_list(c_str)) cands->push_back(arith::nat(t));
      }
      emit(io::to_json(search::qnr_orbit_set(detail::u64_list(factors_str), cands, threads)));
    };
  });
  auto* sbuild = search_cmd->add_subcommand("build", "combine per-prime blocked sets over subsets of a pool");
  sbuild->add_option("--pool", pool_file, "JSON {\"primes\":[...]}")->required();
  sbuild->add_option("--max-factors", max_factors)->check(CLI::Range(1, 4));
  sbuild->callback([&] {
    action = [&] {
      std::vector<uint64_t> pool;
      const json pj = io::parse(io::read_file(pool_file), pool_file);
      for (const auto& p : pj.at("primes")) pool.push_back(io::to_u64(p, "prime"));
      json arr = json::array();
      for (const auto& r : search::search_composite_blockers(pool, max_factors, threads)) arr.push_back(io::to_json(r));
      emit({{"results", arr}});
    };
  });
  auto* nearmiss = search_cmd->add_subcommand("nearmiss", "c with long non-residue runs modulo p");
  nearmiss->add_option("--p", p_val)->required();
  nearmiss->add_option("--min-run", min_run);
  nearmiss->callback([&] {
    action = [&] {
      json arr = json::array();
      for (const auto& nm : search::near_miss_scan(p_val, min_run, threads)) arr.push_back(io::to_json(nm));
      emit({{"p", p_val}, {"min_run", min_run}, {"results", arr}});
    };
  });

  // bundle ------------------------------------------------------------------
  auto* bundle = app.add_subcommand("bundle", "run the acceptance suite and write a manifest");
  std::string out_dir, criteria_str;
  bundle->add_option("--out", out_dir)->required();
  bundle->add_option("--criteria", criteria_str, "comma list of criterion ids (default: all)");
  tf.add(bundle);
  bundle->callback([&] {
    action = [&] {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw Error(ErrorKind::io, "cannot create " + out_dir + ": " + ec.message());
      acceptance::Context ctx;
      ctx.cover_table = tf.cover_table();
      ctx.addcong_table = tf.addcong_table();
      ctx.threads = threads;
      std::vector<uint64_t> ids;
      if (criteria_str.empty())
        for (size_t i = 1; i <= acceptance::all_criteria().size(); ++i) ids.push_back(i);
      else
        ids = detail::u64_list(criteria_str);
      json results = json::array();
      bool ok = true;
      for (uint64_t id : ids) {
        if (id < 1 || id > acceptance::all_criteria().size())
          throw Error(ErrorKind::invalid_argument, "no criterion " + std::to_string(id));
        const auto r = acceptance::run(int(id), ctx);
        ok = ok && r.pass;
        results.push_back(acceptance::to_json(r));
        err << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << "\n";
      }
      const json manifest{{"version", COVERLAB_VERSION},
                          {"threads", threads},
                          {"factor_seed", seed},
                          {"tables",
                           {{"cover", tf.cover.empty() ? "builtin" : tf.cover},
                            {"addcong", tf.addcong.empty() ? "builtin" : tf.addcong},
                            {"cover_checksum", tables::table_checksum(ctx.cover_table)},
                            {"addcong_checksum", tables::table_checksum(ctx.addcong_table)}}},
                          {"criteria", results},
                          {"pass", ok}};
      io::write_file((std::filesystem::path(out_dir) / "manifest.json").string(), io::dump(manifest));
      out << (std::filesystem::path(out_dir) / "manifest.json").string() << "\n";
      code = ok ? kOk : kViolation;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << COVERLAB_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  if (!action) {
    err << app.help();
    return kUsage;
  }
  try {
    action();
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return detail::exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}

}  // namespace coverlab::cli
