#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "coverlab/cli.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using coverlab::Natural;

namespace {

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = coverlab::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("coverlab_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { coverlab::io::write_file(path(name), text); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CoverVerifyBuiltin) {
  auto r = run({"cover", "verify", "--builtin", "A49"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j(), (json{{"covered", true}, {"lcm", 31185}}));
  r = run({"cover", "verify", "--builtin", "A50"});
  EXPECT_EQ(r.j()["lcm"], 62370);
  r = run({"cover", "verify", "--builtin", "Astar"});
  EXPECT_EQ(r.code, 0);
}

TEST_F(Cli, CoverVerifyBadFile) {
  write("bad.json", R"({"classes":[{"a":0,"n":2},{"a":1,"n":4}]})");
  const auto r = run({"cover", "verify", "--file", path("bad.json"), "--json", path("verdict.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.j()["covered"], false);
  EXPECT_EQ(r.j()["witness"], 3);
  EXPECT_EQ(coverlab::io::read_file(path("verdict.json")), r.out);
}

TEST_F(Cli, UsageErrors) {
  auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  r = run({});
  EXPECT_EQ(r.code, 2);
  r = run({"cover", "verify", "--file", path("missing.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("io"), std::string::npos);
  r = run({"density", "s3", "--limit", "1000000000"});
  EXPECT_EQ(r.code, 2);
  r = run({"--threads", "0", "cover", "verify", "--builtin", "A49"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, Arith) {
  EXPECT_EQ(run({"arith", "order", "--a", "2", "--m", "8388607"}).j()["order"], "23");
  EXPECT_EQ(run({"arith", "jacobi", "--a", "27007", "--n", "524287"}).j()["jacobi"], 1);
  EXPECT_EQ(run({"arith", "jacobi", "--a", "-1", "--n", "7"}).j()["jacobi"], -1);
  const auto f = run({"arith", "factor", "--n", "8388607"}).j();
  EXPECT_EQ(f["factors"][0]["p"], "47");
  EXPECT_EQ(f["factors"][1]["p"], "178481");
  EXPECT_EQ(f["complete"], true);
  EXPECT_EQ(run({"arith", "order", "--a", "6", "--m", "9"}).code, 2);
}

TEST_F(Cli, ConstructRoundTrip) {
  for (const std::string t : {"thm2", "thm3", "thm5"}) {
    const std::string c = path(t + ".json");
    auto b = run({"construct", "build", t, "--out", c});
    ASSERT_EQ(b.code, 0) << b.err;
    auto v = run({"construct", "verify", c, "--report", path(t + ".report.json")});
    EXPECT_EQ(v.code, 0) << t << v.err;
    EXPECT_EQ(v.j()["pass"], true);
    // flip the last digit of alpha
    json cert = json::parse(coverlab::io::read_file(c));
    std::string a = cert["alpha"];
    a.back() = a.back() == '9' ? '8' : char(a.back() + 1);
    cert["alpha"] = a;
    write("mut.json", coverlab::io::dump(cert));
    v = run({"construct", "verify", path("mut.json")});
    EXPECT_EQ(v.code, 1) << t;
    EXPECT_EQ(v.j()["pass"], false);
  }
}

TEST_F(Cli, ConstructThm5Inputs) {
  json H = json::array(), e = json::array();
  for (int s = 0; s < 50; ++s) {
    H.push_back(json::array());
    e.push_back(1);
  }
  H[0] = {1};
  write("hs.json", json{{"H", H}}.dump());
  write("es.json", json{{"e", e}}.dump());
  auto b = run({"construct", "build", "thm5", "--hs", path("hs.json"), "--es", path("es.json"), "--out", path("c.json")});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.j()["components"][0]["exceptions"].size(), 1u);
  EXPECT_EQ(run({"construct", "verify", path("c.json")}).code, 0);
  H[0] = {2};
  write("hs.json", json{{"H", H}}.dump());
  EXPECT_EQ(run({"construct", "build", "thm5", "--hs", path("hs.json")}).code, 2);
}

TEST_F(Cli, TamperedTableIsReported) {
  const auto exported = run({"tables", "export", "--which", "cover"});
  ASSERT_EQ(exported.code, 0);
  json t = exported.j();
  t["rows"][6]["p"] = "103";
  write("cover.json", t.dump());
  auto v = run({"tables", "validate", "--which", "cover", "--cover-table", path("cover.json")});
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(v.j()["cover"]["failing_rows"], json::array({7}));
  auto b = run({"construct", "build", "thm2", "--cover-table", path("cover.json")});
  EXPECT_EQ(b.code, 1);
  EXPECT_NE(b.err.find("table-validation-failed"), std::string::npos);
  EXPECT_EQ(run({"tables", "validate"}).code, 0);
}

TEST_F(Cli, ExportedTablesRoundTrip) {
  write("cover.json", run({"tables", "export", "--which", "cover"}).out);
  write("addcong.json", run({"tables", "export", "--which", "addcong"}).out);
  const auto v = run({"tables", "validate", "--cover-table", path("cover.json"), "--addcong-table", path("addcong.json")});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, run({"tables", "validate"}).out);
}

TEST_F(Cli, ProbablePrimesAreAnnotated) {
  const auto t = run({"tables", "export", "--which", "cover"}).j();
  size_t big = 0;
  for (const auto& row : t["rows"]) {
    const bool large = Natural(row["p"].get<std::string>()) >= (Natural(1) << 64);
    EXPECT_EQ(row.contains("primality"), large);
    big += large;
  }
  EXPECT_GT(big, 0u);
  const auto v = run({"tables", "validate", "--which", "cover"}).j();
  bool any = false;
  for (const auto& row : v["cover"]["rows"])
    for (const auto& c : row["checks"]) any = any || c.value("primality", "") == "probable";
  EXPECT_TRUE(any);
  const auto c = run({"construct", "build", "thm2"}).j();
  for (const auto& comp : c["components"])
    EXPECT_EQ(comp.contains("primality"), Natural(comp["p"].get<std::string>()) >= (Natural(1) << 64));
}

TEST_F(Cli, ByteIdenticalAcrossThreadCounts) {
  const std::vector<std::vector<std::string>> cmds{
      {"cover", "verify", "--builtin", "A50"},
      {"tables", "validate"},
      {"construct", "build", "thm3"},
      {"density", "s3", "--limit", "200000"},
      {"density", "s4", "--series", "1000,10000,100000"},
      {"singular", "latcount", "--m", "2", "--N", "100000", "--primes"},
      {"singular", "maincheck", "--m", "1", "--N-list", "1000,10000", "--qmax", "200"},
      {"search", "orbit", "--factors", "3,5,7,13", "--all"},
      {"search", "nearmiss", "--p", "8191", "--min-run", "9"},
  };
  for (const auto& c : cmds) {
    auto a1 = c, a8 = c;
    a1.insert(a1.begin(), {"--threads", "1"});
    a8.insert(a8.begin(), {"--threads", "8"});
    const auto r1 = run(a1), r8 = run(a8), again = run(a1);
    EXPECT_EQ(r1.code, 0) << c[0] << " " << c[1] << r1.err;
    EXPECT_EQ(r1.out, r8.out) << c[0] << " " << c[1];
    EXPECT_EQ(r1.out, again.out);
  }
  const std::string c = path("c.json");
  ASSERT_EQ(run({"construct", "build", "thm2", "--out", c}).code, 0);
  EXPECT_EQ(run({"--threads", "1", "construct", "verify", c}).out, run({"--threads", "8", "construct", "verify", c}).out);
}

TEST_F(Cli, SingularAndDensityOutputs) {
  auto s = run({"singular", "series", "--m", "1", "--d", "3,1,1,1", "--qmax", "100", "--trace", "50"});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(s.j()["omega_product"], "3/4");
  EXPECT_EQ(s.j()["trace"].size(), 2u);
  EXPECT_EQ(run({"singular", "series", "--m", "1", "--d", "4,1,1,1"}).code, 2);
  const auto csv = run({"singular", "maincheck", "--m", "2", "--N-list", "400", "--qmax", "100"}).out;
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "N,exact,main,ratio");
  const auto lat = run({"singular", "latcount", "--m", "1", "--N", "25"}).j();
  EXPECT_EQ(lat["prime_constrained"], false);
  EXPECT_NEAR(run({"density", "landau", "--pmax", "3"}).j()["raw"].get<double>(), 0.75, 1e-15);
  EXPECT_NEAR(run({"density", "romanoff", "--x", "2", "--dmax", "99"}).j()["E"].get<double>(), 4.0 / 3, 1e-15);
  EXPECT_EQ(run({"density", "pairs", "--m", "3", "--limit", "1000"}).code, 0);
  const auto series = run({"density", "s3", "--series", "100,1000"}).out;
  EXPECT_EQ(series.substr(0, series.find('\n')), "N,count,density,cs_bound");
}

TEST_F(Cli, SearchBuild) {
  write("pool.json", R"({"primes":[5,17,257]})");
  const auto r = run({"search", "build", "--pool", path("pool.json"), "--max-factors", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json res = r.j()["results"];
  EXPECT_EQ(res.size(), 7u);
  bool found = false;
  for (const auto& x : res)
    if (x["factors"] == json::array({5, 17, 257}))
      for (const auto& c : x["full_blockers"]) found = found || c == "37";
  EXPECT_TRUE(found);
}

TEST_F(Cli, BundleCreatesDirectoryAndManifest) {
  const std::string out = path("fresh/nested");
  auto r = run({"bundle", "--out", out, "--criteria", "1,2,7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json m = json::parse(coverlab::io::read_file(out + "/manifest.json"));
  EXPECT_EQ(m["pass"], true);
  EXPECT_EQ(m["criteria"].size(), 3u);
  for (const auto& c : m["criteria"]) EXPECT_EQ(c["pass"], true);
  EXPECT_TRUE(m.contains("version"));
  EXPECT_TRUE(m.contains("factor_seed"));
}

TEST_F(Cli, BundleWithTamperedTable) {
  json t = run({"tables", "export", "--which", "cover"}).j();
  t["rows"][6]["p"] = "103";
  write("cover.json", t.dump());
  const std::string out = path("b");
  auto r = run({"bundle", "--out", out, "--criteria", "2,4", "--cover-table", path("cover.json")});
  EXPECT_EQ(r.code, 1);
  const json m = json::parse(coverlab::io::read_file(out + "/manifest.json"));
  EXPECT_EQ(m["pass"], false);
  EXPECT_EQ(m["criteria"][0]["data"]["failing_rows"], json::array({7}));
  EXPECT_EQ(m["criteria"][1]["pass"], false);
}
