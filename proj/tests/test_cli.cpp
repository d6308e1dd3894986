#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ncplane/cli/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ncplane::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(NCPLANE_FIXTURE_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, ModuliDimensionExample) {
  auto r = run({"moduli", "dim", "--r", "1", "--c1", "0", "--chi", "-1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["dimension"], 4);
}

TEST(Cli, HilbertExample) {
  auto r = run({"algebra", "hilbert", "--family", "polynomial", "--d", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["dim"], 10);
  EXPECT_EQ(r.report()["degree_bound"], 12);
}

TEST(Cli, UnstableFixtureGivesWitness) {
  auto r = run({"stability", "check", "--complex", fixture("type2_complex.json"), "--ext", "1"});
  EXPECT_EQ(r.code, 1);
  auto j = r.report();
  EXPECT_EQ(j["verdict"], "unstable");
  EXPECT_EQ(j["witness"]["r1"], 0);
  EXPECT_EQ(j["witness"]["c1"], 1);
  EXPECT_EQ(j["witness"]["chi1"], 1);
  EXPECT_EQ(j["fields"], json::array({2}));
}

TEST(Cli, MonadFixture) {
  auto r = run({"monad", "check", "--complex", fixture("point_monad.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["verdict"], "monad");
  auto e = run({"ext", "dims", "--complex", fixture("point_monad.json")});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.report()["ext"], json::array({1, 2, 0}));
  auto c = run({"monad", "cohomology", "--complex", fixture("point_monad.json")});
  EXPECT_EQ(c.report()["resolution"]["invariants"], (json{{"r", 1}, {"c1", 0}, {"chi", 0}}));
}

TEST(Cli, ModuleVerbs) {
  auto inv = run({"module", "invariants", "--module", fixture("point_ideal.json")});
  EXPECT_EQ(inv.code, 0);
  EXPECT_EQ(inv.report()["resolution"]["invariants"], (json{{"r", 1}, {"c1", 0}, {"chi", 0}}));
  auto coh = run({"module", "cohomology", "--module", fixture("residue_field.json"), "--from", "-2", "--to", "2"});
  EXPECT_EQ(coh.code, 0);
  EXPECT_EQ(coh.report()["table"].size(), 5u);
  auto res = run({"module", "restrict", "--module", fixture("point_ideal.json")});
  EXPECT_EQ(res.report()["c1_drop"], 3);
}

TEST(Cli, PointsAndCurveAreDeterministic) {
  auto a = run({"points", "ideal", "--count", "2", "--seed", "3"});
  auto b = run({"points", "ideal", "--count", "2", "--seed", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.report()["resolution"]["invariants"], (json{{"r", 1}, {"c1", 0}, {"chi", -1}}));
  EXPECT_EQ(a.report()["ext"], json::array({1, 4, 0}));
  auto c1 = run({"curve", "--count", "4"});
  auto c2 = run({"curve", "--count", "4"});
  EXPECT_EQ(c1.out, c2.out);
  EXPECT_EQ(c1.report()["sigma_pairs"].size(), 4u);
}

TEST(Cli, AdhmVerbs) {
  auto b = run({"adhm", "build", "--n", "2", "--r", "1", "--seed", "7"});
  EXPECT_EQ(b.code, 0);
  std::string path = temp_file("datum.json", b.report()["datum"].dump());
  auto c = run({"adhm", "check", "--datum", path});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.report()["verdict"], "verified");
  auto bad = run({"adhm", "check", "--datum", fixture("adhm_invalid.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.report()["valid"], false);
}

TEST(Cli, NumericsVerbs) {
  EXPECT_EQ(run({"moduli", "fine", "--r", "3", "--c1", "-1", "--chi", "0"}).code, 0);
  EXPECT_EQ(run({"moduli", "fine", "--r", "2", "--c1", "0", "--chi", "0"}).code, 1);
  auto g = run({"git", "weights", "--r", "1", "--c1", "0", "--chi", "-1", "--m", "3"});
  EXPECT_EQ(g.report()["shape"], json::array({2, 5, 2}));
  EXPECT_EQ(g.report()["m"], 3);
}

TEST(Cli, PoissonVerify) {
  auto ok = run({"poisson", "verify", "--dims", "2,3,2", "--trials", "100", "--seed", "1"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, run({"poisson", "verify", "--dims", "2,3,2", "--trials", "100", "--seed", "1"}).out);
  auto neg = run({"poisson", "verify", "--negative-control", "--field", "Q", "--trials", "10"});
  EXPECT_EQ(neg.code, 1);
  EXPECT_EQ(neg.report()["verdict"], "violated");
}

TEST(Cli, ErrorKindsAreDistinct) {
  auto usage = run({"frobnicate"});
  EXPECT_EQ(usage.code, 2);
  EXPECT_EQ(usage.report()["error_kind"], "UsageError");
  EXPECT_FALSE(usage.err.empty());
  EXPECT_EQ(run({"monad", "check"}).report()["error_kind"], "UsageError");
  EXPECT_EQ(run({"monad", "check", "--complex", "/nonexistent.json"}).report()["error_kind"], "InvalidInput");
  auto over = run({"algebra", "hilbert", "--d", "20", "--degree-bound", "10"});
  EXPECT_EQ(over.code, 2);
  EXPECT_EQ(over.report()["error_kind"], "DegreeOverflow");
  auto notmonad = run({"ext", "dims", "--complex", fixture("type2_complex.json")});
  EXPECT_EQ(notmonad.report()["error_kind"], "NotAMonad");
  std::string bad = temp_file("bad_complex.json", R"({"algebra": {"field": {"p": 101}, "family": "polynomial",
    "params": [], "cubic_g": "x*y*z", "degree_bound": 6}, "a": 1, "n": 1, "c": 1, "A": [["x"]], "B": [["y"]]})");
  auto nc = run({"monad", "check", "--complex", bad});
  EXPECT_EQ(nc.code, 2);
  EXPECT_EQ(nc.report()["error_kind"], "NotAComplex");
  auto q = run({"stability", "check", "--complex", fixture("point_monad.json"), "--field", "Q"});
  EXPECT_EQ(q.report()["error_kind"], "InvalidInput");
}

TEST(Cli, TableAndTiming) {
  auto t = run({"moduli", "dim", "--r", "1", "--c1", "0", "--chi", "-1", "--table"});
  EXPECT_NE(t.out.find("dimension: 4"), std::string::npos);
  auto w = run({"moduli", "dim", "--r", "1", "--c1", "0", "--chi", "-1", "--timing"});
  EXPECT_TRUE(w.report().contains("wall_time_ms"));
  EXPECT_FALSE(run({"moduli", "dim", "--r", "1", "--c1", "0", "--chi", "-1"}).report().contains("wall_time_ms"));
}
