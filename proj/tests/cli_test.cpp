#include "cli_app.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using stacky::tools::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string data(const std::string& name) { return fixtures::data_path(name); }

std::string temp_file(const std::string& name, const std::string& contents = "") {
  const std::string path = testing::TempDir() + "/" + name;
  if (!contents.empty()) std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST(CliValidate, PassAndFail) {
  const auto ok = cli({"validate", data("p15_10_6.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(has(ok.out, "[pass] rays span"));
  EXPECT_TRUE(has(ok.out, "valid stacky fan"));

  const auto zero = temp_file("zero_ray.json", R"({"schema_version":"1","N":{"rank":2},
    "beta":[[-2,-2],[0,0],[0,5]],"max_cones":[[0,1],[0,2],[1,2]]})");
  const auto z = cli({"validate", zero});
  EXPECT_EQ(z.code, 2);
  EXPECT_TRUE(has(z.out, "ZeroRay(1)"));

  const auto dep = temp_file("dependent.json", R"({"schema_version":"1","N":{"rank":2},
    "beta":[[1,0],[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[2,3]]})");
  const auto d = cli({"validate", dep});
  EXPECT_EQ(d.code, 2);
  EXPECT_TRUE(has(d.out, "NonSimplicialCone"));

  EXPECT_EQ(cli({"validate", temp_file("broken.json", "{not json")}).code, 1);
  EXPECT_EQ(cli({"validate", "/nonexistent.json"}).code, 1);
}

TEST(CliGroup, Reports) {
  const auto seg = cli({"group", data("segment_4_6.json")});
  EXPECT_EQ(seg.code, 0);
  EXPECT_TRUE(has(seg.out, "DG(beta) = Z x Z/2"));
  EXPECT_TRUE(has(seg.out, "G = T x Z/2"));
  EXPECT_TRUE(has(seg.out, "G/G0 = Z/2"));

  const auto p = cli({"group", data("p15_10_6.json")});
  EXPECT_TRUE(has(p.out, "DG(beta) = Z\n"));
  EXPECT_TRUE(has(p.out, "G = T\n"));
  EXPECT_TRUE(has(p.out, "G/G0 trivial"));

  EXPECT_TRUE(has(cli({"group", data("quadrilateral_torsion.json")}).out, "G/G0 = Z/2"));

  const auto j = cli({"--json", "group", data("segment_4_6.json")});
  const auto parsed = stacky::json::parse(j.out);
  EXPECT_EQ(parsed["G"]["torus_rank"], 1);
  EXPECT_EQ(parsed["component_group"]["text"], "Z/2");
  EXPECT_EQ(parsed["dual_group"]["invariant_factors"], stacky::json::array({2}));
  EXPECT_EQ(parsed.dump(2) + "\n", j.out);  // stable under re-serialization
  // flag after the subcommand works too
  EXPECT_EQ(cli({"group", data("segment_4_6.json"), "--json"}).out, j.out);
}

TEST(CliIsotropy, Selectors) {
  const auto z = cli({"isotropy", data("p15_10_6.json"), "--zeros", "0,2"});
  EXPECT_EQ(z.code, 0);
  EXPECT_TRUE(has(z.out, ": Z/10"));
  const auto c = cli({"isotropy", data("quadrilateral_torsion.json"), "--cone", "0,1"});
  EXPECT_TRUE(has(c.out, "{0,1}: Z/2 x Z/12"));

  const auto outside = cli({"isotropy", data("p15_10_6.json"), "--zeros", "0,1,2"});
  EXPECT_EQ(outside.code, 3);
  EXPECT_TRUE(has(outside.err, "NotInZSigma"));

  EXPECT_EQ(cli({"isotropy", data("p15_10_6.json"), "--cone", "0,1,2"}).code, 3);
  EXPECT_EQ(cli({"isotropy", data("p15_10_6.json")}).code, 1);
  EXPECT_EQ(cli({"isotropy", data("p15_10_6.json"), "--all", "--cone", "0"}).code, 1);
  EXPECT_EQ(cli({"isotropy", data("p15_10_6.json"), "--cone", "x"}).code, 1);

  const auto all = cli({"isotropy", data("p15_10_6.json"), "--all", "--generators"});
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(all.out.find("{}: 1"), 0u);
  EXPECT_LT(all.out.find("{0}:"), all.out.find("{0,1}:"));
  EXPECT_LT(all.out.find("{0,2}:"), all.out.find("{1}:"));
  EXPECT_TRUE(has(all.out, "generator (1/2, 0, 0) of order 2"));

  const auto tors = cli({"isotropy", data("p30_20_12_torsion.json"), "--cone", "0", "--generators"});
  EXPECT_EQ(tors.code, 3);
  EXPECT_TRUE(has(tors.err, "TorsionAmbient"));
}

TEST(CliClassify, Kinds) {
  EXPECT_TRUE(has(cli({"classify", data("p30_20_12_torsion.json")}).out, "weighted projective: P(30,20,12)"));
  const auto fake = cli({"classify", data("segment_4_6.json")});
  EXPECT_TRUE(has(fake.out, "fake weighted projective: cover P(2,3), Lambda = Z/2"));
  EXPECT_TRUE(has(cli({"classify", data("quadrilateral_torsion.json")}).out, "neither (n != d+1)"));
  const auto j = stacky::json::parse(cli({"--json", "classify", data("p15_10_6.json")}).out);
  EXPECT_EQ(j["kind"], "weighted_projective");
  EXPECT_EQ(j["weights"], stacky::json::array({15, 10, 6}));
}

TEST(CliCover, WritesAndRoundTrips) {
  const auto out = temp_file("cover22.json");
  const auto r = cli({"cover", data("segment_2_2.json"), "--out", out});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "global quotient: [P(1,1)/Z/2]"));
  const auto doc = stacky::read_document(out);
  EXPECT_EQ(doc.beta, (stacky::IntMatrix{{-1, 1}}));
  // round trip: the written cover validates and has trivial G/G0
  EXPECT_EQ(cli({"validate", out}).code, 0);
  EXPECT_TRUE(has(cli({"group", out}).out, "G/G0 trivial"));

  const auto out46 = temp_file("cover46.json");
  const auto r46 = cli({"cover", data("segment_4_6.json"), "--out", out46});
  EXPECT_TRUE(has(r46.out, "not a global quotient"));
  EXPECT_EQ(stacky::read_document(out46).beta, (stacky::IntMatrix{{-3, 2}}));
  EXPECT_TRUE(has(cli({"group", out46}).out, "G/G0 trivial"));

  const auto self = temp_file("cover_self.json");
  EXPECT_TRUE(has(cli({"cover", data("p15_10_6.json"), "--out", self}).out, "cover = self"));

  EXPECT_EQ(cli({"cover", data("p15_10_6.json")}).code, 1);
  EXPECT_EQ(cli({"cover", data("p15_10_6.json"), "--out", "/nonexistent/dir/x.json"}).code, 1);
}

TEST(CliSheared, Reports) {
  const auto r = cli({"sheared", "--a", "1,1", "--labels", "2,3,5", "--report"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "WPS: P(15,10,6)"));
  EXPECT_TRUE(has(r.out, "G/G0 trivial"));
  EXPECT_TRUE(has(r.out, "not global quotient"));
  EXPECT_TRUE(has(r.out, "table row 4"));

  const auto z = cli({"sheared", "--a", "1,2", "--labels", "2,4,1", "--zeros", "0,1"});
  EXPECT_TRUE(has(z.out, "sub Z/2 x Z/4; quot Z/2; full Z/2 x Z/8"));

  const auto smooth = cli({"sheared", "--a", "1,1", "--labels", "1,1,1", "--report"});
  EXPECT_TRUE(has(smooth.out, "WPS: P(1,1,1)"));
  EXPECT_TRUE(has(smooth.out, "smooth"));

  EXPECT_EQ(cli({"sheared", "--a", "2,4", "--labels", "1,1,1"}).code, 2);
  EXPECT_EQ(cli({"sheared", "--a", "1,1", "--labels", "1,0,1"}).code, 2);
  EXPECT_EQ(cli({"sheared", "--a", "1,1", "--labels", "1,1,1", "--zeros", "0,1,2"}).code, 3);
  EXPECT_EQ(cli({"sheared", "--a", "1,q", "--labels", "1,1,1"}).code, 1);
}

TEST(CliGlobal, QuietAndUsage) {
  const auto q = cli({"--quiet", "classify", data("p15_10_6.json")});
  EXPECT_EQ(q.code, 0);
  EXPECT_TRUE(q.out.empty());
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(CliSelftest, Deterministic) {
  const auto a = cli({"selftest", "--count", "25"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(has(a.out, "all agree"));
  EXPECT_EQ(cli({"selftest", "--count", "25"}).out, a.out);
}
