// Runs the lpcocycle binary end to end and checks reports, exit codes and
// byte-determinism.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lpcocycle/group_ball.hpp"
#include "lpcocycle/io.hpp"
#include "oracles.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "lpcocycle_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome run(const std::string& args) {
  static int counter = 0;
  const std::string o = path("stdout." + std::to_string(counter));
  const std::string e = path("stderr." + std::to_string(counter++));
  const std::string cmd = std::string(LPCOCYCLE_CLI) + " " + args + " > " + o + " 2> " + e;
  const int status = std::system(cmd.c_str());
  Outcome r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

void write_metric(const std::string& file, int n, const std::function<int(int, int)>& d) {
  json doc = {{"format", "lpcocycle.metric"}, {"version", 1}, {"n", n}};
  json tri = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) tri.push_back(d(i, j));
  doc["distances"] = tri;
  std::ofstream(file) << doc.dump();
}

}  // namespace

TEST(CliDelta, CycleAndTree) {
  const Outcome c6 = run("delta --builtin cycle:6");
  ASSERT_EQ(c6.code, 0) << c6.err;
  EXPECT_EQ(c6.report()["delta_min"], 2);
  EXPECT_EQ(c6.report()["delta_use"], 2);

  const Outcome tree = run("delta --builtin tree:3:4");
  ASSERT_EQ(tree.code, 0);
  EXPECT_EQ(tree.report()["delta_min"], 0);
  EXPECT_EQ(tree.report()["delta_use"], 1);
  EXPECT_EQ(tree.report()["C"], 10);
}

TEST(CliDelta, EdgeListInput) {
  std::ofstream(path("c8.txt")) << "# octagon\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 0\n";
  const Outcome r = run("delta --graph " + path("c8.txt"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["delta_min"], 4);
  EXPECT_EQ(r.report()["config"]["inputs"]["graph"], path("c8.txt"));
}

TEST(CliDelta, DisconnectedInputListsComponents) {
  std::ofstream(path("split.txt")) << "0 1\n1 2\n7 8\n";
  const Outcome r = run("delta --graph " + path("split.txt"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("{0, 1, 2}"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("{7, 8}"), std::string::npos) << r.err;
}

TEST(CliUsage, ErrorsAndHelp) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("delta --builtin cycle:6 --no-such-flag").code, 2);
  EXPECT_EQ(run("delta").code, 2);
  EXPECT_EQ(run("delta --builtin cycle:6 --graph x").code, 2);
  EXPECT_EQ(run("delta --graph /nonexistent/file").code, 2);
  EXPECT_EQ(run("delta --builtin cycle:2").code, 2);
}

TEST(CliCayleyBall, DocumentFeedsBack) {
  const Outcome r = run("cayley-ball --rank 2 --radius 2 --out " + path("f22.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(slurp(path("f22.json")));
  EXPECT_EQ(doc["format"], "lpcocycle.graph");
  EXPECT_EQ(doc["vertices"].size(), 161u);
  EXPECT_EQ(doc["labels"][0], "e");
  EXPECT_EQ(doc["automorphisms"].size(), 2u);
  EXPECT_EQ(doc["inner_radius"], 2);

  const Outcome d = run("delta --graph " + path("f22.json"));
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.report()["delta_min"], 0);

  // Same bytes as the library's own document.
  EXPECT_EQ(slurp(path("f22.json")), lpcocycle::format_graph_document(lpcocycle::free_group_ball(2, 2).space()));
}

TEST(CliMeasures, AgreeWithLiteralIteration) {
  const Outcome r = run("measures --builtin ladder:30 --delta 1 --x 0,1 --a 40,41,61");
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = r.report();
  const auto ladder = lpcocycle::builtin_space("ladder:30");
  const auto d = lpcocycle::testing::floyd_warshall(*ladder.graph);
  ASSERT_EQ(rep["measures"].size(), 6u);
  for (const json& m : rep["measures"]) {
    const auto want = lpcocycle::testing::mu_oracle(d, 1, m["a"], m["x"]);
    lpcocycle::testing::Atoms got;
    for (const json& a : m["atoms"]) {
      got[a["v"]] = mpq_class(a["num"].get<long>(), a["den"].get<long>());
    }
    EXPECT_EQ(got, want) << m.dump();
  }
}

TEST(CliVerify, LadderPassesWithDemoSection) {
  const Outcome r = run("verify --builtin ladder:60");
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = r.report();
  EXPECT_EQ(rep["delta_min"], 2);
  EXPECT_EQ(rep["C"], 16);
  EXPECT_EQ(rep["lemma_suites"]["violations"], 0);
  EXPECT_GT(rep["lemma_suites"]["checked"].get<long>(), 0);
  EXPECT_TRUE(rep["passed"]);
  for (const char* s : {"lemma_3_3", "lemma_3_4", "lemma_3_5", "support", "lemma_4_5", "lemma_4_6", "lemma_4_7",
                        "contraction", "neighbor_decay", "disjointness", "equivariance", "prop_5_1"}) {
    EXPECT_TRUE(rep["battery"]["suites"].contains(s)) << s;
  }
  const json& demo = rep["battery"]["single_step"];
  EXPECT_GT(demo["one_step_reach"].get<int>(), 4 * 2 + 5 * 2);
  EXPECT_TRUE(demo["mu_within_annulus_bound"]);
}

TEST(CliVerify, FreeGroupBallPasses) {
  const Outcome r = run("verify --builtin free:2:3");
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = r.report();
  EXPECT_EQ(rep["lemma_suites"]["violations"], 0);
  EXPECT_EQ(rep["battery"]["region_size"], 53);
  EXPECT_GT(rep["battery"]["suites"]["equivariance"]["checked"].get<long>(), 0);
}

TEST(CliVerify, CorruptedMetricReportsWitness) {
  write_metric(path("corrupt.json"), 6, [](int i, int j) { return i == 0 && j == 5 ? 40 : 3 * (j - i); });
  const Outcome r = run("verify --metric " + path("corrupt.json"));
  EXPECT_EQ(r.code, 1) << r.err;
  const json rep = r.report();
  EXPECT_FALSE(rep["passed"]);
  const json& w = rep["metric_axioms"]["witnesses"];
  ASSERT_FALSE(w.empty());
  EXPECT_EQ(w[0]["tuple"], json({0, 1, 5}));
}

TEST(CliVerify, UndersizedDeltaIsAViolation) {
  const Outcome r = run("verify --builtin ladder:30 --delta 1");
  EXPECT_EQ(r.code, 1);
  const json rep = r.report();
  EXPECT_GT(rep["battery"]["suites"]["lemma_3_3"]["violations"].get<long>(), 0);
  EXPECT_EQ(rep["battery"]["suites"]["lemma_4_7"]["violations"], 0);
}

TEST(CliVerify, ScaledMetricGoesThroughRescaling) {
  write_metric(path("scaled.json"), 8, [](int i, int j) { return 3 * (j - i); });
  const Outcome r = run("verify --metric " + path("scaled.json") + " --delta 2");
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = r.report();
  EXPECT_EQ(rep["battery"]["suites"]["prop_5_1"]["checked"], 64);
  EXPECT_EQ(rep["battery"]["suites"]["prop_5_1"]["max_ratio"], 3.0);
  EXPECT_TRUE(rep["battery"]["suites"]["prop_5_1"]["lower_asserted"]);
  EXPECT_TRUE(rep["rescaled"]["suites"].contains("support"));
}

TEST(CliVerify, ByteDeterministicAcrossJobCounts) {
  const Outcome a = run("--jobs 1 verify --builtin cycle:12 --seed 7");
  const Outcome b = run("--jobs 4 verify --builtin cycle:12 --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Outcome c = run("--jobs 3 verify --builtin tree:3:4 --margin 1 --sample 10 --seed 5");
  const Outcome d = run("--jobs 1 verify --builtin tree:3:4 --margin 1 --sample 10 --seed 5");
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out, d.out);
  EXPECT_EQ(c.report()["battery"]["region_size"], 10);
}

TEST(CliGrowth, TreeClosedForms) {
  const Outcome r = run("cocycle-growth --builtin free:2:4 --construction tree --movers a^0..4,b^2,aB --p 1,2,4,8 "
                    "--csv " + path("tree.csv"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = r.report();
  EXPECT_EQ(rep["format"], "lpcocycle.growth");
  EXPECT_EQ(rep["domain_size"], 161);
  ASSERT_EQ(rep["rows"].size(), 7u);
  for (const json& row : rep["rows"]) {
    const int D = row["D"];
    EXPECT_EQ(row["l1"]["num"], 2 * (D + 1) * (D > 0));
    EXPECT_EQ(row["disjoint_count"], D > 0 ? D + 1 : 0);
    EXPECT_EQ(row["linf_reference"], D);
    if (D == 0) continue;
    for (double p : {2.0, 4.0, 8.0}) {
      const std::string key = std::to_string(static_cast<int>(p));
      EXPECT_NEAR(row["lp"][key].get<double>(), std::pow(2.0 * (D + 1), 1 / p), 1e-10);
      EXPECT_NEAR(row["row_lp"][key].get<double>(), 2.0 * std::pow(D + 1.0, 1 / p), 1e-10);
    }
  }
  const std::string csv = slurp(path("tree.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,D,l1,l2,l4,l8,disjoint_count");
  EXPECT_NE(csv.find("\na^0,0,0.0,0.0,0.0,0.0,0\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\na^1,1,4.0,2.0,"), std::string::npos) << csv;
}

TEST(CliGrowth, LadderPerADecay) {
  const Outcome r = run("cocycle-growth --builtin ladder:30 --delta 1 --margin 0 --origin 0 --movers swap^1 --per-a");
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = r.report();
  EXPECT_EQ(rep["C"], 8);
  std::map<int, double> worst;
  for (const json& e : rep["per_a"][0]["entries"]) {
    worst[e["d"]] = std::max(worst[e["d"]], e["l1"].get<double>());
  }
  double prev = 2.0;
  for (const auto& [d, l1] : worst) {
    EXPECT_LE(l1, prev) << d;
    prev = l1;
    if (d > 4) {
      const int n = (d - 4 - 1) / 5;  // largest n with (4 + 5n) < d
      EXPECT_LE(l1, 2 * std::pow(7.0 / 8.0, n)) << d;
    }
  }
  EXPECT_LT(worst.rbegin()->second, 0.05);
}

TEST(CliGrowth, FreeGroupTrend) {
  const Outcome r = run("cocycle-growth --builtin free:2:5 --movers a^1..5 --fit-radius 5 --out " + path("g.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(slurp(path("g.json")));
  EXPECT_NEAR(rep["h"].get<double>(), std::log(3.0), 1e-9);
  EXPECT_GT(rep["p_min_estimate"].get<double>(), 0);
  double prev = 0;
  for (const json& row : rep["rows"]) {
    EXPECT_GE(row["l1"]["value"].get<double>(), prev);
    prev = row["l1"]["value"];
  }
}

TEST(CliGrowth, IdentityMoverIsZeroRow) {
  const Outcome r = run("cocycle-growth --builtin cycle:10 --movers rotate^0,0");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const json& row : r.report()["rows"]) {
    EXPECT_EQ(row["D"], 0);
    EXPECT_EQ(row["l1"]["num"], 0);
    EXPECT_EQ(row["disjoint_count"], 0);
  }
}

TEST(CliGrowth, MoversOutsideTheSafeRegion) {
  EXPECT_EQ(run("cocycle-growth --builtin free:2:3 --movers a^4").code, 2);
  EXPECT_EQ(run("cocycle-growth --builtin line:10 --margin 2 --origin 0 --movers 5").code, 2);
  EXPECT_EQ(run("cocycle-growth --builtin free:2:3 --movers z^1").code, 2);
  EXPECT_EQ(run("cocycle-growth --builtin free:2:3 --movers a^x").code, 2);
  EXPECT_EQ(run("cocycle-growth --builtin cycle:10 --movers 3 --p 0.5").code, 2);
  EXPECT_EQ(run("cocycle-growth --builtin cycle:10 --movers 3 --construction tree").code, 2);
}

TEST(CliRescale, ChainGraphOfScaledLine) {
  write_metric(path("scaled6.json"), 6, [](int i, int j) { return 3 * (j - i); });
  const Outcome r = run("rescale --metric " + path("scaled6.json") + " --delta 2 --out " + path("chain.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.report()["passed"]);
  EXPECT_EQ(slurp(path("chain.json")),
            R"({"edges":[[0,1],[1,2],[2,3],[3,4],[4,5]],"format":"lpcocycle.graph","name":"chain","version":1,)"
            R"("vertices":[0,1,2,3,4,5]})" "\n");
  const Outcome d = run("delta --graph " + path("chain.json"));
  EXPECT_EQ(d.report()["delta_min"], 0);

  EXPECT_EQ(run("rescale --metric " + path("scaled6.json") + " --delta 1").code, 2);
  EXPECT_EQ(run("rescale --metric " + path("scaled6.json")).code, 2);
}
