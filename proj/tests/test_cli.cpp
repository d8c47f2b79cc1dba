#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rmst/cli.hpp"
#include "rmst/io.hpp"
#include "rmst/reductions.hpp"

using namespace rmst;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path tmp_dir() {
  const char* env = std::getenv("RMST_TEST_TMP");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "rmst_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = tmp_dir() / name;
  write_text_file(p.string(), text);
  return p.string();
}

const char* kTriangle = R"({"name":"tri","num_vertices":3,"edges":[[0,1],[1,2],[0,2]],"scenarios":[[2,0,0],[0,2,0]]})";

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"solve", write("t.json", kTriangle), "--algo", "magic"}).code == kExitInvalid);
  CHECK(run({"solve", (tmp_dir() / "missing.json").string(), "--algo", "exact"}).code == kExitInvalid);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("solve exact") {
  const std::string path = write("tri.json", kTriangle);
  Run r = run({"solve", path, "--algo", "exact"});
  REQUIRE(r.code == kExitOk);
  json rep = json::parse(r.out);
  CHECK(rep["value"].get<double>() == 2.0);
  CHECK(rep["status"] == "Optimal");
  CHECK(r.err.empty());

  Run regret = run({"solve", path, "--algo", "exact", "--objective", "regret"});
  CHECK(json::parse(regret.out)["value"].get<double>() == 2.0);
  Run bnb = run({"solve", path, "--algo", "bnb"});
  CHECK(json::parse(bnb.out)["value"].get<double>() == 2.0);
  Run base = run({"solve", path, "--algo", "baseline"});
  CHECK(json::parse(base.out)["tree_edges"] == json::array({0, 2}));
  CHECK(run({"solve", path, "--algo", "exact-2stage"}).code == kExitInvalid);
}

TEST_CASE("lp-round replay and thread independence") {
  RandomInstanceSpec spec{7, 12, 3, 0, 9, false, 5};
  const std::string path = write("rand.json", save_instance(gen_random(spec)));
  Run a = run({"solve", path, "--algo", "lp-round", "--seed", "7"});
  Run b = run({"solve", path, "--algo", "lp-round", "--seed", "7"});
  Run c = run({"solve", path, "--algo", "lp-round", "--seed", "7", "--threads", "4"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  json rep = json::parse(a.out);
  CHECK(rep["lp_bound"].get<double>() <= rep["value"].get<double>() + 1e-9);
  CHECK(rep["wall_time_ms"].get<double>() == 0.0);

  Run v = run({"solve", path, "--algo", "lp-round", "-v"});
  CHECK(v.err.find("\"trace\"") != std::string::npos);
  CHECK(v.err.find("\"algorithm\"") == std::string::npos);
}

TEST_CASE("negative costs are rejected by lp-round") {
  const std::string path = write(
      "neg.json", R"({"num_vertices":3,"edges":[[0,1],[1,2],[0,2]],"scenarios":[[-1,0,0]]})");
  Run r = run({"solve", path, "--algo", "lp-round"});
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.find("NegativeCosts") != std::string::npos);
  CHECK(run({"solve", path, "--algo", "bnb"}).code == kExitOk);
}

TEST_CASE("two-stage solve and eval") {
  RandomInstanceSpec spec{6, 8, 2, 0, 9, true, 3};
  const std::string path = write("ts.json", save_instance(gen_random(spec)));
  Run exact = run({"solve", path, "--algo", "exact-2stage"});
  REQUIRE(exact.code == kExitOk);
  const std::string sol = write("ts_sol.json", exact.out);
  Run ev = run({"eval", path, sol, "--objective", "2stage"});
  REQUIRE(ev.code == kExitOk);
  CHECK(json::parse(ev.out)["value"] == json::parse(exact.out)["value"]);

  Run approx = run({"solve", path, "--algo", "lp-round-2stage"});
  CHECK((approx.code == kExitOk || approx.code == kExitNoSolution));
  CHECK(run({"eval", path, sol, "--objective", "minmax"}).code == kExitInvalid);
}

TEST_CASE("generate") {
  const std::string a = (tmp_dir() / "gen_a.json").string();
  const std::string b = (tmp_dir() / "gen_b.json").string();
  CHECK(run({"generate", "--kind", "random", "--n", "7", "--m", "12", "--k", "3", "--seed", "1", "--out", a}).code ==
        kExitOk);
  CHECK(run({"generate", "--kind", "random", "--n", "7", "--m", "12", "--k", "3", "--seed", "1", "--out", b}).code ==
        kExitOk);
  CHECK(read_text_file(a) == read_text_file(b));
  CHECK(fs::exists(tmp_dir() / "gen_a.meta.json"));
  Run stdout_only = run({"generate", "--kind", "random", "--n", "7", "--m", "12", "--k", "3", "--seed", "1"});
  CHECK(stdout_only.out == read_text_file(a));

  CHECK(run({"generate", "--kind", "random", "--n", "4", "--m", "9"}).code == kExitInvalid);

  const std::string cnf = write("phi.dimacs", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
  Run sat = run({"generate", "--kind", "3sat", "--cnf", cnf});
  REQUIRE(sat.code == kExitOk);
  MinMaxInstance inst = std::get<MinMaxInstance>(load_instance(sat.out));
  CHECK(inst.graph().num_vertices() == 9);

  const std::string cover = write("cover.json", R"({"elements":3,"subsets":[[0,1],[1,2],[2]]})");
  const std::string cover_out = (tmp_dir() / "cover_inst.json").string();
  CHECK(run({"generate", "--kind", "setcover", "--spec", cover, "--out", cover_out}).code == kExitOk);
  CHECK(std::holds_alternative<TwoStageInstance>(load_instance_file(cover_out)));

  const std::string lc = write(
      "lc.json",
      R"({"left":2,"right":2,"labels":2,"edges":[{"v":0,"w":0,"pairs":[[1,1],[2,2]]},{"v":0,"w":1,"pairs":[[1,1],[2,2]]},{"v":1,"w":0,"pairs":[[1,1],[2,2]]},{"v":1,"w":1,"pairs":[[1,2],[2,1]]}]})");
  CHECK(run({"generate", "--kind", "labelcover", "--spec", lc, "--g", "2"}).code == kExitOk);
  CHECK(run({"generate", "--kind", "labelcover", "--spec", lc, "--g", "2", "--scenario-cap", "3"}).code ==
        kExitBlowup);
}

TEST_CASE("eval of the 3-SAT witness") {
  CnfFormula phi = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
  SatReduction red = gen_3sat(phi);
  const std::string inst = write("sat.json", save_instance(red.instance));
  SolveReport witness;
  witness.algorithm = "witness";
  witness.status = "Success";
  witness.tree_edges = assignment_to_tree(phi, red, {true, false, false}).indices();
  const std::string sol = write("sat_sol.json", save_report(witness));
  Run r = run({"eval", inst, sol});
  REQUIRE(r.code == kExitOk);
  CHECK(json::parse(r.out)["value"].get<double>() == 0.0);

  SolveReport bad = witness;
  bad.tree_edges = std::vector<EdgeId>{0, 1};
  CHECK(run({"eval", inst, write("bad_sol.json", save_report(bad))}).code == kExitInvalid);
}

TEST_CASE("bench") {
  const std::string empty = write("empty_manifest.json", R"({"runs":[]})");
  Run e = run({"bench", empty});
  REQUIRE(e.code == kExitOk);
  CHECK(e.out == "instance,algo,seed,value,lp_bound,opt,ratio,time_ms\n");

  write("bench_tri.json", kTriangle);
  const std::string manifest = write(
      "manifest.json",
      R"({"runs":[{"instance":"bench_tri.json","algo":"lp-round","seeds":[2,1]},{"instance":"bench_tri.json","algo":"exact","seeds":[0]}]})");
  Run one = run({"bench", manifest});
  Run four = run({"bench", manifest, "--threads", "4"});
  REQUIRE(one.code == kExitOk);
  CHECK(one.out == four.out);
  std::istringstream lines(one.out);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].rfind("bench_tri.json,exact,0,2,,2,1,0", 0) == 0);
  CHECK(rows[1].rfind("bench_tri.json,lp-round,1,", 0) == 0);
  CHECK(rows[2].rfind("bench_tri.json,lp-round,2,", 0) == 0);
}
