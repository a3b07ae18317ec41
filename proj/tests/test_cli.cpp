// Drives the installed CLI binary end to end: pipelines, exit codes,
// deterministic reports, and the mutation self-test.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "topogrey/io.hpp"

using namespace topogrey;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;

int run_env(const std::string& env, const std::string& args) {
  std::string cmd = (env.empty() ? "" : "env " + env + " ") + g_cli + " " + args + " > " +
                    (g_dir / "stdout.txt").string() + " 2> " + (g_dir / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

int run(const std::string& args) { return run_env("", args); }

json report_without_timing(const fs::path& p) {
  json j = load_json_file(p.string());
  j.erase("wall_time_ms");
  return j;
}

void write(const fs::path& p, const json& j) { write_json_file(p.string(), j); }

}  // namespace

TEST_CASE("urysohn pipeline builds and certifies a tower") {
  fs::path seed = g_dir / "seed.json";
  write(seed, metric_to_json(FinMetricSpace::singleton("o")));
  fs::path out = g_dir / "tower_report.json";
  fs::path tower = g_dir / "tower.json";
  int rc = run("urysohn --input " + seed.string() + " --q 2 --depth 1 --budget 64 --output " +
               out.string() + " --tower-out " + tower.string());
  CHECK(rc == 0);
  json rep = load_json_file(out.string());
  CHECK(rep["pass"] == true);
  UrysohnTower t = tower_from_json(load_json_file(tower.string()));
  CHECK(t.space.size() == 3);
}

TEST_CASE("isometry pipeline") {
  FinMetricSpace x = FinMetricSpace::from_pairs({"a", "b"}, {{0, 1, Rational01(1, 2)}});
  FinMetricSpace y = FinMetricSpace::from_pairs({"u", "v"}, {{0, 1, Rational01(1, 2)}});
  json j = {{"x", metric_to_json(x)}, {"y", metric_to_json(y)}};
  fs::path in = g_dir / "iso.json";
  write(in, j);
  fs::path out = g_dir / "iso_report.json";
  CHECK(run("isometry --input " + in.string() + " --output " + out.string()) == 0);
  json rep = load_json_file(out.string());
  CHECK(rep["checks"][0]["details"]["isometric"] == true);
}

TEST_CASE("represent-discrete on the Z/2 fixture") {
  fs::path in = g_dir / "z2.json";
  write(in, groupoid_to_json(FinGroupoid::cyclic_group(2)));
  fs::path out = g_dir / "z2_report.json";
  CHECK(run("represent-discrete --input " + in.string() + " --output " + out.string()) == 0);
  json rep = load_json_file(out.string());
  CHECK(rep["pass"] == true);
  CHECK(rep["checks"][0]["details"]["hom_counts"][0]["IsoM"] == 2);
}

TEST_CASE("represent-metric with filtration synthesis") {
  FinGroupoid z4 = FinGroupoid::cyclic_group(4);
  fs::path gin = g_dir / "z4.json";
  write(gin, groupoid_to_json(z4));
  GreyMorphismSet values{Rational01::zero(), Rational01::one(), Rational01(1, 2), Rational01::one()};
  json norms = {{"norms", {norm_to_json(z4, values, "z4.json")}}};
  fs::path nin = g_dir / "norms.json";
  write(nin, norms);
  fs::path out = g_dir / "metric_report.json";
  CHECK(run("represent-metric --input " + gin.string() + " --norms " + nin.string() +
            " --synthesize-filtration 2 --output " + out.string()) == 0);
  json rep = load_json_file(out.string());
  CHECK(rep["pass"] == true);
}

TEST_CASE("uniformize pipeline in io mode") {
  json fam = {{"base", {"x0", "x1"}},
              {"sorts", {"P"}},
              {"fibers", {{"x0", {{"P", {"a", "b"}}}}, {"x1", {{"P", {"a", "b"}}}}}},
              {"relations",
               {{{"name", "R"}, {"arity", {"P"}}, {"tuples", {{"x0", {{0}}}, {"x1", {{1}}}}}}}}};
  fs::path in = g_dir / "family.json";
  write(in, fam);
  fs::path out = g_dir / "unif_report.json";
  CHECK(run("uniformize --input " + in.string() + " --mode io --output " + out.string()) == 0);
  json rep = load_json_file(out.string());
  CHECK(rep["pass"] == true);
}

TEST_CASE("check-laws runs and reports per law") {
  fs::path out = g_dir / "laws.json";
  CHECK(run("check-laws --suite grey-algebra --seed 7 --count 25 --output " + out.string()) == 0);
  json rep = load_json_file(out.string());
  CHECK(rep["pass"] == true);
  CHECK(rep["checks"].size() >= 10);
}

TEST_CASE("identical seeds give byte-identical reports modulo timing") {
  fs::path a = g_dir / "rep_a.json";
  fs::path b = g_dir / "rep_b.json";
  CHECK(run("check-laws --suite yoneda-discrete --seed 11 --count 8 --output " + a.string()) == 0);
  CHECK(run("check-laws --suite yoneda-discrete --seed 11 --count 8 --output " + b.string()) == 0);
  CHECK(report_without_timing(a).dump() == report_without_timing(b).dump());
  // The pool size must not influence the report: TOPOGREY_THREADS=1 vs default.
  fs::path c = g_dir / "rep_c.json";
  CHECK(run_env("TOPOGREY_THREADS=1",
                "check-laws --suite yoneda-discrete --seed 11 --count 8 --output " + c.string()) == 0);
  CHECK(report_without_timing(a).dump() == report_without_timing(c).dump());
}

TEST_CASE("urysohn accepts the build action and --seed-file alias") {
  fs::path seed = g_dir / "seed2.json";
  write(seed, metric_to_json(FinMetricSpace::singleton("o")));
  CHECK(run("urysohn build --seed-file " + seed.string() + " --q 1 --depth 1 --budget 16") == 0);
}

TEST_CASE("failing witnesses parse back into module inputs") {
  fs::path out = g_dir / "mut2.json";
  CHECK(run("check-laws --suite grey-algebra --seed 3 --count 3 --self-test-mutation --output " +
            out.string()) == 1);
  json rep = load_json_file(out.string());
  for (const auto& check : rep["checks"])
    if (!check["pass"].get<bool>() && check["name"] == "compose-associativity") {
      auto w = check["details"]["counterexample"]["witness"];
      // Each shrunk relation is itself a valid serialized grey relation.
      GreyRelation r = grey_relation_from_json(w["R"]);
      GreyRelation s = grey_relation_from_json(w["S"]);
      CHECK(r.target == s.source);
    }
}

TEST_CASE("planted mutation makes the harness fail with exit code 1") {
  fs::path out = g_dir / "mut.json";
  int rc = run("check-laws --suite grey-algebra --seed 7 --count 5 --self-test-mutation --output " +
               out.string());
  CHECK(rc == 1);
  json rep = load_json_file(out.string());
  CHECK(rep["pass"] == false);
  // Every failing verdict carries a witness.
  for (const auto& check : rep["checks"])
    if (!check["pass"].get<bool>()) CHECK(check["details"].contains("counterexample"));
}

TEST_CASE("malformed JSON exits with the usage code and a diagnostic") {
  fs::path in = g_dir / "broken.json";
  std::ofstream(in) << "{ not json";
  CHECK(run("isometry --input " + in.string()) == 2);
  CHECK(run("urysohn --input " + in.string() + " --q 1 --depth 1") == 2);
  CHECK(run("nonsense-subcommand") == 2);
  CHECK(run("check-laws --suite not-a-suite") == 2);
  CHECK(run("isometry --input " + (g_dir / "missing.json").string()) == 2);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-topogrey-binary>\n");
    return 2;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / "topogrey_cli_test";
  fs::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  int rc = ctx.run();
  std::error_code ec;
  fs::remove_all(g_dir, ec);
  return rc;
}
