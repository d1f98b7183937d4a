#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "animacy/cli.hpp"
#include "doctest.h"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = animacy::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "animacy_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kTax = fixtures::data("toy.tax");
const std::string kMini = fixtures::data("mini.tsv");

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == 0);
  for (const char* sub : {"import-wndb", "annotate", "enrich", "classify", "xval", "eval", "kappa",
                          "simulate", "sweep"}) {
    CAPTURE(sub);
    auto r = run({sub, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--") != std::string::npos);
  }
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"classify", "--bogus"}).code == 2);
  CHECK(run({"sweep", "--corpus", kMini}).code == 2);
  CHECK(run({"classify", "--method", "random", "--corpus", kMini}).code == 2);
  CHECK(run({"classify", "--method", "magic", "--corpus", kMini}).code == 2);
  CHECK(run({"enrich", "--taxonomy", kTax, "--corpus", kMini, "--alpha", "2"}).code == 2);
  CHECK(run({"simulate", "--corpus", kMini, "--window", "-1"}).code == 2);
}

TEST_CASE("runtime errors exit with 1") {
  auto r = run({"enrich", "--taxonomy", "/nonexistent/toy.tax", "--corpus", kMini});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);

  auto bad = scratch("bad.tsv");
  std::ofstream(bad) << "DOC\tx\t1\n";
  CHECK(run({"simulate", "--corpus", bad.string()}).code == 1);
}

TEST_CASE("rule classification and evaluation") {
  auto pred = scratch("rule.tsv");
  auto r = run({"classify", "--method", "rule", "--taxonomy", kTax, "--corpus", kMini, "--out",
                pred.string()});
  REQUIRE(r.code == 0);
  const auto text = slurp(pred);
  CHECK(text.rfind("d1\t0\t0\tA\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 63);

  auto stdout_run = run({"classify", "--method", "rule", "--taxonomy", kTax, "--corpus", kMini});
  CHECK(stdout_run.out == text);

  auto ev = run({"eval", "--gold", kMini, "--pred", pred.string(), "--name", "rule"});
  REQUIRE(ev.code == 0);
  CHECK(ev.out.rfind("system\taccuracy", 0) == 0);
  CHECK(ev.out.find("\nrule\t") != std::string::npos);
}

TEST_CASE("baselines are reproducible") {
  auto a = run({"classify", "--method", "random", "--corpus", kMini, "--seed", "3"});
  auto b = run({"classify", "--method", "random", "--corpus", kMini, "--seed", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto d = run({"classify", "--method", "dummy", "--corpus", kMini});
  REQUIRE(d.code == 0);
  CHECK(d.out.find("\tA\n") == std::string::npos);
}

TEST_CASE("enrich then machine learning") {
  auto enriched = scratch("mini.enriched");
  auto e = run({"enrich", "--taxonomy", kTax, "--corpus", kMini, "--out", enriched.string()});
  REQUIRE(e.code == 0);
  CHECK(slurp(enriched).rfind("STATUS\t", 0) == 0);

  auto x1 = run({"xval", "--taxonomy", kTax, "--enriched", enriched.string(), "--corpus", kMini,
                 "--folds", "5", "--k", "1", "--seed", "4"});
  auto x2 = run({"xval", "--taxonomy", kTax, "--enriched", enriched.string(), "--corpus", kMini,
                 "--folds", "5", "--k", "1", "--seed", "4"});
  REQUIRE(x1.code == 0);
  CHECK(x1.out == x2.out);
  CHECK(x1.out.find("mbl-xval\t") != std::string::npos);

  auto ml = run({"classify", "--method", "ml", "--taxonomy", kTax, "--enriched", enriched.string(),
                 "--train", kMini, "--test", kMini, "--wsd"});
  REQUIRE(ml.code == 0);
  CHECK(std::count(ml.out.begin(), ml.out.end(), '\n') == 63);
}

TEST_CASE("kappa and simulation") {
  auto k = run({"kappa", "--a", kMini, "--b", kMini});
  REQUIRE(k.code == 0);
  CHECK(k.out == "items\tagreement\tkappa\n63\t1.000000\t1.000000\n");

  auto sim = run({"simulate", "--corpus", kMini, "--labels", kMini});
  REQUIRE(sim.code == 0);
  CHECK(sim.out.rfind("pronouns\tsuccess_rate\tavg_candidates_before\tavg_candidates\tpct_no_antecedent\n11\t",
                      0) == 0);
}

TEST_CASE("sweep output") {
  auto csv = scratch("sweep.csv"), marg = scratch("marginals.csv");
  std::vector<std::string> args{"sweep", "--corpus", kMini, "--p-from", "98", "--r-from", "98",
                                "--runs", "3", "--seed", "11", "--out", csv.string(),
                                "--marginals", marg.string()};
  REQUIRE(run(args).code == 0);
  const auto first = slurp(csv);
  args.insert(args.end(), {"--threads", "1"});
  REQUIRE(run(args).code == 0);
  CHECK(slurp(csv) == first);
  CHECK(std::count(first.begin(), first.end(), '\n') == 1 + 9);
  CHECK(slurp(marg).rfind("axis,target,mean_success,cells\n", 0) == 0);
}

TEST_CASE("annotation session through the command line") {
  auto path = scratch("annotate.tsv");
  std::ofstream(path) << "DOC\tz\t1\t0\n"
                         "NP\tz\t0\t0\tman\t0\t-\t0\t0\t-\t-\tman\n"
                         "NP\tz\t0\t1\tcar\t0\t-\t0\t0\t-\t-\tcar\n";
  auto r = run({"annotate", "--corpus", path.string()}, "ai");
  REQUIRE(r.code == 0);
  const auto text = slurp(path);
  CHECK(text.find("man\t0\t-\t0\t0\tA") != std::string::npos);
  CHECK(text.find("car\t0\t-\t0\t0\tI") != std::string::npos);
}
