// End-to-end tests of the command-line tool: exit codes, text output,
// structured (NDJSON) output, file emission, and flag validation.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace testutil;

namespace {

struct RunResult {
  int code;         // process exit code
  std::string out;  // stdout and stderr, merged
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(LKGRAM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, out};
}

std::vector<json> ndjson(const std::string& out) {
  std::vector<json> recs;
  size_t pos = 0;
  while (pos < out.size()) {
    size_t nl = out.find('\n', pos);
    if (nl == std::string::npos) nl = out.size();
    std::string line = out.substr(pos, nl - pos);
    if (!line.empty()) recs.push_back(json::parse(line));
    pos = nl + 1;
  }
  return recs;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("check: valid, invalid, and unparsable inputs") {
  SUBCASE("a valid proof checks ok") {
    RunResult r = run_cli("check " + corpus_file("e01_single_witness.lk"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, ": ok ("));
    CHECK(contains(r.out, " nodes)"));
  }
  SUBCASE("a rule violation exits 1 and names the defect") {
    RunResult r =
        run_cli("check " + corpus_file("m1_broken_eigenvariable.lk"));
    CHECK(r.code == 1);
    CHECK(contains(r.out, "invalid"));
    CHECK(contains(r.out, "eigenvariable"));
  }
  SUBCASE("a parse-level defect exits 2") {
    RunResult r = run_cli("check " + corpus_file("m2_wrong_witness.lk"));
    CHECK(r.code == 2);
    CHECK(contains(r.out, "input error:"));
  }
  SUBCASE("a disallowed cut class exits 1") {
    RunResult r =
        run_cli("check " + corpus_file("m3_cut_formula_too_deep.lk"));
    CHECK(r.code == 1);
    CHECK(contains(r.out, "prenex"));
  }
  SUBCASE("a missing file exits 2") {
    RunResult r = run_cli("check /nonexistent/nowhere.lk");
    CHECK(r.code == 2);
    CHECK(contains(r.out, "input error: no such file or directory"));
  }
  SUBCASE("a directory runs every proof in it and keeps the worst code") {
    RunResult r = run_cli("check " + std::string(LKGRAM_CORPUS_DIR));
    CHECK(r.code == 2);  // contains both rule violations and a parse defect
    CHECK(contains(r.out, ": ok ("));
    CHECK(contains(r.out, ": invalid"));
    CHECK(contains(r.out, "input error:"));
  }
  SUBCASE("structured check reports violations as records") {
    RunResult r = run_cli("check --format structured " +
                          corpus_file("m1_broken_eigenvariable.lk"));
    CHECK(r.code == 1);
    std::vector<json> recs = ndjson(r.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["command"] == "check");
    CHECK(recs[0]["ok"] == false);
    REQUIRE_FALSE(recs[0]["violations"].empty());
    CHECK(contains(recs[0]["violations"][0]["message"].get<std::string>(),
                   "eigenvariable"));
  }
}

TEST_CASE("grammar: text dump and structured productions") {
  std::string file = corpus_file("e01_single_witness.lk");
  SUBCASE("text dump") {
    RunResult r = run_cli("grammar " + file);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "mode: context-sensitive"));
    CHECK(contains(r.out, "s[0:0] y0 y1 -> (c * ((s[1:0] y0) y1))"));
  }
  SUBCASE("structured records") {
    RunResult r = run_cli("grammar --format structured " + file);
    CHECK(r.code == 0);
    std::vector<json> recs = ndjson(r.out);
    REQUIRE_FALSE(recs.empty());
    CHECK(recs[0]["command"] == "grammar");
    CHECK(recs[0]["mode"] == "context-sensitive");
    CHECK(recs[0]["productions"] == 4);
    size_t prods = 0;
    for (const auto& rec : recs)
      if (rec["command"] == "production") ++prods;
    CHECK(prods == 4);
  }
  SUBCASE("context-free mode is selectable") {
    RunResult r = run_cli("grammar --mode context-free " + file);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "mode: context-free"));
  }
}

TEST_CASE("language: exact text, structured tuples, determinism") {
  std::string file = corpus_file("e01_single_witness.lk");
  SUBCASE("exact text output") {
    RunResult r = run_cli("language " + file);
    CHECK(r.code == 0);
    CHECK(r.out == file +
                       ": language (context-sensitive), 2 tuples\n"
                       "  (0, <c>)\n"
                       "  (1, <>)\n");
  }
  SUBCASE("structured tuples carry the term keys") {
    RunResult r = run_cli("language --format structured " + file);
    CHECK(r.code == 0);
    std::vector<json> recs = ndjson(r.out);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0]["command"] == "language");
    CHECK(recs[0]["size"] == 2);
    CHECK(recs[0]["stuck"] == 0);
    CHECK(recs[1]["index"] == 0);
    CHECK(recs[1]["terms"] == json::array({"c"}));
    CHECK(recs[2]["index"] == 1);
    CHECK(recs[2]["terms"] == json::array());
  }
  SUBCASE("an invalid proof is refused before enumeration") {
    RunResult r =
        run_cli("language " + corpus_file("m1_broken_eigenvariable.lk"));
    CHECK(r.code == 1);
    CHECK(contains(r.out, "invalid proof"));
  }
  SUBCASE("two runs produce identical output") {
    std::string file8 = corpus_file("e08_coupled_stacked_cuts.lk");
    RunResult a = run_cli("language " + file8);
    RunResult b = run_cli("language " + file8);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("eliminate: traces, limits, and emitted proofs") {
  std::string file = corpus_file("e03_two_block_cut.lk");
  SUBCASE("full elimination prints a trace and ends cut-free") {
    RunResult r = run_cli("eliminate " + file);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "step 1:"));
    CHECK(contains(r.out, "cut-free"));
    CHECK(contains(r.out, "(weak-first)"));
  }
  SUBCASE("the reduce alias is accepted") {
    RunResult r = run_cli("reduce " + file);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "cut-free"));
  }
  SUBCASE("a tiny step limit exits 3") {
    RunResult r = run_cli("eliminate --limit 1 " + file);
    CHECK(r.code == 3);
    CHECK(contains(r.out, "step limit reached"));
  }
  SUBCASE("--out writes a proof that re-checks") {
    std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "lkgram_eliminated.lk";
    std::filesystem::remove(tmp);
    RunResult r = run_cli("eliminate --out " + tmp.string() + " " + file);
    CHECK(r.code == 0);
    REQUIRE(std::filesystem::exists(tmp));
    RunResult chk = run_cli("check " + tmp.string());
    CHECK(chk.code == 0);
    CHECK(contains(chk.out, ": ok ("));
    std::filesystem::remove(tmp);
  }
  SUBCASE("the restricted strategy reports skipped redexes") {
    RunResult r =
        run_cli("eliminate --strategy restricted " +
                corpus_file("e09_contraction_on_universal_cut_formula.lk"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "note: skipped contraction"));
    CHECK(contains(r.out, "(restricted strategy)"));
    CHECK(contains(r.out, "cut-free"));
  }
}

TEST_CASE("verify: structured preservation and end-to-end records") {
  std::string file = corpus_file("e08_coupled_stacked_cuts.lk");
  RunResult r = run_cli("verify --format structured " + file);
  CHECK(r.code == 0);
  std::vector<json> recs = ndjson(r.out);

  SUBCASE("the stacked-cut permutation is incomparable yet consistent") {
    size_t preservations = 0;
    bool found = false;
    for (const auto& rec : recs) {
      if (rec["command"] != "preservation") continue;
      ++preservations;
      CHECK(rec["consistent"] == true);
      if (rec["case"] == "cut-permutation") {
        found = true;
        CHECK(rec["expected"] == "no-guarantee");
        CHECK(rec["observed"] == "incomparable");
        CHECK(rec["lost"].size() == 6);
        CHECK(rec["gained"].size() == 1);
        CHECK(rec["gained"][0]["index"] == 3);
      }
    }
    CHECK(found);
    CHECK(preservations == 3);  // one binary permutation, two unary ones
  }
  SUBCASE("the end-to-end record is ok") {
    bool found = false;
    for (const auto& rec : recs) {
      if (rec["command"] != "end-to-end") continue;
      found = true;
      CHECK(rec["ok"] == true);
      CHECK(rec["language_size"] == 13);
      CHECK(rec["steps"] == 36);
      CHECK(rec["herbrand_size"] == 2);
      CHECK(rec["limit_hit"] == false);
      CHECK(rec["tautology"] == true);
    }
    CHECK(found);
  }
  SUBCASE("verification output is deterministic") {
    RunResult again = run_cli("verify --format structured " + file);
    CHECK(again.code == r.code);
    CHECK(again.out == r.out);
  }
  SUBCASE("text mode prints witnesses for both directions") {
    RunResult t = run_cli("verify " + file);
    CHECK(t.code == 0);
    CHECK(contains(t.out, "case=cut-permutation"));
    CHECK(contains(t.out, "observed=incomparable ok"));
    CHECK(contains(t.out, "    lost (3, <"));
    CHECK(contains(t.out, "    gained (3, <"));
    CHECK(contains(t.out, "end-to-end (weak-first)"));
    CHECK(contains(t.out, " ok"));
  }
}

TEST_CASE("flag validation") {
  std::string file = corpus_file("e01_single_witness.lk");
  SUBCASE("unknown mode") {
    RunResult r = run_cli("language --mode bogus " + file);
    CHECK(r.code == 2);
    CHECK(contains(r.out, "unknown mode: bogus"));
  }
  SUBCASE("unknown strategy") {
    RunResult r = run_cli("eliminate --strategy bogus " + file);
    CHECK(r.code == 2);
    CHECK(contains(r.out, "unknown strategy: bogus"));
  }
  SUBCASE("unknown format") {
    RunResult r = run_cli("check --format bogus " + file);
    CHECK(r.code == 2);
    CHECK(contains(r.out, "unknown format: bogus"));
  }
  SUBCASE("missing input argument") {
    RunResult r = run_cli("check");
    CHECK(r.code != 0);
  }
  SUBCASE("unknown flag") {
    RunResult r = run_cli("check --bogus " + file);
    CHECK(r.code != 0);
  }
  SUBCASE("missing subcommand") {
    RunResult r = run_cli("");
    CHECK(r.code != 0);
  }
}
