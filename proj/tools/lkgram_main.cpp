// Command-line front end: check proofs, dump grammars, enumerate languages,
// eliminate cuts, and verify the language-preservation expectations.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lkgram/analysis.hpp"
#include "lkgram/grammar.hpp"
#include "lkgram/lk_kernel.hpp"
#include "lkgram/reduction.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lkgram;

namespace {

struct Config {
  GrammarMode mode = GrammarMode::ContextSensitive;
  Strategy strategy = Strategy::WeakFirst;
  size_t limit = 100000;
  bool structured = false;
  unsigned long long seed = 0;
  std::string out;
};

// Exit codes: 0 ok, 1 semantic failure, 2 input error, 3 resource limit.
constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kInput = 2;
constexpr int kLimit = 3;

std::vector<fs::path> collect_inputs(const std::string& arg) {
  fs::path p(arg);
  if (!fs::exists(p)) throw InputError("no such file or directory: " + arg);
  if (!fs::is_directory(p)) return {p};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(p))
    if (e.is_regular_file() && e.path().extension() == ".lk")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

Problem load_problem(const fs::path& f) {
  std::ifstream in(f);
  if (!in) throw InputError("cannot open " + f.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), f.stem().string());
}

void emit_payload(const Config& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw InputError("cannot write " + cfg.out);
  out << payload;
}

std::string path_str(const std::vector<int>& path) {
  std::string s = "[";
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(path[i]);
  }
  return s + "]";
}

json witness_json(const WitnessItem& w) {
  return json{{"index", w.index}, {"terms", w.keys}};
}

// --- check ---------------------------------------------------------------

int cmd_check(const Config& cfg, const std::vector<fs::path>& files) {
  int rc = kOk;
  for (const auto& f : files) {
    Problem prob;
    try {
      prob = load_problem(f);
    } catch (const ParseError& e) {
      // Keep checking the remaining files; a corpus may mix good and bad.
      std::cerr << f.string() << ": parse error: " << e.what() << "\n";
      rc = std::max(rc, kInput);
      continue;
    } catch (const InputError& e) {
      std::cerr << f.string() << ": input error: " << e.what() << "\n";
      rc = std::max(rc, kInput);
      continue;
    }
    std::vector<Violation> vs = check_proof(prob.proof);
    if (cfg.structured) {
      json rec{{"command", "check"},
               {"file", f.string()},
               {"ok", vs.empty()},
               {"nodes", proof_size(prob.proof)}};
      json jvs = json::array();
      for (const auto& v : vs)
        jvs.push_back(json{{"node", v.node}, {"message", v.message}});
      rec["violations"] = jvs;
      std::cout << rec.dump() << "\n";
    } else {
      if (vs.empty()) {
        std::cout << f.string() << ": ok (" << proof_size(prob.proof)
                  << " nodes)\n";
      } else {
        std::cout << f.string() << ": invalid\n";
        for (const auto& v : vs)
          std::cout << "  node " << v.node << ": " << v.message << "\n";
      }
    }
    if (!vs.empty()) rc = std::max(rc, kSemantic);
  }
  return rc;
}

// --- grammar ---------------------------------------------------------------

int require_valid(const Problem& prob, const fs::path& f) {
  std::vector<Violation> vs = check_proof(prob.proof);
  if (vs.empty()) return kOk;
  std::cerr << f.string() << ": invalid proof\n";
  for (const auto& v : vs)
    std::cerr << "  node " << v.node << ": " << v.message << "\n";
  return kSemantic;
}

int cmd_grammar(const Config& cfg, const std::vector<fs::path>& files) {
  int rc = kOk;
  for (const auto& f : files) {
    Problem prob = load_problem(f);
    if (int c = require_valid(prob, f)) return c;
    Grammar g = extract_grammar(prob.proof, cfg.mode);
    if (cfg.structured) {
      json rec{{"command", "grammar"},
               {"file", f.string()},
               {"mode", grammar_mode_name(g.mode)},
               {"start", "s[" + std::to_string(g.root) + "]"},
               {"end_sequent", show_sequent(g.end)},
               {"productions", g.prods.size()}};
      std::cout << rec.dump() << "\n";
      for (const auto& p : g.prods) {
        json pr{{"command", "production"},
                {"file", f.string()},
                {"nt", "s[" + std::to_string(p.node) + ":" +
                           std::to_string(p.index) + "]"},
                {"destructure", p.destructure},
                {"rhs", show_lterm(p.rhs)}};
        std::cout << pr.dump() << "\n";
      }
    } else {
      std::string head = files.size() > 1 ? "== " + f.string() + "\n" : "";
      emit_payload(cfg, head + dump_grammar(g));
    }
  }
  return rc;
}

// --- language ---------------------------------------------------------------

int cmd_language(const Config& cfg, const std::vector<fs::path>& files) {
  int rc = kOk;
  for (const auto& f : files) {
    Problem prob = load_problem(f);
    if (int c = require_valid(prob, f)) return c;
    Grammar g = extract_grammar(prob.proof, cfg.mode);
    LanguageResult lang = language(g);
    if (cfg.structured) {
      json rec{{"command", "language"},
               {"file", f.string()},
               {"mode", grammar_mode_name(g.mode)},
               {"size", lang.items.size()},
               {"stuck", lang.stuck}};
      std::cout << rec.dump() << "\n";
      for (const auto& w : lang.items) {
        json jw = witness_json(w);
        jw["command"] = "tuple";
        jw["file"] = f.string();
        std::cout << jw.dump() << "\n";
      }
    } else {
      std::string payload;
      payload += f.string() + ": language (" + grammar_mode_name(g.mode) +
                 "), " + std::to_string(lang.items.size()) + " tuples\n";
      for (size_t i = 0; i < g.end.size(); ++i) {
        bool any = false;
        for (const auto& w : lang.items) {
          if (w.index == static_cast<int>(i)) {
            payload += "  " + show_witness_item(w) + "\n";
            any = true;
          }
        }
        if (!any)
          payload += "  (" + std::to_string(i) + ", -) empty\n";
      }
      if (lang.stuck)
        payload += "  stuck normal forms: " + std::to_string(lang.stuck) + "\n";
      emit_payload(cfg, payload);
    }
  }
  return rc;
}

// --- eliminate ---------------------------------------------------------------

int cmd_eliminate(const Config& cfg, const std::vector<fs::path>& files) {
  int rc = kOk;
  for (const auto& f : files) {
    Problem prob = load_problem(f);
    if (int c = require_valid(prob, f)) return c;
    EliminationResult res =
        eliminate_cuts(prob.proof, cfg.strategy, cfg.limit);
    if (cfg.structured) {
      for (const auto& t : res.trace) {
        json rec{{"command", "step"},
                 {"file", f.string()},
                 {"step", t.step},
                 {"path", t.path},
                 {"kind", redex_kind_name(t.kind)},
                 {"side", side_name(t.side)},
                 {"size", t.size_after}};
        std::cout << rec.dump() << "\n";
      }
      for (const auto& n : res.notes)
        std::cout << json{{"command", "note"}, {"file", f.string()},
                          {"note", n}}
                         .dump()
                  << "\n";
      json rec{{"command", "eliminate"},
               {"file", f.string()},
               {"strategy", strategy_name(cfg.strategy)},
               {"steps", res.trace.size()},
               {"limit_hit", res.limit_hit},
               {"cut_free", !contains_cut(res.proof)}};
      std::cout << rec.dump() << "\n";
    } else {
      for (const auto& t : res.trace)
        std::cout << "step " << t.step << ": " << redex_kind_name(t.kind)
                  << " " << side_name(t.side) << " at " << path_str(t.path)
                  << " -> size " << t.size_after << "\n";
      for (const auto& n : res.notes) std::cout << "note: " << n << "\n";
      std::cout << f.string() << ": " << res.trace.size() << " steps ("
                << strategy_name(cfg.strategy) << "), "
                << (res.limit_hit ? "step limit reached"
                                  : contains_cut(res.proof) ? "cuts remain"
                                                            : "cut-free")
                << "\n";
    }
    if (res.limit_hit) {
      rc = std::max(rc, kLimit);
      continue;
    }
    Problem out = prob;
    out.proof = res.proof;
    emit_payload(cfg, print_problem(out));
    if (!check_proof(res.proof).empty()) rc = std::max(rc, kSemantic);
  }
  return rc;
}

// --- verify ---------------------------------------------------------------

int cmd_verify(const Config& cfg, const std::vector<fs::path>& files) {
  int rc = kOk;
  size_t checks = 0;
  for (const auto& f : files) {
    Problem prob = load_problem(f);
    if (int c = require_valid(prob, f)) return c;

    for (const Redex& r : applicable_reductions(prob.proof)) {
      PreservationReport rep = verify_preservation(prob.proof, r, cfg.mode);
      ++checks;
      if (cfg.structured) {
        json rec{{"command", "preservation"},
                 {"file", f.string()},
                 {"redex", show_redex(r)},
                 {"case", rep.expectation.case_name},
                 {"expected", expectation_name(rep.expectation.expected)},
                 {"observed", relation_name(rep.observed)},
                 {"consistent", rep.consistent}};
        json lost = json::array(), gained = json::array();
        for (const auto& w : rep.only_before) lost.push_back(witness_json(w));
        for (const auto& w : rep.only_after) gained.push_back(witness_json(w));
        rec["lost"] = lost;
        rec["gained"] = gained;
        std::cout << rec.dump() << "\n";
      } else {
        std::cout << f.string() << ": " << show_redex(r)
                  << ": case=" << rep.expectation.case_name
                  << " expected=" << expectation_name(rep.expectation.expected)
                  << " observed=" << relation_name(rep.observed) << " "
                  << (rep.consistent ? "ok" : "INCONSISTENT") << "\n";
        for (const auto& w : rep.only_before)
          std::cout << "    lost " << show_witness_item(w) << "\n";
        for (const auto& w : rep.only_after)
          std::cout << "    gained " << show_witness_item(w) << "\n";
      }
      if (!rep.consistent) rc = std::max(rc, kSemantic);
    }

    EndToEndReport e2e =
        end_to_end_check(prob.proof, cfg.strategy, cfg.mode, cfg.limit);
    ++checks;
    if (cfg.structured) {
      json rec{{"command", "end-to-end"},
               {"file", f.string()},
               {"strategy", strategy_name(cfg.strategy)},
               {"language_size", e2e.language_before.size()},
               {"steps", e2e.steps},
               {"limit_hit", e2e.limit_hit},
               {"output_valid", e2e.output_valid},
               {"herbrand_size", e2e.herbrand.size()},
               {"herbrand_included", e2e.herbrand_included},
               {"tautology", e2e.taut.tautology},
               {"ok", e2e.ok}};
      std::cout << rec.dump() << "\n";
    } else {
      std::cout << f.string() << ": end-to-end ("
                << strategy_name(cfg.strategy) << "): language "
                << e2e.language_before.size() << " tuples, " << e2e.steps
                << " steps, herbrand " << e2e.herbrand.size()
                << " tuples included=" << (e2e.herbrand_included ? "yes" : "no")
                << ", tautology=" << (e2e.taut.tautology ? "yes" : "no")
                << ", output-valid=" << (e2e.output_valid ? "yes" : "no")
                << (e2e.ok ? " ok" : " FAILED") << "\n";
    }
    if (e2e.limit_hit) rc = std::max(rc, kLimit);
    if (!e2e.ok && !e2e.limit_hit) rc = std::max(rc, kSemantic);
  }
  if (checks == 0)
    std::cout << "warning: no input proofs, nothing verified\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof grammars: checking, cut elimination, languages"};
  app.require_subcommand(1);

  Config cfg;
  std::string mode_name = "context-sensitive";
  std::string strategy_name_arg = "weak-first";
  std::string format = "text";
  std::string input;

  auto add_common = [&](CLI::App* sub, bool needs_input = true) {
    if (needs_input)
      sub->add_option("input", input, "proof file or corpus directory")
          ->required();
    sub->add_option("--mode", mode_name,
                    "grammar mode: context-sensitive | context-free");
    sub->add_option("--strategy", strategy_name_arg,
                    "weak-first | restricted | unrestricted");
    sub->add_option("--limit", cfg.limit, "step limit");
    sub->add_option("--format", format, "text | structured");
    sub->add_option("--seed", cfg.seed, "seed for randomized modes");
    sub->add_option("--out", cfg.out, "write the main payload to a file");
  };

  CLI::App* c_check = app.add_subcommand("check", "validate proofs");
  CLI::App* c_grammar = app.add_subcommand("grammar", "dump the proof grammar");
  CLI::App* c_language =
      app.add_subcommand("language", "enumerate the language");
  CLI::App* c_eliminate =
      app.add_subcommand("eliminate", "eliminate cuts, print the trace");
  c_eliminate->alias("reduce");
  CLI::App* c_verify =
      app.add_subcommand("verify", "verify preservation expectations");
  for (CLI::App* sub :
       {c_check, c_grammar, c_language, c_eliminate, c_verify})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    auto m = grammar_mode_from_name(mode_name);
    if (!m) throw InputError("unknown mode: " + mode_name);
    cfg.mode = *m;
    auto s = strategy_from_name(strategy_name_arg);
    if (!s) throw InputError("unknown strategy: " + strategy_name_arg);
    cfg.strategy = *s;
    if (format != "text" && format != "structured")
      throw InputError("unknown format: " + format);
    cfg.structured = format == "structured";

    std::vector<fs::path> files = collect_inputs(input);

    if (app.got_subcommand(c_check)) return cmd_check(cfg, files);
    if (app.got_subcommand(c_grammar)) return cmd_grammar(cfg, files);
    if (app.got_subcommand(c_language)) return cmd_language(cfg, files);
    if (app.got_subcommand(c_eliminate)) return cmd_eliminate(cfg, files);
    if (app.got_subcommand(c_verify)) return cmd_verify(cfg, files);
    return kInput;
  } catch (const LimitError& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kLimit;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemantic;
  }
}
