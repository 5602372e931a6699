// Shared test fixtures: corpus access, small formula builders, and a
// structural proof comparison.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lkgram/analysis.hpp"
#include "lkgram/grammar.hpp"
#include "lkgram/lk_kernel.hpp"
#include "lkgram/reduction.hpp"

namespace testutil {

inline std::string corpus_file(const std::string& name) {
  return std::string(LKGRAM_CORPUS_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline lkgram::Problem load(const std::string& name) {
  return lkgram::parse_problem(slurp(corpus_file(name)), name);
}

// Corpus file names with the given prefix character, sorted.
inline std::vector<std::string> corpus_names(char prefix) {
  std::vector<std::string> out;
  for (const auto& e :
       std::filesystem::directory_iterator(LKGRAM_CORPUS_DIR)) {
    if (!e.is_regular_file() || e.path().extension() != ".lk") continue;
    std::string stem = e.path().filename().string();
    if (!stem.empty() && stem[0] == prefix) out.push_back(stem);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The valid corpus proofs. The coupled-stacked-cuts instance is listed last
// here so cheap tests can skip it by trimming the tail.
inline std::vector<std::string> valid_corpus() { return corpus_names('e'); }
inline std::vector<std::string> mutation_corpus() { return corpus_names('m'); }

// Proofs whose exhaustive all-positions rewrite closure stays small. The
// coupled-stacked-cuts instance is excluded: its free-interleaving state
// space is astronomically larger than its 13-item language.
inline std::vector<std::string> small_corpus() {
  std::vector<std::string> out;
  for (const auto& n : valid_corpus())
    if (n.rfind("e08", 0) != 0) out.push_back(n);
  return out;
}

// Structural equality: same rules, same conclusions (alpha), same rule data.
inline bool proof_equal(const lkgram::ProofPtr& a, const lkgram::ProofPtr& b) {
  using namespace lkgram;
  if (a->rule != b->rule) return false;
  if (!sequent_equal(a->conclusion, b->conclusion)) return false;
  if (a->eigen != b->eigen) return false;
  if (a->perm_pos != b->perm_pos) return false;
  if ((a->witness == nullptr) != (b->witness == nullptr)) return false;
  if (a->witness && !term_equal(a->witness, b->witness)) return false;
  if ((a->weak_f == nullptr) != (b->weak_f == nullptr)) return false;
  if (a->weak_f && !alpha_equal(a->weak_f, b->weak_f)) return false;
  if (a->premises.size() != b->premises.size()) return false;
  for (size_t i = 0; i < a->premises.size(); ++i)
    if (!proof_equal(a->premises[i], b->premises[i])) return false;
  return true;
}

inline lkgram::WitnessSet items_of(const lkgram::ProofPtr& p,
                                   lkgram::GrammarMode mode =
                                       lkgram::GrammarMode::ContextSensitive) {
  lkgram::Grammar g = lkgram::extract_grammar(p, mode);
  return lkgram::language(g).items;
}

}  // namespace testutil
