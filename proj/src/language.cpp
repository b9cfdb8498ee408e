#include <algorithm>
#include <string>
#include <unordered_set>

#include "cfpq/grammar.hpp"

namespace cfpq {
namespace {

using Chars = std::u32string;

struct Language {
  std::unordered_set<Chars> words;
  // words grouped by length, for length-pruned concatenation
  std::vector<std::vector<Chars>> by_length;

  explicit Language(std::size_t max_len) : by_length(max_len + 1) {}

  bool insert(const Chars& w) {
    if (!words.insert(w).second) return false;
    by_length[w.size()].push_back(w);
    return true;
  }
};

}  // namespace

// Bottom-up derivation: L_k(v) is the set of words of length <= max_len
// derivable from v; iterate every rule against the current approximations
// until nothing new appears. The lattice is finite, so this terminates even
// with unit cycles and nullable recursion.
std::set<Word> generate_strings(const Cfg& g, NonterminalIndex v,
                                std::size_t max_len) {
  const std::size_t n = g.nonterminal_count();
  std::vector<Language> lang(n, Language(max_len));

  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules()) {
      std::vector<Chars> partial{Chars{}};
      for (const Symbol& s : r.body) {
        std::vector<Chars> next;
        if (s.is_terminal()) {
          for (const auto& w : partial)
            if (w.size() < max_len) next.push_back(w + char32_t(s.index));
        } else {
          const Language& sub = lang[s.index];
          for (const auto& w : partial) {
            for (std::size_t len = 0; w.size() + len <= max_len; ++len)
              for (const auto& tail : sub.by_length[len]) next.push_back(w + tail);
          }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        partial = std::move(next);
        if (partial.empty()) break;
      }
      for (const auto& w : partial)
        if (lang[r.head].insert(w)) changed = true;
    }
  }

  std::set<Word> out;
  for (const auto& w : lang[v].words) out.emplace(w.begin(), w.end());
  return out;
}

}  // namespace cfpq
