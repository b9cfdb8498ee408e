#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cfpq/rdf.hpp"

namespace cfpq::testing {

inline std::string data_path(const std::string& name) {
  return std::string(CFPQ_TEST_DATA) + "/" + name;
}

inline constexpr const char* kBio = "http://example.org/bio/";

inline std::string bio(const std::string& local) { return kBio + local; }

inline RdfGraph bio_graph() { return load_ntriples(data_path("bio.nt")); }

/// Pairs of bio-namespace local names, resolved against `g`.
inline PairSet bio_pairs(
    const RdfGraph& g,
    const std::vector<std::pair<std::string, std::string>>& names) {
  PairSet out;
  for (const auto& [a, b] : names)
    out.emplace(*g.find(bio(a)), *g.find(bio(b)));
  return out;
}

inline PairSet to_set(const std::vector<ConstantPair>& pairs) {
  return {pairs.begin(), pairs.end()};
}

}  // namespace cfpq::testing
