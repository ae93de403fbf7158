#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tksa/yake.hpp"

namespace tksa {

enum class SimilarityAlgorithm { Levenshtein, JaroWinkler, Hamming };

struct DedupPolicy {
  SimilarityAlgorithm algorithm = SimilarityAlgorithm::Levenshtein;
  double threshold = 0.8;  // in [0,1]
  bool token_subset_rule = true;
};

/// Edit distance under insert/delete/substitute, each cost 1.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - distance/max(|a|,|b|); 1 when both strings are empty.
double levenshtein_similarity(std::string_view a, std::string_view b);

/// Jaro similarity with Winkler prefix boost (prefix <= 4, scaling 0.1).
double jaro_winkler(std::string_view a, std::string_view b);

/// Count of differing positions. Throws DataError unless |a| == |b|.
std::size_t hamming(std::string_view a, std::string_view b);

/// Similarity under the policy's algorithm, or true via the token-subset rule:
/// the shorter phrase has >= 2 tokens and its token set is contained in the
/// other's. Phrases are expected to be normalized (lowercase).
bool is_duplicate(std::string_view a, std::string_view b,
                  const DedupPolicy& policy);

/// Greedy pass in rank order over an ascending-sorted candidate list; marks a
/// candidate removed iff it duplicates an already-kept candidate. Throws
/// UsageError if the input is not sorted ascending by score.
std::vector<KeywordCandidate> dedupe(std::vector<KeywordCandidate> candidates,
                                     const DedupPolicy& policy);

}  // namespace tksa
