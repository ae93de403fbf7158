#include "tksa/dedup.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "tksa/errors.hpp"

namespace tksa {
namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::set<std::string> token_set(std::string_view phrase) {
  std::set<std::string> tokens;
  std::istringstream ss{std::string(phrase)};
  std::string token;
  while (ss >> token) tokens.insert(token);
  return tokens;
}

double similarity(std::string_view a, std::string_view b,
                  const DedupPolicy& policy) {
  switch (policy.algorithm) {
    case SimilarityAlgorithm::Levenshtein:
      return levenshtein_similarity(a, b);
    case SimilarityAlgorithm::JaroWinkler:
      return jaro_winkler(a, b);
    case SimilarityAlgorithm::Hamming: {
      if (a.empty() && b.empty()) return 1.0;
      const double dist = static_cast<double>(hamming(a, b));
      return 1.0 - dist / static_cast<double>(a.size());
    }
  }
  return 0.0;
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Single-row DP over the shorter string.
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
    }
  }
  return row[b.size()];
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  const double longest = static_cast<double>(std::max(a.size(), b.size()));
  return 1.0 - static_cast<double>(levenshtein(a, b)) / longest;
}

double jaro_winkler(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  if (a == b) return 1.0;

  const std::size_t range =
      std::max<std::size_t>(1, std::max(a.size(), b.size()) / 2) - 1;
  std::vector<bool> matched_a(a.size(), false), matched_b(b.size(), false);

  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > range ? i - range : 0;
    const std::size_t hi = std::min(b.size(), i + range + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (matched_b[j] || a[i] != b[j]) continue;
      matched_a[i] = matched_b[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;

  std::size_t transpositions = 0;
  for (std::size_t i = 0, j = 0; i < a.size(); ++i) {
    if (!matched_a[i]) continue;
    while (!matched_b[j]) ++j;
    if (a[i] != b[j]) ++transpositions;
    ++j;
  }

  const double m = static_cast<double>(matches);
  const double jaro = (m / a.size() + m / b.size() +
                       (m - transpositions / 2.0) / m) / 3.0;

  std::size_t prefix = 0;
  while (prefix < 4 && prefix < a.size() && prefix < b.size() &&
         a[prefix] == b[prefix])
    ++prefix;
  return jaro + prefix * 0.1 * (1.0 - jaro);
}

std::size_t hamming(std::string_view a, std::string_view b) {
  if (a.size() != b.size())
    throw DataError("hamming distance requires equal-length strings (" +
                    std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++count;
  return count;
}

bool is_duplicate(std::string_view a, std::string_view b,
                  const DedupPolicy& policy) {
  if (policy.token_subset_rule) {
    const auto ta = token_set(a);
    const auto tb = token_set(b);
    const auto& smaller = ta.size() <= tb.size() ? ta : tb;
    const auto& larger = ta.size() <= tb.size() ? tb : ta;
    if (smaller.size() >= 2 &&
        std::includes(larger.begin(), larger.end(), smaller.begin(),
                      smaller.end()))
      return true;
  }
  return similarity(a, b, policy) >= policy.threshold;
}

std::vector<KeywordCandidate> dedupe(std::vector<KeywordCandidate> candidates,
                                     const DedupPolicy& policy) {
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i - 1].score > candidates[i].score)
      throw UsageError("dedupe input must be sorted ascending by score");

  std::vector<const KeywordCandidate*> kept;
  for (KeywordCandidate& candidate : candidates) {
    const std::string normal = to_lower(candidate.phrase);
    candidate.kept = true;
    for (const KeywordCandidate* rep : kept) {
      if (is_duplicate(normal, to_lower(rep->phrase), policy)) {
        candidate.kept = false;
        break;
      }
    }
    if (candidate.kept) kept.push_back(&candidate);
  }
  return candidates;
}

}  // namespace tksa
