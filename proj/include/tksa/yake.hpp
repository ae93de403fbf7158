#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tksa/textprep.hpp"

namespace tksa {

struct TermStats {
  std::string term;
  int tf = 0;
  int tf_upper = 0;    // initial-capital occurrences not at sentence start
  int tf_acronym = 0;  // all-caps occurrences
  std::vector<std::size_t> sentence_indices;  // sorted, unique
  int left_distinct = 0;
  int left_total = 0;
  int right_distinct = 0;
  int right_total = 0;
};

struct DocAggregates {
  double mean_tf = 0.0;
  double stddev_tf = 0.0;  // population standard deviation
  int max_tf = 0;
  std::size_t sentence_count = 0;
};

struct TermWeight {
  double casing = 0.0;          // C
  double position = 0.0;        // P
  double frequency_norm = 0.0;  // F
  double relatedness = 1.0;     // R
  double dispersion = 0.0;      // D
  double weight = 0.0;          // W = (R*P) / (C + F/R + D/R)
};

struct KeywordCandidate {
  std::string phrase;  // normal_form
  int tf_phrase = 0;
  double score = 0.0;
  int rank = 0;
  bool kept = true;
};

/// Per-term occurrence statistics for every non-stopword term in the document.
/// Co-occurrence neighbors are counted over all tokens (stopwords included)
/// within `window` positions, never crossing sentence boundaries.
std::map<std::string, TermStats> term_features(const std::vector<Sentence>& doc,
                                               int window,
                                               const StopwordSet& stopwords);

DocAggregates doc_aggregates(const std::map<std::string, TermStats>& stats,
                             std::size_t sentence_count);

TermWeight term_weight(const TermStats& stats, const DocAggregates& agg);

/// Full extraction: candidates scored with S = prod(W) / (tf * (1 + sum(W))),
/// sorted ascending (lower S = more significant), ranks dense from 1.
/// Ties break by earlier first occurrence, then lexicographic phrase.
std::vector<KeywordCandidate> score_candidates(const std::vector<Sentence>& doc,
                                               int n_max, int window,
                                               const StopwordSet& stopwords);

// `rank|phrase|score|kept` lines, scores to 6 decimal places.
void write_keywords(std::ostream& out, const std::vector<KeywordCandidate>& list);
std::vector<KeywordCandidate> read_keywords(std::istream& in);

}  // namespace tksa
