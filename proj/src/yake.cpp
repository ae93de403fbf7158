#include "tksa/yake.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "tksa/errors.hpp"

namespace tksa {

std::map<std::string, TermStats> term_features(const std::vector<Sentence>& doc,
                                               int window,
                                               const StopwordSet& stopwords) {
  if (window < 1) throw UsageError("window must be >= 1");

  struct Accum {
    TermStats stats;
    std::set<std::string> left, right;
    std::set<std::size_t> sentences;
  };
  std::map<std::string, Accum> accum;

  for (const Sentence& sentence : doc) {
    const auto& tokens = sentence.tokens;
    for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
      const Token& token = tokens[pos];
      if (stopwords.contains(token.normal)) continue;
      Accum& a = accum[token.normal];
      a.stats.term = token.normal;
      ++a.stats.tf;
      if (token.casing == CasingClass::InitialCapital && !token.sentence_initial)
        ++a.stats.tf_upper;
      if (token.casing == CasingClass::AllCapsAcronym) ++a.stats.tf_acronym;
      a.sentences.insert(sentence.index);

      const std::size_t w = static_cast<std::size_t>(window);
      for (std::size_t d = 1; d <= w && d <= pos; ++d) {
        a.left.insert(tokens[pos - d].normal);
        ++a.stats.left_total;
      }
      for (std::size_t d = 1; d <= w && pos + d < tokens.size(); ++d) {
        a.right.insert(tokens[pos + d].normal);
        ++a.stats.right_total;
      }
    }
  }

  std::map<std::string, TermStats> result;
  for (auto& [term, a] : accum) {
    a.stats.left_distinct = static_cast<int>(a.left.size());
    a.stats.right_distinct = static_cast<int>(a.right.size());
    a.stats.sentence_indices.assign(a.sentences.begin(), a.sentences.end());
    result.emplace(term, std::move(a.stats));
  }
  return result;
}

DocAggregates doc_aggregates(const std::map<std::string, TermStats>& stats,
                             std::size_t sentence_count) {
  DocAggregates agg;
  agg.sentence_count = sentence_count;
  if (stats.empty()) return agg;

  double sum = 0.0;
  for (const auto& [term, s] : stats) {
    sum += s.tf;
    agg.max_tf = std::max(agg.max_tf, s.tf);
  }
  agg.mean_tf = sum / static_cast<double>(stats.size());
  double var = 0.0;
  for (const auto& [term, s] : stats) {
    const double d = s.tf - agg.mean_tf;
    var += d * d;
  }
  agg.stddev_tf = std::sqrt(var / static_cast<double>(stats.size()));
  return agg;
}

TermWeight term_weight(const TermStats& stats, const DocAggregates& agg) {
  if (agg.sentence_count == 0) throw DataError("sentence_count must be > 0");

  TermWeight w;
  w.casing = static_cast<double>(std::max(stats.tf_upper, stats.tf_acronym)) /
             (1.0 + std::log(static_cast<double>(stats.tf)));

  const auto& idx = stats.sentence_indices;
  double median;
  const std::size_t n = idx.size();
  if (n % 2 == 1) {
    median = static_cast<double>(idx[n / 2]);
  } else {
    median = (static_cast<double>(idx[n / 2 - 1]) +
              static_cast<double>(idx[n / 2])) / 2.0;
  }
  w.position = std::log(std::log(3.0 + median));

  w.frequency_norm = static_cast<double>(stats.tf) / (agg.mean_tf + agg.stddev_tf);

  const double dl = stats.left_total == 0
                        ? 0.0
                        : static_cast<double>(stats.left_distinct) /
                              static_cast<double>(stats.left_total);
  const double dr = stats.right_total == 0
                        ? 0.0
                        : static_cast<double>(stats.right_distinct) /
                              static_cast<double>(stats.right_total);
  w.relatedness = 1.0 + (dl + dr) * (static_cast<double>(stats.tf) /
                                     static_cast<double>(agg.max_tf));

  w.dispersion = static_cast<double>(idx.size()) /
                 static_cast<double>(agg.sentence_count);

  w.weight = (w.relatedness * w.position) /
             (w.casing + w.frequency_norm / w.relatedness +
              w.dispersion / w.relatedness);
  return w;
}

std::vector<KeywordCandidate> score_candidates(const std::vector<Sentence>& doc,
                                               int n_max, int window,
                                               const StopwordSet& stopwords) {
  const auto candidates = generate_candidates(doc, n_max, stopwords);
  if (candidates.empty()) return {};

  const auto stats = term_features(doc, window, stopwords);
  const auto agg = doc_aggregates(stats, doc.size());

  std::map<std::string, double> weights;
  for (const auto& [term, s] : stats)
    weights.emplace(term, term_weight(s, agg).weight);

  struct Group {
    int tf_phrase = 0;
    std::pair<std::size_t, std::size_t> first_pos{~0ull, ~0ull};
    double prod_w = 1.0;
    double sum_w = 0.0;
  };
  std::map<std::string, Group> groups;
  for (const CandidatePhrase& phrase : candidates) {
    Group& g = groups[phrase.normal_form];
    if (g.tf_phrase == 0) {
      for (const Token& token : phrase.tokens) {
        if (stopwords.contains(token.normal)) continue;  // interior stopwords
        g.prod_w *= weights.at(token.normal);
        g.sum_w += weights.at(token.normal);
      }
    }
    ++g.tf_phrase;
    g.first_pos = std::min(g.first_pos,
                           std::make_pair(phrase.sentence_index, phrase.start));
  }

  struct Scored {
    KeywordCandidate candidate;
    std::pair<std::size_t, std::size_t> first_pos;
  };
  std::vector<Scored> scored;
  scored.reserve(groups.size());
  for (const auto& [phrase, g] : groups) {
    KeywordCandidate c;
    c.phrase = phrase;
    c.tf_phrase = g.tf_phrase;
    c.score = g.prod_w / (g.tf_phrase * (1.0 + g.sum_w));
    scored.push_back({std::move(c), g.first_pos});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return std::tie(a.candidate.score, a.first_pos, a.candidate.phrase) <
           std::tie(b.candidate.score, b.first_pos, b.candidate.phrase);
  });

  std::vector<KeywordCandidate> result;
  result.reserve(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    scored[i].candidate.rank = static_cast<int>(i) + 1;
    result.push_back(std::move(scored[i].candidate));
  }
  return result;
}

void write_keywords(std::ostream& out, const std::vector<KeywordCandidate>& list) {
  for (const KeywordCandidate& c : list) {
    out << c.rank << '|' << c.phrase << '|' << std::fixed
        << std::setprecision(6) << c.score << '|' << (c.kept ? 1 : 0) << '\n';
  }
  out.unsetf(std::ios::fixed);
}

std::vector<KeywordCandidate> read_keywords(std::istream& in) {
  std::vector<KeywordCandidate> list;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ss(line);
    std::string rank, phrase, score, kept;
    if (!std::getline(ss, rank, '|') || !std::getline(ss, phrase, '|') ||
        !std::getline(ss, score, '|') || !std::getline(ss, kept))
      throw DataError("keyword line " + std::to_string(lineno) +
                      ": expected rank|phrase|score|kept");
    KeywordCandidate c;
    try {
      c.rank = std::stoi(rank);
      c.score = std::stod(score);
    } catch (const std::exception&) {
      throw DataError("keyword line " + std::to_string(lineno) +
                      ": bad numeric field");
    }
    c.phrase = phrase;
    c.kept = kept != "0";
    c.tf_phrase = 1;
    list.push_back(std::move(c));
  }
  return list;
}

}  // namespace tksa
