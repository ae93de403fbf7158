#include "tksa/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "tksa/errors.hpp"

namespace tksa {
namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }
bool is_joiner(char c) { return c == '-' || c == '\''; }

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

CasingClass classify(std::string_view surface) {
  bool all_alpha = !surface.empty() &&
                   std::all_of(surface.begin(), surface.end(), [](unsigned char c) {
                     return std::isalpha(c) != 0;
                   });
  bool any_upper = std::any_of(surface.begin(), surface.end(), [](unsigned char c) {
    return std::isupper(c) != 0;
  });
  if (!any_upper) return CasingClass::Lower;
  if (all_alpha && surface.size() >= 2 &&
      std::all_of(surface.begin(), surface.end(),
                  [](unsigned char c) { return std::isupper(c) != 0; }))
    return CasingClass::AllCapsAcronym;
  if (std::isupper(static_cast<unsigned char>(surface.front())) &&
      std::none_of(surface.begin() + 1, surface.end(), [](unsigned char c) {
        return std::isupper(c) != 0;
      }))
    return CasingClass::InitialCapital;
  return CasingClass::Mixed;
}

}  // namespace

bool digits_only(std::string_view word) {
  return !word.empty() && std::all_of(word.begin(), word.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

std::vector<Token> tokenize(std::string_view sentence_text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = sentence_text.size();
  while (i < n) {
    if (!is_word_char(sentence_text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n) {
      if (is_word_char(sentence_text[j])) {
        ++j;
      } else if (is_joiner(sentence_text[j]) && j + 1 < n &&
                 is_word_char(sentence_text[j + 1])) {
        j += 2;  // internal hyphen/apostrophe
      } else {
        break;
      }
    }
    Token token;
    token.surface = std::string(sentence_text.substr(i, j - i));
    token.normal = to_lower(token.surface);
    token.casing = classify(token.surface);
    token.sentence_initial = tokens.empty();
    tokens.push_back(std::move(token));
    i = j;
  }
  return tokens;
}

std::vector<Sentence> split_sentences(std::string_view text) {
  // Cut the raw text at terminators first, then tokenize each piece.
  std::vector<std::string> pieces;
  std::string current;
  std::size_t newline_run = 0;
  auto flush = [&] {
    pieces.push_back(current);
    current.clear();
  };
  for (char c : text) {
    if (c == '.' || c == '!' || c == '?') {
      flush();
      newline_run = 0;
    } else if (c == '\n') {
      if (++newline_run >= 2) flush();  // blank line
      current.push_back(' ');
    } else {
      if (c != '\r') newline_run = 0;
      current.push_back(c);
    }
  }
  flush();

  std::vector<Sentence> sentences;
  for (const std::string& piece : pieces) {
    Sentence sentence;
    sentence.tokens = tokenize(piece);
    if (sentence.tokens.empty()) continue;
    sentence.index = sentences.size();
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

StopwordSet StopwordSet::default_set() {
  static const char* kWords[] = {
      "a", "about", "above", "after", "again", "against", "all", "am", "an",
      "and", "any", "are", "aren't", "as", "at", "be", "because", "been",
      "before", "being", "below", "between", "both", "but", "by", "can",
      "cannot", "could", "couldn't", "did", "didn't", "do", "does", "doesn't",
      "doing", "don't", "down", "during", "each", "few", "for", "from",
      "further", "had", "hadn't", "has", "hasn't", "have", "haven't", "having",
      "he", "he'd", "he'll", "he's", "her", "here", "here's", "hers",
      "herself", "him", "himself", "his", "how", "how's", "i", "i'd", "i'll",
      "i'm", "i've", "if", "in", "into", "is", "isn't", "it", "it's", "its",
      "itself", "let's", "me", "more", "most", "mustn't", "my", "myself",
      "no", "nor", "not", "of", "off", "on", "once", "only", "or", "other",
      "ought", "our", "ours", "ourselves", "out", "over", "own", "same",
      "shan't", "she", "she'd", "she'll", "she's", "should", "shouldn't",
      "so", "some", "such", "than", "that", "that's", "the", "their",
      "theirs", "them", "themselves", "then", "there", "there's", "these",
      "they", "they'd", "they'll", "they're", "they've", "this", "those",
      "through", "to", "too", "under", "until", "up", "very", "was", "wasn't",
      "we", "we'd", "we'll", "we're", "we've", "were", "weren't", "what",
      "what's", "when", "when's", "where", "where's", "which", "while",
      "who", "who's", "whom", "why", "why's", "will", "with", "won't",
      "would", "wouldn't", "you", "you'd", "you'll", "you're", "you've",
      "your", "yours", "yourself", "yourselves"};
  StopwordSet set;
  for (const char* w : kWords) set.words_.insert(w);
  return set;
}

StopwordSet StopwordSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read stopword file " + path.string());
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    set.words_.insert(to_lower(line));
  }
  return set;
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.count(std::string(word)) > 0;
}

std::vector<CandidatePhrase> generate_candidates(const std::vector<Sentence>& doc,
                                                 int n_max,
                                                 const StopwordSet& stopwords) {
  if (n_max < 1 || n_max > 5)
    throw UsageError("n_max must be in [1,5], got " + std::to_string(n_max));

  std::vector<CandidatePhrase> candidates;
  for (const Sentence& sentence : doc) {
    const std::size_t len = sentence.tokens.size();
    for (std::size_t start = 0; start < len; ++start) {
      for (std::size_t k = 1; k <= static_cast<std::size_t>(n_max) &&
                              start + k <= len; ++k) {
        const Token& first = sentence.tokens[start];
        const Token& last = sentence.tokens[start + k - 1];
        if (stopwords.contains(first.normal) || stopwords.contains(last.normal))
          continue;
        bool has_digit_only = false;
        std::string normal_form;
        for (std::size_t t = start; t < start + k; ++t) {
          const Token& token = sentence.tokens[t];
          if (digits_only(token.normal)) {
            has_digit_only = true;
            break;
          }
          if (!normal_form.empty()) normal_form.push_back(' ');
          normal_form += token.normal;
        }
        if (has_digit_only) continue;
        CandidatePhrase phrase;
        phrase.tokens.assign(sentence.tokens.begin() + start,
                             sentence.tokens.begin() + start + k);
        phrase.normal_form = std::move(normal_form);
        phrase.sentence_index = sentence.index;
        phrase.start = start;
        candidates.push_back(std::move(phrase));
      }
    }
  }
  return candidates;
}

}  // namespace tksa
