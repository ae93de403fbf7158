#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tksa {

enum class CasingClass { Lower, InitialCapital, AllCapsAcronym, Mixed };

struct Token {
  std::string surface;
  std::string normal;  // lowercase(surface)
  CasingClass casing = CasingClass::Lower;
  bool sentence_initial = false;
};

struct Sentence {
  std::size_t index = 0;
  std::vector<Token> tokens;
};

class StopwordSet {
 public:
  StopwordSet() = default;
  static StopwordSet default_set();
  static StopwordSet load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  void insert(std::string word) { words_.insert(std::move(word)); }

 private:
  std::unordered_set<std::string> words_;
};

struct CandidatePhrase {
  std::vector<Token> tokens;
  std::string normal_form;      // space-joined normals
  std::size_t sentence_index = 0;
  std::size_t start = 0;        // token offset within the sentence
};

/// Terminators: '.', '!', '?' and blank lines. Empty text yields no sentences.
std::vector<Sentence> split_sentences(std::string_view text);

/// Tokens are maximal runs of alphanumerics plus internal hyphens/apostrophes.
std::vector<Token> tokenize(std::string_view sentence_text);

/// All contiguous windows of 1..n_max tokens within a sentence, minus windows
/// that start or end with a stopword or contain a digit-only token.
std::vector<CandidatePhrase> generate_candidates(const std::vector<Sentence>& doc,
                                                 int n_max,
                                                 const StopwordSet& stopwords);

bool digits_only(std::string_view word);

}  // namespace tksa
