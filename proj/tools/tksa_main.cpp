// tksa: keyword extraction, de-duplication, and workforce mapping reports.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tksa/corpus.hpp"
#include "tksa/dedup.hpp"
#include "tksa/errors.hpp"
#include "tksa/mapping.hpp"
#include "tksa/textprep.hpp"
#include "tksa/yake.hpp"

namespace {

using namespace tksa;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct GlobalOptions {
  std::string format = "text";
  std::string output;
  bool verbose = false;
};

ReportFormat report_format(const GlobalOptions& opts) {
  if (opts.format == "json") return ReportFormat::Json;
  if (opts.format == "text") return ReportFormat::Text;
  throw UsageError("unknown format '" + opts.format + "' (expected json|text)");
}

// Results go to --output when given, stdout otherwise.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DataError("cannot write output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StopwordSet load_stopwords(const std::string& override_path) {
  if (override_path.empty()) return StopwordSet::default_set();
  return StopwordSet::load(override_path);
}

std::string resolve_corpus_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("TKSA_CORPUS"); env && *env) return env;
  throw UsageError("no corpus given: pass --corpus or set TKSA_CORPUS");
}

std::vector<KeywordCandidate> read_keywords_file(const std::string& path) {
  if (path.empty() || path == "-") return read_keywords(std::cin);
  std::ifstream in(path);
  if (!in) throw DataError("cannot read keywords file " + path);
  return read_keywords(in);
}

DedupPolicy make_policy(const std::string& alg, double threshold,
                        bool no_subset_rule) {
  DedupPolicy policy;
  if (alg == "levenshtein")
    policy.algorithm = SimilarityAlgorithm::Levenshtein;
  else if (alg == "jaro_winkler")
    policy.algorithm = SimilarityAlgorithm::JaroWinkler;
  else if (alg == "hamming")
    policy.algorithm = SimilarityAlgorithm::Hamming;
  else
    throw UsageError("unknown dedup algorithm '" + alg + "'");
  if (threshold < 0.0 || threshold > 1.0)
    throw UsageError("dedup threshold must be in [0,1]");
  policy.threshold = threshold;
  policy.token_subset_rule = !no_subset_rule;
  return policy;
}

int run(int argc, char** argv) {
  CLI::App app{"Keyword extraction and TKSA workforce mapping toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format: text|json");
  app.add_option("--output", global.output, "Write results to a file");
  app.add_flag("--verbose", global.verbose, "Print progress to stderr");

  // extract
  auto* extract = app.add_subcommand("extract", "Extract ranked keywords");
  std::vector<std::string> inputs;
  int ngram = 3, window = 1, top = 20;
  std::string stopword_path;
  extract->add_option("--input", inputs, "Input text file(s)")->required();
  extract->add_option("--ngram", ngram, "Maximum phrase length (1-5)");
  extract->add_option("--window", window, "Co-occurrence window");
  extract->add_option("--top", top, "Number of keywords to emit");
  extract->add_option("--stopwords", stopword_path, "Stopword list override");

  // dedupe
  auto* dedupe_cmd = app.add_subcommand("dedupe", "Mark near-duplicate keywords");
  std::string keywords_path;
  std::string dedup_alg = "levenshtein";
  double dedup_threshold = 0.8;
  bool no_subset_rule = false;
  dedupe_cmd->add_option("--input", keywords_path,
                         "Keyword list (rank|phrase|score|kept), '-' for stdin");
  dedupe_cmd->add_option("--dedup-alg", dedup_alg,
                         "levenshtein|jaro_winkler|hamming");
  dedupe_cmd->add_option("--dedup-threshold", dedup_threshold,
                         "Similarity threshold in [0,1]");
  dedupe_cmd->add_flag("--no-subset-rule", no_subset_rule,
                       "Disable the multi-token subset rule");

  // map-suggest
  auto* suggest_cmd =
      app.add_subcommand("map-suggest", "Suggest TKSA entries for keywords");
  std::string suggest_input, corpus_path, suggest_keyword, suggest_stopwords;
  int suggest_k = 5;
  suggest_cmd->add_option("--input", suggest_input,
                          "Keyword list file, '-' for stdin");
  suggest_cmd->add_option("--keyword", suggest_keyword,
                          "Suggest for a single phrase instead of a file");
  suggest_cmd->add_option("--corpus", corpus_path, "TKSA corpus file");
  suggest_cmd->add_option("--top", suggest_k, "Suggestions per keyword");
  suggest_cmd->add_option("--stopwords", suggest_stopwords,
                          "Stopword list override");

  // stats
  auto* stats_cmd =
      app.add_subcommand("stats", "Coverage and versatility report");
  std::string mapping_path;
  std::string stats_corpus;
  stats_cmd->add_option("--mapping", mapping_path, "Mapping file")->required();
  stats_cmd->add_option("--corpus", stats_corpus, "TKSA corpus file");

  // gap
  auto* gap_cmd = app.add_subcommand("gap", "Workforce gap report");
  std::string profile_path, gap_vector, gap_mapping, gap_model, gap_corpus;
  gap_cmd->add_option("--profile", profile_path, "Profile file (one id per line)")
      ->required();
  gap_cmd->add_option("--vector", gap_vector, "PSE|MR|WB")->required();
  gap_cmd->add_option("--mapping", gap_mapping, "Mapping file")->required();
  gap_cmd->add_option("--model", gap_model, "technical|non_technical");
  gap_cmd->add_option("--corpus", gap_corpus,
                      "Optional corpus for mapping validation");

  // scenario
  auto* scenario_cmd =
      app.add_subcommand("scenario", "Requirement sets for a scenario");
  int scenario_id = 0;
  std::string scenario_mapping;
  scenario_cmd->add_option("--scenario", scenario_id, "Scenario id 1..6")
      ->required();
  scenario_cmd->add_option("--mapping", scenario_mapping, "Mapping file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kExitOk;
    }
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    OutputSink sink(global.output);
    std::ostream& out = sink.stream();
    const ReportFormat format = report_format(global);

    if (*extract) {
      if (ngram < 1 || ngram > 5)
        throw UsageError("--ngram must be in [1,5]");
      if (top < 1) throw UsageError("--top must be >= 1");
      const StopwordSet stopwords = load_stopwords(stopword_path);
      for (const std::string& input : inputs) {
        if (global.verbose) std::cerr << "extracting " << input << '\n';
        const auto doc = split_sentences(read_text_file(input));
        auto keywords = score_candidates(doc, ngram, window, stopwords);
        if (keywords.size() > static_cast<std::size_t>(top))
          keywords.resize(static_cast<std::size_t>(top));
        if (inputs.size() > 1) out << "# file: " << input << '\n';
        write_keywords(out, keywords);
      }
      return kExitOk;
    }

    if (*dedupe_cmd) {
      const auto policy = make_policy(dedup_alg, dedup_threshold, no_subset_rule);
      auto keywords = read_keywords_file(keywords_path);
      write_keywords(out, dedupe(std::move(keywords), policy));
      return kExitOk;
    }

    if (*suggest_cmd) {
      const Corpus corpus = load_corpus(resolve_corpus_path(corpus_path));
      const StopwordSet stopwords = load_stopwords(suggest_stopwords);
      if (suggest_k < 1) throw UsageError("--top must be >= 1");
      std::vector<std::string> phrases;
      if (!suggest_keyword.empty()) {
        phrases.push_back(suggest_keyword);
      } else {
        for (const auto& c : read_keywords_file(suggest_input))
          if (c.kept) phrases.push_back(c.phrase);
      }
      for (const std::string& phrase : phrases) {
        const auto matches = suggest_tksa(phrase, corpus,
                                          static_cast<std::size_t>(suggest_k),
                                          stopwords);
        write_suggestions(out, phrase, matches, format);
      }
      return kExitOk;
    }

    if (*stats_cmd) {
      const Corpus corpus = load_corpus(resolve_corpus_path(stats_corpus));
      const MappingTable table = load_mapping_table(mapping_path, &corpus);
      write_coverage_report(out, coverage_stats(table, corpus),
                            versatility_distribution(table), format);
      return kExitOk;
    }

    if (*gap_cmd) {
      std::optional<Model> model;
      if (!gap_model.empty()) {
        model = model_from_name(gap_model);
        if (!model)
          throw UsageError("unknown model '" + gap_model + "'");
      }
      const auto vector = vector_from_tag(gap_vector);
      if (!vector) throw UsageError("unknown vector '" + gap_vector + "'");
      std::optional<Corpus> corpus;
      if (!gap_corpus.empty()) corpus = load_corpus(gap_corpus);
      const MappingTable table =
          load_mapping_table(gap_mapping, corpus ? &*corpus : nullptr);
      const auto profile = load_profile(profile_path);
      write_gap_report(out, gap_analysis(profile, *vector, table, model),
                       format);
      return kExitOk;
    }

    if (*scenario_cmd) {
      const MappingTable table = load_mapping_table(scenario_mapping);
      const auto reqs =
          scenario_requirements(table, Scenario::from_id(scenario_id));
      write_scenario_requirements(out, reqs, format);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
