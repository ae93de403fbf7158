#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tksa/corpus.hpp"
#include "tksa/textprep.hpp"

namespace tksa {

struct WorkforceProfile {
  std::set<std::string> held;  // TKSA ids, well-formed
};

WorkforceProfile load_profile(const std::filesystem::path& path);

struct SuggestedMatch {
  const TksaEntry* entry = nullptr;
  double score = 0.0;
};

/// Assistive ranking of corpus entries against a keyword phrase. Match score
/// is Jaccard overlap of non-stopword token sets, with per-token Jaro-Winkler
/// >= 0.9 counting as a match; ties break by id.
std::vector<SuggestedMatch> suggest_tksa(const std::string& keyword,
                                         const Corpus& corpus, std::size_t k,
                                         const StopwordSet& stopwords);

struct CoverageCell {
  std::size_t count = 0;
  std::size_t category_total = 0;
  double percent = 0.0;  // count / category_total * 100, 0 if total is 0
  std::optional<double> reference_percent;  // published value, when applicable
  bool discrepancy = false;  // computed percent disagrees with the reference
};

struct CoverageReport {
  // cells[model][kind]
  std::array<std::array<CoverageCell, 4>, 2> cells = {};
  std::array<std::size_t, 2> model_totals = {};
};

/// Counts and percentages per model x kind. Percentages are always computed
/// from the supplied corpus; published reference percentages are attached only
/// when the corpus carries the full-framework category totals.
CoverageReport coverage_stats(const MappingTable& table, const Corpus& corpus);

struct VersatilityDistribution {
  // buckets[model][kind][v]: records mapped to exactly v+1 vectors
  std::array<std::array<std::array<std::size_t, 3>, 4>, 2> buckets = {};
};

VersatilityDistribution versatility_distribution(const MappingTable& table);

/// Ids whose record includes `vector`, optionally restricted to one model.
std::set<std::string> vector_requirements(const MappingTable& table,
                                          AttackVector vector,
                                          std::optional<Model> model = {});

struct Scenario {
  int id = 1;  // 1..6
  AttackVector vector = AttackVector::MR;

  /// 1-2 -> MR, 3-4 -> WB, 5-6 -> PSE. Throws UsageError otherwise.
  static Scenario from_id(int id);
};

struct ScenarioRequirements {
  Scenario scenario;
  std::set<std::string> technical;
  std::set<std::string> non_technical;
};

ScenarioRequirements scenario_requirements(const MappingTable& table,
                                           Scenario scenario);

struct GapReport {
  AttackVector vector = AttackVector::PSE;
  std::optional<Model> model;
  std::set<std::string> required;
  std::set<std::string> held_overlap;
  std::set<std::string> missing;
  double coverage_ratio = 0.0;  // |held_overlap| / |required|, 1 when required empty
};

GapReport gap_analysis(const WorkforceProfile& profile, AttackVector vector,
                       const MappingTable& table,
                       std::optional<Model> model = {});

enum class ReportFormat { Text, Json };

void write_coverage_report(std::ostream& out, const CoverageReport& report,
                           const VersatilityDistribution& versatility,
                           ReportFormat format);
void write_gap_report(std::ostream& out, const GapReport& report,
                      ReportFormat format);
void write_scenario_requirements(std::ostream& out,
                                 const ScenarioRequirements& reqs,
                                 ReportFormat format);
void write_suggestions(std::ostream& out, const std::string& keyword,
                       const std::vector<SuggestedMatch>& matches,
                       ReportFormat format);

}  // namespace tksa
