#include "tksa/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tksa/dedup.hpp"
#include "tksa/errors.hpp"

namespace tksa {
namespace {

using nlohmann::json;

std::size_t kind_index(Kind kind) { return static_cast<std::size_t>(kind); }
std::size_t model_index(Model model) { return static_cast<std::size_t>(model); }

// Published full-framework category totals and the coverage percentages
// printed alongside them in the source study.
constexpr KindCounts kFullFrameworkTotals = {634, 377, 1006, 177};
constexpr std::array<std::array<double, 4>, 2> kReferencePercent = {{
    {7.57, 6.10, 1.02, 3.38},  // technical K,S,T,A
    {4.41, 2.12, 1.12, 3.95},  // non-technical K,S,T,A
}};

std::vector<std::string> phrase_tokens(std::string_view text,
                                       const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (const Token& token : tokenize(text)) {
    if (stopwords.contains(token.normal)) continue;
    out.push_back(token.normal);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

WorkforceProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read profile file " + path.string());
  WorkforceProfile profile;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string id;
    while (ss >> id) {
      if (!valid_id(id))
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": bad TKSA id '" + id + "'");
      profile.held.insert(id);
    }
  }
  return profile;
}

std::vector<SuggestedMatch> suggest_tksa(const std::string& keyword,
                                         const Corpus& corpus, std::size_t k,
                                         const StopwordSet& stopwords) {
  if (keyword.empty()) throw UsageError("keyword must be non-empty");
  if (k < 1) throw UsageError("k must be >= 1");

  const auto query = phrase_tokens(keyword, stopwords);
  std::vector<SuggestedMatch> matches;
  for (const TksaEntry& entry : corpus.entries()) {
    const auto desc = phrase_tokens(entry.description, stopwords);
    if (query.empty() || desc.empty()) continue;

    // Greedy best-alignment fuzzy intersection: exact token matches, then
    // Jaro-Winkler >= 0.9 near-misses.
    std::vector<bool> used(desc.size(), false);
    std::size_t matched = 0;
    for (const std::string& q : query) {
      double best = 0.0;
      std::size_t best_j = desc.size();
      for (std::size_t j = 0; j < desc.size(); ++j) {
        if (used[j]) continue;
        const double sim = jaro_winkler(q, desc[j]);
        if (sim > best) {
          best = sim;
          best_j = j;
        }
      }
      if (best >= 0.9) {
        used[best_j] = true;
        ++matched;
      }
    }
    if (matched == 0) continue;
    const double unions =
        static_cast<double>(query.size() + desc.size() - matched);
    matches.push_back({&entry, static_cast<double>(matched) / unions});
  }
  std::sort(matches.begin(), matches.end(),
            [](const SuggestedMatch& a, const SuggestedMatch& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.entry->id < b.entry->id;
            });
  if (matches.size() > k) matches.resize(k);
  return matches;
}

CoverageReport coverage_stats(const MappingTable& table, const Corpus& corpus) {
  CoverageReport report;
  for (const MappingRecord& record : table.records()) {
    const TksaEntry* entry = corpus.find(record.tksa_id);
    if (!entry)
      throw DataError("mapped id not in corpus: " + record.tksa_id);
    ++report.cells[model_index(record.model)][kind_index(entry->kind)].count;
    ++report.model_totals[model_index(record.model)];
  }
  const KindCounts& totals = corpus.category_totals();
  const bool full_framework = totals == kFullFrameworkTotals;
  for (Model model : kAllModels) {
    for (Kind kind : kAllKinds) {
      CoverageCell& cell = report.cells[model_index(model)][kind_index(kind)];
      cell.category_total = totals[kind_index(kind)];
      if (cell.category_total > 0)
        cell.percent = 100.0 * static_cast<double>(cell.count) /
                       static_cast<double>(cell.category_total);
      if (full_framework) {
        cell.reference_percent =
            kReferencePercent[model_index(model)][kind_index(kind)];
        cell.discrepancy =
            std::abs(std::round(cell.percent * 100.0) / 100.0 -
                     *cell.reference_percent) > 1e-9;
      }
    }
  }
  return report;
}

VersatilityDistribution versatility_distribution(const MappingTable& table) {
  VersatilityDistribution dist;
  for (const MappingRecord& record : table.records()) {
    const auto kind = kind_from_letter(record.tksa_id.front());
    const std::size_t bucket = record.vectors.size() - 1;
    ++dist.buckets[model_index(record.model)][kind_index(*kind)][bucket];
  }
  return dist;
}

std::set<std::string> vector_requirements(const MappingTable& table,
                                          AttackVector vector,
                                          std::optional<Model> model) {
  std::set<std::string> ids;
  for (const MappingRecord& record : table.records()) {
    if (model && record.model != *model) continue;
    if (record.vectors.count(vector)) ids.insert(record.tksa_id);
  }
  return ids;
}

Scenario Scenario::from_id(int id) {
  switch (id) {
    case 1: case 2: return {id, AttackVector::MR};
    case 3: case 4: return {id, AttackVector::WB};
    case 5: case 6: return {id, AttackVector::PSE};
  }
  throw UsageError("scenario id must be in 1..6, got " + std::to_string(id));
}

ScenarioRequirements scenario_requirements(const MappingTable& table,
                                           Scenario scenario) {
  ScenarioRequirements reqs;
  reqs.scenario = scenario;
  reqs.technical =
      vector_requirements(table, scenario.vector, Model::Technical);
  reqs.non_technical =
      vector_requirements(table, scenario.vector, Model::NonTechnical);
  return reqs;
}

GapReport gap_analysis(const WorkforceProfile& profile, AttackVector vector,
                       const MappingTable& table, std::optional<Model> model) {
  GapReport report;
  report.vector = vector;
  report.model = model;
  report.required = vector_requirements(table, vector, model);
  for (const std::string& id : report.required) {
    if (profile.held.count(id))
      report.held_overlap.insert(id);
    else
      report.missing.insert(id);
  }
  report.coverage_ratio =
      report.required.empty()
          ? 1.0
          : static_cast<double>(report.held_overlap.size()) /
                static_cast<double>(report.required.size());
  return report;
}

namespace {

std::string fmt_percent(double value) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << value;
  return ss.str();
}

json coverage_json(const CoverageReport& report,
                   const VersatilityDistribution& versatility) {
  json models = json::object();
  for (Model model : kAllModels) {
    json kinds = json::object();
    for (Kind kind : kAllKinds) {
      const CoverageCell& cell =
          report.cells[model_index(model)][kind_index(kind)];
      json cell_json = {
          {"count", cell.count},
          {"category_total", cell.category_total},
          {"percent", cell.percent},
      };
      if (cell.reference_percent) {
        cell_json["reference_percent"] = *cell.reference_percent;
        cell_json["discrepancy"] = cell.discrepancy;
        if (cell.discrepancy)
          cell_json["note"] = "computed " + fmt_percent(cell.percent) +
                              "% differs from published reference " +
                              fmt_percent(*cell.reference_percent) + "%";
      }
      const auto& buckets =
          versatility.buckets[model_index(model)][kind_index(kind)];
      cell_json["versatility"] = {{"one_vector", buckets[0]},
                                  {"two_vectors", buckets[1]},
                                  {"three_vectors", buckets[2]}};
      kinds[std::string(1, kind_letter(kind))] = std::move(cell_json);
    }
    kinds["total"] = report.model_totals[model_index(model)];
    models[std::string(model_name(model))] = std::move(kinds);
  }
  return json{{"coverage", std::move(models)}};
}

void coverage_text(std::ostream& out, const CoverageReport& report,
                   const VersatilityDistribution& versatility) {
  out << "model          kind  count  total  percent  v1  v2  v3\n";
  for (Model model : kAllModels) {
    for (Kind kind : kAllKinds) {
      const CoverageCell& cell =
          report.cells[model_index(model)][kind_index(kind)];
      const auto& buckets =
          versatility.buckets[model_index(model)][kind_index(kind)];
      out << std::left << std::setw(15) << model_name(model) << std::setw(6)
          << kind_letter(kind) << std::right << std::setw(5) << cell.count
          << std::setw(7) << cell.category_total << std::setw(8)
          << fmt_percent(cell.percent) << "%" << std::setw(4) << buckets[0]
          << std::setw(4) << buckets[1] << std::setw(4) << buckets[2] << '\n';
    }
    out << std::left << std::setw(15) << model_name(model)
        << "total " << report.model_totals[model_index(model)] << '\n';
  }
  for (Model model : kAllModels) {
    for (Kind kind : kAllKinds) {
      const CoverageCell& cell =
          report.cells[model_index(model)][kind_index(kind)];
      if (cell.reference_percent && cell.discrepancy) {
        out << "note: " << model_name(model) << ' ' << kind_letter(kind)
            << " computed " << fmt_percent(cell.percent)
            << "% differs from published reference "
            << fmt_percent(*cell.reference_percent) << "%\n";
      }
    }
  }
}

}  // namespace

void write_coverage_report(std::ostream& out, const CoverageReport& report,
                           const VersatilityDistribution& versatility,
                           ReportFormat format) {
  if (format == ReportFormat::Json) {
    out << coverage_json(report, versatility).dump(2) << '\n';
  } else {
    coverage_text(out, report, versatility);
  }
}

void write_gap_report(std::ostream& out, const GapReport& report,
                      ReportFormat format) {
  if (format == ReportFormat::Json) {
    json j = {
        {"vector", std::string(vector_tag(report.vector))},
        {"required", report.required},
        {"held", report.held_overlap},
        {"missing", report.missing},
        {"coverage_ratio", report.coverage_ratio},
    };
    if (report.model) j["model"] = std::string(model_name(*report.model));
    out << j.dump(2) << '\n';
    return;
  }
  out << "vector: " << vector_tag(report.vector) << '\n';
  if (report.model) out << "model: " << model_name(*report.model) << '\n';
  out << "required: " << report.required.size() << '\n'
      << "held: " << report.held_overlap.size() << '\n';
  out << "coverage_ratio: " << std::fixed << std::setprecision(4)
      << report.coverage_ratio << '\n';
  out.unsetf(std::ios::fixed);
  out << "missing:";
  for (const std::string& id : report.missing) out << ' ' << id;
  out << '\n';
}

void write_scenario_requirements(std::ostream& out,
                                 const ScenarioRequirements& reqs,
                                 ReportFormat format) {
  if (format == ReportFormat::Json) {
    json j = {
        {"scenario", reqs.scenario.id},
        {"vector", std::string(vector_tag(reqs.scenario.vector))},
        {"technical", reqs.technical},
        {"non_technical", reqs.non_technical},
    };
    out << j.dump(2) << '\n';
    return;
  }
  out << "scenario: " << reqs.scenario.id << " (vector "
      << vector_tag(reqs.scenario.vector) << ")\n";
  out << "technical (" << reqs.technical.size() << "):";
  for (const std::string& id : reqs.technical) out << ' ' << id;
  out << "\nnon_technical (" << reqs.non_technical.size() << "):";
  for (const std::string& id : reqs.non_technical) out << ' ' << id;
  out << '\n';
}

void write_suggestions(std::ostream& out, const std::string& keyword,
                       const std::vector<SuggestedMatch>& matches,
                       ReportFormat format) {
  if (format == ReportFormat::Json) {
    json items = json::array();
    for (const SuggestedMatch& match : matches) {
      items.push_back({{"id", match.entry->id},
                       {"score", match.score},
                       {"description", match.entry->description}});
    }
    out << json{{"keyword", keyword}, {"matches", std::move(items)}}.dump(2)
        << '\n';
    return;
  }
  out << "keyword: " << keyword << '\n';
  for (const SuggestedMatch& match : matches) {
    out << "  " << match.entry->id << "  " << std::fixed
        << std::setprecision(4) << match.score << "  "
        << match.entry->description << '\n';
  }
  out.unsetf(std::ios::fixed);
}

}  // namespace tksa
