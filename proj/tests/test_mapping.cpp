#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tksa/errors.hpp"
#include "tksa/mapping.hpp"

using namespace tksa;
namespace fs = std::filesystem;

namespace {

const fs::path kDataDir = TKSA_DATA_DIR;

const Corpus& fixture_corpus() {
  static Corpus corpus = load_corpus(kDataDir / "tksa_corpus.psv");
  return corpus;
}

const MappingTable& fixture_table() {
  static MappingTable table =
      load_mapping_table(kDataDir / "tksa_mapping.psv", &fixture_corpus());
  return table;
}

// Fixture corpus entries plus per-kind filler up to the full-framework totals.
Corpus full_size_corpus() {
  std::vector<TksaEntry> entries = fixture_corpus().entries();
  KindCounts want = {634, 377, 1006, 177};
  KindCounts have = fixture_corpus().category_totals();
  for (Kind kind : kAllKinds) {
    std::size_t next = 5000;
    for (std::size_t i = have[static_cast<int>(kind)];
         i < want[static_cast<int>(kind)]; ++i) {
      char id[6];
      std::snprintf(id, sizeof id, "%c%04zu", kind_letter(kind), next++);
      entries.push_back({id, kind, "filler entry"});
    }
  }
  return Corpus(std::move(entries));
}

std::size_t kidx(Kind k) { return static_cast<std::size_t>(k); }
std::size_t midx(Model m) { return static_cast<std::size_t>(m); }

}  // namespace

TEST_CASE("suggest_tksa ranks the expected entries first") {
  const StopwordSet stops = StopwordSet::default_set();
  auto risk = suggest_tksa("risk management", fixture_corpus(), 3, stops);
  REQUIRE(!risk.empty());
  CHECK(risk[0].entry->id == "K0002");

  auto malware = suggest_tksa("malware analysis tools", fixture_corpus(), 3, stops);
  REQUIRE(!malware.empty());
  CHECK(malware[0].entry->id == "K0188");

  CHECK_THROWS_AS(suggest_tksa("", fixture_corpus(), 3, stops), UsageError);
  CHECK_THROWS_AS(suggest_tksa("x", fixture_corpus(), 0, stops), UsageError);
}

TEST_CASE("coverage_stats on the shipped fixture") {
  Corpus corpus = full_size_corpus();
  MappingTable table = load_mapping_table(kDataDir / "tksa_mapping.psv", &corpus);
  CoverageReport report = coverage_stats(table, corpus);

  CHECK(report.cells[midx(Model::Technical)][kidx(Kind::Knowledge)].count == 49);
  CHECK(report.cells[midx(Model::Technical)][kidx(Kind::Skill)].count == 23);
  CHECK(report.cells[midx(Model::Technical)][kidx(Kind::Ability)].count == 6);
  CHECK(report.cells[midx(Model::Technical)][kidx(Kind::Task)].count == 10);
  CHECK(report.cells[midx(Model::NonTechnical)][kidx(Kind::Knowledge)].count == 28);
  CHECK(report.cells[midx(Model::NonTechnical)][kidx(Kind::Skill)].count == 8);
  CHECK(report.cells[midx(Model::NonTechnical)][kidx(Kind::Ability)].count == 7);
  CHECK(report.cells[midx(Model::NonTechnical)][kidx(Kind::Task)].count == 11);
  CHECK(report.model_totals[midx(Model::Technical)] == 88);
  CHECK(report.model_totals[midx(Model::NonTechnical)] == 54);

  // Percentages computed from counts, never stored constants.
  const auto& tk = report.cells[midx(Model::Technical)][kidx(Kind::Knowledge)];
  CHECK(tk.percent == doctest::Approx(100.0 * 49.0 / 634.0).epsilon(1e-9));
  REQUIRE(tk.reference_percent.has_value());
  CHECK(*tk.reference_percent == 7.57);
  CHECK(tk.discrepancy);  // 7.73 vs published 7.57

  const auto& ts = report.cells[midx(Model::Technical)][kidx(Kind::Skill)];
  CHECK_FALSE(ts.discrepancy);  // 23/377 = 6.10 agrees
}

TEST_CASE("coverage_stats edge cases") {
  Corpus corpus = fixture_corpus();
  CoverageReport empty = coverage_stats(MappingTable{}, corpus);
  for (Model m : kAllModels)
    for (Kind k : kAllKinds) CHECK(empty.cells[midx(m)][kidx(k)].count == 0);

  // Subset corpus: no reference percentages attached.
  MappingTable table = load_mapping_table(kDataDir / "tksa_mapping.psv");
  CoverageReport subset = coverage_stats(table, corpus);
  for (Model m : kAllModels)
    for (Kind k : kAllKinds)
      CHECK_FALSE(subset.cells[midx(m)][kidx(k)].reference_percent.has_value());

  MappingTable unresolvable({{"K4999", Model::Technical, {AttackVector::PSE}}});
  CHECK_THROWS_AS(coverage_stats(unresolvable, corpus), DataError);
}

TEST_CASE("versatility distribution") {
  MappingTable one({{"K0001", Model::Technical, {AttackVector::PSE}}});
  auto dist = versatility_distribution(one);
  CHECK(dist.buckets[midx(Model::Technical)][kidx(Kind::Knowledge)][0] == 1);
  CHECK(dist.buckets[midx(Model::Technical)][kidx(Kind::Knowledge)][1] == 0);
  CHECK(dist.buckets[midx(Model::Technical)][kidx(Kind::Knowledge)][2] == 0);

  // The published technical-knowledge snippet rows: K0001 and K0038 map to a
  // single vector each, K0033 to one (WB), the other five to all three.
  std::vector<MappingRecord> snippet = {
      {"K0001", Model::Technical, {AttackVector::WB}},
      {"K0002", Model::Technical,
       {AttackVector::PSE, AttackVector::MR, AttackVector::WB}},
      {"K0004", Model::Technical,
       {AttackVector::PSE, AttackVector::MR, AttackVector::WB}},
      {"K0005", Model::Technical,
       {AttackVector::PSE, AttackVector::MR, AttackVector::WB}},
      {"K0007", Model::Technical,
       {AttackVector::PSE, AttackVector::MR, AttackVector::WB}},
      {"K0013", Model::Technical,
       {AttackVector::PSE, AttackVector::MR, AttackVector::WB}},
      {"K0033", Model::Technical, {AttackVector::WB}},
      {"K0038", Model::Technical, {AttackVector::MR}},
  };
  auto snippet_dist = versatility_distribution(MappingTable(snippet));
  const auto& buckets =
      snippet_dist.buckets[midx(Model::Technical)][kidx(Kind::Knowledge)];
  CHECK(buckets[0] == 3);
  CHECK(buckets[1] == 0);
  CHECK(buckets[2] == 5);

  // Buckets partition the records on the full fixture.
  auto full = versatility_distribution(fixture_table());
  std::size_t total = 0;
  for (Model m : kAllModels)
    for (Kind k : kAllKinds)
      for (int b = 0; b < 3; ++b) total += full.buckets[midx(m)][kidx(k)][b];
  CHECK(total == fixture_table().size());
}

TEST_CASE("vector_requirements matches the published rows") {
  const std::set<std::string> pse_nt = vector_requirements(
      fixture_table(), AttackVector::PSE, Model::NonTechnical);
  CHECK(pse_nt.size() == 28);
  CHECK(pse_nt.count("K0003"));
  CHECK(pse_nt.count("S0085"));
  CHECK(pse_nt.count("T0280"));
  CHECK(pse_nt.count("A0146"));
  CHECK_FALSE(pse_nt.count("A0009"));  // MR-only ability

  const std::set<std::string> mr_nt = vector_requirements(
      fixture_table(), AttackVector::MR, Model::NonTechnical);
  CHECK(mr_nt.size() == 22);
  CHECK(mr_nt.count("A0009"));

  const std::set<std::string> wb_nt = vector_requirements(
      fixture_table(), AttackVector::WB, Model::NonTechnical);
  CHECK_FALSE(wb_nt.count("A0009"));

  CHECK(vector_requirements(MappingTable{}, AttackVector::PSE).empty());
}

TEST_CASE("model requirement sets are disjoint") {
  for (AttackVector v : kAllVectors) {
    auto tech = vector_requirements(fixture_table(), v, Model::Technical);
    auto nont = vector_requirements(fixture_table(), v, Model::NonTechnical);
    for (const auto& id : tech) CHECK_FALSE(nont.count(id));
  }
}

TEST_CASE("a record appears in exactly as many requirement sets as vectors") {
  for (const MappingRecord& r : fixture_table().records()) {
    std::size_t appearances = 0;
    for (AttackVector v : kAllVectors)
      appearances += vector_requirements(fixture_table(), v).count(r.tksa_id);
    CHECK(appearances == r.vectors.size());
  }
}

TEST_CASE("scenario requirements") {
  CHECK(Scenario::from_id(1).vector == AttackVector::MR);
  CHECK(Scenario::from_id(2).vector == AttackVector::MR);
  CHECK(Scenario::from_id(3).vector == AttackVector::WB);
  CHECK(Scenario::from_id(4).vector == AttackVector::WB);
  CHECK(Scenario::from_id(5).vector == AttackVector::PSE);
  CHECK(Scenario::from_id(6).vector == AttackVector::PSE);
  CHECK_THROWS_AS(Scenario::from_id(0), UsageError);
  CHECK_THROWS_AS(Scenario::from_id(7), UsageError);

  auto s1 = scenario_requirements(fixture_table(), Scenario::from_id(1));
  CHECK(s1.technical.size() == 46);
  CHECK(s1.non_technical.size() == 22);
  CHECK(s1.technical.count("K0188"));
  CHECK(s1.technical.count("S0001"));
  CHECK(s1.technical.count("T0056"));
  CHECK(s1.technical.count("A0010"));

  auto s2 = scenario_requirements(fixture_table(), Scenario::from_id(2));
  CHECK(s1.technical == s2.technical);
  CHECK(s1.non_technical == s2.non_technical);

  auto s4 = scenario_requirements(fixture_table(), Scenario::from_id(4));
  CHECK(s4.technical.size() == 38);
  CHECK(s4.technical.count("K0001"));
  CHECK(s4.technical.count("A0176"));
}

TEST_CASE("gap analysis") {
  const auto required = vector_requirements(fixture_table(), AttackVector::PSE,
                                            Model::NonTechnical);

  WorkforceProfile full{required};
  auto complete = gap_analysis(full, AttackVector::PSE, fixture_table(),
                               Model::NonTechnical);
  CHECK(complete.coverage_ratio == 1.0);
  CHECK(complete.missing.empty());

  auto nothing = gap_analysis(WorkforceProfile{}, AttackVector::PSE,
                              fixture_table(), Model::NonTechnical);
  CHECK(nothing.coverage_ratio == 0.0);
  CHECK(nothing.missing == required);

  // Exactly the non-technical knowledges of the PSE row: 15 of 28.
  WorkforceProfile knowledges;
  for (const auto& id : required)
    if (id.front() == 'K') knowledges.held.insert(id);
  REQUIRE(knowledges.held.size() == 15);
  auto partial = gap_analysis(knowledges, AttackVector::PSE, fixture_table(),
                              Model::NonTechnical);
  CHECK(partial.coverage_ratio == doctest::Approx(15.0 / 28.0).epsilon(1e-9));

  // Empty requirement set convention.
  auto empty = gap_analysis(WorkforceProfile{}, AttackVector::PSE, MappingTable{});
  CHECK(empty.coverage_ratio == 1.0);
}

TEST_CASE("gap partition property on fuzzed profiles") {
  std::mt19937 rng(1234);
  std::vector<std::string> ids;
  for (const auto& e : fixture_corpus().entries()) ids.push_back(e.id);
  for (int trial = 0; trial < 200; ++trial) {
    WorkforceProfile profile;
    for (const auto& id : ids)
      if (rng() % 3 == 0) profile.held.insert(id);
    const auto vector = kAllVectors[rng() % 3];
    auto report = gap_analysis(profile, vector, fixture_table());
    CHECK(report.held_overlap.size() + report.missing.size() ==
          report.required.size());
    for (const auto& id : report.held_overlap) {
      CHECK(report.required.count(id));
      CHECK_FALSE(report.missing.count(id));
    }
    CHECK(report.coverage_ratio >= 0.0);
    CHECK(report.coverage_ratio <= 1.0);
  }
}

TEST_CASE("profile loading") {
  fs::path path = fs::temp_directory_path() / "profile_test.txt";
  {
    std::ofstream out(path);
    out << "# staff profile\nK0002\nK0004  # inline comment\n\nS0001\n";
  }
  auto profile = load_profile(path);
  CHECK(profile.held ==
        std::set<std::string>{"K0002", "K0004", "S0001"});
  fs::remove(path);

  fs::path bad = fs::temp_directory_path() / "profile_bad.txt";
  {
    std::ofstream out(bad);
    out << "notanid\n";
  }
  CHECK_THROWS_AS(load_profile(bad), DataError);
  fs::remove(bad);
}

TEST_CASE("report writers emit both formats") {
  auto report = coverage_stats(fixture_table(), fixture_corpus());
  auto dist = versatility_distribution(fixture_table());
  std::ostringstream text, json_out;
  write_coverage_report(text, report, dist, ReportFormat::Text);
  write_coverage_report(json_out, report, dist, ReportFormat::Json);
  CHECK(text.str().find("technical") != std::string::npos);
  CHECK(json_out.str().find("\"coverage\"") != std::string::npos);

  auto gap = gap_analysis(WorkforceProfile{}, AttackVector::MR, fixture_table());
  std::ostringstream gap_text;
  write_gap_report(gap_text, gap, ReportFormat::Text);
  CHECK(gap_text.str().find("vector: MR") != std::string::npos);
}
