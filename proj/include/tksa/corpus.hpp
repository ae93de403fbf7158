#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tksa/errors.hpp"

namespace tksa {

enum class Kind { Knowledge, Skill, Task, Ability };
inline constexpr std::array<Kind, 4> kAllKinds = {Kind::Knowledge, Kind::Skill,
                                                  Kind::Task, Kind::Ability};

char kind_letter(Kind kind);
std::string_view kind_name(Kind kind);
std::optional<Kind> kind_from_name(std::string_view name);
std::optional<Kind> kind_from_letter(char letter);

/// True iff id is one of T/K/S/A followed by exactly four decimal digits.
bool valid_id(std::string_view id);

struct TksaEntry {
  std::string id;
  Kind kind = Kind::Knowledge;
  std::string description;
};

/// Per-kind counts, indexed by Kind.
using KindCounts = std::array<std::size_t, 4>;

/// Immutable, id-indexed collection of TKSA entries.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<TksaEntry> entries);  // throws DataError on dup/invalid

  const TksaEntry* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<TksaEntry>& entries() const { return entries_; }
  const KindCounts& category_totals() const { return totals_; }

  void save(const std::filesystem::path& path) const;

 private:
  std::vector<TksaEntry> entries_;
  std::unordered_map<std::string_view, std::size_t> index_;
  KindCounts totals_ = {};
};

Corpus load_corpus(const std::filesystem::path& path);
KindCounts category_totals(const Corpus& corpus);

enum class AttackVector { PSE, MR, WB };
inline constexpr std::array<AttackVector, 3> kAllVectors = {
    AttackVector::PSE, AttackVector::MR, AttackVector::WB};

std::string_view vector_tag(AttackVector vector);
std::optional<AttackVector> vector_from_tag(std::string_view tag);

enum class Model { Technical, NonTechnical };
inline constexpr std::array<Model, 2> kAllModels = {Model::Technical,
                                                    Model::NonTechnical};

std::string_view model_name(Model model);
std::optional<Model> model_from_name(std::string_view name);

struct MappingRecord {
  std::string tksa_id;
  Model model = Model::Technical;
  std::set<AttackVector> vectors;  // non-empty, at most 3
};

/// Id-indexed mapping of TKSA entries to models and attack vectors.
/// An id appears at most once and under exactly one model.
class MappingTable {
 public:
  MappingTable() = default;
  explicit MappingTable(std::vector<MappingRecord> records,
                        const Corpus* corpus = nullptr);

  const MappingRecord* find(std::string_view id) const;
  std::size_t size() const { return records_.size(); }
  const std::vector<MappingRecord>& records() const { return records_; }

  void save(const std::filesystem::path& path) const;

 private:
  std::vector<MappingRecord> records_;
  std::unordered_map<std::string_view, std::size_t> index_;
};

MappingTable load_mapping_table(const std::filesystem::path& path,
                                const Corpus* corpus = nullptr);

}  // namespace tksa
