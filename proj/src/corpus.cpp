#include "tksa/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tksa {
namespace {

std::size_t kind_index(Kind kind) { return static_cast<std::size_t>(kind); }

// Strips a trailing '\r' so CRLF input behaves like LF.
bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool skippable(const std::string& line) {
  return line.empty() || line.front() == '#';
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delim)) fields.push_back(field);
  if (!line.empty() && line.back() == delim) fields.emplace_back();
  return fields;
}

}  // namespace

char kind_letter(Kind kind) {
  switch (kind) {
    case Kind::Knowledge: return 'K';
    case Kind::Skill: return 'S';
    case Kind::Task: return 'T';
    case Kind::Ability: return 'A';
  }
  return '?';
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::Knowledge: return "Knowledge";
    case Kind::Skill: return "Skill";
    case Kind::Task: return "Task";
    case Kind::Ability: return "Ability";
  }
  return "?";
}

std::optional<Kind> kind_from_name(std::string_view name) {
  for (Kind kind : kAllKinds)
    if (name == kind_name(kind)) return kind;
  return std::nullopt;
}

std::optional<Kind> kind_from_letter(char letter) {
  for (Kind kind : kAllKinds)
    if (letter == kind_letter(kind)) return kind;
  return std::nullopt;
}

bool valid_id(std::string_view id) {
  if (id.size() != 5) return false;
  if (!kind_from_letter(id[0])) return false;
  return std::all_of(id.begin() + 1, id.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

Corpus::Corpus(std::vector<TksaEntry> entries) : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const TksaEntry& e = entries_[i];
    if (!valid_id(e.id)) throw DataError("invalid TKSA id: '" + e.id + "'");
    if (*kind_from_letter(e.id.front()) != e.kind)
      throw DataError("id letter does not match kind for " + e.id);
    if (e.description.empty())
      throw DataError("empty description for " + e.id);
    if (!index_.emplace(e.id, i).second)
      throw DataError("duplicate TKSA id: " + e.id);
    ++totals_[kind_index(e.kind)];
  }
}

const TksaEntry* Corpus::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

void Corpus::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const TksaEntry& e : entries_)
    out << e.id << '|' << kind_name(e.kind) << '|' << e.description << '\n';
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read corpus file " + path.string());

  std::vector<TksaEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (read_line(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto fields = split_fields(line, '|');
    if (fields.size() != 3)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected 3 fields, got " + std::to_string(fields.size()));
    const std::string& id = fields[0];
    if (!valid_id(id))
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": bad id '" + id + "'");
    auto kind = kind_from_name(fields[1]);
    if (!kind)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": unknown kind '" + fields[1] + "'");
    if (kind_letter(*kind) != id.front())
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": kind " + fields[1] + " does not match id " + id);
    if (fields[2].empty())
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": empty description for " + id);
    entries.push_back({id, *kind, fields[2]});
  }
  return Corpus(std::move(entries));  // duplicate check happens here
}

KindCounts category_totals(const Corpus& corpus) {
  return corpus.category_totals();
}

std::string_view vector_tag(AttackVector vector) {
  switch (vector) {
    case AttackVector::PSE: return "PSE";
    case AttackVector::MR: return "MR";
    case AttackVector::WB: return "WB";
  }
  return "?";
}

std::optional<AttackVector> vector_from_tag(std::string_view tag) {
  for (AttackVector v : kAllVectors)
    if (tag == vector_tag(v)) return v;
  return std::nullopt;
}

std::string_view model_name(Model model) {
  return model == Model::Technical ? "technical" : "non_technical";
}

std::optional<Model> model_from_name(std::string_view name) {
  for (Model m : kAllModels)
    if (name == model_name(m)) return m;
  return std::nullopt;
}

MappingTable::MappingTable(std::vector<MappingRecord> records,
                           const Corpus* corpus)
    : records_(std::move(records)) {
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const MappingRecord& r = records_[i];
    if (!valid_id(r.tksa_id))
      throw DataError("invalid TKSA id in mapping: '" + r.tksa_id + "'");
    if (r.vectors.empty())
      throw DataError("mapping record " + r.tksa_id + " has no vectors");
    if (!index_.emplace(r.tksa_id, i).second)
      throw DataError("id mapped more than once: " + r.tksa_id);
    if (corpus && !corpus->contains(r.tksa_id))
      throw DataError("mapped id not in corpus: " + r.tksa_id);
  }
}

const MappingRecord* MappingTable::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &records_[it->second];
}

void MappingTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const MappingRecord& r : records_) {
    out << r.tksa_id << '|' << model_name(r.model) << '|';
    bool first = true;
    for (AttackVector v : kAllVectors) {
      if (!r.vectors.count(v)) continue;
      if (!first) out << ';';
      out << vector_tag(v);
      first = false;
    }
    out << '\n';
  }
}

MappingTable load_mapping_table(const std::filesystem::path& path,
                                const Corpus* corpus) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read mapping file " + path.string());

  std::vector<MappingRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (read_line(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto fields = split_fields(line, '|');
    if (fields.size() != 3)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": expected 3 fields, got " + std::to_string(fields.size()));
    MappingRecord record;
    record.tksa_id = fields[0];
    auto model = model_from_name(fields[1]);
    if (!model)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": unknown model '" + fields[1] + "'");
    record.model = *model;
    for (const std::string& tag : split_fields(fields[2], ';')) {
      auto vec = vector_from_tag(tag);
      if (!vec)
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": unknown vector tag '" + tag + "'");
      record.vectors.insert(*vec);
    }
    records.push_back(std::move(record));
  }
  return MappingTable(std::move(records), corpus);
}

}  // namespace tksa
