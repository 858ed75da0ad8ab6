#ifndef HOMCHECK_LEXICON_HPP
#define HOMCHECK_LEXICON_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homcheck/types.hpp"

namespace homcheck {

/// One lexeme from the homonym resource. A lemma occurring in two entries
/// with an overlapping POS is what makes the word homonymous.
struct HomonymEntry {
  std::string homonym_id;
  std::string lemma;  // normalized
  std::set<Pos> pos_set;
  std::string origin_language;
  std::string origin_form;
  std::string gloss;
  std::string translation_hint;

  bool operator==(const HomonymEntry&) const = default;
};

class Lexicon {
 public:
  static Lexicon load(const std::string& path);

  const std::vector<HomonymEntry>& entries() const { return entries_; }
  const HomonymEntry* entry(const std::string& homonym_id) const;

  /// w^-1: homonym ids whose entry covers this lemma/POS.
  const std::set<std::string>& homonym_ids(const Word& w) const;

  /// The homonymous-word set: words covered by at least two entries.
  std::set<Word> homonymous_words() const;

  bool is_homonymous(const Word& w) const { return homonym_ids(w).size() >= 2; }

  const std::map<Word, std::set<std::string>>& index() const { return index_; }

  /// Canonical TSV dump; load(dump) reproduces an equal lexicon.
  std::string canonical_dump() const;

  void add_entry(HomonymEntry e);  // used by the fixture generator

  /// Content equality: same entry set regardless of load order.
  bool operator==(const Lexicon& other) const;

 private:
  std::vector<HomonymEntry> entries_;
  std::map<Word, std::set<std::string>> index_;
};

struct ExcludedSense {
  std::string raw_key;
  std::string reason;  // bad-key | unknown-homonym | lemma-mismatch | pos-mismatch | duplicate-key

  bool operator==(const ExcludedSense&) const = default;
};

class SenseMap {
 public:
  /// Rows failing the key grammar or the lemma/POS cross-check against the
  /// lexicon are collected in excluded() rather than aborting the load.
  static SenseMap load(const std::string& path, const Lexicon& lex);

  const std::map<std::string, std::string>& map() const { return map_; }
  const std::vector<ExcludedSense>& excluded() const { return excluded_; }

  /// homonym_id for a raw sense key; nullopt when unmapped.
  std::optional<std::string> homonym_of(const std::string& raw_key) const;

  /// S(L): mapped keys of one homonym, sorted.
  std::vector<std::string> senses_of(const std::string& homonym_id) const;

  std::size_t mapped_count() const { return map_.size(); }
  std::size_t excluded_count() const { return excluded_.size(); }

  /// Provenance comment lines ('# provenance: ...') seen in the source file.
  const std::vector<std::string>& provenance() const { return provenance_; }

  void add_mapping(const std::string& raw_key, const std::string& homonym_id);

 private:
  std::map<std::string, std::string> map_;
  std::vector<ExcludedSense> excluded_;
  std::vector<std::string> provenance_;
};

struct MappingComparison {
  std::size_t shared = 0;
  std::vector<std::string> disagreements;  // keys mapped by both, to different ids
  /// |disagreements| / shared; nullopt when shared == 0 ("no overlap").
  std::optional<double> rate() const {
    if (shared == 0) return std::nullopt;
    return static_cast<double>(disagreements.size()) / static_cast<double>(shared);
  }
};

MappingComparison compare_mappings(const SenseMap& a, const SenseMap& b);

/// Outcome of pushing one instance's gold keys through the sense map.
struct HomonymResolution {
  enum Kind { Unmapped, Mapped, Conflict } kind = Unmapped;
  std::string homonym_id;               // set when Mapped
  std::set<std::string> homonym_ids;    // all distinct mapped ids (>=2 when Conflict)
};

/// Joint resolution over an instance's gold keys: Mapped when all mapped keys
/// agree on one homonym, Conflict when they straddle two, Unmapped when none
/// of the keys is in the map.
HomonymResolution resolve_homonym(const SenseMap& smap,
                                  const std::vector<std::string>& gold_keys);

}  // namespace homcheck

#endif
