#include "homcheck/lexicon.hpp"

#include <algorithm>

#include "homcheck/errors.hpp"
#include "homcheck/textnorm.hpp"
#include "homcheck/util.hpp"

namespace homcheck {

namespace {
const std::set<std::string> kNoIds;
}

Lexicon Lexicon::load(const std::string& path) {
  Lexicon lex;
  std::set<std::string> seen_ids;
  for_each_tsv_row(path, [&](const std::vector<std::string>& f, std::size_t lineno) {
    if (f.size() != 7)
      throw ParseError(path, lineno,
                       "expected 7 tab-separated fields, got " + std::to_string(f.size()));
    HomonymEntry e;
    e.homonym_id = f[0];
    if (e.homonym_id.empty()) throw ParseError(path, lineno, "empty homonym_id");
    if (!seen_ids.insert(e.homonym_id).second)
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": duplicate homonym_id '" + e.homonym_id + "'");
    e.lemma = normalize_lemma(f[1]);
    if (e.lemma.empty()) throw ParseError(path, lineno, "empty lemma");
    for (const auto& p : split(f[2], ',')) {
      auto t = trim(p);
      auto pos = t.size() == 1 ? pos_from_char(t[0]) : std::nullopt;
      if (!pos)
        throw ParseError(path, lineno, "bad pos '" + t + "' (want n, v, a or r)");
      e.pos_set.insert(*pos);
    }
    if (e.pos_set.empty()) throw ParseError(path, lineno, "empty pos_list");
    e.origin_language = f[3];
    e.origin_form = f[4];
    e.gloss = f[5];
    e.translation_hint = f[6];
    lex.add_entry(std::move(e));
  });
  return lex;
}

void Lexicon::add_entry(HomonymEntry e) {
  for (Pos p : e.pos_set) index_[Word{e.lemma, p}].insert(e.homonym_id);
  entries_.push_back(std::move(e));
}

const HomonymEntry* Lexicon::entry(const std::string& homonym_id) const {
  for (const auto& e : entries_)
    if (e.homonym_id == homonym_id) return &e;
  return nullptr;
}

const std::set<std::string>& Lexicon::homonym_ids(const Word& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? kNoIds : it->second;
}

std::set<Word> Lexicon::homonymous_words() const {
  std::set<Word> out;
  for (const auto& [w, ids] : index_)
    if (ids.size() >= 2) out.insert(w);
  return out;
}

std::string Lexicon::canonical_dump() const {
  std::vector<const HomonymEntry*> sorted;
  sorted.reserve(entries_.size());
  for (const auto& e : entries_) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const HomonymEntry* a, const HomonymEntry* b) {
              return a->homonym_id < b->homonym_id;
            });
  std::string out = "# homonym resource\n";
  for (const HomonymEntry* e : sorted) {
    std::vector<std::string> poses;
    for (Pos p : e->pos_set) poses.emplace_back(1, pos_char(p));
    out += e->homonym_id + "\t" + e->lemma + "\t" + join(poses, ",") + "\t" +
           e->origin_language + "\t" + e->origin_form + "\t" + e->gloss + "\t" +
           e->translation_hint + "\n";
  }
  return out;
}

bool Lexicon::operator==(const Lexicon& other) const {
  auto sorted = [](const std::vector<HomonymEntry>& v) {
    std::vector<HomonymEntry> s = v;
    std::sort(s.begin(), s.end(), [](const HomonymEntry& a, const HomonymEntry& b) {
      return a.homonym_id < b.homonym_id;
    });
    return s;
  };
  return sorted(entries_) == sorted(other.entries_);
}

SenseMap SenseMap::load(const std::string& path, const Lexicon& lex) {
  SenseMap sm;
  for_each_tsv_row(
      path,
      [&](const std::vector<std::string>& f, std::size_t lineno) {
        if (f.size() != 2)
          throw ParseError(path, lineno,
                           "expected 2 tab-separated fields, got " + std::to_string(f.size()));
        const std::string& raw = f[0];
        const std::string& hid = f[1];
        std::optional<SenseKey> key;
        try {
          key = SenseKey::parse(raw);
        } catch (const std::invalid_argument&) {
          sm.excluded_.push_back({raw, "bad-key"});
          return;
        }
        const HomonymEntry* e = lex.entry(hid);
        if (e == nullptr) {
          sm.excluded_.push_back({raw, "unknown-homonym"});
          return;
        }
        if (key->lemma() != e->lemma) {
          sm.excluded_.push_back({raw, "lemma-mismatch"});
          return;
        }
        if (!e->pos_set.count(key->pos())) {
          sm.excluded_.push_back({raw, "pos-mismatch"});
          return;
        }
        if (!sm.map_.emplace(raw, hid).second) {
          sm.excluded_.push_back({raw, "duplicate-key"});
          return;
        }
      },
      [&](const std::string& comment, std::size_t) {
        if (comment.rfind("# provenance:", 0) == 0)
          sm.provenance_.push_back(trim(comment.substr(13)));
      });
  return sm;
}

std::optional<std::string> SenseMap::homonym_of(const std::string& raw_key) const {
  auto it = map_.find(raw_key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> SenseMap::senses_of(const std::string& homonym_id) const {
  std::vector<std::string> out;
  for (const auto& [k, hid] : map_)
    if (hid == homonym_id) out.push_back(k);
  return out;  // map_ iteration is already key-sorted
}

void SenseMap::add_mapping(const std::string& raw_key, const std::string& homonym_id) {
  map_[raw_key] = homonym_id;
}

MappingComparison compare_mappings(const SenseMap& a, const SenseMap& b) {
  MappingComparison cmp;
  for (const auto& [k, hid_a] : a.map()) {
    auto it = b.map().find(k);
    if (it == b.map().end()) continue;
    ++cmp.shared;
    if (it->second != hid_a) cmp.disagreements.push_back(k);
  }
  return cmp;
}

HomonymResolution resolve_homonym(const SenseMap& smap,
                                  const std::vector<std::string>& gold_keys) {
  HomonymResolution r;
  for (const auto& k : gold_keys) {
    auto hid = smap.homonym_of(k);
    if (hid) r.homonym_ids.insert(*hid);
  }
  if (r.homonym_ids.empty()) {
    r.kind = HomonymResolution::Unmapped;
  } else if (r.homonym_ids.size() == 1) {
    r.kind = HomonymResolution::Mapped;
    r.homonym_id = *r.homonym_ids.begin();
  } else {
    r.kind = HomonymResolution::Conflict;
  }
  return r;
}

}  // namespace homcheck
