#include "homcheck/corpus.hpp"

#include <expat.h>

#include <algorithm>
#include <fstream>

#include "homcheck/errors.hpp"
#include "homcheck/textnorm.hpp"
#include "homcheck/util.hpp"

namespace homcheck {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct ParseState {
  std::string path;
  XML_Parser parser = nullptr;

  std::vector<Document> docs;
  std::set<std::string> doc_ids;
  std::set<std::string> sentence_ids;
  std::set<std::string> instance_ids;

  // corpus > text > sentence > token element nesting
  int depth = 0;
  bool in_token = false;
  Token token;
  std::string chars;
  std::string corpus_source;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(path, static_cast<std::size_t>(XML_GetCurrentLineNumber(parser)), msg);
  }

  std::string attr(const char** atts, const char* name, bool required) const {
    for (const char** a = atts; *a; a += 2)
      if (std::string_view(*a) == name) return a[1];
    if (required) fail(std::string("missing attribute '") + name + "'");
    return "";
  }
};

void on_start(void* ud, const char* name, const char** atts) {
  auto* st = static_cast<ParseState*>(ud);
  std::string_view el(name);
  switch (st->depth) {
    case 0:
      if (el != "corpus") st->fail("root element must be <corpus>, got <" + std::string(el) + ">");
      st->corpus_source = st->attr(atts, "source", false);
      break;
    case 1: {
      if (el != "text") st->fail("expected <text>, got <" + std::string(el) + ">");
      Document d;
      d.id = st->attr(atts, "id", true);
      if (!st->doc_ids.insert(d.id).second) st->fail("duplicate text id '" + d.id + "'");
      st->docs.push_back(std::move(d));
      break;
    }
    case 2: {
      if (el != "sentence") st->fail("expected <sentence>, got <" + std::string(el) + ">");
      Sentence s;
      s.id = st->attr(atts, "id", true);
      if (!st->sentence_ids.insert(s.id).second)
        st->fail("duplicate sentence id '" + s.id + "'");
      const std::string& did = st->docs.back().id;
      if (s.id.rfind(did + ".", 0) != 0)
        st->fail("sentence id '" + s.id + "' does not extend text id '" + did + "'");
      st->docs.back().sentences.push_back(std::move(s));
      break;
    }
    case 3: {
      if (el != "wf" && el != "instance")
        st->fail("expected <wf> or <instance>, got <" + std::string(el) + ">");
      st->token = Token{};
      st->token.lemma = normalize_lemma(st->attr(atts, "lemma", true));
      st->token.tag = st->attr(atts, "pos", true);
      st->token.pos = pos_from_tag(st->token.tag);
      if (el == "instance") {
        st->token.instance_id = st->attr(atts, "id", true);
        if (!st->instance_ids.insert(st->token.instance_id).second)
          st->fail("duplicate instance id '" + st->token.instance_id + "'");
        const std::string& sid = st->docs.back().sentences.back().id;
        if (st->token.instance_id.rfind(sid + ".", 0) != 0)
          st->fail("instance id '" + st->token.instance_id +
                   "' does not extend sentence id '" + sid + "'");
        if (!st->token.pos)
          st->fail("instance '" + st->token.instance_id + "' has non-open-class pos '" +
                   st->token.tag + "'");
      }
      st->in_token = true;
      st->chars.clear();
      break;
    }
    default:
      st->fail("unexpected element <" + std::string(el) + "> at depth " +
               std::to_string(st->depth));
  }
  ++st->depth;
}

void on_end(void* ud, const char* /*name*/) {
  auto* st = static_cast<ParseState*>(ud);
  --st->depth;
  if (st->depth == 3) {
    st->token.surface = trim(st->chars);
    if (st->token.surface.empty()) st->token.surface = st->token.lemma;
    st->docs.back().sentences.back().tokens.push_back(std::move(st->token));
    st->in_token = false;
  }
}

void on_chars(void* ud, const char* s, int len) {
  auto* st = static_cast<ParseState*>(ud);
  if (st->in_token) st->chars.append(s, static_cast<std::size_t>(len));
}

}  // namespace

AnnotatedCorpus AnnotatedCorpus::parse(const std::string& xml_path,
                                       const std::string& gold_path) {
  ParseState st;
  st.path = xml_path;
  XML_Parser p = XML_ParserCreate(nullptr);
  st.parser = p;
  XML_SetUserData(p, &st);
  XML_SetElementHandler(p, on_start, on_end);
  XML_SetCharacterDataHandler(p, on_chars);

  try {
    std::ifstream in(xml_path, std::ios::binary);
    if (!in) throw ParseError(xml_path, 0, "cannot open file");
    char buf[1 << 16];
    for (;;) {
      in.read(buf, sizeof buf);
      auto got = static_cast<int>(in.gcount());
      if (XML_Parse(p, buf, got, got == 0) == XML_STATUS_ERROR)
        throw ParseError(xml_path, static_cast<std::size_t>(XML_GetCurrentLineNumber(p)),
                         XML_ErrorString(XML_GetErrorCode(p)));
      if (got == 0) break;
    }
  } catch (...) {
    XML_ParserFree(p);
    throw;
  }
  XML_ParserFree(p);

  // Gold join. Keys that fail the grammar are dropped per key; instances left
  // with no keys at all are demoted to plain word-forms.
  std::map<std::string, std::vector<std::string>> gold;
  CorpusWarnings warn;
  {
    std::ifstream in(gold_path, std::ios::binary);
    if (!in) throw ParseError(gold_path, 0, "cannot open file");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim(line).empty() || line[0] == '#') continue;
      std::vector<std::string> fields;
      for (auto& f : split(line, ' '))
        if (!trim(f).empty()) fields.push_back(trim(f));
      if (fields.size() < 2)
        throw ParseError(gold_path, lineno, "expected 'instance_id key1 [key2 ...]'");
      const std::string& id = fields[0];
      if (!st.instance_ids.count(id)) {
        ++warn.unknown_gold_ids;
        continue;
      }
      auto& keys = gold[id];
      for (std::size_t i = 1; i < fields.size(); ++i) {
        try {
          SenseKey::parse(fields[i]);
          keys.push_back(fields[i]);
        } catch (const std::invalid_argument&) {
          ++warn.invalid_gold_keys;
        }
      }
    }
  }

  AnnotatedCorpus corpus;
  corpus.name_ = st.corpus_source;
  for (auto& d : st.docs) {
    for (auto& s : d.sentences) {
      for (auto& t : s.tokens) {
        if (!t.annotated()) continue;
        auto it = gold.find(t.instance_id);
        if (it == gold.end() || it->second.empty()) {
          ++warn.dropped_no_gold;
          t.instance_id.clear();
          continue;
        }
        t.gold_keys = it->second;
        for (const auto& k : t.gold_keys)
          if (SenseKey::parse(k).lemma() != t.lemma) ++warn.lemma_mismatch_keys;
      }
    }
    corpus.docs_.push_back(std::move(d));
  }
  corpus.warnings_ = warn;
  for (std::size_t i = 0; i < corpus.docs_.size(); ++i) corpus.index_document(i);
  return corpus;
}

void AnnotatedCorpus::index_document(std::size_t doc_idx) {
  const Document& d = docs_[doc_idx];
  for (std::size_t si = 0; si < d.sentences.size(); ++si) {
    const Sentence& s = d.sentences[si];
    by_sentence_[s.id] = {doc_idx, si};
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const Token& t = s.tokens[i];
      if (!t.annotated()) continue;
      AnnotatedInstance inst;
      inst.instance_id = t.instance_id;
      inst.document_id = d.id;
      inst.sentence_id = s.id;
      inst.position = i;
      inst.lemma = t.lemma;
      inst.pos = *t.pos;
      inst.gold_keys = t.gold_keys;
      by_id_[inst.instance_id] = instances_.size();
      by_word_[inst.word()].push_back(instances_.size());
      instances_.push_back(std::move(inst));
    }
  }
}

void AnnotatedCorpus::add_document(Document d) {
  docs_.push_back(std::move(d));
  index_document(docs_.size() - 1);
}

const AnnotatedInstance* AnnotatedCorpus::instance(const std::string& instance_id) const {
  auto it = by_id_.find(instance_id);
  return it == by_id_.end() ? nullptr : &instances_[it->second];
}

const Sentence* AnnotatedCorpus::sentence(const std::string& sentence_id) const {
  auto it = by_sentence_.find(sentence_id);
  if (it == by_sentence_.end()) return nullptr;
  return &docs_[it->second.first].sentences[it->second.second];
}

std::vector<const AnnotatedInstance*> AnnotatedCorpus::instances_of(const Word& w) const {
  std::vector<const AnnotatedInstance*> out;
  auto it = by_word_.find(w);
  if (it == by_word_.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t i : it->second) out.push_back(&instances_[i]);
  return out;
}

CorpusStats AnnotatedCorpus::stats() const {
  CorpusStats s;
  std::set<Word> types;
  std::set<std::string> senses;
  for (const auto& inst : instances_) {
    ++s.word_tokens;
    types.insert(inst.word());
    for (const auto& k : inst.gold_keys) senses.insert(k);
  }
  s.word_types = types.size();
  s.senses = senses.size();
  return s;
}

std::string AnnotatedCorpus::dump_xml() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += name_.empty() ? "<corpus>\n" : "<corpus source=\"" + xml_escape(name_) + "\">\n";
  for (const auto& d : docs_) {
    out += "<text id=\"" + xml_escape(d.id) + "\">\n";
    for (const auto& s : d.sentences) {
      out += "<sentence id=\"" + xml_escape(s.id) + "\">\n";
      for (const auto& t : s.tokens) {
        const char* el = t.annotated() ? "instance" : "wf";
        out += "<";
        out += el;
        if (t.annotated()) out += " id=\"" + xml_escape(t.instance_id) + "\"";
        out += " lemma=\"" + xml_escape(t.lemma) + "\" pos=\"" + xml_escape(t.tag) + "\">" +
               xml_escape(t.surface) + "</" + el + ">\n";
      }
      out += "</sentence>\n";
    }
    out += "</text>\n";
  }
  out += "</corpus>\n";
  return out;
}

std::string AnnotatedCorpus::dump_gold() const {
  std::string out;
  for (const auto& inst : instances_) {
    out += inst.instance_id;
    for (const auto& k : inst.gold_keys) {
      out += ' ';
      out += k;
    }
    out += '\n';
  }
  return out;
}

AlignmentSet AlignmentSet::parse(const std::string& path, const AnnotatedCorpus& corpus) {
  AlignmentSet as;
  for_each_tsv_row(path, [&](const std::vector<std::string>& f, std::size_t lineno) {
    if (f.size() != 2)
      throw ParseError(path, lineno,
                       "expected 'instance_id \\t target_lemma', got " +
                           std::to_string(f.size()) + " fields");
    if (f[0].empty() || f[1].empty())
      throw ParseError(path, lineno, "empty field in alignment line");
    if (corpus.instance(f[0]) == nullptr) {
      ++as.dropped_unknown_;
      return;
    }
    ++as.links_[{f[0], normalize_target(f[1])}];
  });
  return as;
}

std::uint64_t AlignmentSet::link_count() const {
  std::uint64_t n = 0;
  for (const auto& [link, count] : links_) n += count;
  return n;
}

std::vector<std::string> AlignmentSet::targets_of(const std::string& instance_id) const {
  std::vector<std::string> out;
  auto it = links_.lower_bound({instance_id, ""});
  for (; it != links_.end() && it->first.first == instance_id; ++it)
    out.push_back(it->first.second);
  return out;
}

std::vector<std::pair<std::string, std::uint64_t>> AlignmentSet::counted_targets_of(
    const std::string& instance_id) const {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  auto it = links_.lower_bound({instance_id, ""});
  for (; it != links_.end() && it->first.first == instance_id; ++it)
    out.emplace_back(it->first.second, it->second);
  return out;
}

void AlignmentSet::add_link(const std::string& instance_id, const std::string& target) {
  ++links_[{instance_id, normalize_target(target)}];
}

SenseClustering SenseClustering::parse(const std::string& path) {
  SenseClustering sc;
  std::set<std::string> cluster_ids;
  // (word, key) -> cluster_id, to name both offenders on a disjointness breach
  std::map<std::pair<Word, std::string>, std::string> owner;
  for_each_tsv_row(
      path,
      [&](const std::vector<std::string>& f, std::size_t lineno) {
        if (f.size() != 4)
          throw ParseError(path, lineno,
                           "expected 'cluster_id \\t lemma \\t pos \\t keys', got " +
                               std::to_string(f.size()) + " fields");
        SenseCluster c;
        c.cluster_id = f[0];
        if (c.cluster_id.empty()) throw ParseError(path, lineno, "empty cluster_id");
        if (!cluster_ids.insert(c.cluster_id).second)
          throw ValidationError(path + ":" + std::to_string(lineno) +
                                ": duplicate cluster_id '" + c.cluster_id + "'");
        c.word.lemma = normalize_lemma(f[1]);
        auto pos = f[2].size() == 1 ? pos_from_char(f[2][0]) : std::nullopt;
        if (!pos) throw ParseError(path, lineno, "bad pos '" + f[2] + "'");
        c.word.pos = *pos;
        for (const auto& part : split(f[3], ',')) {
          std::string raw = trim(part);
          if (raw.empty()) continue;
          try {
            SenseKey::parse(raw);
          } catch (const std::invalid_argument& e) {
            throw ParseError(path, lineno, e.what());
          }
          c.sense_keys.insert(raw);
        }
        if (c.sense_keys.empty()) throw ParseError(path, lineno, "cluster has no sense keys");
        for (const auto& k : c.sense_keys) {
          auto [it, fresh] = owner.emplace(std::make_pair(c.word, k), c.cluster_id);
          if (!fresh)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": sense key '" + k +
                                  "' of word '" + word_key(c.word) + "' appears in clusters '" +
                                  it->second + "' and '" + c.cluster_id + "'");
        }
        sc.clusters_.push_back(std::move(c));
      },
      [&](const std::string& comment, std::size_t) {
        if (comment.rfind("# provenance:", 0) == 0)
          sc.provenance_.push_back(trim(comment.substr(13)));
      });
  return sc;
}

std::vector<const SenseCluster*> SenseClustering::clusters_of(const Word& w) const {
  std::vector<const SenseCluster*> out;
  for (const auto& c : clusters_)
    if (c.word == w) out.push_back(&c);
  return out;
}

void SenseClustering::add_cluster(SenseCluster c) { clusters_.push_back(std::move(c)); }

IdMapTable IdMapTable::load(const std::string& path) {
  IdMapTable t;
  for_each_tsv_row(path, [&](const std::vector<std::string>& f, std::size_t lineno) {
    if (f.size() != 2)
      throw ParseError(path, lineno, "expected 'old \\t new' (empty new = unmapped)");
    if (f[0].empty()) throw ParseError(path, lineno, "empty old identifier");
    if (t.map_.count(f[0]) || t.unmapped_.count(f[0]))
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": duplicate old identifier '" + f[0] + "'");
    if (f[1].empty())
      t.unmapped_.insert(f[0]);
    else
      t.map_.emplace(f[0], f[1]);
  });
  return t;
}

IdMapOutcome apply_id_map(const IdMapTable& table, const std::set<std::string>& keys) {
  IdMapOutcome out;
  for (const auto& k : keys) {
    auto it = table.map().find(k);
    if (it != table.map().end())
      out.renamed.insert(it->second);
    else if (table.unmapped().count(k))
      out.excluded_declared.insert(k);
    else
      out.excluded_absent.insert(k);
  }
  return out;
}

}  // namespace homcheck
