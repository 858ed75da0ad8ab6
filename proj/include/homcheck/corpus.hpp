#ifndef HOMCHECK_CORPUS_HPP
#define HOMCHECK_CORPUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homcheck/types.hpp"

namespace homcheck {

/// One token of a sentence. Annotated tokens carry an instance id and, after
/// the gold join, at least one sense key; plain word-forms carry neither.
struct Token {
  std::string surface;
  std::string lemma;      // normalized
  std::string tag;        // raw pos attribute as written in the XML
  std::optional<Pos> pos; // open-class reading of tag, if any
  std::string instance_id;            // empty for plain word-forms
  std::vector<std::string> gold_keys; // raw sense keys, gold order

  bool annotated() const { return !instance_id.empty(); }
  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

/// Flat view of one annotated token, used by all checkers.
struct AnnotatedInstance {
  std::string instance_id;
  std::string document_id;
  std::string sentence_id;
  std::size_t position = 0;  // token index within sentence
  std::string lemma;
  Pos pos = Pos::Noun;
  std::vector<std::string> gold_keys;

  Word word() const { return Word{lemma, pos}; }
};

struct CorpusStats {
  std::uint64_t word_tokens = 0;  // annotated instances
  std::uint64_t word_types = 0;   // distinct (lemma, pos)
  std::uint64_t senses = 0;       // distinct gold keys

  bool operator==(const CorpusStats&) const = default;
};

struct CorpusWarnings {
  std::uint64_t dropped_no_gold = 0;    // <instance> without any gold line
  std::uint64_t unknown_gold_ids = 0;   // gold lines for ids absent from the XML
  std::uint64_t invalid_gold_keys = 0;  // keys failing the sense-key grammar
  std::uint64_t lemma_mismatch_keys = 0;  // kept, instance lemma authoritative
};

class AnnotatedCorpus {
 public:
  static AnnotatedCorpus parse(const std::string& xml_path, const std::string& gold_path);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const std::vector<Document>& documents() const { return docs_; }
  const std::vector<AnnotatedInstance>& instances() const { return instances_; }
  const AnnotatedInstance* instance(const std::string& instance_id) const;
  const Sentence* sentence(const std::string& sentence_id) const;

  /// Instances of one word, in document order.
  std::vector<const AnnotatedInstance*> instances_of(const Word& w) const;

  const CorpusWarnings& warnings() const { return warnings_; }
  CorpusStats stats() const;

  /// Canonical re-serializations; parse(dump_xml, dump_gold) == *this.
  std::string dump_xml() const;
  std::string dump_gold() const;

  bool operator==(const AnnotatedCorpus& other) const {
    return docs_ == other.docs_;
  }

  void add_document(Document d);  // fixture generator hook; rebuilds indices

 private:
  void index_document(std::size_t doc_idx);

  std::string name_;
  std::vector<Document> docs_;
  std::vector<AnnotatedInstance> instances_;
  std::map<std::string, std::size_t> by_id_;
  std::map<Word, std::vector<std::size_t>> by_word_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_sentence_;
  CorpusWarnings warnings_;
};

class AlignmentSet {
 public:
  /// Multiset semantics: N lines for the same (instance, target) keep count N.
  static AlignmentSet parse(const std::string& path, const AnnotatedCorpus& corpus);

  /// (instance_id, normalized target lemma) -> occurrence count.
  const std::map<std::pair<std::string, std::string>, std::uint64_t>& links() const {
    return links_;
  }
  std::uint64_t dropped_unknown() const { return dropped_unknown_; }
  std::uint64_t link_count() const;

  /// Normalized targets aligned to one instance, sorted.
  std::vector<std::string> targets_of(const std::string& instance_id) const;

  /// Same, with per-target occurrence counts.
  std::vector<std::pair<std::string, std::uint64_t>> counted_targets_of(
      const std::string& instance_id) const;

  void add_link(const std::string& instance_id, const std::string& target);

 private:
  std::map<std::pair<std::string, std::string>, std::uint64_t> links_;
  std::uint64_t dropped_unknown_ = 0;
};

struct SenseCluster {
  std::string cluster_id;
  Word word;
  std::set<std::string> sense_keys;  // raw keys

  bool operator==(const SenseCluster&) const = default;
};

class SenseClustering {
 public:
  /// Throws ValidationError naming both cluster ids when two clusters of one
  /// word share a sense key.
  static SenseClustering parse(const std::string& path);

  const std::vector<SenseCluster>& clusters() const { return clusters_; }
  std::vector<const SenseCluster*> clusters_of(const Word& w) const;
  const std::vector<std::string>& provenance() const { return provenance_; }

  void add_cluster(SenseCluster c);

 private:
  std::vector<SenseCluster> clusters_;
  std::vector<std::string> provenance_;
};

class IdMapTable {
 public:
  static IdMapTable load(const std::string& path);

  const std::map<std::string, std::string>& map() const { return map_; }
  const std::set<std::string>& unmapped() const { return unmapped_; }

 private:
  std::map<std::string, std::string> map_;
  std::set<std::string> unmapped_;
};

struct IdMapOutcome {
  std::set<std::string> renamed;
  std::set<std::string> excluded_declared;  // listed with an empty target
  std::set<std::string> excluded_absent;    // not in the table at all
  std::uint64_t excluded_total() const {
    return excluded_declared.size() + excluded_absent.size();
  }
};

IdMapOutcome apply_id_map(const IdMapTable& table, const std::set<std::string>& keys);

}  // namespace homcheck

#endif
