#ifndef HOMCHECK_OHPD_HPP
#define HOMCHECK_OHPD_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "homcheck/corpus.hpp"
#include "homcheck/lexicon.hpp"
#include "homcheck/report.hpp"

namespace homcheck {

struct OhpdOccurrence {
  std::string instance_id;
  std::string sentence_id;
  std::string homonym_id;
  std::vector<std::string> gold_keys;

  bool operator==(const OhpdOccurrence&) const = default;
};

/// One (word, document) pair. Single-occurrence pairs count as consistent.
struct OhpdInstance {
  Word word;
  std::string document_id;
  std::vector<OhpdOccurrence> occurrences;  // document order
  std::set<std::string> homonym_ids;

  bool consistent() const { return homonym_ids.size() == 1; }
};

struct OhpdResult {
  std::vector<OhpdInstance> instances;  // sorted by (word, document_id)
  std::uint64_t inconsistent = 0;
  std::uint64_t skipped_unmapped = 0;  // homonymous-word tokens, no mapped key
  /// Tokens whose own gold keys straddle two homonyms: flagged, excluded
  /// from consistency computation (one token denotes one lexeme).
  std::vector<std::string> conflict_instance_ids;  // sorted
};

/// Parallel across documents; aggregation is canonicalized by sort, so the
/// thread count never changes the result.
OhpdResult check_ohpd(const AnnotatedCorpus& corpus, const SenseMap& smap,
                      const Lexicon& lex, unsigned threads = 1);

HypothesisReport ohpd_report(const OhpdResult& result, const std::string& corpus_name);

}  // namespace homcheck

#endif
