#ifndef HOMCHECK_OHPT_HPP
#define HOMCHECK_OHPT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homcheck/corpus.hpp"
#include "homcheck/lexicon.hpp"
#include "homcheck/report.hpp"
#include "homcheck/stats.hpp"

namespace homcheck {

/// T(L): translations attested for one homonym (or one group), with
/// occurrence counts.
struct TranslationSet {
  std::string group_id;
  std::map<std::string, std::uint64_t> translations;  // normalized target -> count

  bool contains(const std::string& target) const { return translations.count(target) > 0; }
};

bool translation_sets_disjoint(const std::vector<TranslationSet>& sets);

struct ExtractResult {
  /// One TranslationSet per homonym of each word with >=1 counted occurrence,
  /// homonym order = sorted homonym_id.
  std::map<Word, std::vector<TranslationSet>> sets;
  std::uint64_t skipped_unmapped = 0;  // aligned occurrences, no mapped gold key
  std::uint64_t skipped_conflict = 0;  // gold keys straddle two homonyms
};

ExtractResult extract_translation_sets(const AnnotatedCorpus& corpus,
                                       const AlignmentSet& alignments,
                                       const SenseMap& smap, const Lexicon& lex);

struct OhptOccurrence {
  std::string instance_id;
  std::string homonym_id;

  bool operator==(const OhptOccurrence&) const = default;
};

/// One (word, target) pair: the unit of evidence for the hypothesis.
struct OhptInstance {
  Word word;
  std::string target;  // normalized
  std::vector<OhptOccurrence> occurrences;  // sorted by instance_id
  std::set<std::string> homonym_ids;

  bool consistent() const { return homonym_ids.size() == 1; }
};

struct OhptResult {
  std::vector<OhptInstance> instances;  // sorted by (word, target)
  std::uint64_t inconsistent = 0;
  std::uint64_t skipped_unmapped = 0;
  std::uint64_t skipped_conflict = 0;
};

/// Walks the alignment links directly, never through extract_translation_sets;
/// tests assert the two routes agree on disjointness-vs-consistency.
OhptResult check_ohpt(const AnnotatedCorpus& corpus, const AlignmentSet& alignments,
                      const SenseMap& smap, const Lexicon& lex);

HypothesisReport ohpt_report(const OhptResult& result, const std::string& corpus_name);

struct DerivedClusteringEntry {
  Word word;
  /// Disjoint cover of the word's attested senses; groups sorted by their
  /// smallest member, members sorted.
  std::vector<std::vector<std::string>> groups;
};

/// Union-find closure over "share >= min_shared distinct translations".
/// Senses with no alignment end up as singletons.
DerivedClusteringEntry merge_senses_by_translation(const AnnotatedCorpus& corpus,
                                                   const AlignmentSet& alignments,
                                                   const Word& word,
                                                   std::uint64_t min_shared = 1);

/// A sense->group assignment per word, the common shape of "homonyms from the
/// resource" and "clusters from a TSV" for the partitioning comparison.
struct Grouping {
  std::string name;
  std::map<Word, std::map<std::string, std::string>> assignment;
  std::set<Word> excluded_words;

  static Grouping from_lexicon(const Lexicon& lex, const SenseMap& smap);
  static Grouping from_clustering(const SenseClustering& clustering);

  /// Groups holding at least one corpus-attested sense of w.
  std::set<std::string> attested_groups(const Word& w, const AnnotatedCorpus& corpus) const;

  /// Words whose attested-and-assigned senses fall in exactly two groups,
  /// minus excluded_words; sorted. Attestation is over the whole corpus, not
  /// just aligned occurrences (the alignment is partial).
  std::vector<Word> candidates(const AnnotatedCorpus& corpus) const;
};

enum class PairOutcome { Partitioned, Overlapping, Vacuous };

std::string pair_outcome_name(PairOutcome o);

struct ComparedWord {
  Word word;
  std::string group1, group2;  // sorted group ids
  PairOutcome outcome = PairOutcome::Vacuous;
  std::vector<std::string> shared_targets;   // sorted, non-empty iff Overlapping
  std::uint64_t overlap_occurrences = 0;     // aligned occurrences hitting shared targets
};

struct PartitioningComparison {
  std::vector<ComparedWord> side_a, side_b;  // in sampled order
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;
  /// Non-vacuous counts only; vacuous pairs are listed but kept out of the
  /// table (empty sets cannot overlap, so calling them partitioned would be
  /// vacuously true).
  ContingencyTable2x2 table;  // a=partitioned(A) b=overlapping(A) c/d same for B
  std::optional<ChiSquaredResult> chi;
  std::string chi_note;  // set when chi is undefined

  nlohmann::ordered_json to_json() const;
};

/// Samples sample_size candidate words from each grouping (independent
/// generators, both seeded with `seed`, so identical groupings draw identical
/// samples) and tests strict translation partitioning of the two groups of
/// each sampled word. Throws ValidationError when either side has fewer
/// candidates than sample_size, stating the available count.
PartitioningComparison compare_partitioning(const Grouping& grouping_a,
                                            const Grouping& grouping_b,
                                            const AnnotatedCorpus& corpus,
                                            const AlignmentSet& alignments,
                                            std::uint64_t sample_size,
                                            std::uint64_t seed);

}  // namespace homcheck

#endif
