#ifndef HOMCHECK_OHPC_HPP
#define HOMCHECK_OHPC_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "homcheck/corpus.hpp"
#include "homcheck/lexicon.hpp"
#include "homcheck/report.hpp"

namespace homcheck {

struct OhpcConfig {
  /// Positional content-word features cover offsets -w..+w excluding 0;
  /// adjacent-pair features are built over the same window.
  unsigned positional_window = 2;
  /// POS-tag features cover offsets -w..+w including 0.
  unsigned pos_window = 3;

  bool operator==(const OhpcConfig&) const = default;
};

/// Canonical feature-name -> count map; map order makes scoring independent
/// of extraction order.
using FeatureVector = std::map<std::string, std::uint32_t>;

/// Features of the focus token's context. Never reads the focus token's gold
/// keys. Families: W[off]=lemma (content words only, boundary-padded),
/// P[o1,o2]=lemma|lemma (ordered adjacent pairs, any token), T[off]=tag,
/// B=lemma (content words elsewhere in the sentence).
FeatureVector extract_features(const Sentence& sentence, std::size_t position,
                               const OhpcConfig& config);
FeatureVector extract_features(const AnnotatedCorpus& corpus,
                               const std::string& instance_id, const OhpcConfig& config);

/// Multinomial naive-Bayes statistics for one word; classes are sense keys.
struct WordModel {
  Word word;
  std::uint64_t instances = 0;
  std::map<std::string, std::uint64_t> class_counts;
  std::map<std::string, std::map<std::string, std::uint64_t>> feature_counts;

  /// Highest training count, ties to the lexicographically smaller key.
  std::string most_frequent_sense() const;

  /// Argmax of log P(c) + sum log P(f|c) with add-one smoothing over this
  /// word's training vocabulary; unseen features are dropped; ties go to the
  /// lexicographically smaller key. Empty effective vector degenerates to the
  /// prior, i.e. the most frequent sense.
  std::string predict(const FeatureVector& features) const;
};

struct ModelSet {
  OhpcConfig config;
  std::map<Word, WordModel> models;

  const WordModel* model_for(const Word& w) const;
};

/// One model per homonymous word of the lexicon with >=1 training instance;
/// the label of a multi-key instance is its first gold key.
ModelSet train(const AnnotatedCorpus& corpus, const Lexicon& lex,
               const OhpcConfig& config = {}, unsigned threads = 1);

/// Versioned tab-separated dump; load(save(m)) == m and save(load(bytes)) is
/// byte-identical.
std::string save_models(const ModelSet& models);
ModelSet load_models_from_string(const std::string& text, const std::string& path);
ModelSet load_models(const std::string& path);
void write_models(const ModelSet& models, const std::string& path);

struct OhpcError {
  std::string instance_id;
  Word word;
  std::string predicted_key;
  std::string predicted_homonym;  // empty when the predicted key is unmapped
  std::vector<std::string> gold_keys;
  std::set<std::string> gold_homonyms;
  bool sense_correct = false;
};

struct OhpcEvalResult {
  std::uint64_t scored = 0;
  std::uint64_t homonym_correct = 0;
  std::uint64_t sense_correct = 0;
  std::uint64_t skipped_unmodeled = 0;     // word has no model (unattested in training)
  std::uint64_t skipped_unmapped_gold = 0; // no gold key is in the sense map
  std::uint64_t excluded_conflict = 0;     // gold keys straddle two homonyms
  std::vector<OhpcError> errors;           // homonym-level errors, corpus order
};

/// Correct iff the predicted sense is a gold key or its homonym is among the
/// gold homonyms; intra-homonym sense confusions are not errors.
OhpcEvalResult evaluate_homonym_accuracy(const ModelSet& models,
                                         const AnnotatedCorpus& test_corpus,
                                         const SenseMap& smap, const Lexicon& lex);

HypothesisReport ohpc_report(const OhpcEvalResult& result, const std::string& corpus_name);

}  // namespace homcheck

#endif
