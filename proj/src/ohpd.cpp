#include "homcheck/ohpd.hpp"

#include <algorithm>

#include "homcheck/util.hpp"

namespace homcheck {

namespace {

struct DocResult {
  std::vector<OhpdInstance> instances;  // sorted by word within the document
  std::uint64_t skipped_unmapped = 0;
  std::vector<std::string> conflict_ids;
};

DocResult check_document(const Document& doc, const SenseMap& smap,
                         const Lexicon& lex) {
  DocResult res;
  std::map<Word, OhpdInstance> by_word;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (!t.annotated()) continue;
      Word w{t.lemma, t.pos.value_or(Pos::Noun)};
      if (!t.pos || !lex.is_homonymous(w)) continue;
      auto r = resolve_homonym(smap, t.gold_keys);
      if (r.kind == HomonymResolution::Unmapped) {
        ++res.skipped_unmapped;
        continue;
      }
      if (r.kind == HomonymResolution::Conflict) {
        res.conflict_ids.push_back(t.instance_id);
        continue;
      }
      OhpdInstance& oi = by_word[w];
      if (oi.occurrences.empty()) {
        oi.word = w;
        oi.document_id = doc.id;
      }
      oi.occurrences.push_back({t.instance_id, s.id, r.homonym_id, t.gold_keys});
      oi.homonym_ids.insert(r.homonym_id);
    }
  }
  for (auto& [w, oi] : by_word) res.instances.push_back(std::move(oi));
  return res;
}

}  // namespace

OhpdResult check_ohpd(const AnnotatedCorpus& corpus, const SenseMap& smap,
                      const Lexicon& lex, unsigned threads) {
  const auto& docs = corpus.documents();
  auto per_doc = parallel_map<DocResult>(
      docs.size(), threads,
      [&](std::size_t i) { return check_document(docs[i], smap, lex); });

  OhpdResult res;
  for (auto& dr : per_doc) {
    res.skipped_unmapped += dr.skipped_unmapped;
    for (auto& id : dr.conflict_ids) res.conflict_instance_ids.push_back(std::move(id));
    for (auto& oi : dr.instances) {
      if (!oi.consistent()) ++res.inconsistent;
      res.instances.push_back(std::move(oi));
    }
  }
  std::sort(res.instances.begin(), res.instances.end(),
            [](const OhpdInstance& a, const OhpdInstance& b) {
              if (a.word != b.word) return a.word < b.word;
              return a.document_id < b.document_id;
            });
  std::sort(res.conflict_instance_ids.begin(), res.conflict_instance_ids.end());
  return res;
}

HypothesisReport ohpd_report(const OhpdResult& result, const std::string& corpus_name) {
  HypothesisReport rep;
  rep.summary.hypothesis = Hypothesis::OHPD;
  rep.summary.corpus_name = corpus_name;
  rep.summary.instances = result.instances.size();
  rep.summary.apparent_exceptions = result.inconsistent;
  rep.summary.actual_exceptions = result.inconsistent;
  for (const auto& oi : result.instances) {
    if (oi.consistent()) continue;
    ExceptionRecord e;
    e.instance_key = word_key(oi.word) + "#" + oi.document_id;
    auto occ = nlohmann::ordered_json::array();
    for (const auto& o : oi.occurrences)
      occ.push_back({{"instance_id", o.instance_id},
                     {"sentence_id", o.sentence_id},
                     {"homonym_id", o.homonym_id},
                     {"gold_keys", o.gold_keys}});
    e.evidence["word"] = word_key(oi.word);
    e.evidence["document_id"] = oi.document_id;
    e.evidence["homonym_ids"] = oi.homonym_ids;
    e.evidence["occurrences"] = std::move(occ);
    rep.exceptions.push_back(std::move(e));
  }
  rep.details["skipped_unmapped"] = result.skipped_unmapped;
  rep.details["conflict_instances"] = result.conflict_instance_ids;
  return rep;
}

}  // namespace homcheck
