#include "homcheck/fixtures.hpp"

#include <sys/stat.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "homcheck/corpus.hpp"
#include "homcheck/lexicon.hpp"
#include "homcheck/util.hpp"

namespace homcheck {

namespace {

// One synthetic word with its lexemes, senses and context template. Sense
// keys are lemma%T:0J:0S:: with J = homonym index and S = sense ordinal, so
// they survive the sense-key grammar and the lemma/POS cross-check.
struct FixtureWord {
  std::string lemma;
  Pos pos = Pos::Noun;
  std::vector<std::vector<std::string>> senses;  // per homonym
  std::size_t occ_per_sense = 2;                 // equal across the word

  Word word() const { return Word{lemma, pos}; }
  std::string homonym_id(std::size_t j) const {
    return lemma + "_" + std::string(1, pos_char(pos)) + std::to_string(j);
  }
};

std::string pad2(std::size_t v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

std::string pad3(std::size_t v) {
  std::string s = std::to_string(v);
  while (s.size() < 3) s = "0" + s;
  return s;
}

char ss_type_of(Pos p) {
  switch (p) {
    case Pos::Noun: return '1';
    case Pos::Verb: return '2';
    case Pos::Adj: return '3';
    case Pos::Adv: return '4';
  }
  return '1';
}

std::string tag_of(Pos p) {
  switch (p) {
    case Pos::Noun: return "NOUN";
    case Pos::Verb: return "VERB";
    case Pos::Adj: return "ADJ";
    case Pos::Adv: return "ADV";
  }
  return "NOUN";
}

std::string sense_key(const FixtureWord& w, std::size_t j, std::size_t s) {
  return w.lemma + "%" + ss_type_of(w.pos) + ":" + pad2(j) + ":" + pad2(s) + "::";
}

std::string cue_lemma(const FixtureWord& w, std::size_t j, std::size_t s) {
  return "cue_" + w.lemma + "_" + std::string(1, pos_char(w.pos)) + "_" +
         std::to_string(j) + std::to_string(s);
}

Token wf(const std::string& lemma, const std::string& tag) {
  Token t;
  t.surface = lemma;
  t.lemma = lemma;
  t.tag = tag;
  t.pos = pos_from_tag(tag);
  return t;
}

// All occurrences of all senses of a word share this template; only the cue
// token at focus-1 depends on the sense. Equal priors plus equal feature
// mass then make the cue the strict tie-breaker, so the trained scorer
// recovers the planted sense exactly.
Sentence make_sentence(const FixtureWord& w, std::size_t j, std::size_t s,
                       const std::string& gold, const std::string& instance_id) {
  Sentence sent;
  sent.tokens.push_back(wf("ctx_" + w.lemma + "_a", "NOUN"));
  sent.tokens.push_back(wf("the", "DET"));
  sent.tokens.push_back(wf(cue_lemma(w, j, s), "NOUN"));
  Token focus;
  focus.surface = w.lemma;
  focus.lemma = w.lemma;
  focus.tag = tag_of(w.pos);
  focus.pos = w.pos;
  if (!instance_id.empty()) {
    focus.instance_id = instance_id;
    focus.gold_keys = {gold};
  }
  sent.tokens.push_back(std::move(focus));
  sent.tokens.push_back(wf("ctx_" + w.lemma + "_b", "VERB"));
  sent.tokens.push_back(wf("ctx_" + w.lemma + "_c", "ADJ"));
  return sent;
}

constexpr std::size_t kFocusPosition = 3;

struct Occurrence {
  std::size_t word_idx, homonym, sense, occ;
  std::size_t doc;
  std::string instance_id;  // filled once sentences are laid out
};

}  // namespace

FixtureSet generate_fixtures(const FixtureSpec& spec) {
  Rng rng(spec.seed);
  const Pos pos_cycle[4] = {Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv};
  const std::size_t n_words = spec.homonymous_words;
  const std::size_t n_docs = std::max<std::size_t>(spec.documents, 8);

  // 1. Invent the vocabulary. Draw order is part of the format: senses per
  // homonym first, then occurrences per word, then the plant samples.
  std::vector<FixtureWord> words(n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    words[i].lemma = "word" + pad2(i);
    words[i].pos = pos_cycle[i % 4];
    words[i].senses.resize(2);
    for (auto& sl : words[i].senses) sl.resize(2 + rng.below(2));  // 2..3 senses
    words[i].occ_per_sense = 2 + rng.below(2);                     // 2..3 each
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t s = 0; s < words[i].senses[j].size(); ++s)
        words[i].senses[j][s] = sense_key(words[i], j, s);
  }
  std::vector<FixtureWord> singles(spec.single_words);
  for (std::size_t i = 0; i < singles.size(); ++i) {
    singles[i].lemma = "only" + pad2(i);
    singles[i].pos = pos_cycle[i % 4];
    singles[i].senses.resize(1);
    singles[i].senses[0].resize(2 + rng.below(2));
    singles[i].occ_per_sense = 2;
    for (std::size_t s = 0; s < singles[i].senses[0].size(); ++s)
      singles[i].senses[0][s] = sense_key(singles[i], 0, s);
  }
  std::vector<FixtureWord> unattested(spec.unattested_words);
  for (std::size_t i = 0; i < unattested.size(); ++i) {
    unattested[i].lemma = "rare" + pad2(i);
    unattested[i].pos = pos_cycle[i % 4];
    unattested[i].senses.resize(2);
    for (auto& sl : unattested[i].senses) sl.resize(2 + rng.below(2));
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t s = 0; s < unattested[i].senses[j].size(); ++s)
        unattested[i].senses[j][s] = sense_key(unattested[i], j, s);
  }

  // 2. Sample the plant hosts, one violation per sampled word.
  auto plant_count = [&](double rate) {
    return static_cast<std::size_t>(std::llround(rate * static_cast<double>(n_words)));
  };
  std::vector<std::size_t> all_idx(n_words);
  for (std::size_t i = 0; i < n_words; ++i) all_idx[i] = i;
  auto ohpt_hosts = rng.sample(all_idx, plant_count(spec.ohpt_rate));
  auto ohpd_hosts = rng.sample(all_idx, plant_count(spec.ohpd_rate));
  auto ohpsc_hosts = rng.sample(all_idx, plant_count(spec.ohpsc_rate));
  std::set<std::size_t> ohpt_set(ohpt_hosts.begin(), ohpt_hosts.end());
  std::set<std::size_t> ohpd_set(ohpd_hosts.begin(), ohpd_hosts.end());
  std::set<std::size_t> ohpsc_set(ohpsc_hosts.begin(), ohpsc_hosts.end());

  // 3. Lay occurrences into documents. Homonym j of word i lives in docs
  // {2i+j, 2i+j+5} mod n_docs, sets disjoint within a word, so the only
  // cross-homonym documents are the planted ones: the OHPD plant moves the
  // first occurrence of homonym 1 / sense 0 into homonym 0's first document.
  auto home_doc = [&](std::size_t word_idx, std::size_t j, std::size_t occ) {
    return (2 * word_idx + j + (occ % 2) * 5) % n_docs;
  };
  std::vector<Occurrence> occurrences;
  for (std::size_t i = 0; i < n_words; ++i) {
    for (std::size_t j = 0; j < words[i].senses.size(); ++j) {
      for (std::size_t s = 0; s < words[i].senses[j].size(); ++s) {
        for (std::size_t o = 0; o < words[i].occ_per_sense; ++o) {
          Occurrence oc{i, j, s, o, home_doc(i, j, o), ""};
          if (ohpd_set.count(i) && j == 1 && s == 0 && o == 0)
            oc.doc = home_doc(i, 0, 0);
          occurrences.push_back(oc);
        }
      }
    }
  }
  // single-lexeme controls ride along in their own documents
  std::vector<Occurrence> single_occurrences;
  for (std::size_t i = 0; i < singles.size(); ++i)
    for (std::size_t s = 0; s < singles[i].senses[0].size(); ++s)
      for (std::size_t o = 0; o < singles[i].occ_per_sense; ++o)
        single_occurrences.push_back(
            {i, 0, s, o, (2 * (n_words + i) + o) % n_docs, ""});

  // 4. Materialize the corpus document by document; sentence numbering and
  // therefore instance ids are fixed by this order.
  AnnotatedCorpus corpus;
  corpus.set_name("fixture");
  std::map<std::size_t, std::vector<std::pair<bool, std::size_t>>> by_doc;
  for (std::size_t k = 0; k < occurrences.size(); ++k)
    by_doc[occurrences[k].doc].push_back({false, k});
  for (std::size_t k = 0; k < single_occurrences.size(); ++k)
    by_doc[single_occurrences[k].doc].push_back({true, k});
  for (auto& [doc_idx, members] : by_doc) {
    Document d;
    d.id = "d" + pad3(doc_idx);
    for (auto [is_single, k] : members) {
      Occurrence& oc = is_single ? single_occurrences[k] : occurrences[k];
      const FixtureWord& w = is_single ? singles[oc.word_idx] : words[oc.word_idx];
      std::string sid = d.id + ".s" + pad3(d.sentences.size());
      oc.instance_id = sid + ".t" + pad3(kFocusPosition);
      Sentence sent =
          make_sentence(w, oc.homonym, oc.sense, w.senses[oc.homonym][oc.sense],
                        oc.instance_id);
      sent.id = sid;
      d.sentences.push_back(std::move(sent));
    }
    corpus.add_document(std::move(d));
  }

  // 5. Alignments. Occurrence 0 of every sense carries the homonym's common
  // target (senses of one homonym share it, which is what ohpt-merge is
  // supposed to find); every occurrence except a trailing third one carries
  // the sense's own target. The OHPT plant links occurrence 0 / sense 0 of
  // both homonyms to one extra shared target.
  std::string align_tsv = "# instance_id\ttarget_lemma\n";
  auto target_common = [](const FixtureWord& w, std::size_t j) {
    return "tr_" + w.lemma + "_" + std::to_string(j) + "_c";
  };
  auto target_own = [](const FixtureWord& w, std::size_t j, std::size_t s) {
    return "tr_" + w.lemma + "_" + std::to_string(j) + "_s" + std::to_string(s);
  };
  auto target_shared = [](const FixtureWord& w) {
    return "sh_" + w.lemma + "_" + std::string(1, pos_char(w.pos));
  };
  for (const auto& oc : occurrences) {
    const FixtureWord& w = words[oc.word_idx];
    std::vector<std::string> targets;
    if (oc.occ == 0) targets.push_back(target_common(w, oc.homonym));
    if (oc.occ < 2) targets.push_back(target_own(w, oc.homonym, oc.sense));
    if (ohpt_set.count(oc.word_idx) && oc.sense == 0 && oc.occ == 0)
      targets.push_back(target_shared(w));
    for (const auto& t : targets) align_tsv += oc.instance_id + "\t" + t + "\n";
  }
  for (const auto& oc : single_occurrences) {
    const FixtureWord& w = singles[oc.word_idx];
    if (oc.occ == 0) align_tsv += oc.instance_id + "\t" + target_common(w, 0) + "\n";
    align_tsv += oc.instance_id + "\t" + target_own(w, 0, oc.sense) + "\n";
  }

  // 6. Resource and sense map over all three word classes.
  Lexicon lex;
  std::string smap_tsv = "# sense_key\thomonym_id\n";
  auto add_word = [&](const FixtureWord& w) {
    for (std::size_t j = 0; j < w.senses.size(); ++j) {
      HomonymEntry e;
      e.homonym_id = w.homonym_id(j);
      e.lemma = w.lemma;
      e.pos_set = {w.pos};
      e.origin_language = j == 0 ? "Old Norse" : "Latin";
      e.origin_form = w.lemma + "_" + std::to_string(j);
      e.gloss = "sense family " + std::to_string(j) + " of " + w.lemma;
      e.translation_hint = target_common(w, j);
      lex.add_entry(std::move(e));
      for (const auto& k : w.senses[j]) smap_tsv += k + "\t" + w.homonym_id(j) + "\n";
    }
  };
  for (const auto& w : words) add_word(w);
  for (const auto& w : singles) add_word(w);
  for (const auto& w : unattested) add_word(w);

  // 7. Clustering: one cluster per homonym; an OHPSC plant diverts the first
  // sense of each homonym into a mixed cluster instead.
  std::vector<std::string> cluster_lines;
  auto emit_cluster = [&](const std::string& id, const FixtureWord& w,
                          const std::vector<std::string>& keys) {
    if (keys.empty()) return;
    cluster_lines.push_back(id + "\t" + w.lemma + "\t" + std::string(1, pos_char(w.pos)) +
                            "\t" + join(keys, ","));
  };
  std::vector<std::string> planted_ohpsc;
  for (std::size_t i = 0; i < n_words; ++i) {
    const FixtureWord& w = words[i];
    bool planted = ohpsc_set.count(i) > 0;
    std::vector<std::string> mixed;
    for (std::size_t j = 0; j < w.senses.size(); ++j) {
      std::vector<std::string> keys = w.senses[j];
      if (planted) {
        mixed.push_back(keys.front());
        keys.erase(keys.begin());
      }
      emit_cluster("cl_" + w.lemma + "_" + std::string(1, pos_char(w.pos)) + "_" +
                       std::to_string(j),
                   w, keys);
    }
    if (planted) {
      std::string id = "mix_" + w.lemma + "_" + std::string(1, pos_char(w.pos));
      emit_cluster(id, w, mixed);
      planted_ohpsc.push_back(id);
    }
  }
  for (const auto& w : singles)
    emit_cluster("cl_" + w.lemma + "_" + std::string(1, pos_char(w.pos)) + "_0", w,
                 w.senses[0]);
  std::sort(cluster_lines.begin(), cluster_lines.end());
  std::string clusters_tsv = "# cluster_id\tlemma\tpos\tsense_keys\n";
  for (const auto& l : cluster_lines) clusters_tsv += l + "\n";

  // 8. Held-out corpus: one document per word, one sentence per sense, built
  // from the training templates, so a trained model must score 100% while
  // the unattested words exercise the skip accounting.
  AnnotatedCorpus test_corpus;
  test_corpus.set_name("fixture-test");
  std::size_t test_doc = 0;
  std::uint64_t expected_scored = 0, expected_skipped = 0;
  auto add_test_doc = [&](const FixtureWord& w, bool modeled) {
    Document d;
    d.id = "e" + pad3(test_doc++);
    for (std::size_t j = 0; j < w.senses.size(); ++j) {
      for (std::size_t s = 0; s < w.senses[j].size(); ++s) {
        std::string sid = d.id + ".s" + pad3(d.sentences.size());
        Sentence sent = make_sentence(w, j, s, w.senses[j][s],
                                      sid + ".t" + pad3(kFocusPosition));
        sent.id = sid;
        d.sentences.push_back(std::move(sent));
        (modeled ? expected_scored : expected_skipped) += 1;
      }
    }
    test_corpus.add_document(std::move(d));
  };
  for (const auto& w : words) add_test_doc(w, true);
  for (const auto& w : unattested) add_test_doc(w, false);

  // 9. Manifest: planted keys in checker-report form, plus exact accounting.
  std::vector<std::string> planted_ohpt, planted_ohpd;
  for (std::size_t i : ohpt_set)
    planted_ohpt.push_back(word_key(words[i].word()) + "#" + target_shared(words[i]));
  for (std::size_t i : ohpd_set)
    planted_ohpd.push_back(word_key(words[i].word()) + "#d" + pad3(home_doc(i, 0, 0)));
  std::sort(planted_ohpt.begin(), planted_ohpt.end());
  std::sort(planted_ohpd.begin(), planted_ohpd.end());
  std::sort(planted_ohpsc.begin(), planted_ohpsc.end());

  std::uint64_t ohpt_instances = static_cast<std::uint64_t>(planted_ohpt.size());
  for (const auto& w : words)
    for (const auto& sl : w.senses) ohpt_instances += 1 + sl.size();  // common + own
  std::uint64_t ohpd_instances = static_cast<std::uint64_t>(4 * n_words);
  std::uint64_t ohpsc_checked = static_cast<std::uint64_t>(
      2 * n_words + planted_ohpsc.size() + singles.size());

  FixtureSet fx;
  fx.resource_tsv = lex.canonical_dump();
  fx.sense_map_tsv = smap_tsv;
  fx.corpus_xml = corpus.dump_xml();
  fx.gold_key = corpus.dump_gold();
  fx.align_tsv = align_tsv;
  fx.clusters_tsv = clusters_tsv;
  fx.test_xml = test_corpus.dump_xml();
  fx.test_key = test_corpus.dump_gold();

  auto& m = fx.manifest;
  m["seed"] = spec.seed;
  m["rates"] = {{"ohpt", spec.ohpt_rate}, {"ohpd", spec.ohpd_rate}, {"ohpsc", spec.ohpsc_rate}};
  m["files"] = {{"resource", "resource.tsv"},   {"sense_map", "sense_map.tsv"},
                {"corpus", "corpus.xml"},       {"gold", "corpus.key"},
                {"alignments", "align.tsv"},    {"clusters", "clusters.tsv"},
                {"test_corpus", "test.xml"},    {"test_gold", "test.key"}};
  m["counts"] = {{"homonymous_words", n_words},
                 {"single_words", singles.size()},
                 {"unattested_words", unattested.size()},
                 {"documents", corpus.documents().size()},
                 {"train_instances", corpus.instances().size()},
                 {"test_instances", test_corpus.instances().size()}};
  m["planted"] = {{"ohpt", planted_ohpt}, {"ohpd", planted_ohpd}, {"ohpsc", planted_ohpsc}};
  m["expected"] = {{"ohpt_instances", ohpt_instances},
                   {"ohpd_instances", ohpd_instances},
                   {"ohpsc_checked_clusters", ohpsc_checked},
                   {"ohpc_scored", expected_scored},
                   {"ohpc_skipped_unmodeled", expected_skipped},
                   {"ohpc_errors", 0}};
  return fx;
}

void write_fixtures(const FixtureSet& fx, const std::string& dir) {
  ::mkdir(dir.c_str(), 0755);
  auto p = [&](const char* name) { return dir + "/" + name; };
  write_file(p("resource.tsv"), fx.resource_tsv);
  write_file(p("sense_map.tsv"), fx.sense_map_tsv);
  write_file(p("corpus.xml"), fx.corpus_xml);
  write_file(p("corpus.key"), fx.gold_key);
  write_file(p("align.tsv"), fx.align_tsv);
  write_file(p("clusters.tsv"), fx.clusters_tsv);
  write_file(p("test.xml"), fx.test_xml);
  write_file(p("test.key"), fx.test_key);
  write_file(p("manifest.json"), fx.manifest.dump(2) + "\n");
}

}  // namespace homcheck
