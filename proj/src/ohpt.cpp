#include "homcheck/ohpt.hpp"

#include <algorithm>

#include "homcheck/errors.hpp"
#include "homcheck/util.hpp"

namespace homcheck {

bool translation_sets_disjoint(const std::vector<TranslationSet>& sets) {
  std::set<std::string> seen;
  for (const auto& ts : sets)
    for (const auto& [target, count] : ts.translations)
      if (!seen.insert(target).second) return false;
  return true;
}

ExtractResult extract_translation_sets(const AnnotatedCorpus& corpus,
                                       const AlignmentSet& alignments,
                                       const SenseMap& smap, const Lexicon& lex) {
  ExtractResult res;
  // word -> homonym_id -> target -> count
  std::map<Word, std::map<std::string, std::map<std::string, std::uint64_t>>> acc;
  for (const auto& [link, count] : alignments.links()) {
    const auto& [instance_id, target] = link;
    const AnnotatedInstance* inst = corpus.instance(instance_id);
    Word w = inst->word();
    if (!lex.is_homonymous(w)) continue;
    auto r = resolve_homonym(smap, inst->gold_keys);
    if (r.kind == HomonymResolution::Unmapped) {
      ++res.skipped_unmapped;
      continue;
    }
    if (r.kind == HomonymResolution::Conflict) {
      ++res.skipped_conflict;
      continue;
    }
    acc[w][r.homonym_id][target] += count;
  }
  for (auto& [w, by_hid] : acc) {
    std::vector<TranslationSet> sets;
    // every homonym of the word gets a set, attested or not
    for (const std::string& hid : lex.homonym_ids(w)) {
      TranslationSet ts;
      ts.group_id = hid;
      auto it = by_hid.find(hid);
      if (it != by_hid.end()) ts.translations = it->second;
      sets.push_back(std::move(ts));
    }
    res.sets.emplace(w, std::move(sets));
  }
  return res;
}

OhptResult check_ohpt(const AnnotatedCorpus& corpus, const AlignmentSet& alignments,
                      const SenseMap& smap, const Lexicon& lex) {
  OhptResult res;
  std::map<std::pair<Word, std::string>, OhptInstance> by_pair;
  for (const auto& [link, count] : alignments.links()) {
    const auto& [instance_id, target] = link;
    const AnnotatedInstance* inst = corpus.instance(instance_id);
    Word w = inst->word();
    if (!lex.is_homonymous(w)) continue;
    auto r = resolve_homonym(smap, inst->gold_keys);
    if (r.kind == HomonymResolution::Unmapped) {
      ++res.skipped_unmapped;
      continue;
    }
    if (r.kind == HomonymResolution::Conflict) {
      ++res.skipped_conflict;
      continue;
    }
    OhptInstance& oi = by_pair[{w, target}];
    if (oi.occurrences.empty()) {
      oi.word = w;
      oi.target = target;
    }
    oi.occurrences.push_back({instance_id, r.homonym_id});
    oi.homonym_ids.insert(r.homonym_id);
  }
  for (auto& [pair, oi] : by_pair) {
    std::sort(oi.occurrences.begin(), oi.occurrences.end(),
              [](const OhptOccurrence& a, const OhptOccurrence& b) {
                return a.instance_id < b.instance_id;
              });
    if (!oi.consistent()) ++res.inconsistent;
    res.instances.push_back(std::move(oi));
  }
  return res;
}

HypothesisReport ohpt_report(const OhptResult& result, const std::string& corpus_name) {
  HypothesisReport rep;
  rep.summary.hypothesis = Hypothesis::OHPT;
  rep.summary.corpus_name = corpus_name;
  rep.summary.instances = result.instances.size();
  rep.summary.apparent_exceptions = result.inconsistent;
  rep.summary.actual_exceptions = result.inconsistent;
  for (const auto& oi : result.instances) {
    if (oi.consistent()) continue;
    ExceptionRecord e;
    e.instance_key = word_key(oi.word) + "#" + oi.target;
    auto occ = nlohmann::ordered_json::array();
    for (const auto& o : oi.occurrences)
      occ.push_back({{"instance_id", o.instance_id}, {"homonym_id", o.homonym_id}});
    e.evidence["word"] = word_key(oi.word);
    e.evidence["target"] = oi.target;
    e.evidence["homonym_ids"] = oi.homonym_ids;
    e.evidence["occurrences"] = std::move(occ);
    rep.exceptions.push_back(std::move(e));
  }
  rep.details["skipped_unmapped"] = result.skipped_unmapped;
  rep.details["skipped_conflict"] = result.skipped_conflict;
  return rep;
}

DerivedClusteringEntry merge_senses_by_translation(const AnnotatedCorpus& corpus,
                                                   const AlignmentSet& alignments,
                                                   const Word& word,
                                                   std::uint64_t min_shared) {
  if (min_shared < 1) min_shared = 1;
  // sense -> distinct targets of its aligned occurrences
  std::map<std::string, std::set<std::string>> targets_of_sense;
  for (const AnnotatedInstance* inst : corpus.instances_of(word)) {
    auto targets = alignments.targets_of(inst->instance_id);
    for (const auto& k : inst->gold_keys) {
      auto& ts = targets_of_sense[k];  // attested even when unaligned
      ts.insert(targets.begin(), targets.end());
    }
  }

  std::vector<std::string> senses;
  for (const auto& [k, ts] : targets_of_sense) senses.push_back(k);

  // union-find over sense indices
  std::vector<std::size_t> parent(senses.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < senses.size(); ++i) {
    for (std::size_t j = i + 1; j < senses.size(); ++j) {
      const auto& a = targets_of_sense[senses[i]];
      const auto& b = targets_of_sense[senses[j]];
      std::uint64_t shared = 0;
      for (const auto& t : a)
        if (b.count(t) && ++shared >= min_shared) break;
      if (shared >= min_shared) parent[find(i)] = find(j);
    }
  }

  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < senses.size(); ++i) groups[find(i)].push_back(senses[i]);

  DerivedClusteringEntry entry;
  entry.word = word;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    entry.groups.push_back(std::move(members));
  }
  std::sort(entry.groups.begin(), entry.groups.end());
  return entry;
}

Grouping Grouping::from_lexicon(const Lexicon& lex, const SenseMap& smap) {
  Grouping g;
  g.name = "homonyms";
  for (const auto& [key, hid] : smap.map()) {
    const HomonymEntry* e = lex.entry(hid);
    SenseKey sk = SenseKey::parse(key);
    // the cross-check at load time guarantees membership
    g.assignment[Word{e->lemma, sk.pos()}][key] = hid;
  }
  return g;
}

Grouping Grouping::from_clustering(const SenseClustering& clustering) {
  Grouping g;
  g.name = "clusters";
  for (const auto& c : clustering.clusters())
    for (const auto& k : c.sense_keys) g.assignment[c.word][k] = c.cluster_id;
  return g;
}

std::set<std::string> Grouping::attested_groups(const Word& w,
                                                const AnnotatedCorpus& corpus) const {
  std::set<std::string> groups;
  auto it = assignment.find(w);
  if (it == assignment.end()) return groups;
  for (const AnnotatedInstance* inst : corpus.instances_of(w))
    for (const auto& k : inst->gold_keys) {
      auto g = it->second.find(k);
      if (g != it->second.end()) groups.insert(g->second);
    }
  return groups;
}

std::vector<Word> Grouping::candidates(const AnnotatedCorpus& corpus) const {
  // Attestation is corpus-side, not alignment-side: the alignment is partial,
  // so a candidate's group may well end up with an empty translation set.
  std::vector<Word> out;
  for (const auto& [w, senses] : assignment) {
    if (excluded_words.count(w)) continue;
    if (attested_groups(w, corpus).size() == 2) out.push_back(w);
  }
  return out;  // assignment iteration: already sorted
}

std::string pair_outcome_name(PairOutcome o) {
  switch (o) {
    case PairOutcome::Partitioned: return "partitioned";
    case PairOutcome::Overlapping: return "overlapping";
    case PairOutcome::Vacuous: return "vacuous";
  }
  return "?";
}

namespace {

ComparedWord compare_word(const Grouping& grouping, const Word& w,
                          const AnnotatedCorpus& corpus, const AlignmentSet& alignments) {
  const auto& assign = grouping.assignment.at(w);
  auto groups = grouping.attested_groups(w, corpus);  // exactly 2 for candidates
  // group -> targets of its aligned occurrences; per-target occurrence totals
  // feed the overlap count
  std::map<std::string, std::set<std::string>> targets_of_group;
  std::map<std::string, std::uint64_t> occurrences_of_target;
  for (const AnnotatedInstance* inst : corpus.instances_of(w)) {
    for (const auto& [target, count] : alignments.counted_targets_of(inst->instance_id)) {
      bool assigned = false;
      for (const auto& k : inst->gold_keys) {
        auto g = assign.find(k);
        if (g == assign.end()) continue;
        targets_of_group[g->second].insert(target);
        assigned = true;
      }
      if (assigned) occurrences_of_target[target] += count;
    }
  }

  ComparedWord cw;
  cw.word = w;
  cw.group1 = *groups.begin();
  cw.group2 = *std::next(groups.begin());
  const auto& t1 = targets_of_group[cw.group1];
  const auto& t2 = targets_of_group[cw.group2];
  if (t1.empty() || t2.empty()) {
    cw.outcome = PairOutcome::Vacuous;
    return cw;
  }
  for (const auto& t : t1)
    if (t2.count(t)) cw.shared_targets.push_back(t);
  if (cw.shared_targets.empty()) {
    cw.outcome = PairOutcome::Partitioned;
  } else {
    cw.outcome = PairOutcome::Overlapping;
    for (const auto& t : cw.shared_targets)
      cw.overlap_occurrences += occurrences_of_target[t];
  }
  return cw;
}

nlohmann::ordered_json compared_word_json(const ComparedWord& cw) {
  nlohmann::ordered_json j;
  j["word"] = word_key(cw.word);
  j["groups"] = {cw.group1, cw.group2};
  j["outcome"] = pair_outcome_name(cw.outcome);
  if (!cw.shared_targets.empty()) {
    j["shared_targets"] = cw.shared_targets;
    j["overlap_occurrences"] = cw.overlap_occurrences;
  }
  return j;
}

}  // namespace

nlohmann::ordered_json PartitioningComparison::to_json() const {
  nlohmann::ordered_json j;
  j["sample_size"] = sample_size;
  j["seed"] = seed;
  auto side = [](const std::vector<ComparedWord>& words) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& cw : words) arr.push_back(compared_word_json(cw));
    return arr;
  };
  j["side_a"] = side(side_a);
  j["side_b"] = side(side_b);
  j["table"] = {{"a_partitioned", table.a},
                {"a_overlapping", table.b},
                {"b_partitioned", table.c},
                {"b_overlapping", table.d}};
  if (chi) {
    j["chi_squared"] = format_fixed(chi->statistic, 2);
    j["significant"] = {{"p0.05", chi->p05},
                        {"p0.01", chi->p01},
                        {"p0.005", chi->p005},
                        {"p0.001", chi->p001}};
  } else {
    j["chi_squared"] = nullptr;
    j["chi_note"] = chi_note;
  }
  return j;
}

PartitioningComparison compare_partitioning(const Grouping& grouping_a,
                                            const Grouping& grouping_b,
                                            const AnnotatedCorpus& corpus,
                                            const AlignmentSet& alignments,
                                            std::uint64_t sample_size,
                                            std::uint64_t seed) {
  auto cand_a = grouping_a.candidates(corpus);
  auto cand_b = grouping_b.candidates(corpus);
  if (cand_a.size() < sample_size)
    throw ValidationError("grouping '" + grouping_a.name + "' has only " +
                          std::to_string(cand_a.size()) + " candidate words, need " +
                          std::to_string(sample_size));
  if (cand_b.size() < sample_size)
    throw ValidationError("grouping '" + grouping_b.name + "' has only " +
                          std::to_string(cand_b.size()) + " candidate words, need " +
                          std::to_string(sample_size));

  // Each side draws from its own generator with the shared seed, so identical
  // groupings yield identical samples (and thus identical partition counts).
  Rng rng_a(seed);
  Rng rng_b(seed);
  auto picked_a = rng_a.sample(cand_a, static_cast<std::size_t>(sample_size));
  auto picked_b = rng_b.sample(cand_b, static_cast<std::size_t>(sample_size));

  PartitioningComparison res;
  res.sample_size = sample_size;
  res.seed = seed;
  for (const Word& w : picked_a)
    res.side_a.push_back(compare_word(grouping_a, w, corpus, alignments));
  for (const Word& w : picked_b)
    res.side_b.push_back(compare_word(grouping_b, w, corpus, alignments));

  auto tally = [](const std::vector<ComparedWord>& side, std::uint64_t& part,
                  std::uint64_t& over) {
    for (const auto& cw : side) {
      if (cw.outcome == PairOutcome::Partitioned) ++part;
      if (cw.outcome == PairOutcome::Overlapping) ++over;
    }
  };
  tally(res.side_a, res.table.a, res.table.b);
  tally(res.side_b, res.table.c, res.table.d);
  try {
    res.chi = chi_squared_2x2(res.table);
  } catch (const ValidationError& e) {
    res.chi = std::nullopt;
    res.chi_note = e.what();
  }
  return res;
}

}  // namespace homcheck
