#include "homcheck/ohpc.hpp"

#include <algorithm>
#include <cmath>

#include "homcheck/errors.hpp"
#include "homcheck/util.hpp"

namespace homcheck {

namespace {

constexpr const char* kBosLemma = "<s>";
constexpr const char* kEosLemma = "</s>";

bool is_content(const Token& t) { return t.pos.has_value(); }

// lemma at focus+off, with boundary padding
std::string lemma_at(const Sentence& s, std::size_t position, int off) {
  long i = static_cast<long>(position) + off;
  if (i < 0) return kBosLemma;
  if (i >= static_cast<long>(s.tokens.size())) return kEosLemma;
  return s.tokens[static_cast<std::size_t>(i)].lemma;
}

std::string offs(int off) {
  return off > 0 ? "+" + std::to_string(off) : std::to_string(off);
}

}  // namespace

FeatureVector extract_features(const Sentence& s, std::size_t position,
                               const OhpcConfig& config) {
  FeatureVector fv;
  const int pw = static_cast<int>(config.positional_window);

  // W: content lemmas in specific positions; out-of-sentence offsets yield
  // the padding lemma, non-content neighbours yield nothing.
  for (int off = -pw; off <= pw; ++off) {
    if (off == 0) continue;
    long i = static_cast<long>(position) + off;
    if (i < 0 || i >= static_cast<long>(s.tokens.size())) {
      ++fv["W[" + offs(off) + "]=" + (i < 0 ? kBosLemma : kEosLemma)];
    } else if (is_content(s.tokens[static_cast<std::size_t>(i)])) {
      ++fv["W[" + offs(off) + "]=" + s.tokens[static_cast<std::size_t>(i)].lemma];
    }
  }

  // P: ordered adjacent pairs bridging the focus, any token, padded.
  std::vector<std::pair<int, int>> pairs;
  for (int off = -pw; off < -1; ++off) pairs.emplace_back(off, off + 1);
  pairs.emplace_back(-1, 1);
  for (int off = 1; off < pw; ++off) pairs.emplace_back(off, off + 1);
  for (auto [o1, o2] : pairs)
    ++fv["P[" + offs(o1) + "," + offs(o2) + "]=" + lemma_at(s, position, o1) + "|" +
         lemma_at(s, position, o2)];

  // T: raw pos tags around and at the focus.
  const int tw = static_cast<int>(config.pos_window);
  for (int off = -tw; off <= tw; ++off) {
    long i = static_cast<long>(position) + off;
    std::string tag = i < 0                                      ? kBosLemma
                      : i >= static_cast<long>(s.tokens.size()) ? kEosLemma
                                                                 : s.tokens[static_cast<std::size_t>(i)].tag;
    ++fv["T[" + offs(off) + "]=" + tag];
  }

  // B: content lemmas elsewhere in the sentence, with multiplicity.
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (i == position) continue;
    if (is_content(s.tokens[i])) ++fv["B=" + s.tokens[i].lemma];
  }
  return fv;
}

FeatureVector extract_features(const AnnotatedCorpus& corpus,
                               const std::string& instance_id, const OhpcConfig& config) {
  const AnnotatedInstance* inst = corpus.instance(instance_id);
  if (inst == nullptr)
    throw ValidationError("unknown instance id '" + instance_id + "'");
  const Sentence* sent = corpus.sentence(inst->sentence_id);
  return extract_features(*sent, inst->position, config);
}

std::string WordModel::most_frequent_sense() const {
  std::string best;
  std::uint64_t best_count = 0;
  for (const auto& [key, count] : class_counts) {
    if (count > best_count) {  // first key wins ties: map order is sorted
      best = key;
      best_count = count;
    }
  }
  return best;
}

std::string WordModel::predict(const FeatureVector& features) const {
  std::set<std::string> vocabulary;
  for (const auto& [cls, feats] : feature_counts)
    for (const auto& [f, n] : feats) vocabulary.insert(f);
  const double v = static_cast<double>(vocabulary.size());

  std::string best;
  double best_score = 0;
  for (const auto& [cls, count] : class_counts) {
    double score = std::log(static_cast<double>(count) / static_cast<double>(instances));
    double mass = 0;
    auto fc = feature_counts.find(cls);
    if (fc != feature_counts.end())
      for (const auto& [f, n] : fc->second) mass += static_cast<double>(n);
    for (const auto& [f, m] : features) {
      if (!vocabulary.count(f)) continue;  // unseen anywhere: no evidence
      std::uint64_t n = 0;
      if (fc != feature_counts.end()) {
        auto it = fc->second.find(f);
        if (it != fc->second.end()) n = it->second;
      }
      score += m * std::log((static_cast<double>(n) + 1.0) / (mass + v));
    }
    if (best.empty() || score > best_score) {
      best = cls;
      best_score = score;
    }
  }
  return best;
}

const WordModel* ModelSet::model_for(const Word& w) const {
  auto it = models.find(w);
  return it == models.end() ? nullptr : &it->second;
}

ModelSet train(const AnnotatedCorpus& corpus, const Lexicon& lex,
               const OhpcConfig& config, unsigned threads) {
  std::set<Word> homonymous = lex.homonymous_words();
  std::vector<Word> attested;
  for (const Word& w : homonymous)
    if (!corpus.instances_of(w).empty()) attested.push_back(w);

  auto models = parallel_map<WordModel>(
      attested.size(), threads, [&](std::size_t i) {
        const Word& w = attested[i];
        WordModel m;
        m.word = w;
        for (const AnnotatedInstance* inst : corpus.instances_of(w)) {
          const std::string& label = inst->gold_keys.front();
          const Sentence* sent = corpus.sentence(inst->sentence_id);
          FeatureVector fv = extract_features(*sent, inst->position, config);
          ++m.instances;
          ++m.class_counts[label];
          auto& fc = m.feature_counts[label];
          for (const auto& [f, n] : fv) fc[f] += n;
        }
        return m;
      });

  ModelSet set;
  set.config = config;
  for (auto& m : models) set.models.emplace(m.word, std::move(m));
  return set;
}

std::string save_models(const ModelSet& models) {
  std::string out = "homcheck-models\tv1\n";
  out += "config\t" + std::to_string(models.config.positional_window) + "\t" +
         std::to_string(models.config.pos_window) + "\n";
  for (const auto& [w, m] : models.models) {
    out += "word\t" + word_key(w) + "\t" + std::to_string(m.instances) + "\n";
    for (const auto& [cls, count] : m.class_counts)
      out += "class\t" + cls + "\t" + std::to_string(count) + "\n";
    for (const auto& [cls, feats] : m.feature_counts)
      for (const auto& [f, n] : feats)
        out += "feat\t" + cls + "\t" + f + "\t" + std::to_string(n) + "\n";
  }
  return out;
}

ModelSet load_models_from_string(const std::string& text, const std::string& path) {
  ModelSet set;
  WordModel* cur = nullptr;
  std::size_t lineno = 0;
  bool saw_header = false, saw_config = false;
  for (const auto& line : split(text, '\n')) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split(line, '\t');
    if (!saw_header) {
      if (f.size() != 2 || f[0] != "homcheck-models" || f[1] != "v1")
        throw ParseError(path, lineno, "not a homcheck-models v1 file");
      saw_header = true;
      continue;
    }
    if (f[0] == "config") {
      if (f.size() != 3) throw ParseError(path, lineno, "bad config line");
      set.config.positional_window = static_cast<unsigned>(std::stoul(f[1]));
      set.config.pos_window = static_cast<unsigned>(std::stoul(f[2]));
      saw_config = true;
    } else if (f[0] == "word") {
      if (!saw_config) throw ParseError(path, lineno, "config line must precede words");
      if (f.size() != 3) throw ParseError(path, lineno, "bad word line");
      auto w = word_from_key(f[1]);
      if (!w) throw ParseError(path, lineno, "bad word key '" + f[1] + "'");
      WordModel m;
      m.word = *w;
      m.instances = std::stoull(f[2]);
      auto [it, fresh] = set.models.emplace(*w, std::move(m));
      if (!fresh) throw ParseError(path, lineno, "duplicate word '" + f[1] + "'");
      cur = &it->second;
    } else if (f[0] == "class") {
      if (cur == nullptr || f.size() != 3) throw ParseError(path, lineno, "stray class line");
      cur->class_counts[f[1]] = std::stoull(f[2]);
    } else if (f[0] == "feat") {
      if (cur == nullptr || f.size() != 4) throw ParseError(path, lineno, "stray feat line");
      cur->feature_counts[f[1]][f[2]] = std::stoull(f[3]);
    } else {
      throw ParseError(path, lineno, "unknown record '" + f[0] + "'");
    }
  }
  if (!saw_header) throw ParseError(path, 0, "empty model file");
  for (const auto& [w, m] : set.models) {
    std::uint64_t total = 0;
    for (const auto& [cls, count] : m.class_counts) total += count;
    if (total != m.instances)
      throw ParseError(path, 0, "class counts of '" + word_key(w) +
                                 "' do not sum to its instance count");
  }
  return set;
}

ModelSet load_models(const std::string& path) {
  return load_models_from_string(read_file(path), path);
}

void write_models(const ModelSet& models, const std::string& path) {
  write_file(path, save_models(models));
}

OhpcEvalResult evaluate_homonym_accuracy(const ModelSet& models,
                                         const AnnotatedCorpus& test_corpus,
                                         const SenseMap& smap, const Lexicon& lex) {
  OhpcEvalResult res;
  for (const AnnotatedInstance& inst : test_corpus.instances()) {
    Word w = inst.word();
    if (!lex.is_homonymous(w)) continue;
    auto gold = resolve_homonym(smap, inst.gold_keys);
    if (gold.kind == HomonymResolution::Unmapped) {
      ++res.skipped_unmapped_gold;
      continue;
    }
    if (gold.kind == HomonymResolution::Conflict) {
      ++res.excluded_conflict;
      continue;
    }
    const WordModel* model = models.model_for(w);
    if (model == nullptr) {
      ++res.skipped_unmodeled;
      continue;
    }
    const Sentence* sent = test_corpus.sentence(inst.sentence_id);
    std::string predicted = model->predict(
        extract_features(*sent, inst.position, models.config));
    ++res.scored;

    bool sense_ok = std::find(inst.gold_keys.begin(), inst.gold_keys.end(), predicted) !=
                    inst.gold_keys.end();
    auto predicted_homonym = smap.homonym_of(predicted);
    bool homonym_ok =
        sense_ok || (predicted_homonym && gold.homonym_ids.count(*predicted_homonym));
    if (sense_ok) ++res.sense_correct;
    if (homonym_ok) {
      ++res.homonym_correct;
    } else {
      OhpcError err;
      err.instance_id = inst.instance_id;
      err.word = w;
      err.predicted_key = predicted;
      err.predicted_homonym = predicted_homonym.value_or("");
      err.gold_keys = inst.gold_keys;
      err.gold_homonyms = gold.homonym_ids;
      err.sense_correct = sense_ok;
      res.errors.push_back(std::move(err));
    }
  }
  return res;
}

HypothesisReport ohpc_report(const OhpcEvalResult& result, const std::string& corpus_name) {
  HypothesisReport rep;
  rep.summary.hypothesis = Hypothesis::OHPC;
  rep.summary.corpus_name = corpus_name;
  rep.summary.instances = result.scored;
  rep.summary.apparent_exceptions = result.scored - result.homonym_correct;
  rep.summary.actual_exceptions = rep.summary.apparent_exceptions;
  rep.summary.lower_bound = true;
  for (const auto& err : result.errors) {
    ExceptionRecord e;
    e.instance_key = err.instance_id;
    e.evidence["word"] = word_key(err.word);
    e.evidence["predicted_key"] = err.predicted_key;
    e.evidence["predicted_homonym"] = err.predicted_homonym;
    e.evidence["gold_keys"] = err.gold_keys;
    e.evidence["gold_homonyms"] = err.gold_homonyms;
    rep.exceptions.push_back(std::move(e));
  }
  rep.details["sense_correct"] = result.sense_correct;
  rep.details["homonym_correct"] = result.homonym_correct;
  rep.details["skipped_unmodeled"] = result.skipped_unmodeled;
  rep.details["skipped_unmapped_gold"] = result.skipped_unmapped_gold;
  rep.details["excluded_conflict"] = result.excluded_conflict;
  return rep;
}

}  // namespace homcheck
