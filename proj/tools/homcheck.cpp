// homcheck: checks the four homonym hypotheses (OHPT, OHPD, OHPC, OHPSC)
// over sense-annotated corpora, aligned bitexts and sense clusterings.

#include <dirent.h>

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homcheck/corpus.hpp"
#include "homcheck/errors.hpp"
#include "homcheck/fixtures.hpp"
#include "homcheck/lexicon.hpp"
#include "homcheck/ohpc.hpp"
#include "homcheck/ohpd.hpp"
#include "homcheck/ohpsc.hpp"
#include "homcheck/ohpt.hpp"
#include "homcheck/report.hpp"
#include "homcheck/util.hpp"

namespace {

using namespace homcheck;

struct CommonIo {
  std::string out;
  std::string format;  // empty: infer from out, default json
  std::string adjudication;
  std::string corpus_name;
};

void add_io(CLI::App* cmd, CommonIo& io, bool with_adjudication = true) {
  cmd->add_option("--out", io.out, "output file; '-' or empty writes to stdout");
  cmd->add_option("--format", io.format, "text, json or csv (default: by --out extension)")
      ->check(CLI::IsMember({"text", "txt", "json", "csv"}));
  if (with_adjudication)
    cmd->add_option("--adjudication", io.adjudication,
                    "TSV of human verdicts for apparent exceptions");
  cmd->add_option("--corpus-name", io.corpus_name, "corpus label used in reports");
}

ReportFormat pick_format(const CommonIo& io) {
  if (!io.format.empty()) return *report_format_from_name(io.format);
  if (!io.out.empty() && io.out != "-") return report_format_from_path(io.out);
  return ReportFormat::Json;
}

void write_out(const CommonIo& io, const std::string& bytes) {
  if (io.out.empty() || io.out == "-")
    std::cout << bytes;
  else
    write_file(io.out, bytes);
}

std::string label(const CommonIo& io, const std::string& fallback) {
  if (!io.corpus_name.empty()) return io.corpus_name;
  return fallback.empty() ? "corpus" : fallback;
}

void finish_report(HypothesisReport rep, const CommonIo& io) {
  if (!io.adjudication.empty())
    apply_adjudication(rep, load_adjudication(io.adjudication));
  write_out(io, emit_report(rep, pick_format(io)));
}

std::vector<std::string> list_dir_sorted(const std::string& dir) {
  std::vector<std::string> names;
  DIR* d = opendir(dir.c_str());
  if (d == nullptr) throw ValidationError("cannot open directory '" + dir + "'");
  while (dirent* e = readdir(d)) {
    std::string n = e->d_name;
    if (n != "." && n != "..") names.push_back(n);
  }
  closedir(d);
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homonym hypothesis checker"};
  app.require_subcommand(1);
  const unsigned threads = thread_cap();

  // --- ohpt ---------------------------------------------------------------
  std::string a_corpus, a_gold, a_align, a_resource, a_smap;
  CommonIo a_io;
  auto* ohpt_cmd = app.add_subcommand("ohpt", "one homonym per translation");
  ohpt_cmd->add_option("--corpus", a_corpus, "corpus XML")->required();
  ohpt_cmd->add_option("--gold", a_gold, "gold key file")->required();
  ohpt_cmd->add_option("--align", a_align, "alignment TSV")->required();
  ohpt_cmd->add_option("--resource", a_resource, "homonym resource TSV")->required();
  ohpt_cmd->add_option("--sense-map", a_smap, "sense-to-homonym TSV")->required();
  add_io(ohpt_cmd, a_io);

  // --- ohpt-merge ----------------------------------------------------------
  std::string m_corpus, m_gold, m_align, m_word;
  std::uint64_t m_min_shared = 1;
  CommonIo m_io;
  auto* merge_cmd =
      app.add_subcommand("ohpt-merge", "group senses by shared translations");
  merge_cmd->add_option("--corpus", m_corpus, "corpus XML")->required();
  merge_cmd->add_option("--gold", m_gold, "gold key file")->required();
  merge_cmd->add_option("--align", m_align, "alignment TSV")->required();
  merge_cmd->add_option("--word", m_word,
                        "limit to one word as lemma#pos (default: all aligned words)");
  merge_cmd->add_option("--min-shared", m_min_shared,
                        "translations two senses must share to merge")
      ->check(CLI::PositiveNumber);
  add_io(merge_cmd, m_io, false);

  // --- ohpt-compare ---------------------------------------------------------
  std::string c_corpus, c_gold, c_align, c_resource, c_smap, c_groups_b;
  std::uint64_t c_sample = 20, c_seed = 0;
  bool c_exclude_overlap = false;
  bool c_seed_set = false;
  CommonIo c_io;
  auto* cmp_cmd = app.add_subcommand(
      "ohpt-compare", "homonym vs clustering translation-partitioning comparison");
  cmp_cmd->add_option("--corpus", c_corpus, "corpus XML")->required();
  cmp_cmd->add_option("--gold", c_gold, "gold key file")->required();
  cmp_cmd->add_option("--align", c_align, "alignment TSV")->required();
  cmp_cmd->add_option("--groups-a", c_resource,
                      "homonym resource TSV (side A, with --sense-map)")
      ->required();
  cmp_cmd->add_option("--sense-map", c_smap, "sense-to-homonym TSV")->required();
  cmp_cmd->add_option("--groups-b", c_groups_b, "clustering TSV (side B)")->required();
  cmp_cmd->add_option("--sample", c_sample, "words sampled per side");
  cmp_cmd->add_option("--seed", c_seed, "sampling seed")
      ->each([&](const std::string&) { c_seed_set = true; });
  cmp_cmd->add_flag("--exclude-overlap", c_exclude_overlap,
                    "drop side-B words that appear in side A's resource");
  add_io(cmp_cmd, c_io, false);

  // --- ohpd -----------------------------------------------------------------
  std::string d_corpus, d_gold, d_resource, d_smap;
  CommonIo d_io;
  auto* ohpd_cmd = app.add_subcommand("ohpd", "one homonym per discourse");
  ohpd_cmd->add_option("--corpus", d_corpus, "corpus XML")->required();
  ohpd_cmd->add_option("--gold", d_gold, "gold key file")->required();
  ohpd_cmd->add_option("--resource", d_resource, "homonym resource TSV")->required();
  ohpd_cmd->add_option("--sense-map", d_smap, "sense-to-homonym TSV")->required();
  add_io(ohpd_cmd, d_io);

  // --- ohpc ------------------------------------------------------------------
  auto* ohpc_cmd = app.add_subcommand("ohpc", "one homonym per collocation");
  ohpc_cmd->require_subcommand(1);

  std::string t_corpus, t_gold, t_resource, t_out;
  unsigned t_positional = 2, t_pos_window = 3;
  auto* train_cmd = ohpc_cmd->add_subcommand("train", "train per-word sense models");
  train_cmd->add_option("--corpus", t_corpus, "training corpus XML")->required();
  train_cmd->add_option("--gold", t_gold, "gold key file")->required();
  train_cmd->add_option("--resource", t_resource, "homonym resource TSV")->required();
  train_cmd->add_option("--out", t_out, "model file")->required();
  train_cmd->add_option("--positional-window", t_positional, "positional feature window");
  train_cmd->add_option("--pos-window", t_pos_window, "pos-tag feature window");

  std::string e_models, e_test, e_test_gold, e_resource, e_smap;
  CommonIo e_io;
  auto* eval_cmd = ohpc_cmd->add_subcommand("eval", "homonym-level accuracy on a test set");
  eval_cmd->add_option("--models", e_models, "model file from ohpc train")->required();
  eval_cmd->add_option("--test", e_test, "test corpus XML")->required();
  eval_cmd->add_option("--test-gold", e_test_gold, "test gold key file")->required();
  eval_cmd->add_option("--resource", e_resource, "homonym resource TSV")->required();
  eval_cmd->add_option("--sense-map", e_smap, "sense-to-homonym TSV")->required();
  add_io(eval_cmd, e_io);

  // --- ohpsc ------------------------------------------------------------------
  std::string s_clusters, s_resource, s_smap;
  bool s_allow_provenance = false;
  CommonIo s_io;
  auto* ohpsc_cmd = app.add_subcommand("ohpsc", "one homonym per sense cluster");
  ohpsc_cmd->add_option("--clusters", s_clusters, "sense clustering TSV")->required();
  ohpsc_cmd->add_option("--resource", s_resource, "homonym resource TSV")->required();
  ohpsc_cmd->add_option("--sense-map", s_smap, "sense-to-homonym TSV")->required();
  ohpsc_cmd->add_flag("--allow-provenance", s_allow_provenance,
                      "evaluate even a clustering the sense map was derived from");
  add_io(ohpsc_cmd, s_io);

  // --- report -----------------------------------------------------------------
  std::string r_runs;
  CommonIo r_io;
  auto* report_cmd =
      app.add_subcommand("report", "combined results table from per-run JSON files");
  report_cmd->add_option("--runs", r_runs, "directory of report JSON files")->required();
  add_io(report_cmd, r_io, false);

  // --- fixtures ----------------------------------------------------------------
  FixtureSpec fspec;
  std::string f_dir;
  bool f_seed_set = false;
  auto* fix_cmd = app.add_subcommand("fixtures", "generate a synthetic test universe");
  fix_cmd->add_option("--seed", fspec.seed, "generation seed")
      ->each([&](const std::string&) { f_seed_set = true; });
  fix_cmd->add_option("--out", f_dir, "output directory")->required();
  fix_cmd->add_option("--words", fspec.homonymous_words, "homonymous words");
  fix_cmd->add_option("--ohpt-rate", fspec.ohpt_rate, "fraction of words with an OHPT plant")
      ->check(CLI::Range(0.0, 1.0));
  fix_cmd->add_option("--ohpd-rate", fspec.ohpd_rate, "fraction with an OHPD plant")
      ->check(CLI::Range(0.0, 1.0));
  fix_cmd->add_option("--ohpsc-rate", fspec.ohpsc_rate, "fraction with an OHPSC plant")
      ->check(CLI::Range(0.0, 1.0));

  // --- validate -------------------------------------------------------------
  std::string v_corpus, v_gold, v_align, v_resource, v_smap, v_clusters, v_adjudication;
  auto* val_cmd = app.add_subcommand("validate", "schema-check input files");
  val_cmd->add_option("--corpus", v_corpus, "corpus XML (needs --gold)");
  val_cmd->add_option("--gold", v_gold, "gold key file");
  val_cmd->add_option("--align", v_align, "alignment TSV (needs --corpus)");
  val_cmd->add_option("--resource", v_resource, "homonym resource TSV");
  val_cmd->add_option("--sense-map", v_smap, "sense map TSV (needs --resource)");
  val_cmd->add_option("--clusters", v_clusters, "clustering TSV");
  val_cmd->add_option("--adjudication", v_adjudication, "adjudication TSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ohpt_cmd) {
      Lexicon lex = Lexicon::load(a_resource);
      SenseMap smap = SenseMap::load(a_smap, lex);
      AnnotatedCorpus corpus = AnnotatedCorpus::parse(a_corpus, a_gold);
      AlignmentSet align = AlignmentSet::parse(a_align, corpus);
      OhptResult res = check_ohpt(corpus, align, smap, lex);
      finish_report(ohpt_report(res, label(a_io, corpus.name())), a_io);
    } else if (*merge_cmd) {
      AnnotatedCorpus corpus = AnnotatedCorpus::parse(m_corpus, m_gold);
      AlignmentSet align = AlignmentSet::parse(m_align, corpus);
      std::vector<Word> targets;
      if (!m_word.empty()) {
        auto w = word_from_key(m_word);
        if (!w) throw ValidationError("bad --word '" + m_word + "', want lemma#pos");
        targets.push_back(*w);
      } else {
        std::set<Word> seen;
        for (const auto& [link, count] : align.links())
          seen.insert(corpus.instance(link.first)->word());
        targets.assign(seen.begin(), seen.end());
      }
      auto j = nlohmann::ordered_json::array();
      for (const Word& w : targets) {
        auto entry = merge_senses_by_translation(corpus, align, w, m_min_shared);
        j.push_back({{"word", word_key(entry.word)}, {"groups", entry.groups}});
      }
      write_out(m_io, j.dump(2) + "\n");
    } else if (*cmp_cmd) {
      if (!c_seed_set)
        throw ValidationError("ohpt-compare samples words; --seed is required");
      Lexicon lex = Lexicon::load(c_resource);
      SenseMap smap = SenseMap::load(c_smap, lex);
      AnnotatedCorpus corpus = AnnotatedCorpus::parse(c_corpus, c_gold);
      AlignmentSet align = AlignmentSet::parse(c_align, corpus);
      SenseClustering clustering = SenseClustering::parse(c_groups_b);
      Grouping ga = Grouping::from_lexicon(lex, smap);
      Grouping gb = Grouping::from_clustering(clustering);
      if (c_exclude_overlap)
        for (const auto& [w, groups] : ga.assignment) gb.excluded_words.insert(w);
      auto cmp = compare_partitioning(ga, gb, corpus, align, c_sample, c_seed);
      write_out(c_io, cmp.to_json().dump(2) + "\n");
    } else if (*ohpd_cmd) {
      Lexicon lex = Lexicon::load(d_resource);
      SenseMap smap = SenseMap::load(d_smap, lex);
      AnnotatedCorpus corpus = AnnotatedCorpus::parse(d_corpus, d_gold);
      OhpdResult res = check_ohpd(corpus, smap, lex, threads);
      finish_report(ohpd_report(res, label(d_io, corpus.name())), d_io);
    } else if (*train_cmd) {
      Lexicon lex = Lexicon::load(t_resource);
      AnnotatedCorpus corpus = AnnotatedCorpus::parse(t_corpus, t_gold);
      OhpcConfig config;
      config.positional_window = t_positional;
      config.pos_window = t_pos_window;
      write_models(train(corpus, lex, config, threads), t_out);
    } else if (*eval_cmd) {
      Lexicon lex = Lexicon::load(e_resource);
      SenseMap smap = SenseMap::load(e_smap, lex);
      ModelSet models = load_models(e_models);
      AnnotatedCorpus test = AnnotatedCorpus::parse(e_test, e_test_gold);
      OhpcEvalResult res = evaluate_homonym_accuracy(models, test, smap, lex);
      finish_report(ohpc_report(res, label(e_io, test.name())), e_io);
    } else if (*ohpsc_cmd) {
      Lexicon lex = Lexicon::load(s_resource);
      SenseMap smap = SenseMap::load(s_smap, lex);
      SenseClustering clustering = SenseClustering::parse(s_clusters);
      auto circular =
          clustering_circularity(smap.provenance(), s_clusters, clustering.provenance());
      if (circular && !s_allow_provenance)
        throw ValidationError(*circular +
                              "; evaluating it against itself proves nothing "
                              "(rerun with --allow-provenance to override)");
      OhpscResult res = check_ohpsc(clustering, smap, lex);
      finish_report(ohpsc_report(res, label(s_io, "clusters")), s_io);
    } else if (*report_cmd) {
      std::vector<HypothesisSummary> rows;
      for (const auto& name : list_dir_sorted(r_runs)) {
        if (name.size() < 5 || name.substr(name.size() - 5) != ".json") continue;
        auto j = nlohmann::ordered_json::parse(read_file(r_runs + "/" + name));
        rows.push_back(report_from_json(j).summary);
      }
      std::stable_sort(rows.begin(), rows.end(),
                       [](const HypothesisSummary& x, const HypothesisSummary& y) {
                         return static_cast<int>(x.hypothesis) < static_cast<int>(y.hypothesis);
                       });
      ReportFormat fmt = r_io.format.empty() && (r_io.out.empty() || r_io.out == "-")
                             ? ReportFormat::Text
                             : pick_format(r_io);
      write_out(r_io, emit_summary_table(rows, fmt));
    } else if (*fix_cmd) {
      if (!f_seed_set)
        throw ValidationError("fixtures are seed-defined; --seed is required");
      write_fixtures(generate_fixtures(fspec), f_dir);
    } else if (*val_cmd) {
      if (v_corpus.empty() && v_gold.empty() && v_align.empty() && v_resource.empty() &&
          v_smap.empty() && v_clusters.empty() && v_adjudication.empty())
        throw ValidationError("validate: no inputs given");
      if (v_corpus.empty() != v_gold.empty())
        throw ValidationError("validate: --corpus and --gold go together");
      if (!v_align.empty() && v_corpus.empty())
        throw ValidationError("validate: --align needs --corpus/--gold");
      if (!v_smap.empty() && v_resource.empty())
        throw ValidationError("validate: --sense-map needs --resource");
      std::optional<Lexicon> lex;
      if (!v_resource.empty()) {
        lex = Lexicon::load(v_resource);
        std::cout << "resource: ok (" << lex->entries().size() << " entries, "
                  << lex->homonymous_words().size() << " homonymous words)\n";
      }
      if (!v_smap.empty()) {
        SenseMap smap = SenseMap::load(v_smap, *lex);
        std::cout << "sense-map: ok (" << smap.mapped_count() << " mapped, "
                  << smap.excluded_count() << " excluded)\n";
      }
      std::optional<AnnotatedCorpus> corpus;
      if (!v_corpus.empty()) {
        corpus = AnnotatedCorpus::parse(v_corpus, v_gold);
        auto st = corpus->stats();
        std::cout << "corpus: ok (" << st.word_tokens << " tokens, " << st.word_types
                  << " types, " << st.senses << " senses)\n";
      }
      if (!v_align.empty()) {
        AlignmentSet align = AlignmentSet::parse(v_align, *corpus);
        std::cout << "alignments: ok (" << align.link_count() << " links, "
                  << align.dropped_unknown() << " dropped)\n";
      }
      if (!v_clusters.empty()) {
        SenseClustering clustering = SenseClustering::parse(v_clusters);
        std::cout << "clusters: ok (" << clustering.clusters().size() << " clusters)\n";
      }
      if (!v_adjudication.empty()) {
        auto records = load_adjudication(v_adjudication);
        std::cout << "adjudication: ok (" << records.size() << " records)\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "homcheck: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
