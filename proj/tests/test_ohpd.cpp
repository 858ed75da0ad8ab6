#include "doctest.h"

#include <algorithm>
#include <map>

#include "homcheck/errors.hpp"
#include "homcheck/fixtures.hpp"
#include "homcheck/ohpd.hpp"
#include "temp.hpp"

using namespace homcheck;

namespace {

struct DocSpec {
  std::string id;
  // each element: (lemma, gold keys space-joined); one sentence per token
  std::vector<std::pair<std::string, std::string>> tokens;
};

struct MiniDocs {
  testutil::TempDir tmp;
  AnnotatedCorpus corpus;

  explicit MiniDocs(const std::vector<DocSpec>& docs) {
    std::string xml = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<corpus source=\"mini\">\n";
    std::string gold;
    for (const auto& d : docs) {
      xml += "<text id=\"" + d.id + "\">\n";
      for (std::size_t s = 0; s < d.tokens.size(); ++s) {
        std::string sid = d.id + ".s" + std::to_string(s);
        std::string iid = sid + ".t0";
        xml += "<sentence id=\"" + sid + "\">\n<instance id=\"" + iid + "\" lemma=\"" +
               d.tokens[s].first + "\" pos=\"NOUN\">" + d.tokens[s].first +
               "</instance>\n</sentence>\n";
        gold += iid + " " + d.tokens[s].second + "\n";
      }
      xml += "</text>\n";
    }
    xml += "</corpus>\n";
    corpus = AnnotatedCorpus::parse(tmp.write("c.xml", xml), tmp.write("c.key", gold));
  }
};

Lexicon bank_lexicon() {
  Lexicon lex;
  lex.add_entry({"bank_fin", "bank", {Pos::Noun}, "Old Italian", "banca",
                 "financial institution", "banque"});
  lex.add_entry({"bank_geo", "bank", {Pos::Noun}, "Old Norse", "bakki",
                 "sloping land", "rive"});
  lex.add_entry({"lead_metal", "lead", {Pos::Noun}, "Old English", "lead",
                 "the metal", "plomb"});
  lex.add_entry({"lead_front", "lead", {Pos::Noun}, "Old English", "laedan",
                 "leading position", "avance"});
  return lex;
}

SenseMap bank_sense_map() {
  SenseMap smap;
  smap.add_mapping("bank%1:14:00::", "bank_fin");
  smap.add_mapping("bank%1:14:01::", "bank_fin");
  smap.add_mapping("bank%1:17:00::", "bank_geo");
  smap.add_mapping("lead%1:27:00::", "lead_metal");
  smap.add_mapping("lead%1:07:00::", "lead_front");
  return smap;
}

const Word kBank{"bank", Pos::Noun};

}  // namespace

TEST_CASE("document with one homonym of bank is consistent") {
  MiniDocs md({{"d0",
                {{"bank", "bank%1:14:00::"},
                 {"bank", "bank%1:14:01::"},
                 {"bank", "bank%1:14:00::"}}}});
  OhpdResult res = check_ohpd(md.corpus, bank_sense_map(), bank_lexicon());
  REQUIRE(res.instances.size() == 1);
  CHECK(res.instances[0].word == kBank);
  CHECK(res.instances[0].document_id == "d0");
  CHECK(res.instances[0].occurrences.size() == 3);
  CHECK(res.instances[0].homonym_ids == std::set<std::string>{"bank_fin"});
  CHECK(res.instances[0].consistent());
  CHECK(res.inconsistent == 0);
}

TEST_CASE("document mixing both banks is the exception") {
  MiniDocs md({{"d0", {{"bank", "bank%1:14:00::"}, {"bank", "bank%1:17:00::"}}}});
  OhpdResult res = check_ohpd(md.corpus, bank_sense_map(), bank_lexicon());
  REQUIRE(res.instances.size() == 1);
  CHECK_FALSE(res.instances[0].consistent());
  CHECK(res.instances[0].homonym_ids ==
        std::set<std::string>{"bank_fin", "bank_geo"});
  CHECK(res.inconsistent == 1);

  HypothesisReport rep = ohpd_report(res, "mini");
  CHECK(rep.summary.apparent_exceptions == 1);
  REQUIRE(rep.exceptions.size() == 1);
  CHECK(rep.exceptions[0].instance_key == "bank#n#d0");
  // evidence carries sentence ids and gold keys for the adjudicator
  const auto& occs = rep.exceptions[0].evidence.at("occurrences");
  REQUIRE(occs.size() == 2);
  CHECK(occs[0].at("sentence_id") == "d0.s0");
  CHECK(occs[0].at("gold_keys")[0] == "bank%1:14:00::");
  CHECK(occs[1].at("homonym_id") == "bank_geo");
}

TEST_CASE("four documents, three words, planted violations enumerated by hand") {
  // d0: bank mixed (violation), lead consistent
  // d1: bank consistent
  // d2: lead mixed (violation)
  // d3: bank single occurrence, lead single occurrence
  MiniDocs md({{"d0",
                {{"bank", "bank%1:14:00::"},
                 {"bank", "bank%1:17:00::"},
                 {"lead", "lead%1:27:00::"},
                 {"lead", "lead%1:27:00::"}}},
               {"d1", {{"bank", "bank%1:14:00::"}, {"bank", "bank%1:14:01::"}}},
               {"d2", {{"lead", "lead%1:27:00::"}, {"lead", "lead%1:07:00::"}}},
               {"d3", {{"bank", "bank%1:17:00::"}, {"lead", "lead%1:07:00::"}}}});
  OhpdResult res = check_ohpd(md.corpus, bank_sense_map(), bank_lexicon());
  // (word, doc) pairs: bank:d0,d1,d3 lead:d0,d2,d3 = 6 instances, 2 inconsistent
  CHECK(res.instances.size() == 6);
  CHECK(res.inconsistent == 2);
  std::map<std::string, bool> verdicts;
  for (const auto& inst : res.instances)
    verdicts[word_key(inst.word) + "#" + inst.document_id] = inst.consistent();
  CHECK_FALSE(verdicts.at("bank#n#d0"));
  CHECK(verdicts.at("bank#n#d1"));
  CHECK(verdicts.at("bank#n#d3"));
  CHECK(verdicts.at("lead#n#d0"));
  CHECK_FALSE(verdicts.at("lead#n#d2"));
  CHECK(verdicts.at("lead#n#d3"));
}

TEST_CASE("single-occurrence instances support the hypothesis") {
  MiniDocs md({{"d0", {{"bank", "bank%1:14:00::"}}},
               {"d1", {{"bank", "bank%1:17:00::"}}}});
  OhpdResult res = check_ohpd(md.corpus, bank_sense_map(), bank_lexicon());
  CHECK(res.instances.size() == 2);
  CHECK(res.inconsistent == 0);
  for (const auto& inst : res.instances) CHECK(inst.consistent());
}

TEST_CASE("occurrences partition the mapped homonymous tokens") {
  FixtureSpec spec;
  spec.seed = 31;
  spec.ohpd_rate = 0.2;
  FixtureSet fx = generate_fixtures(spec);
  testutil::TempDir tmp;
  Lexicon lex = Lexicon::load(tmp.write("r.tsv", fx.resource_tsv));
  SenseMap smap = SenseMap::load(tmp.write("m.tsv", fx.sense_map_tsv), lex);
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(tmp.write("c.xml", fx.corpus_xml),
                                                  tmp.write("c.key", fx.gold_key));
  OhpdResult res = check_ohpd(corpus, smap, lex);

  std::set<std::string> seen;
  for (const auto& inst : res.instances)
    for (const auto& occ : inst.occurrences) {
      CHECK(seen.insert(occ.instance_id).second);  // nothing duplicated
    }
  std::set<std::string> expected;
  for (const auto& ai : corpus.instances()) {
    if (!lex.is_homonymous(ai.word())) continue;
    HomonymResolution r = resolve_homonym(smap, ai.gold_keys);
    if (r.kind == HomonymResolution::Mapped) expected.insert(ai.instance_id);
  }
  CHECK(seen == expected);  // nothing lost
}

TEST_CASE("document order does not change verdicts") {
  std::vector<DocSpec> docs{
      {"d0", {{"bank", "bank%1:14:00::"}, {"bank", "bank%1:17:00::"}}},
      {"d1", {{"bank", "bank%1:14:00::"}}},
      {"d2", {{"lead", "lead%1:27:00::"}, {"lead", "lead%1:07:00::"}}}};
  MiniDocs forward(docs);
  std::reverse(docs.begin(), docs.end());
  MiniDocs backward(docs);
  OhpdResult f = check_ohpd(forward.corpus, bank_sense_map(), bank_lexicon());
  OhpdResult b = check_ohpd(backward.corpus, bank_sense_map(), bank_lexicon());
  REQUIRE(f.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < f.instances.size(); ++i) {
    CHECK(f.instances[i].word == b.instances[i].word);
    CHECK(f.instances[i].document_id == b.instances[i].document_id);
    CHECK(f.instances[i].consistent() == b.instances[i].consistent());
  }
  CHECK(f.inconsistent == b.inconsistent);
}

TEST_CASE("splitting a consistent document keeps both halves consistent") {
  MiniDocs whole({{"d0",
                   {{"bank", "bank%1:14:00::"},
                    {"bank", "bank%1:14:01::"},
                    {"bank", "bank%1:14:00::"},
                    {"bank", "bank%1:14:01::"}}}});
  MiniDocs halves({{"d0", {{"bank", "bank%1:14:00::"}, {"bank", "bank%1:14:01::"}}},
                   {"d1", {{"bank", "bank%1:14:00::"}, {"bank", "bank%1:14:01::"}}}});
  OhpdResult w = check_ohpd(whole.corpus, bank_sense_map(), bank_lexicon());
  REQUIRE(w.inconsistent == 0);
  OhpdResult h = check_ohpd(halves.corpus, bank_sense_map(), bank_lexicon());
  CHECK(h.instances.size() == 2);
  CHECK(h.inconsistent == 0);
}

TEST_CASE("concatenating documents never removes an inconsistency") {
  MiniDocs separate({{"d0", {{"bank", "bank%1:14:00::"}, {"bank", "bank%1:17:00::"}}},
                     {"d1", {{"bank", "bank%1:14:00::"}}}});
  MiniDocs merged({{"d0",
                    {{"bank", "bank%1:14:00::"},
                     {"bank", "bank%1:17:00::"},
                     {"bank", "bank%1:14:00::"}}}});
  OhpdResult s = check_ohpd(separate.corpus, bank_sense_map(), bank_lexicon());
  OhpdResult m = check_ohpd(merged.corpus, bank_sense_map(), bank_lexicon());
  CHECK(s.inconsistent == 1);
  CHECK(m.inconsistent == 1);  // still there after the merge

  // merging two consistent docs of different homonyms creates one
  MiniDocs apart({{"d0", {{"bank", "bank%1:14:00::"}}},
                  {"d1", {{"bank", "bank%1:17:00::"}}}});
  MiniDocs together({{"d0", {{"bank", "bank%1:14:00::"}, {"bank", "bank%1:17:00::"}}}});
  CHECK(check_ohpd(apart.corpus, bank_sense_map(), bank_lexicon()).inconsistent == 0);
  CHECK(check_ohpd(together.corpus, bank_sense_map(), bank_lexicon()).inconsistent == 1);
}

TEST_CASE("unmapped tokens are skipped, conflicted tokens flagged and excluded") {
  MiniDocs md({{"d0",
                {{"bank", "bank%1:14:00::"},
                 {"bank", "bank%1:99:00::"},                  // unmapped key
                 {"bank", "bank%1:14:00:: bank%1:17:00::"}}}});  // straddles homonyms
  OhpdResult res = check_ohpd(md.corpus, bank_sense_map(), bank_lexicon());
  CHECK(res.skipped_unmapped == 1);
  CHECK(res.conflict_instance_ids == std::vector<std::string>{"d0.s2.t0"});
  REQUIRE(res.instances.size() == 1);
  // only the clean occurrence participates; the instance stays consistent
  CHECK(res.instances[0].occurrences.size() == 1);
  CHECK(res.instances[0].consistent());
  CHECK(res.inconsistent == 0);

  HypothesisReport rep = ohpd_report(res, "mini");
  CHECK(rep.details.at("skipped_unmapped") == 1);
  CHECK(rep.details.at("conflict_instances")[0] == "d0.s2.t0");
}

TEST_CASE("non-homonymous words stay out of the census") {
  Lexicon lex = bank_lexicon();
  lex.add_entry({"sole_fish", "sole", {Pos::Noun}, "Latin", "solea", "fish", "sole"});
  SenseMap smap = bank_sense_map();
  smap.add_mapping("sole%1:13:00::", "sole_fish");
  MiniDocs md({{"d0", {{"bank", "bank%1:14:00::"}, {"sole", "sole%1:13:00::"}}}});
  OhpdResult res = check_ohpd(md.corpus, smap, lex);
  REQUIRE(res.instances.size() == 1);
  CHECK(res.instances[0].word == kBank);
}

TEST_CASE("thread count changes nothing") {
  FixtureSpec spec;
  spec.seed = 33;
  spec.ohpd_rate = 0.3;
  FixtureSet fx = generate_fixtures(spec);
  testutil::TempDir tmp;
  Lexicon lex = Lexicon::load(tmp.write("r.tsv", fx.resource_tsv));
  SenseMap smap = SenseMap::load(tmp.write("m.tsv", fx.sense_map_tsv), lex);
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(tmp.write("c.xml", fx.corpus_xml),
                                                  tmp.write("c.key", fx.gold_key));
  OhpdResult t1 = check_ohpd(corpus, smap, lex, 1);
  OhpdResult t8 = check_ohpd(corpus, smap, lex, 8);
  std::string r1 = emit_report(ohpd_report(t1, "fx"), ReportFormat::Json);
  std::string r8 = emit_report(ohpd_report(t8, "fx"), ReportFormat::Json);
  CHECK(r1 == r8);
}
