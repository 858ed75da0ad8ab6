#include "doctest.h"

#include <algorithm>

#include "homcheck/errors.hpp"
#include "homcheck/corpus.hpp"
#include "temp.hpp"

using namespace homcheck;

namespace {

std::string wrap(const std::string& body, const std::string& source = "unit") {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<corpus source=\"" + source +
         "\">\n" + body + "</corpus>\n";
}

// 3 documents x 2 sentences with recurring lemmas; 7 instances, 4 word types,
// 5 distinct senses (hand-enumerated in the stats test below).
std::string three_doc_xml() {
  return wrap(
      "<text id=\"d0\">\n"
      "<sentence id=\"d0.s0\">\n"
      "<instance id=\"d0.s0.t0\" lemma=\"bank\" pos=\"NOUN\">Bank</instance>\n"
      "<wf lemma=\"of\" pos=\"ADP\">of</wf>\n"
      "<instance id=\"d0.s0.t2\" lemma=\"yard\" pos=\"NOUN\">yards</instance>\n"
      "</sentence>\n"
      "<sentence id=\"d0.s1\">\n"
      "<instance id=\"d0.s1.t0\" lemma=\"bank\" pos=\"NOUN\">banks</instance>\n"
      "</sentence>\n"
      "</text>\n"
      "<text id=\"d1\">\n"
      "<sentence id=\"d1.s0\">\n"
      "<instance id=\"d1.s0.t0\" lemma=\"run\" pos=\"VERB\">ran</instance>\n"
      "<wf lemma=\"the\" pos=\"DET\">the</wf>\n"
      "</sentence>\n"
      "<sentence id=\"d1.s1\">\n"
      "<instance id=\"d1.s1.t0\" lemma=\"bank\" pos=\"NOUN\">bank</instance>\n"
      "</sentence>\n"
      "</text>\n"
      "<text id=\"d2\">\n"
      "<sentence id=\"d2.s0\">\n"
      "<instance id=\"d2.s0.t0\" lemma=\"yard\" pos=\"NOUN\">yard</instance>\n"
      "</sentence>\n"
      "<sentence id=\"d2.s1\">\n"
      "<instance id=\"d2.s1.t0\" lemma=\"big\" pos=\"ADJ\">big</instance>\n"
      "</sentence>\n"
      "</text>\n");
}

std::string three_doc_gold() {
  return "d0.s0.t0 bank%1:14:00::\n"
         "d0.s0.t2 yard%1:23:00::\n"
         "d0.s1.t0 bank%1:17:00::\n"
         "d1.s0.t0 run%2:38:00::\n"
         "d1.s1.t0 bank%1:14:00::\n"
         "d2.s0.t0 yard%1:23:00::\n"
         "d2.s1.t0 big%3:00:01::\n";
}

}  // namespace

TEST_CASE("minimal corpus: one document, one sentence, one instance") {
  testutil::TempDir tmp;
  auto xml = tmp.write("c.xml", wrap("<text id=\"d0\">\n<sentence id=\"d0.s0\">\n"
                                     "<instance id=\"d0.s0.t0\" lemma=\"bank\" "
                                     "pos=\"NOUN\">bank</instance>\n"
                                     "</sentence>\n</text>\n"));
  auto gold = tmp.write("c.key", "d0.s0.t0 bank%1:14:00::\n");
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(xml, gold);
  CHECK(corpus.name() == "unit");
  CHECK(corpus.stats() == CorpusStats{1, 1, 1});
  REQUIRE(corpus.instances().size() == 1);
  const AnnotatedInstance& i = corpus.instances()[0];
  CHECK(i.instance_id == "d0.s0.t0");
  CHECK(i.document_id == "d0");
  CHECK(i.sentence_id == "d0.s0");
  CHECK(i.position == 0);
  CHECK(i.word() == Word{"bank", Pos::Noun});
  CHECK(i.gold_keys == std::vector<std::string>{"bank%1:14:00::"});
}

TEST_CASE("three-document fixture: hand-enumerated indices") {
  testutil::TempDir tmp;
  auto xml = tmp.write("c.xml", three_doc_xml());
  auto gold = tmp.write("c.key", three_doc_gold());
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(xml, gold);

  CHECK(corpus.documents().size() == 3);
  CHECK(corpus.stats() == CorpusStats{7, 4, 5});

  auto banks = corpus.instances_of({"bank", Pos::Noun});
  REQUIRE(banks.size() == 3);
  CHECK(banks[0]->instance_id == "d0.s0.t0");  // document order
  CHECK(banks[1]->instance_id == "d0.s1.t0");
  CHECK(banks[2]->instance_id == "d1.s1.t0");
  CHECK(corpus.instances_of({"yard", Pos::Noun}).size() == 2);
  CHECK(corpus.instances_of({"run", Pos::Verb}).size() == 1);
  CHECK(corpus.instances_of({"missing", Pos::Noun}).empty());

  const AnnotatedInstance* inst = corpus.instance("d1.s1.t0");
  REQUIRE(inst != nullptr);
  CHECK(inst->document_id == "d1");
  CHECK(corpus.instance("zzz") == nullptr);

  const Sentence* sent = corpus.sentence("d0.s1");
  REQUIRE(sent != nullptr);
  CHECK(sent->tokens.size() == 1);
  CHECK(corpus.sentence("d9.s9") == nullptr);
}

TEST_CASE("every instance is reachable by document walk") {
  testutil::TempDir tmp;
  auto xml = tmp.write("c.xml", three_doc_xml());
  auto gold = tmp.write("c.key", three_doc_gold());
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(xml, gold);

  std::uint64_t walked = 0;
  for (const Document& d : corpus.documents())
    for (const Sentence& s : d.sentences)
      for (std::size_t t = 0; t < s.tokens.size(); ++t)
        if (s.tokens[t].annotated()) {
          ++walked;
          const AnnotatedInstance* via = corpus.instance(s.tokens[t].instance_id);
          REQUIRE(via != nullptr);
          CHECK(via->document_id == d.id);
          CHECK(via->sentence_id == s.id);
          CHECK(via->position == t);
          CHECK(via->lemma == s.tokens[t].lemma);
        }
  CHECK(walked == corpus.instances().size());
}

TEST_CASE("corpus round-trips through the canonical dump") {
  testutil::TempDir tmp;
  auto xml = tmp.write("c.xml", three_doc_xml());
  auto gold = tmp.write("c.key", three_doc_gold());
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(xml, gold);

  auto xml2 = tmp.write("c2.xml", corpus.dump_xml());
  auto gold2 = tmp.write("c2.key", corpus.dump_gold());
  AnnotatedCorpus again = AnnotatedCorpus::parse(xml2, gold2);
  CHECK(again == corpus);
  CHECK(again.stats() == corpus.stats());
  CHECK(again.dump_xml() == corpus.dump_xml());
  CHECK(again.dump_gold() == corpus.dump_gold());
}

TEST_CASE("xml escaping survives the round-trip") {
  testutil::TempDir tmp;
  auto xml = tmp.write("c.xml", wrap("<text id=\"d0\">\n<sentence id=\"d0.s0\">\n"
                                     "<wf lemma=\"&amp;amp;\" pos=\"X\">&lt;&amp;&gt;</wf>\n"
                                     "<instance id=\"d0.s0.t1\" lemma=\"bank\" "
                                     "pos=\"NOUN\">\"bank\"</instance>\n"
                                     "</sentence>\n</text>\n"));
  auto gold = tmp.write("c.key", "d0.s0.t1 bank%1:14:00::\n");
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(xml, gold);
  CHECK(corpus.documents()[0].sentences[0].tokens[0].surface == "<&>");
  CHECK(corpus.documents()[0].sentences[0].tokens[0].lemma == "&amp;");

  auto xml2 = tmp.write("c2.xml", corpus.dump_xml());
  auto gold2 = tmp.write("c2.key", corpus.dump_gold());
  AnnotatedCorpus again = AnnotatedCorpus::parse(xml2, gold2);
  CHECK(again == corpus);
}

TEST_CASE("instances without gold keys are demoted and counted") {
  testutil::TempDir tmp;
  auto xml = tmp.write("c.xml", wrap("<text id=\"d0\">\n<sentence id=\"d0.s0\">\n"
                                     "<instance id=\"d0.s0.t0\" lemma=\"bank\" "
                                     "pos=\"NOUN\">bank</instance>\n"
                                     "<instance id=\"d0.s0.t1\" lemma=\"yard\" "
                                     "pos=\"NOUN\">yard</instance>\n"
                                     "</sentence>\n</text>\n"));
  auto gold = tmp.write("c.key", "d0.s0.t0 bank%1:14:00::\n");
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(xml, gold);
  CHECK(corpus.instances().size() == 1);
  CHECK(corpus.warnings().dropped_no_gold == 1);
  // the demoted token is still present as a plain word-form
  CHECK(corpus.documents()[0].sentences[0].tokens.size() == 2);
  CHECK_FALSE(corpus.documents()[0].sentences[0].tokens[1].annotated());
}

TEST_CASE("gold warnings: unknown ids, invalid keys, lemma mismatches") {
  testutil::TempDir tmp;
  auto xml = tmp.write("c.xml", wrap("<text id=\"d0\">\n<sentence id=\"d0.s0\">\n"
                                     "<instance id=\"d0.s0.t0\" lemma=\"bank\" "
                                     "pos=\"NOUN\">bank</instance>\n"
                                     "<instance id=\"d0.s0.t1\" lemma=\"yard\" "
                                     "pos=\"NOUN\">yard</instance>\n"
                                     "</sentence>\n</text>\n"));
  auto gold = tmp.write("c.key",
                        "d0.s0.t0 bank%1:14:00:: broken%9:00 run%2:38:00::\n"
                        "d0.s0.t1 yard%1:23:00::\n"
                        "d9.s9.t9 bank%1:14:00::\n");
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(xml, gold);
  CHECK(corpus.warnings().unknown_gold_ids == 1);
  CHECK(corpus.warnings().invalid_gold_keys == 1);   // broken%9:00
  CHECK(corpus.warnings().lemma_mismatch_keys == 1); // run% key on bank instance
  // mismatching key is kept: instance lemma stays authoritative
  CHECK(corpus.instance("d0.s0.t0")->gold_keys ==
        std::vector<std::string>{"bank%1:14:00::", "run%2:38:00::"});
}

TEST_CASE("structural errors are fatal with location") {
  testutil::TempDir tmp;
  auto gold = tmp.write("g.key", "");
  auto expect_parse_error = [&](const std::string& name, const std::string& body) {
    auto path = tmp.write(name, body);
    CHECK_THROWS_AS(AnnotatedCorpus::parse(path, gold), ParseError);
  };
  expect_parse_error("notxml.xml", "this is not xml");
  expect_parse_error("badroot.xml", "<root></root>");
  expect_parse_error("dupdoc.xml",
                     wrap("<text id=\"d0\"></text>\n<text id=\"d0\"></text>\n"));
  expect_parse_error("dupsent.xml",
                     wrap("<text id=\"d0\"><sentence id=\"d0.s0\"></sentence>"
                          "<sentence id=\"d0.s0\"></sentence></text>\n"));
  expect_parse_error("sentprefix.xml",
                     wrap("<text id=\"d0\"><sentence id=\"x.s0\"></sentence></text>\n"));
  expect_parse_error("instprefix.xml",
                     wrap("<text id=\"d0\"><sentence id=\"d0.s0\">"
                          "<instance id=\"d9.s9.t0\" lemma=\"a\" pos=\"NOUN\">a"
                          "</instance></sentence></text>\n"));
  expect_parse_error("nolemma.xml",
                     wrap("<text id=\"d0\"><sentence id=\"d0.s0\">"
                          "<wf pos=\"NOUN\">a</wf></sentence></text>\n"));
  expect_parse_error("closedclass.xml",
                     wrap("<text id=\"d0\"><sentence id=\"d0.s0\">"
                          "<instance id=\"d0.s0.t0\" lemma=\"the\" pos=\"DET\">the"
                          "</instance></sentence></text>\n"));
  try {
    // wrap() contributes two lines, so <bogus/> sits on line 4
    auto path = tmp.write("loc.xml", wrap("<text id=\"d0\">\n<bogus/>\n</text>\n"));
    AnnotatedCorpus::parse(path, gold);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":4:") != std::string::npos);
  }
}

TEST_CASE("alignment parsing: links, multiset counts, unknown drops") {
  testutil::TempDir tmp;
  auto xml = tmp.write("c.xml", three_doc_xml());
  auto gold = tmp.write("c.key", three_doc_gold());
  AnnotatedCorpus corpus = AnnotatedCorpus::parse(xml, gold);

  SUBCASE("single link") {
    auto a = AlignmentSet::parse(tmp.write("a.tsv", "d0.s0.t0\tgioco\n"), corpus);
    CHECK(a.link_count() == 1);
    CHECK(a.targets_of("d0.s0.t0") == std::vector<std::string>{"gioco"});
    CHECK(a.dropped_unknown() == 0);
  }
  SUBCASE("empty file") {
    auto a = AlignmentSet::parse(tmp.write("a.tsv", ""), corpus);
    CHECK(a.links().empty());
    CHECK(a.link_count() == 0);
  }
  SUBCASE("five links, one to an unknown id") {
    auto a = AlignmentSet::parse(tmp.write("a.tsv",
                                           "d0.s0.t0\tbanca\n"
                                           "d0.s1.t0\triva\n"
                                           "d1.s1.t0\tbanca\n"
                                           "d2.s0.t0\tcortile\n"
                                           "d9.s9.t9\tfantasma\n"),
                                 corpus);
    CHECK(a.link_count() == 4);
    CHECK(a.dropped_unknown() == 1);
  }
  SUBCASE("duplicate lines keep multiset counts") {
    auto a = AlignmentSet::parse(
        tmp.write("a.tsv", "d0.s0.t0\tbanca\nd0.s0.t0\tbanca\nd0.s0.t0\tBanca\n"),
        corpus);
    CHECK(a.link_count() == 3);  // case-folded target collapses to one key
    auto counted = a.counted_targets_of("d0.s0.t0");
    REQUIRE(counted.size() == 1);
    CHECK(counted[0] == std::pair<std::string, std::uint64_t>{"banca", 3});
  }
  SUBCASE("malformed line is an error with its number") {
    try {
      AlignmentSet::parse(tmp.write("a.tsv", "d0.s0.t0\tbanca\nonly-one-field\n"),
                          corpus);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
  }
}

TEST_CASE("clustering parse accepts disjoint clusters and rejects overlap") {
  testutil::TempDir tmp;
  SUBCASE("two disjoint clusters for one word") {
    auto c = SenseClustering::parse(
        tmp.write("cl.tsv",
                  "tap_blow\ttap\tn\ttap%1:04:00::,tap%1:04:01::\n"
                  "tap_faucet\ttap\tn\ttap%1:06:00::\n"));
    CHECK(c.clusters().size() == 2);
    auto of_tap = c.clusters_of({"tap", Pos::Noun});
    CHECK(of_tap.size() == 2);
    CHECK(c.clusters_of({"bank", Pos::Noun}).empty());
  }
  SUBCASE("singleton cluster") {
    auto c = SenseClustering::parse(
        tmp.write("cl.tsv", "one\ttap\tn\ttap%1:04:00::\n"));
    REQUIRE(c.clusters().size() == 1);
    CHECK(c.clusters()[0].sense_keys.size() == 1);
  }
  SUBCASE("same key in two clusters of one word") {
    try {
      SenseClustering::parse(
          tmp.write("cl.tsv",
                    "tap_a\ttap\tn\ttap%1:04:00::\n"
                    "tap_b\ttap\tn\ttap%1:04:00::,tap%1:06:00::\n"));
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      std::string msg = e.what();
      CHECK(msg.find("tap_a") != std::string::npos);
      CHECK(msg.find("tap_b") != std::string::npos);
    }
  }
  SUBCASE("same key for different words is not an overlap") {
    auto c = SenseClustering::parse(
        tmp.write("cl.tsv",
                  "tap_n\ttap\tn\ttap%1:04:00::\n"
                  "tap_v\ttap\tv\ttap%2:35:00::\n"));
    CHECK(c.clusters().size() == 2);
  }
  SUBCASE("duplicate cluster id rejected") {
    CHECK_THROWS_AS(SenseClustering::parse(tmp.write(
                        "cl.tsv",
                        "same\ttap\tn\ttap%1:04:00::\nsame\ttap\tn\ttap%1:06:00::\n")),
                    ValidationError);
  }
}

TEST_CASE("id map application") {
  testutil::TempDir tmp;
  SUBCASE("identity table") {
    IdMapTable t = IdMapTable::load(tmp.write("m.tsv",
                                              "a%1:00:00::\ta%1:00:00::\n"
                                              "b%1:00:00::\tb%1:00:00::\n"));
    IdMapOutcome out = apply_id_map(t, {"a%1:00:00::", "b%1:00:00::"});
    CHECK(out.renamed == std::set<std::string>{"a%1:00:00::", "b%1:00:00::"});
    CHECK(out.excluded_total() == 0);
  }
  SUBCASE("ten keys, three unmapped") {
    std::string rows;
    std::set<std::string> keys;
    for (int i = 0; i < 10; ++i) {
      std::string old_key = "k" + std::to_string(i) + "%1:00:00::";
      keys.insert(old_key);
      if (i < 7)
        rows += old_key + "\tnew" + std::to_string(i) + "%1:00:00::\n";
      else if (i < 9)
        rows += old_key + "\t\n";  // declared unmapped
      // i == 9: absent from the table entirely
    }
    IdMapTable t = IdMapTable::load(tmp.write("m.tsv", rows));
    IdMapOutcome out = apply_id_map(t, keys);
    CHECK(out.renamed.size() == 7);
    CHECK(out.excluded_declared.size() == 2);
    CHECK(out.excluded_absent.size() == 1);
    CHECK(out.excluded_total() == 3);
    CHECK(out.renamed.count("new0%1:00:00::") == 1);
  }
  SUBCASE("duplicate old key rejected") {
    CHECK_THROWS_AS(
        IdMapTable::load(tmp.write("m.tsv", "a\tx\na\ty\n")),
        ValidationError);
  }
}
