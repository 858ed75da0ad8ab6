#include "doctest.h"

#include "homcheck/textnorm.hpp"

using namespace homcheck;

TEST_CASE("nfc_lower lowercases and composes") {
  CHECK(nfc_lower("BANK") == "bank");
  CHECK(nfc_lower("bank") == "bank");
  CHECK(nfc_lower("") == "");
  // decomposed e + combining acute composes to precomposed e-acute
  CHECK(nfc_lower("e\xcc\x81") == "\xc3\xa9");
  CHECK(nfc_lower("Caf\x65\xcc\x81") == "caf\xc3\xa9");
  // root-locale casing: no Turkish dotless-i surprises for plain ASCII I
  CHECK(nfc_lower("I") == "i");
  CHECK(nfc_lower("\xc3\x89") == "\xc3\xa9");  // É -> é
}

TEST_CASE("normalize_lemma maps spaces to underscores") {
  CHECK(normalize_lemma("Sense Key") == "sense_key");
  CHECK(normalize_lemma("spick-and-span") == "spick-and-span");
  CHECK(normalize_lemma("a b c") == "a_b_c");
  CHECK(normalize_lemma("already_joined") == "already_joined");
}

TEST_CASE("normalize_target is case and composition folding only") {
  CHECK(normalize_target("Gioco") == "gioco");
  CHECK(normalize_target("due parole") == "due parole");  // spaces kept
  CHECK(normalize_target("PORT\xc3\x89\x45") == "port\xc3\xa9\x65");
}

TEST_CASE("normalization is idempotent") {
  for (const char* s : {"BANK", "e\xcc\x81", "Sense Key", "gioco"}) {
    CHECK(nfc_lower(nfc_lower(s)) == nfc_lower(s));
    CHECK(normalize_lemma(normalize_lemma(s)) == normalize_lemma(s));
  }
}
