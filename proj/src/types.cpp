#include "homcheck/types.hpp"

#include <stdexcept>

#include "homcheck/textnorm.hpp"

namespace homcheck {

char pos_char(Pos p) { return static_cast<char>(p); }

std::optional<Pos> pos_from_char(char c) {
  switch (c) {
    case 'n': return Pos::Noun;
    case 'v': return Pos::Verb;
    case 'a': return Pos::Adj;
    case 'r': return Pos::Adv;
    default: return std::nullopt;
  }
}

std::optional<Pos> pos_from_tag(std::string_view tag) {
  if (tag == "NOUN" || tag == "N") return Pos::Noun;
  if (tag == "VERB" || tag == "V") return Pos::Verb;
  if (tag == "ADJ" || tag == "J" || tag == "A") return Pos::Adj;
  if (tag == "ADV" || tag == "R") return Pos::Adv;
  if (tag.size() == 1) return pos_from_char(tag[0]);
  return std::nullopt;
}

std::string word_key(const Word& w) {
  std::string k = w.lemma;
  k += '#';
  k += pos_char(w.pos);
  return k;
}

std::optional<Word> word_from_key(std::string_view key) {
  if (key.size() < 3 || key[key.size() - 2] != '#') return std::nullopt;
  auto p = pos_from_char(key.back());
  if (!p) return std::nullopt;
  return Word{std::string(key.substr(0, key.size() - 2)), *p};
}

SenseKey SenseKey::parse(const std::string& raw) {
  auto pct = raw.find('%');
  if (pct == std::string::npos || pct == 0)
    throw std::invalid_argument("sense key lacks lemma%...: '" + raw + "'");
  if (raw.find('%', pct + 1) != std::string::npos)
    throw std::invalid_argument("sense key has more than one '%': '" + raw + "'");
  std::string tail = raw.substr(pct + 1);
  int colons = 0;
  for (char c : tail)
    if (c == ':') ++colons;
  if (colons != 4)
    throw std::invalid_argument("sense key needs 4 ':' after '%': '" + raw + "'");
  auto c1 = tail.find(':');
  std::string ss = tail.substr(0, c1);
  if (ss.size() != 1 || ss[0] < '1' || ss[0] > '5')
    throw std::invalid_argument("sense key ss_type must be 1..5: '" + raw + "'");
  SenseKey k;
  k.raw_ = raw;
  k.lemma_ = normalize_lemma(raw.substr(0, pct));
  k.ss_type_ = ss[0] - '0';
  return k;
}

Pos SenseKey::pos() const {
  switch (ss_type_) {
    case 1: return Pos::Noun;
    case 2: return Pos::Verb;
    case 3: return Pos::Adj;
    case 4: return Pos::Adv;
    default: return Pos::Adj;  // 5: satellite adjective
  }
}

}  // namespace homcheck
