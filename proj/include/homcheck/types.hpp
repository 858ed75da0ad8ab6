#ifndef HOMCHECK_TYPES_HPP
#define HOMCHECK_TYPES_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace homcheck {

/// The four open-class parts of speech used throughout.
enum class Pos : char { Noun = 'n', Verb = 'v', Adj = 'a', Adv = 'r' };

char pos_char(Pos p);
std::optional<Pos> pos_from_char(char c);

/// Maps a corpus POS tag (coarse "NOUN"/"VERB"/... or single-letter) to one of
/// the four open classes; nullopt for closed-class tags.
std::optional<Pos> pos_from_tag(std::string_view tag);

/// A lemma/POS pair. Lemmas are stored normalized: lowercase, with spaces in
/// multiword lemmas joined by underscores.
struct Word {
  std::string lemma;
  Pos pos = Pos::Noun;

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word& other) const {
    if (auto c = lemma <=> other.lemma; c != 0) return c;
    return pos_char(pos) <=> pos_char(other.pos);
  }
};

/// Rendered as "lemma#p", the form used in report instance keys.
std::string word_key(const Word& w);
std::optional<Word> word_from_key(std::string_view key);

/// A WordNet-style sense identifier: lemma%ss_type:lex_filenum:lex_id:head:head_id.
/// Validated on construction; the raw string is the identity used in maps.
class SenseKey {
 public:
  /// Throws std::invalid_argument when the shape constraints fail
  /// (exactly one '%', four ':' after it, ss_type in 1..5).
  static SenseKey parse(const std::string& raw);

  const std::string& str() const { return raw_; }
  /// Lemma embedded in the key, normalized like Word::lemma.
  const std::string& lemma() const { return lemma_; }
  int ss_type() const { return ss_type_; }
  /// 1->n 2->v 3->a 4->r 5->a (satellite adjectives fold into 'a').
  Pos pos() const;

  bool operator==(const SenseKey& o) const { return raw_ == o.raw_; }
  auto operator<=>(const SenseKey& o) const { return raw_ <=> o.raw_; }

 private:
  SenseKey() = default;
  std::string raw_;
  std::string lemma_;
  int ss_type_ = 0;
};

}  // namespace homcheck

#endif
