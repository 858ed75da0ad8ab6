#ifndef HOMCHECK_TEXTNORM_HPP
#define HOMCHECK_TEXTNORM_HPP

#include <string>
#include <string_view>

namespace homcheck {

/// Unicode NFC followed by default lowercasing. Scripts without case pass
/// through unchanged; invalid UTF-8 bytes are replaced.
std::string nfc_lower(std::string_view s);

/// Lemma normalization used for all lemma keys: nfc_lower plus spaces
/// replaced by underscores (multiword lemmas become "single_out").
std::string normalize_lemma(std::string_view s);

/// Target-lemma normalization for translation comparison: nfc_lower only.
std::string normalize_target(std::string_view s);

}  // namespace homcheck

#endif
