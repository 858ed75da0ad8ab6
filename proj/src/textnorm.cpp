#include "homcheck/textnorm.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

namespace homcheck {

std::string nfc_lower(std::string_view s) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString composed;
  if (U_SUCCESS(status) && nfc != nullptr) {
    composed = nfc->normalize(u, status);
    if (U_FAILURE(status)) composed = u;
  } else {
    composed = u;
  }
  composed.toLower(icu::Locale::getRoot());
  std::string out;
  composed.toUTF8String(out);
  return out;
}

std::string normalize_lemma(std::string_view s) {
  std::string out = nfc_lower(s);
  for (char& c : out)
    if (c == ' ') c = '_';
  return out;
}

std::string normalize_target(std::string_view s) { return nfc_lower(s); }

}  // namespace homcheck
