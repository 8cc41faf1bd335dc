#include "bnread/script.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "bnread/error.hpp"

namespace bnread::script {

namespace {

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error(std::string("ICU NFC normalizer unavailable: ") + u_errorName(status));
  }
  return *n;
}

// NFC keeps these as base + nukta (composition exclusions).
char32_t nukta_composite(char32_t base) {
  switch (base) {
    case 0x09A1: return 0x09DC;  // DDA -> RRA
    case 0x09A2: return 0x09DD;  // DDHA -> RHA
    case 0x09AF: return 0x09DF;  // YA -> YYA
    default: return 0;
  }
}

}  // namespace

std::string normalize(std::string_view utf8) {
  if (utf8.empty()) return {};
  UErrorCode status = U_ZERO_ERROR;
  auto src = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString out = nfc().normalize(src, status);
  if (U_FAILURE(status)) {
    throw InvalidInput(std::string("normalization failed: ") + u_errorName(status));
  }
  std::string composed;
  out.toUTF8String(composed);

  std::u32string scalars = to_scalars(composed);
  std::u32string result;
  result.reserve(scalars.size());
  for (char32_t c : scalars) {
    if (c == kNukta && !result.empty()) {
      if (char32_t comp = nukta_composite(result.back())) {
        result.back() = comp;
        continue;
      }
    }
    result.push_back(c);
  }
  return to_utf8(result);
}

CharClass classify_char(char32_t c) {
  if (c >= 0x0980 && c <= 0x09FF) {
    if ((c >= 0x0995 && c <= 0x09B9) || c == 0x09DC || c == 0x09DD || c == 0x09DF || c == 0x09CE) {
      return CharClass::Consonant;
    }
    if (c >= 0x0985 && c <= 0x0994) return CharClass::IndependentVowel;
    if ((c >= 0x09BE && c <= 0x09C4) || c == 0x09C7 || c == 0x09C8 || c == 0x09CB || c == 0x09CC ||
        c == 0x09D7) {
      return CharClass::VowelSign;
    }
    if (c == kVirama) return CharClass::Virama;
    if (c == kNukta) return CharClass::Nukta;
    if ((c >= 0x0981 && c <= 0x0983) || c == 0x09BD) return CharClass::OtherSign;
    if (c >= 0x09E6 && c <= 0x09EF) return CharClass::Digit;
    return CharClass::Other;
  }
  // Danda and double danda live in the Devanagari block.
  if (c == 0x0964 || c == 0x0965) return CharClass::Punctuation;
  if (c > 0x10FFFF) return CharClass::Other;
  const auto cp = static_cast<UChar32>(c);
  if (u_isUWhiteSpace(cp)) return CharClass::Whitespace;
  if (u_ispunct(cp)) return CharClass::Punctuation;
  // ASCII symbols ($+<=>^`|~) are Sm/Sc/Sk, not P*, but tokenize like punctuation.
  if (c < 0x80 && c > 0x20 && c != 0x7F && !u_isalnum(cp)) return CharClass::Punctuation;
  return CharClass::Other;
}

const char* to_string(CharClass c) {
  switch (c) {
    case CharClass::Consonant: return "Consonant";
    case CharClass::IndependentVowel: return "IndependentVowel";
    case CharClass::VowelSign: return "VowelSign";
    case CharClass::Virama: return "Virama";
    case CharClass::Nukta: return "Nukta";
    case CharClass::OtherSign: return "OtherSign";
    case CharClass::Digit: return "Digit";
    case CharClass::Whitespace: return "Whitespace";
    case CharClass::Punctuation: return "Punctuation";
    case CharClass::Other: return "Other";
  }
  return "Other";
}

std::u32string to_scalars(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
  }
  return out;
}

std::string to_utf8(std::u32string_view scalars) {
  std::string out;
  out.reserve(scalars.size() * 3);
  for (char32_t c : scalars) {
    if (c > 0x10FFFF || (c >= 0xD800 && c <= 0xDFFF)) c = U'\uFFFD';
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, static_cast<UChar32>(c));
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

std::size_t count_consonant_conjuncts(std::u32string_view w) {
  std::size_t count = 0;
  const std::size_t l = w.size();
  for (std::size_t k = 0; k < l; ++k) {
    if (w[k] != kVirama) continue;
    if (k < 1 || k + 1 >= l) continue;
    const bool joins_consonants = is_consonant(w[k - 1]) && is_consonant(w[k + 1]);
    if (k >= 2) {
      if (joins_consonants && w[k - 2] != kVirama) ++count;
    } else if (joins_consonants) {
      ++count;
    }
  }
  return count;
}

std::size_t estimate_syllables(std::u32string_view w) {
  if (w.empty()) throw InvalidInput("cannot estimate syllables of an empty word");
  std::size_t nuclei = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    switch (classify_char(w[i])) {
      case CharClass::IndependentVowel:
      case CharClass::VowelSign:
        ++nuclei;
        break;
      case CharClass::Consonant: {
        const bool muted = i + 1 < w.size() && (w[i + 1] == kVirama ||
                                                classify_char(w[i + 1]) == CharClass::VowelSign);
        if (!muted) ++nuclei;
        break;
      }
      default:
        break;
    }
  }
  return nuclei == 0 ? 1 : nuclei;
}

}  // namespace bnread::script
