#pragma once

// Bengali script primitives. All counting operates on Unicode scalar values
// of normalized text.

#include <cstddef>
#include <string>
#include <string_view>

namespace bnread::script {

enum class CharClass {
  Consonant,
  IndependentVowel,
  VowelSign,
  Virama,
  Nukta,
  OtherSign,
  Digit,
  Whitespace,
  Punctuation,
  Other,
};

inline constexpr char32_t kVirama = U'\u09CD';
inline constexpr char32_t kNukta = U'\u09BC';

/// Canonical composition (NFC) of UTF-8 text, with the nukta consonants
/// RRA, RHA and YYA recomposed to their single-scalar forms. Invalid UTF-8
/// sequences are replaced by U+FFFD. Idempotent.
std::string normalize(std::string_view utf8);

CharClass classify_char(char32_t c);

inline bool is_consonant(char32_t c) { return classify_char(c) == CharClass::Consonant; }
inline bool is_whitespace(char32_t c) { return classify_char(c) == CharClass::Whitespace; }
inline bool is_punctuation(char32_t c) { return classify_char(c) == CharClass::Punctuation; }

const char* to_string(CharClass c);

// UTF-8 <-> scalar sequence. Ill-formed input decodes to U+FFFD.
std::u32string to_scalars(std::string_view utf8);
std::string to_utf8(std::u32string_view scalars);

/// Consonant conjunct count of a single word. A virama at k counts when it
/// sits between two consonants and the scalar at k-2 (if any) is not itself
/// a virama, so a chain C+V+C+V+C counts once.
std::size_t count_consonant_conjuncts(std::u32string_view word);

/// Heuristic syllable count: vowel nuclei plus consonants that keep their
/// inherent vowel (not directly followed by a virama or vowel sign).
/// Throws InvalidInput on an empty word.
std::size_t estimate_syllables(std::u32string_view word);

}  // namespace bnread::script
