#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bnread/lexicon.hpp"

namespace bnread {

/// Every count the readability formulas consume.
struct TextStats {
  std::size_t sentence_count = 0;
  std::size_t word_count = 0;
  std::size_t char_count = 0;  // word scalars minus whitespace/punctuation
  std::size_t syllable_count = 0;
  std::size_t polysyllable_word_count = 0;  // >= 3 syllables
  std::size_t complex_word_count = 0;       // polysyllabic and not a proper noun
  std::size_t difficult_word_count = 0;     // not on the easy-word list
  std::size_t conjunct_count = 0;

  bool operator==(const TextStats&) const = default;
};

/// Splits on danda, double danda, '?', '!' and on '.' when followed by
/// whitespace or end of text. Terminators are dropped, segments trimmed,
/// empty segments discarded.
std::vector<std::string> split_sentences(std::string_view text);

/// Whitespace tokenization with leading/trailing punctuation stripped.
std::vector<std::u32string> split_words(std::string_view sentence);

/// Scalar count including whitespace (the CL feature).
std::size_t char_length(std::string_view sentence);

/// Sum of per-word conjunct counts (the CC feature).
std::size_t sentence_conjunct_count(std::string_view sentence);

TextStats compute_stats(std::string_view text, const SyllableDict& dict, const WordSet& easy,
                        const WordSet& proper);

inline TextStats compute_stats(std::string_view text, const Lexicons& lex) {
  return compute_stats(text, lex.syllables, lex.easy_words, lex.proper_nouns);
}

}  // namespace bnread
