#include "bnread/tokenize.hpp"

#include "bnread/script.hpp"

namespace bnread {

namespace {

std::u32string_view trim_whitespace(std::u32string_view s) {
  std::size_t first = 0;
  while (first < s.size() && script::is_whitespace(s[first])) ++first;
  std::size_t last = s.size();
  while (last > first && script::is_whitespace(s[last - 1])) --last;
  return s.substr(first, last - first);
}

bool is_terminator(std::u32string_view text, std::size_t i) {
  switch (text[i]) {
    case U'\u0964':
    case U'\u0965':
    case U'?':
    case U'!':
      return true;
    case U'.':
      return i + 1 == text.size() || script::is_whitespace(text[i + 1]);
    default:
      return false;
  }
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  const std::u32string scalars = script::to_scalars(text);
  const std::u32string_view view(scalars);
  std::vector<std::string> sentences;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    auto segment = trim_whitespace(view.substr(start, end - start));
    if (!segment.empty()) sentences.push_back(script::to_utf8(segment));
  };
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (is_terminator(view, i)) {
      flush(i);
      start = i + 1;
    }
  }
  flush(view.size());
  return sentences;
}

std::vector<std::u32string> split_words(std::string_view sentence) {
  const std::u32string scalars = script::to_scalars(sentence);
  std::vector<std::u32string> words;
  std::size_t i = 0;
  while (i < scalars.size()) {
    while (i < scalars.size() && script::is_whitespace(scalars[i])) ++i;
    std::size_t end = i;
    while (end < scalars.size() && !script::is_whitespace(scalars[end])) ++end;
    std::size_t first = i;
    std::size_t last = end;
    while (first < last && script::is_punctuation(scalars[first])) ++first;
    while (last > first && script::is_punctuation(scalars[last - 1])) --last;
    if (first < last) words.emplace_back(scalars, first, last - first);
    i = end;
  }
  return words;
}

std::size_t char_length(std::string_view sentence) { return script::to_scalars(sentence).size(); }

std::size_t sentence_conjunct_count(std::string_view sentence) {
  std::size_t total = 0;
  for (const auto& w : split_words(sentence)) total += script::count_consonant_conjuncts(w);
  return total;
}

TextStats compute_stats(std::string_view text, const SyllableDict& dict, const WordSet& easy,
                        const WordSet& proper) {
  TextStats stats;
  for (const auto& sentence : split_sentences(text)) {
    ++stats.sentence_count;
    for (const auto& word : split_words(sentence)) {
      ++stats.word_count;
      for (char32_t c : word) {
        if (!script::is_whitespace(c) && !script::is_punctuation(c)) ++stats.char_count;
      }
      const std::size_t syl = syllables(dict, word);
      stats.syllable_count += syl;
      if (syl >= 3) {
        ++stats.polysyllable_word_count;
        if (!proper.contains(word)) ++stats.complex_word_count;
      }
      if (!easy.contains(word)) ++stats.difficult_word_count;
      stats.conjunct_count += script::count_consonant_conjuncts(word);
    }
  }
  return stats;
}

}  // namespace bnread
