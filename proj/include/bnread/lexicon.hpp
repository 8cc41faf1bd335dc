#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>

namespace bnread {

/// Word -> syllable count, keyed by normalized surface form.
///
/// File format is UTF-8 TSV, one `word<TAB>count` per line. Lines starting
/// with `#` and blank lines are skipped. A later line for the same word
/// overrides an earlier one.
class SyllableDict {
 public:
  SyllableDict() = default;

  static SyllableDict load(const std::filesystem::path& path);
  static SyllableDict parse(std::istream& in);
  void save(const std::filesystem::path& path) const;

  /// Inserts or replaces an entry. The word is normalized; it must be
  /// nonempty, whitespace-free, and count must be >= 1.
  void insert(std::string_view word, std::size_t count);

  std::optional<std::size_t> lookup(std::u32string_view word) const;
  std::size_t entry_count() const noexcept { return entries_.size(); }
  const std::map<std::string, std::size_t>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::size_t> entries_;
};

/// Dictionary count when present, otherwise the script heuristic.
/// Throws InvalidInput for an empty word.
std::size_t syllables(const SyllableDict& dict, std::u32string_view word);

enum class WordListRole { EasyWords, ProperNouns };

class WordSet {
 public:
  explicit WordSet(WordListRole role = WordListRole::EasyWords) : role_(role) {}

  static WordSet load(const std::filesystem::path& path, WordListRole role);
  static WordSet parse(std::istream& in, WordListRole role);

  void insert(std::string_view word);
  /// The query is normalized before the exact-match test.
  bool contains(std::u32string_view word) const;
  bool contains(std::string_view utf8_word) const;

  std::size_t size() const noexcept { return words_.size(); }
  WordListRole role() const noexcept { return role_; }

 private:
  WordListRole role_;
  std::unordered_set<std::string> words_;
};

/// The three resources the formulas consume. Proper nouns default to empty.
struct Lexicons {
  SyllableDict syllables;
  WordSet easy_words{WordListRole::EasyWords};
  WordSet proper_nouns{WordListRole::ProperNouns};
};

}  // namespace bnread
