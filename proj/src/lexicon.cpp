#include "bnread/lexicon.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "bnread/error.hpp"
#include "bnread/script.hpp"

namespace bnread {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool has_whitespace(std::u32string_view word) {
  for (char32_t c : word) {
    if (script::is_whitespace(c)) return true;
  }
  return false;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

SyllableDict SyllableDict::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse(in);
}

SyllableDict SyllableDict::parse(std::istream& in) {
  SyllableDict dict;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("missing tab separator", line_no);
    const std::string_view word(line.data(), tab);
    const std::string_view count_text = trim(std::string_view(line).substr(tab + 1));
    long long count = 0;
    const auto [end, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || end != count_text.data() + count_text.size() || count_text.empty()) {
      throw ParseError("syllable count is not an integer", line_no);
    }
    if (count < 1) throw ParseError("syllable count must be >= 1", line_no);
    try {
      dict.insert(word, static_cast<std::size_t>(count));
    } catch (const InvalidInput& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return dict;
}

void SyllableDict::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& [word, count] : entries_) out << word << '\t' << count << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

void SyllableDict::insert(std::string_view word, std::size_t count) {
  std::string key = script::normalize(word);
  if (key.empty()) throw InvalidInput("empty dictionary word");
  if (has_whitespace(script::to_scalars(key))) throw InvalidInput("dictionary word contains whitespace");
  if (count < 1) throw InvalidInput("syllable count must be >= 1");
  entries_[std::move(key)] = count;
}

std::optional<std::size_t> SyllableDict::lookup(std::u32string_view word) const {
  auto it = entries_.find(script::normalize(script::to_utf8(word)));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::size_t syllables(const SyllableDict& dict, std::u32string_view word) {
  if (word.empty()) throw InvalidInput("cannot count syllables of an empty word");
  if (auto hit = dict.lookup(word)) return *hit;
  return script::estimate_syllables(word);
}

WordSet WordSet::load(const std::filesystem::path& path, WordListRole role) {
  auto in = open_input(path);
  return parse(in, role);
}

WordSet WordSet::parse(std::istream& in, WordListRole role) {
  WordSet set(role);
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    const auto word = trim(line);
    if (word.empty()) continue;
    set.insert(word);
  }
  return set;
}

void WordSet::insert(std::string_view word) {
  std::string key = script::normalize(word);
  if (!key.empty()) words_.insert(std::move(key));
}

bool WordSet::contains(std::u32string_view word) const {
  return contains(std::string_view(script::to_utf8(word)));
}

bool WordSet::contains(std::string_view utf8_word) const {
  return words_.count(script::normalize(utf8_word)) != 0;
}

}  // namespace bnread
