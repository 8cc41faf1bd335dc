#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace bnread {

enum class Label { Simple = 0, Complex = 1 };

inline const char* label_name(Label l) { return l == Label::Simple ? "simple" : "complex"; }

inline std::optional<Label> parse_label(std::string_view s) {
  if (s == "simple") return Label::Simple;
  if (s == "complex") return Label::Complex;
  return std::nullopt;
}

enum class Split { Unassigned, Train, Dev, Test };

inline const char* split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
    case Split::Unassigned: break;
  }
  return "unassigned";
}

struct LabeledSentence {
  std::string text;  // normalized, nonempty
  Label label = Label::Simple;
  std::string source;
  Split split = Split::Unassigned;
};

}  // namespace bnread
