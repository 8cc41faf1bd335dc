#include "bnread/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "bnread/error.hpp"
#include "bnread/script.hpp"

namespace bnread {

const char* rating_name(Rating r) {
  switch (r) {
    case Rating::VeryEasy: return "very_easy";
    case Rating::Easy: return "easy";
    case Rating::Medium: return "medium";
    case Rating::Difficult: return "difficult";
    case Rating::VeryDifficult: return "very_difficult";
  }
  return "very_difficult";
}

Rating rating_for(double score, const RatingBands& bands) {
  if (!(score >= 0.0 && score <= 1.0)) throw InvalidInput("readability score must be in [0, 1]");
  if (score >= bands.very_easy) return Rating::VeryEasy;
  if (score >= bands.easy) return Rating::Easy;
  if (score >= bands.medium) return Rating::Medium;
  if (score >= bands.difficult) return Rating::Difficult;
  return Rating::VeryDifficult;
}

DocumentAnalysis analyze_document(std::string_view text, const NGramModel* model, const Lexicons& lexicons,
                                  const ReadabilityConfig& config) {
  if (model == nullptr) throw ModelError("no classifier model loaded");
  const std::string normalized = script::normalize(text);
  const auto sentences = split_sentences(normalized);
  if (sentences.empty()) throw InvalidInput("document contains no sentences");

  DocumentAnalysis a;
  a.sentences.reserve(sentences.size());
  for (const auto& s : sentences) {
    const Prediction p = model->predict(s);
    a.sentences.push_back({s, p.label, p.probability_of(p.label)});
    if (p.label == Label::Simple) ++a.simple_count;
  }
  a.total_count = a.sentences.size();
  a.readability_score = static_cast<double>(a.simple_count) / static_cast<double>(a.total_count);
  a.rating = rating_for(a.readability_score, config.rating);

  a.stats = compute_stats(normalized, lexicons);
  a.report = score_report(a.stats, config);
  const FormulaResult& ari_result = a.report[Formula::ARI];
  a.ari_applicable = ari_result.applicable;
  a.ari_score = ari_result.applicable ? static_cast<int>(ari_result.score) : 0;
  a.age = ari_result.age;
  return a;
}

AgeRange bn_age_for_grade(std::string_view descriptor) {
  std::string d;
  for (char c : descriptor) d.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  const auto first = d.find_first_not_of(" \t");
  const auto last = d.find_last_not_of(" \t");
  const auto bad = [&] { return InvalidInput("unknown grade descriptor '" + std::string(descriptor) + "'"); };
  if (first == std::string::npos) throw bad();
  d = d.substr(first, last - first + 1);

  auto starts = [&](std::string_view p) { return d.rfind(p, 0) == 0; };
  auto index_suffix_ok = [&](std::size_t from) {
    // nothing, or whitespace followed by digits
    std::string_view rest = std::string_view(d).substr(from);
    if (rest.empty()) return true;
    if (rest.front() != ' ') return false;
    rest.remove_prefix(1);
    return !rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (starts("children") && index_suffix_ok(8)) return AgeRange::between(6, 10);
  if (starts("adults") && index_suffix_ok(6)) return AgeRange::at_least(18);
  if (starts("adult") && index_suffix_ok(5)) return AgeRange::at_least(18);

  if (!starts("class ")) throw bad();
  const std::string_view grade = std::string_view(d).substr(6);
  if (grade == "9/10") return AgeRange::between(14, 15);
  if (grade == "11/12") return AgeRange::between(16, 17);
  int n = 0;
  const auto [end, ec] = std::from_chars(grade.data(), grade.data() + grade.size(), n);
  if (ec != std::errc() || end != grade.data() + grade.size() || n < 1 || n > 12) throw bad();
  return AgeRange::exactly(n + 5);
}

FormulaEvaluation evaluate_formulas(std::span<const GradedDocument> docs, const Lexicons& lexicons,
                                    const ReadabilityConfig& config) {
  if (docs.empty()) throw InvalidInput("no documents to evaluate");
  FormulaEvaluation out;
  for (const auto& doc : docs) {
    if (!doc.bn_age.defined) throw InvalidInput("document '" + doc.name + "' has no BN age");
    DocumentEvaluation e;
    e.name = doc.name;
    e.bn_age = doc.bn_age;
    e.stats = compute_stats(script::normalize(doc.text), lexicons);
    e.report = score_report(e.stats, config);
    for (Formula f : kAllFormulas) {
      const auto i = static_cast<std::size_t>(f);
      const FormulaResult& r = e.report[f];
      e.correct[i] = r.applicable && r.age.intersects(doc.bn_age);
      ++out.tally[i].total;
      if (e.correct[i]) ++out.tally[i].correct;
    }
    out.documents.push_back(std::move(e));
  }
  return out;
}

}  // namespace bnread
