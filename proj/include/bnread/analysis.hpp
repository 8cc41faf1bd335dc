#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnread/classifier.hpp"
#include "bnread/formulas.hpp"
#include "bnread/lexicon.hpp"
#include "bnread/tokenize.hpp"

namespace bnread {

enum class Rating { VeryEasy, Easy, Medium, Difficult, VeryDifficult };

const char* rating_name(Rating r);

/// Throws InvalidInput when score is outside [0, 1].
Rating rating_for(double score, const RatingBands& bands = ReadabilityConfig::defaults().rating);

struct SentenceVerdict {
  std::string text;
  Label label = Label::Simple;
  double probability = 0.0;  // of the predicted label
};

struct DocumentAnalysis {
  std::vector<SentenceVerdict> sentences;
  std::size_t simple_count = 0;
  std::size_t total_count = 0;
  double readability_score = 0.0;  // simple_count / total_count
  Rating rating = Rating::VeryDifficult;
  TextStats stats;
  ScoreReport report;
  // ARI drives the reader-age estimate.
  bool ari_applicable = false;
  int ari_score = 0;
  AgeRange age;
};

/// Normalizes the text, classifies every sentence and scores the document.
/// Throws InvalidInput for a document without sentences and ModelError
/// when no model is given.
DocumentAnalysis analyze_document(std::string_view text, const NGramModel* model, const Lexicons& lexicons,
                                  const ReadabilityConfig& config = ReadabilityConfig::defaults());

/// Bangladeshi reader age for a grade: "Class 1".."Class 12" (age n+5),
/// "Class 9/10", "Class 11/12", "children" (6-10), "adults" (>=18).
/// Case-insensitive; a trailing index ("Children 2") is accepted.
AgeRange bn_age_for_grade(std::string_view descriptor);

struct GradedDocument {
  std::string name;
  std::string text;
  AgeRange bn_age;
};

struct DocumentEvaluation {
  std::string name;
  AgeRange bn_age;
  TextStats stats;
  ScoreReport report;
  std::array<bool, 6> correct{};
};

struct FormulaTally {
  std::size_t correct = 0;
  std::size_t total = 0;
};

struct FormulaEvaluation {
  std::vector<DocumentEvaluation> documents;
  std::array<FormulaTally, 6> tally{};

  const FormulaTally& operator[](Formula f) const { return tally[static_cast<std::size_t>(f)]; }
};

/// A formula is correct on a document iff its U.S. age range intersects
/// the document's BN age; inapplicable formulas count as incorrect.
FormulaEvaluation evaluate_formulas(std::span<const GradedDocument> docs, const Lexicons& lexicons,
                                    const ReadabilityConfig& config = ReadabilityConfig::defaults());

}  // namespace bnread
