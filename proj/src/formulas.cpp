#include "bnread/formulas.hpp"

#include <cmath>

#include "bnread/error.hpp"

namespace bnread {

namespace {

void require_text(const TextStats& s) {
  if (s.sentence_count == 0) throw NotApplicable("no sentences");
  if (s.word_count == 0) throw NotApplicable("no words");
}

double words_per_sentence(const TextStats& s) {
  return static_cast<double>(s.word_count) / static_cast<double>(s.sentence_count);
}

double per_word(std::size_t n, const TextStats& s) {
  return static_cast<double>(n) / static_cast<double>(s.word_count);
}

}  // namespace

const char* formula_key(Formula f) {
  switch (f) {
    case Formula::ARI: return "ari";
    case Formula::FleschReadingEase: return "fe";
    case Formula::FleschKincaid: return "fk";
    case Formula::GunningFog: return "gf";
    case Formula::Smog: return "smog";
    case Formula::DaleChall: return "dc";
  }
  return "?";
}

std::optional<Formula> formula_from_key(std::string_view key) {
  for (Formula f : kAllFormulas) {
    if (key == formula_key(f)) return f;
  }
  return std::nullopt;
}

int ari(const TextStats& s) {
  require_text(s);
  const double raw = 4.71 * per_word(s.char_count, s) + 0.5 * words_per_sentence(s) - 21.43;
  // Values within rounding noise of an integer are that integer.
  return static_cast<int>(std::ceil(raw - 1e-9));
}

double flesch_reading_ease(const TextStats& s) {
  require_text(s);
  return 206.835 - 1.015 * words_per_sentence(s) - 84.6 * per_word(s.syllable_count, s);
}

double flesch_kincaid(const TextStats& s) {
  require_text(s);
  return 0.39 * words_per_sentence(s) + 11.8 * per_word(s.syllable_count, s) - 15.59;
}

double gunning_fog(const TextStats& s) {
  require_text(s);
  return 0.4 * (words_per_sentence(s) + 100.0 * per_word(s.complex_word_count, s));
}

double smog(const TextStats& s) {
  if (s.sentence_count < kSmogMinSentences) {
    throw NotApplicable("SMOG requires at least 30 sentences");
  }
  return 1.0430 * std::sqrt(static_cast<double>(s.polysyllable_word_count) * 30.0 /
                            static_cast<double>(s.sentence_count)) +
         3.1291;
}

double dale_chall(const TextStats& s) {
  require_text(s);
  double score = 0.1579 * (100.0 * per_word(s.difficult_word_count, s)) + 0.0496 * words_per_sentence(s);
  // difficult/words > 5%, compared exactly in integers.
  if (s.difficult_word_count * 20 > s.word_count) score += 3.6365;
  return score;
}

AgeRange age_range_for(Formula f, double score, const ReadabilityConfig& config) {
  return config.table(f).lookup(score);
}

ScoreReport score_report(const TextStats& stats, const ReadabilityConfig& config) {
  ScoreReport report;
  for (Formula f : kAllFormulas) {
    FormulaResult& r = report.results[static_cast<std::size_t>(f)];
    r.formula = f;
    try {
      switch (f) {
        case Formula::ARI: r.score = ari(stats); break;
        case Formula::FleschReadingEase: r.score = flesch_reading_ease(stats); break;
        case Formula::FleschKincaid: r.score = flesch_kincaid(stats); break;
        case Formula::GunningFog: r.score = gunning_fog(stats); break;
        case Formula::Smog: r.score = smog(stats); break;
        case Formula::DaleChall: r.score = dale_chall(stats); break;
      }
      if (!std::isfinite(r.score)) throw NotApplicable("non-finite score");
      r.applicable = true;
      r.age = age_range_for(f, r.score, config);
    } catch (const NotApplicable& e) {
      r.applicable = false;
      r.score = 0.0;
      r.reason = e.what();
      r.age = AgeRange::undefined();
    }
  }
  return report;
}

}  // namespace bnread
