#pragma once

#include <array>
#include <iosfwd>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bnread/tokenize.hpp"

namespace bnread {

enum class Formula { ARI, FleschReadingEase, FleschKincaid, GunningFog, Smog, DaleChall };

inline constexpr std::array<Formula, 6> kAllFormulas = {
    Formula::ARI,        Formula::FleschReadingEase, Formula::FleschKincaid,
    Formula::GunningFog, Formula::Smog,              Formula::DaleChall,
};

/// Short lowercase key: ari, fe, fk, gf, smog, dc.
const char* formula_key(Formula f);
std::optional<Formula> formula_from_key(std::string_view key);

/// Reader age interval in whole years. Unbounded ends are std::nullopt.
/// `label` is the rendered form ("5-6", "≥21", "≥19-20", "-").
struct AgeRange {
  bool defined = false;
  std::optional<int> lower;
  std::optional<int> upper;
  std::string label = "-";

  static AgeRange undefined();
  static AgeRange exactly(int age);
  static AgeRange between(int lower, int upper);
  static AgeRange at_least(int lower);
  static AgeRange at_most(int upper);

  /// Closed-interval overlap; undefined ranges never intersect.
  bool intersects(const AgeRange& other) const;

  bool operator==(const AgeRange&) const = default;
};

/// Parses "5-6", "6", ">=21" / "≥21", ">=19-20", "<=10" / "≤10", "-".
AgeRange parse_age_label(std::string_view text);

// --- Raw formulas. Each throws NotApplicable on zero denominators. ---

int ari(const TextStats& s);
double flesch_reading_ease(const TextStats& s);
double flesch_kincaid(const TextStats& s);
double gunning_fog(const TextStats& s);
/// Requires at least kSmogMinSentences sentences.
double smog(const TextStats& s);
double dale_chall(const TextStats& s);

inline constexpr std::size_t kSmogMinSentences = 30;

// --- Score -> U.S. age band tables. ---

enum class Quantize { None, Ceil, Round };

/// One band covers [from, next band's from). The first band starts at -inf.
/// Linear bands map a quantized score q to the age range (q+lo)-(q+hi).
struct Band {
  double from = 0.0;
  bool linear = false;
  AgeRange fixed;
  int linear_lower = 0;
  int linear_upper = 0;
};

struct BandTable {
  Quantize quantize = Quantize::None;
  std::vector<Band> bands;

  AgeRange lookup(double score) const;
};

struct RatingBands {
  double very_easy = 0.9;
  double easy = 0.7;
  double medium = 0.5;
  double difficult = 0.3;
};

/// Band tables and rating thresholds, loadable from a key=value file.
struct ReadabilityConfig {
  int version = 1;
  std::array<BandTable, 6> bands;
  RatingBands rating;

  const BandTable& table(Formula f) const { return bands[static_cast<std::size_t>(f)]; }

  static const ReadabilityConfig& defaults();
  static ReadabilityConfig parse(std::istream& in);
  static ReadabilityConfig parse(std::string_view text);
  static ReadabilityConfig load(const std::filesystem::path& path);
};

/// Text of the built-in configuration (also shipped as data/bands.conf).
std::string_view default_config_text();

AgeRange age_range_for(Formula f, double score,
                       const ReadabilityConfig& config = ReadabilityConfig::defaults());

struct FormulaResult {
  Formula formula = Formula::ARI;
  bool applicable = false;
  double score = 0.0;
  std::string reason;  // set when not applicable
  AgeRange age;
};

struct ScoreReport {
  std::array<FormulaResult, 6> results;

  const FormulaResult& operator[](Formula f) const { return results[static_cast<std::size_t>(f)]; }
};

/// Runs all six formulas; failures become applicable = false. Never throws.
ScoreReport score_report(const TextStats& stats,
                         const ReadabilityConfig& config = ReadabilityConfig::defaults());

}  // namespace bnread
