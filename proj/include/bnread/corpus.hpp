#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "bnread/labeled.hpp"

namespace bnread {

class NGramModel;

// --- Labeled corpus I/O (UTF-8 TSV, `label<TAB>text`) ---

std::vector<LabeledSentence> load_labeled(const std::filesystem::path& path);
std::vector<LabeledSentence> parse_labeled(std::istream& in, std::string_view source = {});
void save_labeled(const std::filesystem::path& path, std::span<const LabeledSentence> sentences);

/// One normalized sentence per nonblank line, all with the same label.
std::vector<LabeledSentence> load_sentences(const std::filesystem::path& path, Label label);

/// Keeps the first occurrence of each (label, text) pair.
std::vector<LabeledSentence> dedup(std::span<const LabeledSentence> sentences);

// --- Sentence vectors ---

using SentenceVector = Eigen::VectorXd;

/// dot(u, v) / (|u| |v|). Throws InvalidInput on a zero vector or a
/// dimension mismatch.
double cosine(const SentenceVector& u, const SentenceVector& v);

class VectorProvider {
 public:
  virtual ~VectorProvider() = default;
  virtual Eigen::Index dimension() const = 0;
  /// Sentence vector; all-zero when the provider knows nothing about it.
  virtual SentenceVector embed(std::string_view sentence) const = 0;
};

/// Averages word vectors from a text file: header `count dim`, then one
/// `word v1 ... vdim` line per word.
class WordVectorProvider final : public VectorProvider {
 public:
  static WordVectorProvider load(const std::filesystem::path& path);
  static WordVectorProvider parse(std::istream& in);

  void add(std::string_view word, SentenceVector vector);

  Eigen::Index dimension() const override { return dim_; }
  SentenceVector embed(std::string_view sentence) const override;
  std::size_t size() const noexcept { return vectors_.size(); }

 private:
  explicit WordVectorProvider(Eigen::Index dim) : dim_(dim) {}

  Eigen::Index dim_;
  std::unordered_map<std::string, SentenceVector> vectors_;
};

/// Uses a trained classifier's mean-pooled n-gram embedding.
class ModelVectorProvider final : public VectorProvider {
 public:
  explicit ModelVectorProvider(std::shared_ptr<const NGramModel> model);

  Eigen::Index dimension() const override;
  SentenceVector embed(std::string_view sentence) const override;

 private:
  std::shared_ptr<const NGramModel> model_;
};

struct NearDuplicate {
  std::string sentence;    // from the set being filtered
  std::string best_match;  // closest sentence of the reference set
  double score = 0.0;
};

/// Every candidate whose best cosine against the reference set reaches
/// `threshold`, in candidate order. Sentences with an all-zero vector
/// cannot be compared and are never flagged or matched. Provider failures
/// are rethrown as InvalidInput naming the sentence.
std::vector<NearDuplicate> flag_cross_label_near_duplicates(std::span<const std::string> reference,
                                                            std::span<const std::string> candidates,
                                                            const VectorProvider& vectors,
                                                            double threshold = 0.90);

/// Review file: `sentence<TAB>best_match<TAB>score` per flagged sentence.
void write_review(std::ostream& out, std::span<const NearDuplicate> flagged);

/// Per label: seeded shuffle, first dev_per_class to dev, next
/// test_per_class to test, rest train. Input order is preserved. Throws
/// InvalidInput when a quota exceeds the class size.
std::vector<LabeledSentence> split(std::span<const LabeledSentence> sentences, std::size_t dev_per_class,
                                   std::size_t test_per_class, std::uint64_t seed);

}  // namespace bnread
