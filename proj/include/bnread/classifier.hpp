#pragma once

// Sentence-level simple/complex classifier: hashed word n-grams and
// character n-grams, mean-pooled into an embedding, followed by a linear
// softmax layer. Optionally the standardized character length (CL) and
// conjunct count (CC) of the sentence are appended to the pooled vector.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "bnread/labeled.hpp"

namespace bnread {

struct ClassifierConfig {
  int word_ngram_order = 1;  // 1..3
  int char_ngram_min = 2;
  int char_ngram_max = 6;
  std::uint32_t bucket_count = 2'000'000;
  int embedding_dim = 100;
  double learning_rate = 0.5;
  int epochs = 50;
  bool fuse_cl_cc = false;
  std::uint64_t seed = 42;

  /// Throws InvalidInput when a field is out of range.
  void validate() const;

  bool operator==(const ClassifierConfig&) const = default;
};

std::uint64_t fnv1a64(std::string_view bytes);

struct SentenceFeatures {
  std::vector<std::uint32_t> buckets;  // multiset, in generation order
  double char_length = 0.0;            // raw CL
  double conjuncts = 0.0;              // raw CC
};

/// Word n-grams of orders 1..word_ngram_order over split_words, then per
/// word the character n-grams of lengths char_ngram_min..char_ngram_max
/// of "<" + word + ">". Each n-gram is hashed into [0, bucket_count).
SentenceFeatures featurize(std::string_view sentence, const ClassifierConfig& config);

struct Prediction {
  Label label = Label::Simple;
  std::array<double, 2> probability{0.5, 0.5};  // indexed by Label

  double probability_of(Label l) const { return probability[static_cast<std::size_t>(l)]; }
};

struct TrainingLog {
  std::vector<double> epoch_loss;  // mean cross-entropy per epoch
};

class NGramModel {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  /// Deterministic SGD on softmax cross-entropy; the learning rate decays
  /// linearly to zero over all updates. Throws TrainingError on an empty
  /// corpus or one that lacks either label.
  static NGramModel train(std::span<const LabeledSentence> corpus, const ClassifierConfig& config,
                          TrainingLog* log = nullptr);

  Prediction predict(std::string_view sentence) const;

  /// Mean-pooled n-gram embedding (zero for a sentence with no n-grams).
  Eigen::VectorXd sentence_embedding(std::string_view sentence) const;

  const ClassifierConfig& config() const noexcept { return config_; }
  std::size_t materialized_rows() const noexcept { return row_buckets_.size(); }

  void write(std::ostream& out) const;
  static NGramModel read(std::istream& in);
  std::string serialize() const;
  static NGramModel deserialize(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static NGramModel load(const std::filesystem::path& path);

  /// Hex FNV-1a digest of the serialized model.
  std::string fingerprint() const;

 private:
  NGramModel() = default;

  std::size_t hidden_size() const;
  Eigen::VectorXd hidden(const SentenceFeatures& f, std::vector<int>* rows = nullptr) const;
  Eigen::Vector2d probabilities(const Eigen::VectorXd& h) const;

  ClassifierConfig config_;
  // Embedding table over bucket_count rows, stored sparsely: rows never
  // touched by training are identically zero and are not materialized.
  std::vector<std::uint32_t> row_buckets_;  // ascending
  std::unordered_map<std::uint32_t, int> row_index_;
  Eigen::MatrixXf embeddings_;  // embedding_dim x materialized rows
  Eigen::Matrix<double, 2, Eigen::Dynamic> output_;
  Eigen::Vector2d bias_ = Eigen::Vector2d::Zero();
  std::array<double, 2> feature_mean_{0.0, 0.0};  // CL, CC
  std::array<double, 2> feature_std_{0.0, 0.0};   // 0 disables the feature
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;  // positive class: complex
  double recall = 0.0;
  double f1 = 0.0;
  std::array<std::array<std::size_t, 2>, 2> confusion{};  // [actual][predicted]
  std::size_t total = 0;
};

/// Throws InvalidInput on an empty test set.
Metrics evaluate(const NGramModel& model, std::span<const LabeledSentence> testset);

/// Metrics from a confusion matrix, complex as the positive class.
Metrics metrics_from_confusion(const std::array<std::array<std::size_t, 2>, 2>& confusion);

}  // namespace bnread
