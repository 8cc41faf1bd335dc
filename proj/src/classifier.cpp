#include "bnread/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bnread/error.hpp"
#include "bnread/script.hpp"
#include "bnread/tokenize.hpp"

namespace bnread {

namespace {

constexpr char kMagic[8] = {'B', 'N', 'R', 'D', 'N', 'G', 'M', '\0'};

constexpr char kWordTag = '\x01';
constexpr char kCharTag = '\x02';

// Portable, seed-reproducible stream independent of <random> distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

// --- little-endian binary I/O ---

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    bytes(b, 8);
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* p, std::size_t n) {
    in_.read(p, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw ModelError("model file is truncated");
  }
  std::uint8_t u8() {
    char c;
    bytes(&c, 1);
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }

  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::istream& in_;
};

std::uint32_t bucket_of(std::string_view key, std::uint32_t buckets) {
  return static_cast<std::uint32_t>(fnv1a64(key) % buckets);
}

Eigen::Vector2d softmax(const Eigen::Vector2d& logits) {
  const double m = logits.maxCoeff();
  Eigen::Vector2d e = (logits.array() - m).exp().matrix();
  return e / e.sum();
}

}  // namespace

void ClassifierConfig::validate() const {
  if (word_ngram_order < 1 || word_ngram_order > 3) throw InvalidInput("word n-gram order must be 1, 2 or 3");
  if (char_ngram_min < 1 || char_ngram_max < char_ngram_min) throw InvalidInput("invalid character n-gram range");
  if (bucket_count == 0) throw InvalidInput("bucket count must be positive");
  if (embedding_dim <= 0) throw InvalidInput("embedding dimension must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw InvalidInput("learning rate must be positive");
  if (epochs < 1) throw InvalidInput("epochs must be >= 1");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

SentenceFeatures featurize(std::string_view sentence, const ClassifierConfig& config) {
  SentenceFeatures f;
  f.char_length = static_cast<double>(char_length(sentence));
  const auto words = split_words(sentence);
  std::vector<std::string> utf8_words;
  utf8_words.reserve(words.size());
  for (const auto& w : words) {
    utf8_words.push_back(script::to_utf8(w));
    f.conjuncts += static_cast<double>(script::count_consonant_conjuncts(w));
  }

  std::string key;
  for (int order = 1; order <= config.word_ngram_order; ++order) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(order) <= utf8_words.size(); ++i) {
      key.assign(1, kWordTag);
      for (int j = 0; j < order; ++j) {
        if (j > 0) key.push_back(' ');
        key += utf8_words[i + static_cast<std::size_t>(j)];
      }
      f.buckets.push_back(bucket_of(key, config.bucket_count));
    }
  }

  for (const auto& w : words) {
    std::u32string bracketed;
    bracketed.reserve(w.size() + 2);
    bracketed.push_back(U'<');
    bracketed += w;
    bracketed.push_back(U'>');
    const std::u32string_view view(bracketed);
    for (std::size_t start = 0; start < view.size(); ++start) {
      for (int n = config.char_ngram_min; n <= config.char_ngram_max; ++n) {
        if (start + static_cast<std::size_t>(n) > view.size()) break;
        key.assign(1, kCharTag);
        key += script::to_utf8(view.substr(start, static_cast<std::size_t>(n)));
        f.buckets.push_back(bucket_of(key, config.bucket_count));
      }
    }
  }
  return f;
}

std::size_t NGramModel::hidden_size() const {
  return static_cast<std::size_t>(config_.embedding_dim) + (config_.fuse_cl_cc ? 2 : 0);
}

Eigen::VectorXd NGramModel::hidden(const SentenceFeatures& f, std::vector<int>* rows) const {
  const auto d = static_cast<Eigen::Index>(config_.embedding_dim);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hidden_size()));
  if (rows) rows->clear();
  for (std::uint32_t b : f.buckets) {
    auto it = row_index_.find(b);
    if (it == row_index_.end()) {
      if (rows) rows->push_back(-1);
      continue;
    }
    h.head(d) += embeddings_.col(it->second).cast<double>();
    if (rows) rows->push_back(it->second);
  }
  if (!f.buckets.empty()) h.head(d) /= static_cast<double>(f.buckets.size());
  if (config_.fuse_cl_cc) {
    const double raw[2] = {f.char_length, f.conjuncts};
    for (int i = 0; i < 2; ++i) {
      h(d + i) = feature_std_[i] > 0.0 ? (raw[i] - feature_mean_[i]) / feature_std_[i] : 0.0;
    }
  }
  return h;
}

Eigen::Vector2d NGramModel::probabilities(const Eigen::VectorXd& h) const {
  return softmax(output_ * h + bias_);
}

NGramModel NGramModel::train(std::span<const LabeledSentence> corpus, const ClassifierConfig& config,
                             TrainingLog* log) {
  config.validate();
  if (corpus.empty()) throw TrainingError("training corpus is empty");
  bool seen[2] = {false, false};
  for (const auto& s : corpus) seen[static_cast<int>(s.label)] = true;
  if (!seen[0] || !seen[1]) throw TrainingError("training corpus must contain both labels");

  NGramModel model;
  model.config_ = config;

  std::vector<SentenceFeatures> features;
  features.reserve(corpus.size());
  for (const auto& s : corpus) features.push_back(featurize(s.text, config));

  std::vector<std::uint32_t> buckets;
  for (const auto& f : features) buckets.insert(buckets.end(), f.buckets.begin(), f.buckets.end());
  std::sort(buckets.begin(), buckets.end());
  buckets.erase(std::unique(buckets.begin(), buckets.end()), buckets.end());
  model.row_buckets_ = std::move(buckets);
  model.row_index_.reserve(model.row_buckets_.size());
  for (std::size_t i = 0; i < model.row_buckets_.size(); ++i) {
    model.row_index_.emplace(model.row_buckets_[i], static_cast<int>(i));
  }
  const auto d = static_cast<Eigen::Index>(config.embedding_dim);
  model.embeddings_ = Eigen::MatrixXf::Zero(d, static_cast<Eigen::Index>(model.row_buckets_.size()));

  if (config.fuse_cl_cc) {
    const double n = static_cast<double>(features.size());
    for (int i = 0; i < 2; ++i) {
      double mean = 0.0;
      for (const auto& f : features) mean += i == 0 ? f.char_length : f.conjuncts;
      mean /= n;
      double var = 0.0;
      for (const auto& f : features) {
        const double x = (i == 0 ? f.char_length : f.conjuncts) - mean;
        var += x * x;
      }
      model.feature_mean_[i] = mean;
      model.feature_std_[i] = std::sqrt(var / n);
    }
  }

  SplitMix64 rng(config.seed);
  const auto cols = static_cast<Eigen::Index>(model.hidden_size());
  model.output_.resize(2, cols);
  const double scale = 1.0 / static_cast<double>(cols);
  for (Eigen::Index r = 0; r < 2; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) model.output_(r, c) = (2.0 * rng.uniform() - 1.0) * scale;
  }
  model.bias_.setZero();

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const double total_updates = static_cast<double>(corpus.size()) * config.epochs;
  std::size_t step = 0;
  std::vector<int> rows;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    double loss_sum = 0.0;
    for (std::size_t idx : order) {
      const SentenceFeatures& f = features[idx];
      const int y = static_cast<int>(corpus[idx].label);
      const double lr = config.learning_rate * (1.0 - static_cast<double>(step) / total_updates);
      ++step;

      const Eigen::VectorXd h = model.hidden(f, &rows);
      const Eigen::Vector2d p = model.probabilities(h);
      loss_sum += -std::log(std::max(p(y), 1e-300));

      Eigen::Vector2d g = p;
      g(y) -= 1.0;
      const Eigen::VectorXd grad_h = model.output_.transpose() * g;
      model.output_.noalias() -= lr * g * h.transpose();
      model.bias_ -= lr * g;
      if (!rows.empty()) {
        const Eigen::VectorXf delta =
            (-lr / static_cast<double>(rows.size()) * grad_h.head(d)).cast<float>();
        for (int r : rows) model.embeddings_.col(r) += delta;
      }
    }
    if (log) log->epoch_loss.push_back(loss_sum / static_cast<double>(corpus.size()));
  }
  return model;
}

Prediction NGramModel::predict(std::string_view sentence) const {
  const Eigen::Vector2d p = probabilities(hidden(featurize(sentence, config_)));
  Prediction pred;
  pred.probability = {p(0), p(1)};
  pred.label = p(1) > p(0) ? Label::Complex : Label::Simple;
  return pred;
}

Eigen::VectorXd NGramModel::sentence_embedding(std::string_view sentence) const {
  return hidden(featurize(sentence, config_)).head(config_.embedding_dim);
}

void NGramModel::write(std::ostream& out) const {
  Writer w(out);
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kFormatVersion);

  w.u32(static_cast<std::uint32_t>(config_.word_ngram_order));
  w.u32(static_cast<std::uint32_t>(config_.char_ngram_min));
  w.u32(static_cast<std::uint32_t>(config_.char_ngram_max));
  w.u32(config_.bucket_count);
  w.u32(static_cast<std::uint32_t>(config_.embedding_dim));
  w.f64(config_.learning_rate);
  w.u32(static_cast<std::uint32_t>(config_.epochs));
  w.u8(config_.fuse_cl_cc ? 1 : 0);
  w.u64(config_.seed);

  for (int i = 0; i < 2; ++i) w.f64(feature_mean_[i]);
  for (int i = 0; i < 2; ++i) w.f64(feature_std_[i]);

  w.u64(row_buckets_.size());
  for (std::size_t r = 0; r < row_buckets_.size(); ++r) {
    w.u32(row_buckets_[r]);
    for (Eigen::Index k = 0; k < embeddings_.rows(); ++k) w.f32(embeddings_(k, static_cast<Eigen::Index>(r)));
  }

  w.u32(static_cast<std::uint32_t>(output_.rows()));
  w.u32(static_cast<std::uint32_t>(output_.cols()));
  for (Eigen::Index r = 0; r < output_.rows(); ++r) {
    for (Eigen::Index c = 0; c < output_.cols(); ++c) w.f64(output_(r, c));
  }
  w.f64(bias_(0));
  w.f64(bias_(1));
  if (!out) throw IoError("failed to write model");
}

NGramModel NGramModel::read(std::istream& in) {
  Reader r(in);
  char magic[sizeof kMagic];
  r.bytes(magic, sizeof magic);
  if (!std::equal(std::begin(magic), std::end(magic), std::begin(kMagic))) {
    throw ModelError("not a bnread model file (bad magic)");
  }
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw ModelError("unsupported model version " + std::to_string(version));
  }

  NGramModel m;
  ClassifierConfig& c = m.config_;
  c.word_ngram_order = static_cast<int>(r.u32());
  c.char_ngram_min = static_cast<int>(r.u32());
  c.char_ngram_max = static_cast<int>(r.u32());
  c.bucket_count = r.u32();
  c.embedding_dim = static_cast<int>(r.u32());
  c.learning_rate = r.f64();
  c.epochs = static_cast<int>(r.u32());
  c.fuse_cl_cc = r.u8() != 0;
  c.seed = r.u64();
  try {
    c.validate();
  } catch (const InvalidInput& e) {
    throw ModelError(std::string("corrupt model config: ") + e.what());
  }

  for (int i = 0; i < 2; ++i) m.feature_mean_[i] = r.f64();
  for (int i = 0; i < 2; ++i) m.feature_std_[i] = r.f64();

  const std::uint64_t rows = r.u64();
  if (rows > c.bucket_count) throw ModelError("corrupt model: more rows than buckets");
  const auto d = static_cast<Eigen::Index>(c.embedding_dim);
  m.row_buckets_.reserve(static_cast<std::size_t>(rows));
  std::vector<float> values;
  values.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(d));
  for (std::uint64_t i = 0; i < rows; ++i) {
    const std::uint32_t b = r.u32();
    if (b >= c.bucket_count || (!m.row_buckets_.empty() && b <= m.row_buckets_.back())) {
      throw ModelError("corrupt model: bucket ids out of order");
    }
    m.row_buckets_.push_back(b);
    for (Eigen::Index k = 0; k < d; ++k) values.push_back(r.f32());
  }
  m.embeddings_ = Eigen::Map<const Eigen::MatrixXf>(values.data(), d, static_cast<Eigen::Index>(rows));
  for (std::size_t i = 0; i < m.row_buckets_.size(); ++i) m.row_index_.emplace(m.row_buckets_[i], static_cast<int>(i));

  const std::uint32_t out_rows = r.u32();
  const std::uint32_t out_cols = r.u32();
  if (out_rows != 2 || out_cols != m.hidden_size()) throw ModelError("corrupt model: output layer shape");
  m.output_.resize(2, out_cols);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(out_cols); ++k) m.output_(i, k) = r.f64();
  }
  m.bias_(0) = r.f64();
  m.bias_(1) = r.f64();
  if (!r.at_end()) throw ModelError("trailing bytes after model");
  return m;
}

std::string NGramModel::serialize() const {
  std::ostringstream out(std::ios::binary);
  write(out);
  return std::move(out).str();
}

NGramModel NGramModel::deserialize(std::string_view bytes) {
  std::istringstream in(std::string(bytes), std::ios::binary);
  return read(in);
}

void NGramModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write(out);
}

NGramModel NGramModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model " + path.string());
  return read(in);
}

std::string NGramModel::fingerprint() const {
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(serialize());
  return hex.str();
}

Metrics metrics_from_confusion(const std::array<std::array<std::size_t, 2>, 2>& confusion) {
  Metrics m;
  m.confusion = confusion;
  const auto tn = static_cast<double>(confusion[0][0]);
  const auto fp = static_cast<double>(confusion[0][1]);
  const auto fn = static_cast<double>(confusion[1][0]);
  const auto tp = static_cast<double>(confusion[1][1]);
  m.total = confusion[0][0] + confusion[0][1] + confusion[1][0] + confusion[1][1];
  if (m.total == 0) return m;
  m.accuracy = (tp + tn) / static_cast<double>(m.total);
  m.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

Metrics evaluate(const NGramModel& model, std::span<const LabeledSentence> testset) {
  if (testset.empty()) throw InvalidInput("test set is empty");
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  for (const auto& s : testset) {
    const auto predicted = model.predict(s.text).label;
    ++confusion[static_cast<std::size_t>(s.label)][static_cast<std::size_t>(predicted)];
  }
  return metrics_from_confusion(confusion);
}

}  // namespace bnread
