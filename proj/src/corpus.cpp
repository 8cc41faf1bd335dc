#include "bnread/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "bnread/classifier.hpp"
#include "bnread/error.hpp"
#include "bnread/script.hpp"
#include "bnread/tokenize.hpp"

namespace bnread {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<LabeledSentence> parse_labeled(std::istream& in, std::string_view source) {
  std::vector<LabeledSentence> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected label<TAB>text", line_no);
    const auto label = parse_label(std::string_view(line).substr(0, tab));
    if (!label) throw ParseError("unknown label '" + line.substr(0, tab) + "'", line_no);
    std::string text = script::normalize(trim(std::string_view(line).substr(tab + 1)));
    if (text.empty()) throw ParseError("empty sentence text", line_no);
    out.push_back(LabeledSentence{std::move(text), *label,
                                  std::string(source) + ":" + std::to_string(line_no), Split::Unassigned});
  }
  return out;
}

std::vector<LabeledSentence> load_labeled(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_labeled(in, path.filename().string());
}

void save_labeled(const std::filesystem::path& path, std::span<const LabeledSentence> sentences) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& s : sentences) out << label_name(s.label) << '\t' << s.text << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<LabeledSentence> load_sentences(const std::filesystem::path& path, Label label) {
  auto in = open_input(path);
  std::vector<LabeledSentence> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = script::normalize(trim(line));
    if (text.empty()) continue;
    out.push_back({std::move(text), label, path.filename().string() + ":" + std::to_string(line_no),
                   Split::Unassigned});
  }
  return out;
}

std::vector<LabeledSentence> dedup(std::span<const LabeledSentence> sentences) {
  std::set<std::pair<Label, std::string_view>> seen;
  std::vector<LabeledSentence> out;
  for (const auto& s : sentences) {
    if (seen.emplace(s.label, s.text).second) out.push_back(s);
  }
  return out;
}

double cosine(const SentenceVector& u, const SentenceVector& v) {
  if (u.size() != v.size()) throw InvalidInput("cosine: dimension mismatch");
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw InvalidInput("cosine: zero vector");
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

WordVectorProvider WordVectorProvider::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse(in);
}

WordVectorProvider WordVectorProvider::parse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing `count dim` header", 1);
  std::istringstream header(line);
  long long count = 0;
  long long dim = 0;
  if (!(header >> count >> dim) || count < 0 || dim <= 0) throw ParseError("bad `count dim` header", 1);

  WordVectorProvider provider(static_cast<Eigen::Index>(dim));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    SentenceVector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (!(fields >> v(k))) throw ParseError("expected " + std::to_string(dim) + " components", line_no);
    }
    std::string extra;
    if (fields >> extra) throw ParseError("too many components", line_no);
    if (!v.allFinite()) throw ParseError("non-finite component", line_no);
    provider.add(word, std::move(v));
  }
  return provider;
}

void WordVectorProvider::add(std::string_view word, SentenceVector vector) {
  if (vector.size() != dim_) throw InvalidInput("word vector dimension mismatch");
  vectors_[script::normalize(word)] = std::move(vector);
}

SentenceVector WordVectorProvider::embed(std::string_view sentence) const {
  SentenceVector sum = SentenceVector::Zero(dim_);
  std::size_t known = 0;
  for (const auto& w : split_words(sentence)) {
    auto it = vectors_.find(script::to_utf8(w));
    if (it == vectors_.end()) continue;
    sum += it->second;
    ++known;
  }
  if (known > 0) sum /= static_cast<double>(known);
  return sum;
}

ModelVectorProvider::ModelVectorProvider(std::shared_ptr<const NGramModel> model) : model_(std::move(model)) {
  if (!model_) throw ModelError("no model for vector provider");
}

Eigen::Index ModelVectorProvider::dimension() const { return model_->config().embedding_dim; }

SentenceVector ModelVectorProvider::embed(std::string_view sentence) const {
  return model_->sentence_embedding(sentence);
}

std::vector<NearDuplicate> flag_cross_label_near_duplicates(std::span<const std::string> reference,
                                                            std::span<const std::string> candidates,
                                                            const VectorProvider& vectors,
                                                            double threshold) {
  auto embed = [&](const std::string& s) {
    SentenceVector v;
    try {
      v = vectors.embed(s);
    } catch (const std::exception& e) {
      throw InvalidInput("vector provider failed for sentence '" + s + "': " + e.what());
    }
    if (v.size() != vectors.dimension() || !v.allFinite()) {
      throw InvalidInput("vector provider returned an invalid vector for sentence '" + s + "'");
    }
    return v;
  };

  // Reference vectors normalized once; zero vectors dropped.
  std::vector<std::pair<const std::string*, SentenceVector>> refs;
  refs.reserve(reference.size());
  for (const auto& s : reference) {
    SentenceVector v = embed(s);
    const double n = v.norm();
    if (n > 0.0) refs.emplace_back(&s, v / n);
  }

  std::vector<NearDuplicate> flagged;
  if (refs.empty()) return flagged;
  for (const auto& s : candidates) {
    SentenceVector v = embed(s);
    const double n = v.norm();
    if (n == 0.0) continue;
    v /= n;
    double best = -2.0;
    const std::string* best_ref = nullptr;
    for (const auto& [ref, u] : refs) {
      const double c = std::clamp(u.dot(v), -1.0, 1.0);
      if (c > best) {
        best = c;
        best_ref = ref;
      }
    }
    if (best >= threshold) flagged.push_back({s, *best_ref, best});
  }
  return flagged;
}

void write_review(std::ostream& out, std::span<const NearDuplicate> flagged) {
  const auto old_precision = out.precision();
  out << std::setprecision(6) << std::fixed;
  for (const auto& f : flagged) out << f.sentence << '\t' << f.best_match << '\t' << f.score << '\n';
  out.unsetf(std::ios::floatfield);
  out.precision(old_precision);
}

std::vector<LabeledSentence> split(std::span<const LabeledSentence> sentences, std::size_t dev_per_class,
                                   std::size_t test_per_class, std::uint64_t seed) {
  std::vector<LabeledSentence> out(sentences.begin(), sentences.end());
  std::mt19937_64 rng(seed);
  for (Label label : {Label::Simple, Label::Complex}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].label == label) members.push_back(i);
    }
    if (dev_per_class + test_per_class > members.size()) {
      throw InvalidInput(std::string("split quotas exceed the ") + label_name(label) + " class size (" +
                         std::to_string(members.size()) + ")");
    }
    // Fisher-Yates with raw engine output keeps the result library-independent.
    for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng() % i]);
    for (std::size_t k = 0; k < members.size(); ++k) {
      Split s = Split::Train;
      if (k < dev_per_class) s = Split::Dev;
      else if (k < dev_per_class + test_per_class) s = Split::Test;
      out[members[k]].split = s;
    }
  }
  return out;
}

}  // namespace bnread
