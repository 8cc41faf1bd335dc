#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bnread/classifier.hpp"
#include "bnread/error.hpp"
#include "bnread/script.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

using namespace bnread;

namespace {

// Reference FNV-1a, written out independently of the library.
std::uint64_t reference_fnv(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint32_t word_bucket(const std::string& ngram, std::uint32_t b) {
  return static_cast<std::uint32_t>(reference_fnv("\x01" + ngram) % b);
}
std::uint32_t char_bucket(const std::string& ngram, std::uint32_t b) {
  return static_cast<std::uint32_t>(reference_fnv("\x02" + ngram) % b);
}

std::size_t char_ngram_count(std::size_t scalars, int lo = 2, int hi = 6) {
  const std::size_t m = scalars + 2;
  std::size_t n = 0;
  for (int k = lo; k <= hi; ++k) {
    if (m >= static_cast<std::size_t>(k)) n += m - static_cast<std::size_t>(k) + 1;
  }
  return n;
}

ClassifierConfig small_config() {
  ClassifierConfig c;
  c.embedding_dim = 16;
  c.bucket_count = 200'003;
  c.epochs = 8;
  c.seed = 5;
  return c;
}

struct SplitCorpus {
  std::vector<LabeledSentence> train, test;
};

SplitCorpus separable(std::size_t per_class, std::uint64_t seed) {
  auto all = testkit::separable_corpus(per_class, seed);
  SplitCorpus s;
  for (std::size_t i = 0; i < all.size(); ++i) (i % 5 == 4 ? s.test : s.train).push_back(all[i]);
  return s;
}

const SplitCorpus& shared_corpus() {
  static const SplitCorpus c = separable(250, 77);
  return c;
}

const NGramModel& shared_model() {
  static const NGramModel m = NGramModel::train(shared_corpus().train, small_config());
  return m;
}

std::string fuzz_sentence(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> words(0, 8);
  std::string s;
  for (int n = words(rng); n > 0; --n) {
    if (!s.empty()) s += ' ';
    s += script::to_utf8(testkit::fuzz_bengali(rng, 1 + static_cast<std::size_t>(rng() % 7)));
  }
  return script::normalize(s);
}

}  // namespace

TEST(Fnv1a64, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Featurize, EmptySentence) {
  const SentenceFeatures f = featurize("", ClassifierConfig{});
  EXPECT_TRUE(f.buckets.empty());
  EXPECT_EQ(f.char_length, 0.0);
  EXPECT_EQ(f.conjuncts, 0.0);
}

TEST(Featurize, SingleScalarWordEnumeratedByHand) {
  ClassifierConfig c;
  const std::string ka = script::to_utf8(U"ক");
  const SentenceFeatures f = featurize(ka, c);
  // unigram; then "<k", "<k>", "k>" in start-major order.
  const std::vector<std::uint32_t> expected{word_bucket(ka, c.bucket_count), char_bucket("<" + ka, c.bucket_count),
                                            char_bucket("<" + ka + ">", c.bucket_count),
                                            char_bucket(ka + ">", c.bucket_count)};
  EXPECT_EQ(f.buckets, expected);
  EXPECT_EQ(f.char_length, 1.0);
}

TEST(Featurize, ThreeScalarWordCounts) {
  const SentenceFeatures f = featurize(script::to_utf8(U"ক্ত"), ClassifierConfig{});
  EXPECT_EQ(f.buckets.size(), 1 + char_ngram_count(3));
  EXPECT_EQ(char_ngram_count(3), 10u);
  EXPECT_EQ(f.conjuncts, 1.0);
}

TEST(Featurize, BigramsAcrossTwoWords) {
  ClassifierConfig c;
  c.word_ngram_order = 2;
  const SentenceFeatures f = featurize("ab cde", c);
  ASSERT_EQ(f.buckets.size(), 2 + 1 + char_ngram_count(2) + char_ngram_count(3));
  EXPECT_EQ(f.buckets[0], word_bucket("ab", c.bucket_count));
  EXPECT_EQ(f.buckets[1], word_bucket("cde", c.bucket_count));
  EXPECT_EQ(f.buckets[2], word_bucket("ab cde", c.bucket_count));
  EXPECT_EQ(f.char_length, 6.0);
}

TEST(Featurize, TrigramOrderAndPunctuationStripping) {
  ClassifierConfig c;
  c.word_ngram_order = 3;
  const SentenceFeatures f = featurize("a, b c!", c);
  EXPECT_EQ(f.buckets[5], word_bucket("a b c", c.bucket_count));
  EXPECT_EQ(f.buckets.size(), 3 + 2 + 1 + 3 * char_ngram_count(1));
}

TEST(Featurize, BucketsStayInRange) {
  ClassifierConfig c;
  c.bucket_count = 97;
  c.word_ngram_order = 3;
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    for (auto b : featurize(fuzz_sentence(rng), c).buckets) ASSERT_LT(b, 97u);
  }
}

TEST(HashDistribution, MaxLoadWithinFiveTimesMean) {
  constexpr std::uint32_t kBuckets = 10007;
  std::vector<std::uint32_t> load(kBuckets, 0);
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> len(2, 6), ch(0x0980, 0x09FF);
  for (int i = 0; i < 1'000'000; ++i) {
    std::u32string g;
    for (int n = len(rng); n > 0; --n) g.push_back(static_cast<char32_t>(ch(rng)));
    ++load[fnv1a64("\x02" + script::to_utf8(g)) % kBuckets];
  }
  const double mean = 1'000'000.0 / kBuckets;
  EXPECT_LE(*std::max_element(load.begin(), load.end()), 5.0 * mean);
}

TEST(ClassifierConfig, Validation) {
  EXPECT_NO_THROW(ClassifierConfig{}.validate());
  auto bad = [](auto mutate) {
    ClassifierConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](auto& c) { c.word_ngram_order = 4; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](auto& c) { c.word_ngram_order = 0; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](auto& c) { c.bucket_count = 0; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](auto& c) { c.embedding_dim = 0; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](auto& c) { c.learning_rate = 0; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](auto& c) { c.epochs = 0; }).validate(), InvalidInput);
  EXPECT_THROW(bad([](auto& c) { c.char_ngram_max = 1; }).validate(), InvalidInput);
}

TEST(Train, RejectsEmptyAndSingleLabelCorpora) {
  EXPECT_THROW(NGramModel::train({}, small_config()), TrainingError);
  std::vector<LabeledSentence> one{{"a b", Label::Simple, "", Split::Unassigned},
                                   {"c d", Label::Simple, "", Split::Unassigned}};
  EXPECT_THROW(NGramModel::train(one, small_config()), TrainingError);
}

TEST(Train, SeparableCorpusIsLearned) {
  const Metrics m = evaluate(shared_model(), shared_corpus().test);
  EXPECT_GE(m.accuracy, 0.99);
  EXPECT_EQ(m.total, shared_corpus().test.size());
}

TEST(Train, TrainingSentencesArePredictedConfidently) {
  for (std::size_t i = 0; i < 40; ++i) {
    const auto& s = shared_corpus().train[i];
    const Prediction p = shared_model().predict(s.text);
    EXPECT_EQ(p.label, s.label);
    EXPECT_GT(p.probability_of(s.label), 0.9);
  }
}

TEST(Train, LossIsNonIncreasingOnSeparableData) {
  TrainingLog log;
  NGramModel::train(shared_corpus().train, small_config(), &log);
  ASSERT_EQ(log.epoch_loss.size(), 8u);
  for (std::size_t e = 1; e < log.epoch_loss.size(); ++e) {
    EXPECT_LE(log.epoch_loss[e], log.epoch_loss[e - 1] + 1e-3) << "epoch " << e;
  }
}

TEST(Train, SameSeedIsByteIdenticalAndSeedMatters) {
  const std::string a = NGramModel::train(shared_corpus().train, small_config()).serialize();
  const std::string b = NGramModel::train(shared_corpus().train, small_config()).serialize();
  EXPECT_EQ(a, b);
  ClassifierConfig other = small_config();
  other.seed = 6;
  EXPECT_NE(NGramModel::train(shared_corpus().train, other).serialize(), a);
}

TEST(Train, OnlyTouchedRowsAreMaterialized) {
  const NGramModel& m = shared_model();
  EXPECT_GT(m.materialized_rows(), 0u);
  EXPECT_LT(m.materialized_rows(), m.config().bucket_count);
}

TEST(Predict, ProbabilitiesSumToOne) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 1000; ++i) {
    const Prediction p = shared_model().predict(fuzz_sentence(rng));
    ASSERT_NEAR(p.probability[0] + p.probability[1], 1.0, 1e-9);
    ASSERT_GE(p.probability[0], 0.0);
    ASSERT_GE(p.probability[1], 0.0);
    ASSERT_EQ(p.label, p.probability[1] > p.probability[0] ? Label::Complex : Label::Simple);
  }
}

TEST(Predict, EmptySentenceAndDeterminism) {
  const Prediction e = shared_model().predict("");
  EXPECT_NEAR(e.probability[0] + e.probability[1], 1.0, 1e-9);
  const Prediction a = shared_model().predict(shared_corpus().test[3].text);
  const Prediction b = shared_model().predict(shared_corpus().test[3].text);
  EXPECT_EQ(a.probability, b.probability);
  EXPECT_EQ(a.label, b.label);
}

TEST(SentenceEmbedding, DimensionAndZeroForEmpty) {
  const auto v = shared_model().sentence_embedding("");
  EXPECT_EQ(v.size(), 16);
  EXPECT_EQ(v.squaredNorm(), 0.0);
  EXPECT_GT(shared_model().sentence_embedding(shared_corpus().train[0].text).squaredNorm(), 0.0);
}

TEST(Serialization, RoundTripPredictsIdentically) {
  const fs::path dir = testkit::scratch_dir("classifier-roundtrip");
  shared_model().save(dir / "m.bin");
  const NGramModel back = NGramModel::load(dir / "m.bin");
  EXPECT_EQ(back.serialize(), shared_model().serialize());
  EXPECT_EQ(back.config(), shared_model().config());
  EXPECT_EQ(back.fingerprint(), shared_model().fingerprint());
  std::mt19937_64 rng(45);
  for (int i = 0; i < 100; ++i) {
    const std::string s = fuzz_sentence(rng);
    ASSERT_EQ(back.predict(s).probability, shared_model().predict(s).probability);
  }
}

TEST(Serialization, FusedModelKeepsItsStandardization) {
  ClassifierConfig c = small_config();
  c.fuse_cl_cc = true;
  const NGramModel m = NGramModel::train(shared_corpus().train, c);
  const NGramModel back = NGramModel::deserialize(m.serialize());
  EXPECT_TRUE(back.config().fuse_cl_cc);
  for (const auto& s : shared_corpus().test) ASSERT_EQ(back.predict(s.text).probability, m.predict(s.text).probability);
}

TEST(Serialization, CorruptFilesAreModelErrors) {
  const std::string good = shared_model().serialize();
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(NGramModel::deserialize(bad_magic), ModelError);

  std::string bad_version = good;
  bad_version[8] = 2;
  EXPECT_THROW(NGramModel::deserialize(bad_version), ModelError);

  EXPECT_THROW(NGramModel::deserialize(good.substr(0, good.size() - 3)), ModelError);
  EXPECT_THROW(NGramModel::deserialize(good.substr(0, 5)), ModelError);
  EXPECT_THROW(NGramModel::deserialize(good + "x"), ModelError);
  EXPECT_THROW(NGramModel::deserialize(""), ModelError);
  EXPECT_THROW(NGramModel::load("/nonexistent/model.bin"), ModelError);
}

TEST(Fusion, ShiftingCharLengthIsAbsorbedByStandardization) {
  ClassifierConfig c = small_config();
  c.fuse_cl_cc = true;
  const auto& base = shared_corpus().train;
  std::vector<LabeledSentence> shifted = base;
  for (auto& s : shifted) s.text += "   ";  // CL + 3, everything else unchanged
  const NGramModel a = NGramModel::train(base, c);
  const NGramModel b = NGramModel::train(shifted, c);
  for (const auto& s : shared_corpus().test) {
    const Prediction pa = a.predict(s.text);
    const Prediction pb = b.predict(s.text + "   ");
    ASSERT_NEAR(pa.probability[1], pb.probability[1], 1e-6);
    ASSERT_EQ(pa.label, pb.label);
  }
}

TEST(Metrics, ConfusionArithmetic) {
  const Metrics perfect = metrics_from_confusion({{{5, 0}, {0, 5}}});
  EXPECT_DOUBLE_EQ(perfect.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(perfect.f1, 1.0);

  const Metrics all_simple = metrics_from_confusion({{{5, 0}, {5, 0}}});
  EXPECT_DOUBLE_EQ(all_simple.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(all_simple.recall, 0.0);
  EXPECT_DOUBLE_EQ(all_simple.f1, 0.0);

  const Metrics mixed = metrics_from_confusion({{{40, 10}, {5, 45}}});
  EXPECT_DOUBLE_EQ(mixed.accuracy, 0.85);
  EXPECT_DOUBLE_EQ(mixed.precision, 45.0 / 55.0);
  EXPECT_DOUBLE_EQ(mixed.recall, 0.9);
  EXPECT_NEAR(mixed.f1, 2 * (45.0 / 55.0) * 0.9 / (45.0 / 55.0 + 0.9), 1e-15);
  EXPECT_EQ(mixed.total, 100u);
}

TEST(Metrics, EvaluateRejectsEmptyTestSet) { EXPECT_THROW(evaluate(shared_model(), {}), InvalidInput); }
