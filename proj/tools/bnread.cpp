// bnread: command-line front end for the Bengali readability engine.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 model error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnread/analysis.hpp"
#include "bnread/classifier.hpp"
#include "bnread/corpus.hpp"
#include "bnread/error.hpp"
#include "bnread/formulas.hpp"
#include "bnread/json_io.hpp"
#include "bnread/lexicon.hpp"
#include "bnread/script.hpp"
#include "bnread/service.hpp"
#include "bnread/tokenize.hpp"

namespace fs = std::filesystem;
using namespace bnread;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kModel = 3 };

struct ResourceOptions {
  std::string dict;
  std::string easy;
  std::string proper;
  std::string config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dict", dict, "Syllable dictionary (word<TAB>count)")->check(CLI::ExistingFile);
    cmd->add_option("--easy", easy, "Easy-word list, one word per line")->check(CLI::ExistingFile);
    cmd->add_option("--proper", proper, "Proper-noun list, one word per line")->check(CLI::ExistingFile);
    cmd->add_option("--config", config, "Band-table / rating configuration file")->check(CLI::ExistingFile);
  }

  Lexicons lexicons() const {
    Lexicons lex;
    if (!dict.empty()) lex.syllables = SyllableDict::load(dict);
    if (!easy.empty()) lex.easy_words = WordSet::load(easy, WordListRole::EasyWords);
    if (!proper.empty()) lex.proper_nouns = WordSet::load(proper, WordListRole::ProperNouns);
    return lex;
  }

  ReadabilityConfig readability_config() const {
    return config.empty() ? ReadabilityConfig::defaults() : ReadabilityConfig::load(config);
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const NGramModel> load_model(const fs::path& path) {
  return std::make_shared<const NGramModel>(NGramModel::load(path));
}

std::vector<std::string> texts_of(const std::vector<LabeledSentence>& sentences) {
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(s.text);
  return out;
}

ReadabilityService* g_service = nullptr;

void handle_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bengali readability analysis"};
  app.require_subcommand(1);

  // stats
  std::string stats_file;
  ResourceOptions stats_res;
  auto* stats_cmd = app.add_subcommand("stats", "Text statistics of a document as JSON");
  stats_cmd->add_option("file", stats_file)->required();
  stats_res.attach(stats_cmd);

  // cc
  std::string cc_word;
  auto* cc_cmd = app.add_subcommand("cc", "Consonant conjunct count of a word");
  cc_cmd->add_option("word", cc_word)->required();

  // score
  std::string score_file;
  ResourceOptions score_res;
  auto* score_cmd = app.add_subcommand("score", "Six readability formulas with U.S. age mapping");
  score_cmd->add_option("file", score_file)->required();
  score_res.attach(score_cmd);

  // train
  std::string train_corpus;
  std::string train_out;
  ClassifierConfig train_cfg;
  bool train_dedup = false;
  auto* train_cmd = app.add_subcommand("train", "Train the sentence classifier");
  train_cmd->add_option("corpus", train_corpus, "Labeled TSV (label<TAB>text)")->required();
  train_cmd->add_option("-o,--output", train_out, "Model file to write")->required();
  train_cmd->add_option("--ngrams", train_cfg.word_ngram_order, "Word n-gram order")->check(CLI::Range(1, 3));
  train_cmd->add_flag("--fuse", train_cfg.fuse_cl_cc, "Append standardized CL and CC features");
  train_cmd->add_option("--dim", train_cfg.embedding_dim, "Embedding dimension");
  train_cmd->add_option("--buckets", train_cfg.bucket_count, "Hash bucket count");
  train_cmd->add_option("--epochs", train_cfg.epochs, "Training epochs");
  train_cmd->add_option("--lr", train_cfg.learning_rate, "Initial learning rate");
  train_cmd->add_option("--minn", train_cfg.char_ngram_min, "Shortest character n-gram");
  train_cmd->add_option("--maxn", train_cfg.char_ngram_max, "Longest character n-gram");
  train_cmd->add_option("--seed", train_cfg.seed, "Random seed");
  train_cmd->add_flag("--dedup", train_dedup, "Drop duplicate sentences before training");

  // predict
  std::string predict_model;
  std::string predict_file;
  auto* predict_cmd = app.add_subcommand("predict", "Classify each line of a file (JSON lines)");
  predict_cmd->add_option("model", predict_model)->required();
  predict_cmd->add_option("file", predict_file)->required();

  // eval
  std::string eval_model;
  std::string eval_corpus;
  auto* eval_cmd = app.add_subcommand("eval", "Accuracy, precision, recall and F1 on a labeled corpus");
  eval_cmd->add_option("model", eval_model)->required();
  eval_cmd->add_option("corpus", eval_corpus)->required();

  // filter-corpus
  std::string filter_simple;
  std::string filter_complex;
  std::string filter_vectors;
  std::string filter_model;
  std::string filter_out;
  std::string filter_reverse_out;
  double filter_threshold = 0.90;
  auto* filter_cmd =
      app.add_subcommand("filter-corpus", "Flag complex sentences that are near-duplicates of simple ones");
  filter_cmd->add_option("simple", filter_simple, "Simple sentences, one per line")->required();
  filter_cmd->add_option("complex", filter_complex, "Complex sentences, one per line")->required();
  auto* vec_opt = filter_cmd->add_option("--vectors", filter_vectors, "Word-vector file (header `count dim`)");
  auto* mod_opt = filter_cmd->add_option("--model", filter_model, "Use a trained model's embeddings");
  vec_opt->excludes(mod_opt);
  filter_cmd->add_option("--threshold", filter_threshold, "Cosine threshold")->check(CLI::Range(-1.0, 1.0));
  filter_cmd->add_option("-o,--output", filter_out, "Review TSV (default stdout)");
  filter_cmd->add_option("--reverse-out", filter_reverse_out,
                         "Also flag simple sentences close to complex ones, into this file");

  // dedup
  std::string dedup_corpus;
  auto* dedup_cmd = app.add_subcommand("dedup", "Drop duplicate (label, text) lines of a labeled corpus");
  dedup_cmd->add_option("corpus", dedup_corpus)->required();

  // split
  std::string split_corpus;
  std::string split_dir = ".";
  std::size_t split_dev = 1100;
  std::size_t split_test = 1100;
  std::uint64_t split_seed = 42;
  auto* split_cmd = app.add_subcommand("split", "Seeded per-class train/dev/test split");
  split_cmd->add_option("corpus", split_corpus)->required();
  split_cmd->add_option("--dev", split_dev, "Dev sentences per class");
  split_cmd->add_option("--test", split_test, "Test sentences per class");
  split_cmd->add_option("--seed", split_seed, "Shuffle seed");
  split_cmd->add_option("--out-dir", split_dir, "Directory for train.tsv, dev.tsv, test.tsv");

  // analyze
  std::string analyze_model;
  std::string analyze_file;
  ResourceOptions analyze_res;
  auto* analyze_cmd = app.add_subcommand("analyze", "Document analysis (same JSON as POST /api/analyze)");
  analyze_cmd->add_option("model", analyze_model)->required();
  analyze_cmd->add_option("file", analyze_file)->required();
  analyze_res.attach(analyze_cmd);

  // eval-formulas
  std::string manifest_file;
  ResourceOptions manifest_res;
  auto* formulas_cmd =
      app.add_subcommand("eval-formulas", "Age-to-age formula evaluation over graded documents");
  formulas_cmd->add_option("manifest", manifest_file, "TSV: name<TAB>grade<TAB>path")->required();
  manifest_res.attach(formulas_cmd);

  // serve
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  std::string serve_model;
  std::size_t serve_max_body = 1 << 20;
  ResourceOptions serve_res;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP JSON API");
  serve_cmd->add_option("--host", serve_host, "Bind address");
  serve_cmd->add_option("--port", serve_port, "Port")->required();
  serve_cmd->add_option("--model", serve_model, "Model file");
  serve_cmd->add_option("--max-body", serve_max_body, "Request size limit in bytes");
  serve_res.attach(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*stats_cmd) {
      const Lexicons lex = stats_res.lexicons();
      std::cout << json::render(json::to_json(compute_stats(script::normalize(read_file(stats_file)), lex)));
    } else if (*cc_cmd) {
      std::cout << sentence_conjunct_count(script::normalize(cc_word)) << '\n';
    } else if (*score_cmd) {
      const Lexicons lex = score_res.lexicons();
      const TextStats stats = compute_stats(script::normalize(read_file(score_file)), lex);
      if (stats.sentence_count == 0 || stats.word_count == 0) throw InvalidInput("document contains no text");
      std::cout << json::render(json::to_json(score_report(stats, score_res.readability_config())));
    } else if (*train_cmd) {
      auto corpus = load_labeled(train_corpus);
      if (train_dedup) corpus = dedup(corpus);
      TrainingLog log;
      const NGramModel model = NGramModel::train(corpus, train_cfg, &log);
      model.save(train_out);
      std::cout << json::render(json::Json{{"sentences", corpus.size()},
                                           {"epochs", train_cfg.epochs},
                                           {"final_loss", log.epoch_loss.empty() ? 0.0 : log.epoch_loss.back()},
                                           {"materialized_rows", model.materialized_rows()},
                                           {"model", train_out}});
    } else if (*predict_cmd) {
      const auto model = load_model(predict_model);
      std::ifstream in(predict_file, std::ios::binary);
      if (!in) throw IoError("cannot open " + predict_file);
      std::string line;
      while (std::getline(in, line)) {
        const std::string text = script::normalize(line);
        json::Json j{{"text", text}};
        j.update(json::to_json(model->predict(text)));
        std::cout << j.dump() << '\n';
      }
    } else if (*eval_cmd) {
      const auto model = load_model(eval_model);
      const auto corpus = load_labeled(eval_corpus);
      std::cout << json::render(json::to_json(evaluate(*model, corpus)));
    } else if (*filter_cmd) {
      if (filter_vectors.empty() && filter_model.empty()) {
        std::cerr << "filter-corpus: one of --vectors or --model is required\n";
        return kUsage;
      }
      std::unique_ptr<VectorProvider> provider;
      if (!filter_vectors.empty()) {
        provider = std::make_unique<WordVectorProvider>(WordVectorProvider::load(filter_vectors));
      } else {
        provider = std::make_unique<ModelVectorProvider>(load_model(filter_model));
      }
      const auto simple = texts_of(load_sentences(filter_simple, Label::Simple));
      const auto complex = texts_of(load_sentences(filter_complex, Label::Complex));
      const auto flagged = flag_cross_label_near_duplicates(simple, complex, *provider, filter_threshold);
      if (filter_out.empty()) {
        write_review(std::cout, flagged);
      } else {
        std::ofstream out(filter_out, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + filter_out);
        write_review(out, flagged);
      }
      if (!filter_reverse_out.empty()) {
        const auto reverse = flag_cross_label_near_duplicates(complex, simple, *provider, filter_threshold);
        std::ofstream out(filter_reverse_out, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + filter_reverse_out);
        write_review(out, reverse);
      }
    } else if (*dedup_cmd) {
      for (const auto& s : dedup(load_labeled(dedup_corpus))) {
        std::cout << label_name(s.label) << '\t' << s.text << '\n';
      }
    } else if (*split_cmd) {
      const auto assigned = split(load_labeled(split_corpus), split_dev, split_test, split_seed);
      std::vector<LabeledSentence> parts[3];
      for (const auto& s : assigned) {
        if (s.split == Split::Train) parts[0].push_back(s);
        else if (s.split == Split::Dev) parts[1].push_back(s);
        else if (s.split == Split::Test) parts[2].push_back(s);
      }
      fs::create_directories(split_dir);
      save_labeled(fs::path(split_dir) / "train.tsv", parts[0]);
      save_labeled(fs::path(split_dir) / "dev.tsv", parts[1]);
      save_labeled(fs::path(split_dir) / "test.tsv", parts[2]);
      std::cout << json::render(
          json::Json{{"train", parts[0].size()}, {"dev", parts[1].size()}, {"test", parts[2].size()}});
    } else if (*analyze_cmd) {
      const auto model = load_model(analyze_model);
      const Lexicons lex = analyze_res.lexicons();
      const auto a = analyze_document(read_file(analyze_file), model.get(), lex, analyze_res.readability_config());
      std::cout << json::render(json::to_json(a));
    } else if (*formulas_cmd) {
      std::ifstream in(manifest_file, std::ios::binary);
      if (!in) throw IoError("cannot open " + manifest_file);
      const fs::path base = fs::path(manifest_file).parent_path();
      std::vector<GradedDocument> docs;
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        std::istringstream fields(line);
        std::string name, grade, path;
        if (!std::getline(fields, name, '\t') || !std::getline(fields, grade, '\t') ||
            !std::getline(fields, path)) {
          throw ParseError("expected name<TAB>grade<TAB>path", line_no);
        }
        fs::path doc_path(path);
        if (doc_path.is_relative()) doc_path = base / doc_path;
        docs.push_back({name, read_file(doc_path), bn_age_for_grade(grade)});
      }
      const Lexicons lex = manifest_res.lexicons();
      std::cout << json::render(json::to_json(evaluate_formulas(docs, lex, manifest_res.readability_config())));
    } else if (*serve_cmd) {
      ReadabilityService service(serve_res.lexicons(), serve_res.readability_config(),
                                 ServiceOptions{serve_max_body});
      if (!serve_model.empty()) service.set_model(load_model(serve_model));
      g_service = &service;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      std::cerr << "listening on " << serve_host << ":" << serve_port << '\n';
      if (!service.listen(serve_host, serve_port)) {
        std::cerr << "error: cannot bind " << serve_host << ":" << serve_port << '\n';
        return kData;
      }
      g_service = nullptr;
    }
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kModel;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
