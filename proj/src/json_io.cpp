#include "bnread/json_io.hpp"

namespace bnread::json {

namespace {

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const TextStats& s) {
  return Json{
      {"sentence_count", s.sentence_count},
      {"word_count", s.word_count},
      {"char_count", s.char_count},
      {"syllable_count", s.syllable_count},
      {"polysyllable_word_count", s.polysyllable_word_count},
      {"complex_word_count", s.complex_word_count},
      {"difficult_word_count", s.difficult_word_count},
      {"conjunct_count", s.conjunct_count},
  };
}

Json to_json(const AgeRange& a) {
  return Json{
      {"lower", optional_int(a.lower)},
      {"upper", optional_int(a.upper)},
      {"defined", a.defined},
      {"label", a.label},
  };
}

Json to_json(const FormulaResult& r) {
  Json j;
  if (r.applicable) {
    if (r.formula == Formula::ARI) j["score"] = static_cast<int>(r.score);
    else j["score"] = r.score;
  } else {
    j["score"] = nullptr;
  }
  j["applicable"] = r.applicable;
  if (!r.applicable) j["reason"] = r.reason;
  j["age"] = to_json(r.age);
  return j;
}

Json to_json(const ScoreReport& r) {
  Json j = Json::object();
  for (Formula f : kAllFormulas) j[formula_key(f)] = to_json(r[f]);
  return j;
}

Json to_json(const Metrics& m) {
  return Json{
      {"accuracy", m.accuracy},
      {"precision", m.precision},
      {"recall", m.recall},
      {"f1", m.f1},
      {"total", m.total},
      {"positive_class", "complex"},
      {"confusion",
       {{"actual_simple", {{"predicted_simple", m.confusion[0][0]}, {"predicted_complex", m.confusion[0][1]}}},
        {"actual_complex", {{"predicted_simple", m.confusion[1][0]}, {"predicted_complex", m.confusion[1][1]}}}}},
  };
}

Json to_json(const Prediction& p) {
  return Json{
      {"label", label_name(p.label)},
      {"probability", p.probability_of(p.label)},
      {"probabilities", {{"simple", p.probability[0]}, {"complex", p.probability[1]}}},
  };
}

Json to_json(const DocumentAnalysis& a) {
  Json sentences = Json::array();
  for (const auto& s : a.sentences) {
    sentences.push_back(Json{{"text", s.text}, {"label", label_name(s.label)}, {"probability", s.probability}});
  }
  return Json{
      {"sentences", std::move(sentences)},
      {"simple_count", a.simple_count},
      {"total_count", a.total_count},
      {"readability_score", a.readability_score},
      {"rating", rating_name(a.rating)},
      {"ari_score", a.ari_applicable ? Json(a.ari_score) : Json(nullptr)},
      {"age", to_json(a.age)},
      {"stats", to_json(a.stats)},
      {"report", to_json(a.report)},
  };
}

Json to_json(const FormulaEvaluation& e) {
  Json docs = Json::array();
  for (const auto& d : e.documents) {
    Json correct = Json::object();
    for (Formula f : kAllFormulas) correct[formula_key(f)] = d.correct[static_cast<std::size_t>(f)];
    docs.push_back(Json{{"name", d.name},
                        {"bn_age", to_json(d.bn_age)},
                        {"report", to_json(d.report)},
                        {"correct", std::move(correct)}});
  }
  Json tally = Json::object();
  for (Formula f : kAllFormulas) {
    tally[formula_key(f)] = Json{{"correct", e[f].correct}, {"total", e[f].total}};
  }
  return Json{{"documents", std::move(docs)}, {"tally", std::move(tally)}};
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bnread::json
