#pragma once

// JSON views of engine results. The CLI and the HTTP service render through
// these functions so both produce identical bytes.

#include <string>

#include <json.hpp>

#include "bnread/analysis.hpp"
#include "bnread/classifier.hpp"
#include "bnread/formulas.hpp"
#include "bnread/tokenize.hpp"

namespace bnread::json {

using Json = nlohmann::ordered_json;

Json to_json(const TextStats& s);
Json to_json(const AgeRange& a);
Json to_json(const FormulaResult& r);
Json to_json(const ScoreReport& r);
Json to_json(const Metrics& m);
Json to_json(const Prediction& p);
Json to_json(const DocumentAnalysis& a);
Json to_json(const FormulaEvaluation& e);

/// Two-space indented, trailing newline.
std::string render(const Json& j);

}  // namespace bnread::json
