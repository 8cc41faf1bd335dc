#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "bnread/error.hpp"
#include "bnread/formulas.hpp"

namespace bnread {

namespace {

// U.S. age bands reconstructed against every printed cell of the formula
// comparison table. Linear bands give (q+5)-(q+6) for a rounded score q.
constexpr std::string_view kDefaultConfig = R"(# bnread readability configuration
version = 1

# Band syntax: <from>:<age>, sorted by from; the first band starts at -inf.
# Ages: A-B, A, >=A, >=A-B (open-ended, printed as is), <=B, - (undefined),
# s+A-s+B (linear in the quantized score s).
ari.quantize = ceil
ari.bands = -inf:5-6, 2:6-7, 3:7-9, 4:9-10, 5:10-11, 6:11-12, 7:12-13, 8:13-14, 9:14-15, 10:15-16, 11:16-17, 12:17-18, 13:18-24, 14:>=24

fe.quantize = none
fe.bands = -inf:-, 0:>=21, 30:18-22, 50:15-18, 60:13-15, 70:12-13, 80:11-12, 90:10-11

fk.quantize = round
fk.bands = -inf:s+5-s+6, 15:>=20

gf.quantize = round
gf.bands = -inf:s+5-s+6, 16:>=21

smog.quantize = round
smog.bands = -inf:s+5-s+6, 14:>=19-20

dc.quantize = none
dc.bands = -inf:<=10, 5:10-12, 6:12-14, 7:14-16, 8:16-18, 9:18-21, 10:>=21

# Lower bounds of the document rating bands (score = simple / total).
rating.very_easy = 0.9
rating.easy = 0.7
rating.medium = 0.5
rating.difficult = 0.3
)";

constexpr std::string_view kGe = "\xE2\x89\xA5";  // ≥
constexpr std::string_view kLe = "\xE2\x89\xA4";  // ≤

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool consume_prefix(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  // from_chars for double is available in libstdc++ 11.
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string range_label(int lo, int hi) { return std::to_string(lo) + "-" + std::to_string(hi); }

Band parse_band(std::string_view item, std::size_t line) {
  const auto colon = item.find(':');
  if (colon == std::string_view::npos) throw ParseError("band without ':'", line);
  Band band;
  auto from = to_double(item.substr(0, colon));
  if (!from) throw ParseError("bad band threshold", line);
  band.from = *from;
  std::string_view age = trim(item.substr(colon + 1));
  if (consume_prefix(age, "s+")) {
    const auto dash = age.find("-s+");
    if (dash == std::string_view::npos) throw ParseError("bad linear band", line);
    auto lo = to_int(age.substr(0, dash));
    auto hi = to_int(age.substr(dash + 3));
    if (!lo || !hi || *lo > *hi) throw ParseError("bad linear band", line);
    band.linear = true;
    band.linear_lower = *lo;
    band.linear_upper = *hi;
    return band;
  }
  try {
    band.fixed = parse_age_label(age);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), line);
  }
  return band;
}

void parse_into(ReadabilityConfig& cfg, std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line);
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));

    if (key == "version") {
      auto v = to_int(value);
      if (!v || *v != 1) throw ParseError("unsupported config version", line);
      cfg.version = *v;
      continue;
    }
    const auto dot = key.find('.');
    if (dot == std::string_view::npos) throw ParseError("unknown key", line);
    const std::string_view group = key.substr(0, dot);
    const std::string_view field = key.substr(dot + 1);

    if (group == "rating") {
      auto v = to_double(value);
      if (!v || *v < 0.0 || *v > 1.0) throw ParseError("rating threshold must be in [0,1]", line);
      if (field == "very_easy") cfg.rating.very_easy = *v;
      else if (field == "easy") cfg.rating.easy = *v;
      else if (field == "medium") cfg.rating.medium = *v;
      else if (field == "difficult") cfg.rating.difficult = *v;
      else throw ParseError("unknown rating band", line);
      continue;
    }

    auto formula = formula_from_key(group);
    if (!formula) throw ParseError("unknown formula key", line);
    BandTable& table = cfg.bands[static_cast<std::size_t>(*formula)];
    if (field == "quantize") {
      if (value == "none") table.quantize = Quantize::None;
      else if (value == "ceil") table.quantize = Quantize::Ceil;
      else if (value == "round") table.quantize = Quantize::Round;
      else throw ParseError("quantize must be none, ceil or round", line);
    } else if (field == "bands") {
      std::vector<Band> bands;
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        bands.push_back(parse_band(trim(rest.substr(0, comma)), line));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      if (bands.empty() || bands.front().from != -std::numeric_limits<double>::infinity()) {
        throw ParseError("first band must start at -inf", line);
      }
      for (std::size_t i = 1; i < bands.size(); ++i) {
        if (!(bands[i].from > bands[i - 1].from)) throw ParseError("band thresholds must increase", line);
      }
      table.bands = std::move(bands);
    } else {
      throw ParseError("unknown formula field", line);
    }
  }
}

void validate(const ReadabilityConfig& cfg) {
  for (Formula f : kAllFormulas) {
    if (cfg.table(f).bands.empty()) {
      throw ParseError(std::string("missing bands for ") + formula_key(f), 0);
    }
  }
  const auto& r = cfg.rating;
  if (!(r.very_easy > r.easy && r.easy > r.medium && r.medium > r.difficult && r.difficult > 0.0)) {
    throw ParseError("rating thresholds must strictly decrease from very_easy to difficult", 0);
  }
}

}  // namespace

AgeRange AgeRange::undefined() { return AgeRange{}; }

AgeRange AgeRange::exactly(int age) { return AgeRange{true, age, age, std::to_string(age)}; }

AgeRange AgeRange::between(int lo, int hi) {
  if (lo > hi) throw InvalidInput("age range lower bound exceeds upper bound");
  return AgeRange{true, lo, hi, range_label(lo, hi)};
}

AgeRange AgeRange::at_least(int lo) {
  return AgeRange{true, lo, std::nullopt, std::string(kGe) + std::to_string(lo)};
}

AgeRange AgeRange::at_most(int hi) {
  return AgeRange{true, std::nullopt, hi, std::string(kLe) + std::to_string(hi)};
}

bool AgeRange::intersects(const AgeRange& other) const {
  if (!defined || !other.defined) return false;
  const int lo_a = lower.value_or(std::numeric_limits<int>::min());
  const int hi_a = upper.value_or(std::numeric_limits<int>::max());
  const int lo_b = other.lower.value_or(std::numeric_limits<int>::min());
  const int hi_b = other.upper.value_or(std::numeric_limits<int>::max());
  return lo_a <= hi_b && lo_b <= hi_a;
}

AgeRange parse_age_label(std::string_view text) {
  text = trim(text);
  if (text == "-") return AgeRange::undefined();
  const auto bad = [&] { return InvalidInput("bad age label '" + std::string(text) + "'"); };
  std::string_view rest = text;
  if (consume_prefix(rest, ">=") || consume_prefix(rest, kGe)) {
    // ">=19-20" keeps its printed form but is open above 19.
    const auto dash = rest.find('-');
    auto lo = to_int(rest.substr(0, dash));
    if (!lo) throw bad();
    AgeRange r = AgeRange::at_least(*lo);
    if (dash != std::string_view::npos) {
      auto hi = to_int(rest.substr(dash + 1));
      if (!hi || *hi < *lo) throw bad();
      r.label = std::string(kGe) + range_label(*lo, *hi);
    }
    return r;
  }
  if (consume_prefix(rest, "<=") || consume_prefix(rest, kLe)) {
    auto hi = to_int(rest);
    if (!hi) throw bad();
    return AgeRange::at_most(*hi);
  }
  const auto dash = rest.find('-', 1);
  if (dash == std::string_view::npos) {
    auto v = to_int(rest);
    if (!v) throw bad();
    return AgeRange::exactly(*v);
  }
  auto lo = to_int(rest.substr(0, dash));
  auto hi = to_int(rest.substr(dash + 1));
  if (!lo || !hi || *lo > *hi) throw bad();
  return AgeRange::between(*lo, *hi);
}

AgeRange BandTable::lookup(double score) const {
  if (std::isnan(score) || bands.empty()) return AgeRange::undefined();
  double q = score;
  switch (quantize) {
    case Quantize::None: break;
    case Quantize::Ceil: q = std::ceil(score); break;
    case Quantize::Round: q = std::round(score); break;
  }
  const Band* hit = &bands.front();
  for (const Band& b : bands) {
    if (q >= b.from) hit = &b;
    else break;
  }
  if (!hit->linear) return hit->fixed;
  const int s = static_cast<int>(q);
  return AgeRange::between(s + hit->linear_lower, s + hit->linear_upper);
}

std::string_view default_config_text() { return kDefaultConfig; }

const ReadabilityConfig& ReadabilityConfig::defaults() {
  static const ReadabilityConfig cfg = [] {
    ReadabilityConfig c;
    std::istringstream in{std::string(kDefaultConfig)};
    parse_into(c, in);
    validate(c);
    return c;
  }();
  return cfg;
}

ReadabilityConfig ReadabilityConfig::parse(std::istream& in) {
  ReadabilityConfig cfg = defaults();
  parse_into(cfg, in);
  validate(cfg);
  return cfg;
}

ReadabilityConfig ReadabilityConfig::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

ReadabilityConfig ReadabilityConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse(in);
}

}  // namespace bnread
