#include "arccover/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace arccover {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(what + ": '" + text + "' is not a real number");
  }
}

std::vector<double> parse_real_list(const std::string& payload,
                                    const std::string& what) {
  std::string text = payload;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw ParseError(what + ": cannot open file '" + text.substr(1) + "'");
    std::vector<double> values;
    double v = 0.0;
    while (in >> v) values.push_back(v);
    if (values.empty()) throw ParseError(what + ": file holds no values");
    return values;
  }
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) values.push_back(parse_real(item, what));
  }
  if (values.empty()) throw ParseError(what + ": empty value list");
  return values;
}

struct SpecTokens {
  std::string family;
  std::map<std::string, double> kv;
  std::string payload;  // bare token for explicit/table
};

SpecTokens tokenize_spec(const std::string& spec, const std::string& what) {
  const auto tokens = split_ws(spec);
  if (tokens.empty()) throw ParseError(what + ": empty specification");
  SpecTokens out;
  out.family = lower(tokens[0]);
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      if (!out.payload.empty()) {
        throw ParseError(what + ": unexpected extra token '" + tokens[i] + "'");
      }
      out.payload = tokens[i];
      continue;
    }
    const std::string key = lower(tokens[i].substr(0, eq));
    const std::string value = tokens[i].substr(eq + 1);
    if (out.kv.count(key)) throw ParseError(what + ": duplicate key '" + key + "'");
    // "values=..." style payloads keep their text form.
    if (key == "values" || key == "points") {
      out.payload = value;
      continue;
    }
    out.kv[key] = parse_real(value, what + " " + key);
  }
  return out;
}

double require_key(const SpecTokens& t, const std::string& key,
                   const std::string& what) {
  const auto it = t.kv.find(key);
  if (it == t.kv.end()) throw ParseError(what + ": missing parameter '" + key + "'");
  return it->second;
}

void reject_unknown(const SpecTokens& t, std::initializer_list<const char*> keys,
                    const std::string& what) {
  for (const auto& [key, value] : t.kv) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) {
          return key == k;
        }) == keys.end()) {
      throw ParseError(what + ": unknown parameter '" + key + "'");
    }
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

LengthSequence parse_sequence(const std::string& spec) {
  const auto t = tokenize_spec(spec, "sequence");
  try {
    if (t.family == "powerlaw") {
      reject_unknown(t, {"a", "alpha"}, "powerlaw");
      return LengthSequence::power_law(require_key(t, "a", "powerlaw"),
                                       require_key(t, "alpha", "powerlaw"));
    }
    if (t.family == "harmonic") {
      reject_unknown(t, {"c"}, "harmonic");
      return LengthSequence::harmonic(require_key(t, "c", "harmonic"));
    }
    if (t.family == "powerlog") {
      reject_unknown(t, {"a", "alpha", "beta"}, "powerlog");
      return LengthSequence::power_log(require_key(t, "a", "powerlog"),
                                       require_key(t, "alpha", "powerlog"),
                                       require_key(t, "beta", "powerlog"));
    }
    if (t.family == "geometric") {
      reject_unknown(t, {"q"}, "geometric");
      return LengthSequence::geometric(require_key(t, "q", "geometric"));
    }
    if (t.family == "explicit") {
      if (t.payload.empty()) throw ParseError("explicit: needs a value list or @file");
      auto seq = LengthSequence::explicit_list(
          parse_real_list(t.payload, "explicit lengths"));
      if (!seq.is_nonincreasing()) {
        throw ParseError("explicit: lengths must be nonincreasing");
      }
      return seq;
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown sequence family '" + t.family +
                   "' (expected powerlaw|harmonic|powerlog|geometric|explicit)");
}

GaugeFunction parse_gauge(const std::string& spec) {
  const auto t = tokenize_spec(spec, "gauge");
  try {
    if (t.family == "monomial") {
      reject_unknown(t, {"s"}, "monomial");
      return GaugeFunction::monomial(require_key(t, "s", "monomial"));
    }
    if (t.family == "monomiallog") {
      reject_unknown(t, {"s", "beta"}, "monomiallog");
      return GaugeFunction::monomial_log(require_key(t, "s", "monomiallog"),
                                         require_key(t, "beta", "monomiallog"));
    }
    if (t.family == "identity") {
      reject_unknown(t, {}, "identity");
      return GaugeFunction::identity();
    }
    if (t.family == "table") {
      if (t.payload.empty()) throw ParseError("table: needs r:g pairs or @file");
      std::vector<std::pair<double, double>> points;
      if (t.payload.front() == '@') {
        const auto values = parse_real_list(t.payload, "table points");
        if (values.size() % 2 != 0) {
          throw ParseError("table: file must hold r g pairs");
        }
        for (std::size_t i = 0; i < values.size(); i += 2) {
          points.emplace_back(values[i], values[i + 1]);
        }
      } else {
        std::stringstream in(t.payload);
        std::string pair;
        while (std::getline(in, pair, ',')) {
          const auto colon = pair.find(':');
          if (colon == std::string::npos) {
            throw ParseError("table: pair '" + pair + "' is not r:g");
          }
          points.emplace_back(parse_real(pair.substr(0, colon), "table r"),
                              parse_real(pair.substr(colon + 1), "table g"));
        }
      }
      return GaugeFunction::table(std::move(points));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown gauge family '" + t.family +
                   "' (expected monomial|monomiallog|identity|table)");
}

Arc parse_window(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) {
    throw ParseError("window: expected '<center>,<length>'");
  }
  const double center = parse_real(spec.substr(0, comma), "window center");
  const double length = parse_real(spec.substr(comma + 1), "window length");
  try {
    return Arc(CirclePoint(center), length);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

LevelRange parse_levels(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ParseError("levels: expected '<jmin>:<jmax>'");
  }
  const double lo = parse_real(spec.substr(0, colon), "levels jmin");
  const double hi = parse_real(spec.substr(colon + 1), "levels jmax");
  if (lo != std::floor(lo) || hi != std::floor(hi)) {
    throw ParseError("levels: bounds must be integers");
  }
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

std::string render_sequence(const LengthSequence& seq) {
  switch (seq.family()) {
    case SequenceFamily::PowerLaw:
      return "powerlaw a=" + g17(seq.a()) + " alpha=" + g17(seq.alpha());
    case SequenceFamily::Harmonic:
      return "harmonic c=" + g17(seq.c());
    case SequenceFamily::PowerLog:
      return "powerlog a=" + g17(seq.a()) + " alpha=" + g17(seq.alpha()) +
             " beta=" + g17(seq.beta());
    case SequenceFamily::Geometric:
      return "geometric q=" + g17(seq.q());
    case SequenceFamily::Explicit: {
      std::string out = "explicit ";
      for (std::size_t i = 0; i < seq.values().size(); ++i) {
        if (i) out += ',';
        out += g17(seq.values()[i]);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::string render_gauge(const GaugeFunction& g) {
  switch (g.family()) {
    case GaugeFamily::Monomial:
      return "monomial s=" + g17(g.s());
    case GaugeFamily::MonomialLog:
      return "monomiallog s=" + g17(g.s()) + " beta=" + g17(g.beta());
    case GaugeFamily::Identity:
      return "identity";
    case GaugeFamily::Table: {
      std::string out = "table ";
      for (std::size_t i = 0; i < g.points().size(); ++i) {
        if (i) out += ',';
        out += g17(g.points()[i].first) + ":" + g17(g.points()[i].second);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::string render_window(const Arc& window) {
  return g17(window.center.position()) + "," + g17(window.length);
}

std::string render_levels(const LevelRange& levels) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%d:%d", levels.lo, levels.hi);
  return buf;
}

std::string override_spec_key(const std::string& spec, const std::string& key,
                              double value) {
  auto tokens = split_ws(spec);
  if (tokens.empty()) throw ParseError("cannot override a key in an empty spec");
  const std::string prefix = lower(key) + "=";
  bool replaced = false;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (lower(tokens[i]).rfind(prefix, 0) == 0) {
      tokens[i] = prefix + g17(value);
      replaced = true;
    }
  }
  if (!replaced) tokens.push_back(prefix + g17(value));
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace arccover
