#include "arccover/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "arccover/parse.hpp"

namespace arccover {

std::string fmt_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string to_string(SeriesOutcome outcome) {
  switch (outcome) {
    case SeriesOutcome::Divergent: return "divergent";
    case SeriesOutcome::Convergent: return "convergent";
    case SeriesOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(VerdictMethod method) {
  return method == VerdictMethod::Analytic ? "analytic" : "numeric-heuristic";
}

std::string to_string(GaugeOrder order) {
  switch (order) {
    case GaugeOrder::FirstFiner: return "first-finer";
    case GaugeOrder::SecondFiner: return "second-finer";
    case GaugeOrder::NeitherOrEquivalent: return "neither-or-equivalent";
  }
  return "?";
}

nlohmann::json to_json(const SeriesVerdict& verdict) {
  nlohmann::json sums = nlohmann::json::array();
  for (const auto& [n, s] : verdict.partial_sums) {
    sums.push_back({{"horizon", n}, {"sum", s}});
  }
  return {{"verdict", to_string(verdict.outcome)},
          {"method", to_string(verdict.method)},
          {"partial_sums", std::move(sums)}};
}

nlohmann::json to_json(const CriticalExponent& exponent) {
  return {{"value", exponent.value}, {"method", to_string(exponent.method)}};
}

nlohmann::json to_json(const ArcSet& set) {
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& iv : set.intervals()) {
    intervals.push_back({iv.lo, iv.hi});
  }
  return {{"intervals", std::move(intervals)}, {"measure", set.measure()}};
}

nlohmann::json to_json(const TrialConfig& config) {
  return {{"seed", config.seed},
          {"trial_index", config.trial_index},
          {"seq", render_sequence(config.seq)},
          {"horizon", config.horizon},
          {"checkpoints", config.checkpoints},
          {"tail_starts", config.tail_starts}};
}

nlohmann::json to_json(const TrialResult& result) {
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& [n, u] : result.uncovered_curve) {
    curve.push_back({{"n", n}, {"uncovered", u}});
  }
  nlohmann::json tails = nlohmann::json::array();
  for (const auto& [m, set] : result.tail_unions) {
    tails.push_back({{"m", m}, {"union", to_json(set)}});
  }
  nlohmann::json j{{"config", to_json(result.config)},
                   {"uncovered_curve", std::move(curve)},
                   {"tail_unions", std::move(tails)}};
  if (result.first_cover_n) {
    j["first_cover_n"] = *result.first_cover_n;
  } else {
    j["first_cover_n"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const EnsembleStats& stats) {
  nlohmann::json per_trial = nlohmann::json::array();
  for (const auto& t : stats.per_trial) {
    nlohmann::json tails = nlohmann::json::array();
    for (const auto& [m, measure] : t.tail_measures) {
      tails.push_back({{"m", m}, {"measure", measure}});
    }
    nlohmann::json row{{"trial", t.trial_index},
                       {"uncovered_at_horizon", t.uncovered_at_horizon},
                       {"tail_measures", std::move(tails)}};
    row["first_cover_n"] =
        t.first_cover_n ? nlohmann::json(*t.first_cover_n) : nlohmann::json(nullptr);
    per_trial.push_back(std::move(row));
  }
  nlohmann::json mean_curve = nlohmann::json::array();
  for (const auto& [n, u] : stats.mean_uncovered) {
    mean_curve.push_back({{"n", n}, {"uncovered", u}});
  }
  nlohmann::json mean_tails = nlohmann::json::array();
  for (const auto& [m, v] : stats.mean_tail_measure) {
    mean_tails.push_back({{"m", m}, {"measure", v}});
  }
  nlohmann::json j{{"trials", stats.trials},
                   {"coverage_fraction", stats.coverage_fraction},
                   {"per_trial", std::move(per_trial)},
                   {"mean_uncovered", std::move(mean_curve)},
                   {"mean_tail_measure", std::move(mean_tails)}};
  j["mean_first_cover"] = stats.mean_first_cover
                              ? nlohmann::json(*stats.mean_first_cover)
                              : nlohmann::json(nullptr);
  if (stats.first_cover_quantiles) {
    j["first_cover_quantiles"] = {{"q25", stats.first_cover_quantiles->q25},
                                  {"median", stats.first_cover_quantiles->median},
                                  {"q75", stats.first_cover_quantiles->q75}};
  } else {
    j["first_cover_quantiles"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const DimensionEstimate& estimate) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& [j, n] : estimate.counts) {
    counts.push_back({{"j", j}, {"count", n}});
  }
  return {{"dimension", estimate.dimension},
          {"raw_slope", estimate.raw_slope},
          {"levels", {{"lo", estimate.levels.lo}, {"hi", estimate.levels.hi}}},
          {"counts", std::move(counts)},
          {"local_slopes", estimate.local_slopes},
          {"residual_sum", estimate.residual_sum},
          {"degenerate", estimate.degenerate}};
}

nlohmann::json to_json(const GaugeMeasureBound& bound) {
  nlohmann::json j{{"n0", bound.n0}, {"context", to_json(bound.context)}};
  switch (bound.kind) {
    case GaugeMeasureBound::Kind::Finite:
      j["bound"] = *bound.value;
      j["kind"] = "finite";
      break;
    case GaugeMeasureBound::Kind::Infinite:
      j["bound"] = nullptr;
      j["kind"] = "infinite";
      break;
    case GaugeMeasureBound::Kind::Undetermined:
      j["bound"] = nullptr;
      j["kind"] = "undetermined";
      break;
  }
  return j;
}

nlohmann::json to_json(const NestedCertificate& cert) {
  nlohmann::json arcs = nlohmann::json::array();
  for (std::size_t k = 0; k < cert.levels.size(); ++k) {
    const auto& level = cert.levels[k];
    nlohmann::json endpoints = nlohmann::json::array();
    if (level.length > 0.0) {
      const ArcSet arc = make_arc(level.center, level.length);
      for (const auto& iv : arc.intervals()) {
        endpoints.push_back({iv.lo, iv.hi});
      }
    }
    arcs.push_back({{"level", k + 1},
                    {"n", level.n},
                    {"center", level.center.position()},
                    {"length", level.length},
                    {"endpoints", std::move(endpoints)}});
  }
  return {{"seed", cert.seed},
          {"trial_index", cert.trial_index},
          {"depth", cert.depth()},
          {"indices", cert.indices()},
          {"arcs", std::move(arcs)},
          {"point", cert.point.position()},
          {"candidates_examined", cert.candidates_examined},
          {"search_cap", cert.search_cap}};
}

nlohmann::json to_json(const GaugeValidation& validation) {
  nlohmann::json j{{"valid", validation.valid},
                   {"grid_points", validation.grid_points}};
  if (!validation.valid) {
    j["axiom"] = validation.axiom;
    j["r_first"] = validation.r_first;
    j["r_second"] = validation.r_second;
  }
  return j;
}

std::string trial_curve_csv(const TrialResult& result) {
  std::string out = "N,uncovered_measure\n";
  for (const auto& [n, u] : result.uncovered_curve) {
    out += std::to_string(n);
    out += ',';
    out += fmt_g17(u);
    out += '\n';
  }
  return out;
}

std::string ensemble_csv(const EnsembleStats& stats) {
  std::string out = "trial,covered,first_cover_n,uncovered_at_horizon";
  for (const auto& [m, v] : stats.mean_tail_measure) {
    out += ",tail_measure_m" + std::to_string(m);
  }
  out += '\n';
  for (const auto& t : stats.per_trial) {
    out += std::to_string(t.trial_index);
    out += t.first_cover_n ? ",1," + std::to_string(*t.first_cover_n) : ",0,";
    out += ',';
    out += fmt_g17(t.uncovered_at_horizon);
    for (const auto& [m, v] : t.tail_measures) {
      out += ',';
      out += fmt_g17(v);
    }
    out += '\n';
  }
  return out;
}

std::string dimension_csv(const DimensionEstimate& estimate) {
  std::string out = "j,N_j,local_slope\n";
  for (std::size_t k = 0; k < estimate.counts.size(); ++k) {
    out += std::to_string(estimate.counts[k].first);
    out += ',';
    out += std::to_string(estimate.counts[k].second);
    out += ',';
    out += k < estimate.local_slopes.size() ? fmt_g17(estimate.local_slopes[k])
                                            : std::string();
    out += '\n';
  }
  out += "dimension," + fmt_g17(estimate.dimension) + ',' +
         fmt_g17(estimate.raw_slope) + '\n';
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw IoError("read failure on '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out.good()) throw IoError("write failure on '" + path + "'");
}

}  // namespace arccover
