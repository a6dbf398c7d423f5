#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arccover/dimension.hpp"
#include "arccover/io.hpp"
#include "arccover/parse.hpp"
#include "arccover/point_finder.hpp"
#include "arccover/series.hpp"
#include "arccover/simulate.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using arccover::fmt_g17;

struct Options {
  std::string command;
  std::string seq_spec;
  std::string gauge_spec;
  std::uint64_t seed = arccover::kDefaultSeed;
  std::uint32_t trials = 20;
  std::uint64_t horizon = 100000;
  std::string tails = "10,100,1000";
  std::string levels;  // "jmin:jmax", empty = default band
  std::string window;  // "center,length", empty = none
  std::uint64_t m = 0;  // 0 = largest tail start
  unsigned copies = 2;
  unsigned depth = 3;
  std::uint64_t cap = 10'000'000;
  std::string param;
  std::string values;
  std::string out;     // empty = stdout
  std::string format = "csv";
  bool tails_given = false;
};

std::vector<std::uint64_t> parse_index_list(const std::string& text,
                                            const std::string& what) {
  std::vector<std::uint64_t> out;
  std::string item;
  std::stringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw arccover::ParseError(what + ": '" + item + "' is not an index");
    }
  }
  if (out.empty()) throw arccover::ParseError(what + ": empty list");
  return out;
}

std::vector<double> parse_value_list(const std::string& text,
                                     const std::string& what) {
  std::vector<double> out;
  std::string item;
  std::stringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw arccover::ParseError(what + ": '" + item + "' is not a real number");
    }
  }
  if (out.empty()) throw arccover::ParseError(what + ": empty list");
  return out;
}

std::string join_u64(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

// Every artifact starts with the resolved configuration so that re-running the
// recorded command reproduces the file byte for byte.
struct Meta {
  std::vector<std::pair<std::string, std::string>> fields;
  void add(const std::string& key, const std::string& value) {
    fields.emplace_back(key, value);
  }
  std::string csv_header() const {
    std::string out = "# arccover " + std::string(kVersion) + "\n";
    for (const auto& [k, v] : fields) out += "# " + k + ": " + v + "\n";
    return out;
  }
  nlohmann::json json() const {
    nlohmann::json j{{"tool", "arccover"}, {"version", kVersion}};
    for (const auto& [k, v] : fields) j[k] = v;
    return j;
  }
};

void emit(const Options& opt, const Meta& meta, const std::string& csv_body,
          const nlohmann::json& json_body) {
  std::string content;
  if (opt.format == "csv") {
    content = meta.csv_header() + csv_body;
  } else {
    nlohmann::json doc{{"meta", meta.json()}, {"result", json_body}};
    content = doc.dump(2);
    content += '\n';
  }
  if (opt.out.empty()) {
    std::cout << content;
  } else {
    arccover::write_text_file(opt.out, content);
  }
}

Meta base_meta(const Options& opt, const arccover::TrialConfig* cfg) {
  Meta meta;
  meta.add("command", opt.command);
  if (!opt.seq_spec.empty()) {
    meta.add("seq", arccover::render_sequence(arccover::parse_sequence(opt.seq_spec)));
  }
  if (!opt.gauge_spec.empty()) {
    meta.add("gauge", arccover::render_gauge(arccover::parse_gauge(opt.gauge_spec)));
  }
  meta.add("seed", std::to_string(opt.seed));
  if (cfg) {
    meta.add("trials", std::to_string(opt.trials));
    meta.add("horizon", std::to_string(cfg->horizon));
    meta.add("checkpoints", join_u64(cfg->checkpoints));
    meta.add("tails", join_u64(cfg->tail_starts));
  }
  return meta;
}

arccover::TrialConfig build_config(const Options& opt) {
  arccover::TrialConfig cfg(arccover::parse_sequence(opt.seq_spec), opt.horizon);
  cfg.seed = opt.seed;
  for (std::uint64_t m : parse_index_list(opt.tails, "tails")) {
    if (m <= cfg.horizon) {
      cfg.tail_starts.push_back(m);
    } else if (opt.tails_given) {
      throw arccover::ParseError("tails: start " + std::to_string(m) +
                                 " exceeds the horizon " +
                                 std::to_string(cfg.horizon));
    }
    // Default tail starts beyond a short horizon are clipped silently.
  }
  if (cfg.tail_starts.empty()) cfg.tail_starts.push_back(1);
  cfg.validate_and_normalize();
  return cfg;
}

std::uint64_t resolve_m(const Options& opt, const arccover::TrialConfig& cfg) {
  if (opt.m != 0) return opt.m;
  return cfg.tail_starts.back();  // deepest recorded tail is the best surrogate
}

int run_analyze(const Options& opt) {
  const auto seq = arccover::parse_sequence(opt.seq_spec);
  const auto s = seq.critical_exponent();
  const auto shepp = arccover::shepp_test(seq);
  const auto sums = arccover::classify_length_sum(seq);
  std::optional<arccover::SeriesVerdict> gauge_verdict;
  std::optional<arccover::GaugeFunction> gauge;
  if (!opt.gauge_spec.empty()) {
    gauge = arccover::parse_gauge(opt.gauge_spec);
    gauge_verdict = arccover::classify_series_gauge(seq, *gauge);
  }

  std::string regime;
  if (shepp.outcome == arccover::SeriesOutcome::Divergent) {
    regime = "full coverage a.s.; the covered set is the whole circle";
  } else if (shepp.outcome == arccover::SeriesOutcome::Inconclusive ||
             sums.outcome == arccover::SeriesOutcome::Inconclusive) {
    regime = "inconclusive series probes; no regime prediction";
  } else if (sums.outcome == arccover::SeriesOutcome::Divergent) {
    regime = "no full coverage a.s.; full Lebesgue measure; dimension " +
             fmt_g17(s.value);
  } else {
    regime = "no full coverage a.s.; Lebesgue-null; dimension " + fmt_g17(s.value) +
             "; nonempty via the nested-arc construction";
  }

  Meta meta = base_meta(opt, nullptr);
  meta.add("format", opt.format);

  std::string csv = "quantity,value,method\n";
  csv += "critical_exponent," + fmt_g17(s.value) + "," +
         arccover::to_string(s.method) + "\n";
  csv += "length_sum," + arccover::to_string(sums.outcome) + "," +
         arccover::to_string(sums.method) + "\n";
  csv += "shepp_series," + arccover::to_string(shepp.outcome) + "," +
         arccover::to_string(shepp.method) + "\n";
  for (const auto& [n, v] : shepp.partial_sums) {
    csv += "shepp_partial_sum_" + std::to_string(n) + "," + fmt_g17(v) + ",\n";
  }
  std::string gauge_regime;
  if (gauge_verdict) {
    csv += "gauge_series," + arccover::to_string(gauge_verdict->outcome) + "," +
           arccover::to_string(gauge_verdict->method) + "\n";
    switch (gauge_verdict->outcome) {
      case arccover::SeriesOutcome::Divergent:
        gauge_regime = "full g-measure in every open set a.s.";
        break;
      case arccover::SeriesOutcome::Convergent:
        gauge_regime = "g-measure zero a.s. (tail-sum covering bound applies)";
        break;
      case arccover::SeriesOutcome::Inconclusive:
        gauge_regime = "gauge series inconclusive; no g-measure prediction";
        break;
    }
    csv += "gauge_regime," + gauge_regime + ",\n";
  }
  csv += "predicted_regime," + regime + ",\n";

  nlohmann::json j{{"critical_exponent", arccover::to_json(s)},
                   {"length_sum", arccover::to_json(sums)},
                   {"shepp_series", arccover::to_json(shepp)},
                   {"predicted_regime", regime}};
  if (gauge_verdict) {
    j["gauge_series"] = arccover::to_json(*gauge_verdict);
    j["gauge_regime"] = gauge_regime;
  }

  emit(opt, meta, csv, j);
  return 0;
}

int run_simulate(const Options& opt) {
  auto cfg = build_config(opt);
  Meta meta = base_meta(opt, &cfg);
  meta.add("format", opt.format);
  if (opt.trials == 1) {
    const auto result = arccover::run_trial(cfg);
    emit(opt, meta, arccover::trial_curve_csv(result), arccover::to_json(result));
    return 0;
  }
  const auto stats = arccover::run_ensemble(cfg, opt.trials);
  emit(opt, meta, arccover::ensemble_csv(stats), arccover::to_json(stats));
  return 0;
}

struct DimensionSummary {
  std::vector<arccover::DimensionEstimate> per_trial;
  double mean = 0.0;
  double sd = 0.0;
  std::size_t degenerate = 0;
};

DimensionSummary dimension_over_trials(const arccover::TrialConfig& cfg,
                                       std::uint32_t trials, std::uint64_t m,
                                       std::optional<arccover::Arc> window,
                                       std::optional<arccover::LevelRange> levels) {
  DimensionSummary summary;
  for (std::uint32_t t = 0; t < trials; ++t) {
    const auto result = arccover::run_trial(cfg.with_trial_index(t));
    summary.per_trial.push_back(
        arccover::estimate_dimension(result, m, window, levels));
  }
  double sum = 0.0, sq = 0.0;
  std::size_t used = 0;
  for (const auto& est : summary.per_trial) {
    if (est.degenerate) {
      ++summary.degenerate;
      continue;
    }
    sum += est.dimension;
    sq += est.dimension * est.dimension;
    ++used;
  }
  if (used > 0) {
    summary.mean = sum / static_cast<double>(used);
    if (used > 1) {
      const double var =
          (sq - sum * sum / static_cast<double>(used)) / static_cast<double>(used - 1);
      summary.sd = var > 0.0 ? std::sqrt(var) : 0.0;
    }
  }
  return summary;
}

std::string dimension_table_csv(const std::vector<arccover::DimensionEstimate>& ests,
                                double mean, double sd) {
  // Mean counts across trials per level, local slopes of the mean curve.
  std::string out = "j,N_j,local_slope\n";
  if (!ests.empty()) {
    const auto& levels = ests.front().levels;
    std::vector<double> mean_counts;
    for (int j = levels.lo; j <= levels.hi; ++j) {
      const std::size_t idx = static_cast<std::size_t>(j - levels.lo);
      double sum = 0.0;
      for (const auto& est : ests) {
        sum += static_cast<double>(est.counts[idx].second);
      }
      mean_counts.push_back(sum / static_cast<double>(ests.size()));
    }
    for (std::size_t k = 0; k < mean_counts.size(); ++k) {
      out += std::to_string(levels.lo + static_cast<int>(k));
      out += ',';
      out += fmt_g17(mean_counts[k]);
      out += ',';
      if (k + 1 < mean_counts.size() && mean_counts[k] > 0.0 &&
          mean_counts[k + 1] > 0.0) {
        out += fmt_g17(std::log2(mean_counts[k + 1]) - std::log2(mean_counts[k]));
      }
      out += '\n';
    }
  }
  out += "dimension," + fmt_g17(mean) + ',' + fmt_g17(sd) + '\n';
  return out;
}

nlohmann::json dimension_summary_json(const DimensionSummary& summary) {
  nlohmann::json per_trial = nlohmann::json::array();
  for (const auto& est : summary.per_trial) per_trial.push_back(arccover::to_json(est));
  return {{"per_trial", std::move(per_trial)},
          {"mean_dimension", summary.mean},
          {"sd_dimension", summary.sd},
          {"degenerate_trials", summary.degenerate}};
}

int run_dimension(const Options& opt) {
  auto cfg = build_config(opt);
  const std::uint64_t m = resolve_m(opt, cfg);
  if (std::find(cfg.tail_starts.begin(), cfg.tail_starts.end(), m) ==
      cfg.tail_starts.end()) {
    cfg.tail_starts.push_back(m);
    cfg.validate_and_normalize();
  }
  std::optional<arccover::Arc> window;
  if (!opt.window.empty()) window = arccover::parse_window(opt.window);
  std::optional<arccover::LevelRange> levels;
  if (!opt.levels.empty()) levels = arccover::parse_levels(opt.levels);
  const auto resolved_levels =
      levels ? *levels : arccover::default_level_range(cfg.seq, m, cfg.horizon);

  const auto summary =
      dimension_over_trials(cfg, opt.trials, m, window, resolved_levels);

  Meta meta = base_meta(opt, &cfg);
  meta.add("m", std::to_string(m));
  meta.add("levels", arccover::render_levels(resolved_levels));
  if (window) meta.add("window", arccover::render_window(*window));
  meta.add("format", opt.format);
  emit(opt, meta, dimension_table_csv(summary.per_trial, summary.mean, summary.sd),
       dimension_summary_json(summary));
  return 0;
}

int run_intersect(const Options& opt) {
  auto cfg = build_config(opt);
  const std::uint64_t m = resolve_m(opt, cfg);
  std::optional<arccover::Arc> window;
  if (!opt.window.empty()) window = arccover::parse_window(opt.window);
  std::optional<arccover::LevelRange> levels;
  if (!opt.levels.empty()) levels = arccover::parse_levels(opt.levels);
  const auto resolved_levels =
      levels ? *levels : arccover::default_level_range(cfg.seq, m, cfg.horizon);

  DimensionSummary summary;
  for (std::uint32_t e = 0; e < opt.trials; ++e) {
    auto base = cfg.with_trial_index(e * opt.copies);
    summary.per_trial.push_back(arccover::intersection_experiment(
        base, opt.copies, m, window, resolved_levels));
  }
  double sum = 0.0, sq = 0.0;
  std::size_t used = 0;
  for (const auto& est : summary.per_trial) {
    if (est.degenerate) {
      ++summary.degenerate;
      continue;
    }
    sum += est.dimension;
    sq += est.dimension * est.dimension;
    ++used;
  }
  if (used > 0) {
    summary.mean = sum / static_cast<double>(used);
    if (used > 1) {
      const double var =
          (sq - sum * sum / static_cast<double>(used)) / static_cast<double>(used - 1);
      summary.sd = var > 0.0 ? std::sqrt(var) : 0.0;
    }
  }

  Meta meta = base_meta(opt, &cfg);
  meta.add("copies", std::to_string(opt.copies));
  meta.add("m", std::to_string(m));
  meta.add("levels", arccover::render_levels(resolved_levels));
  if (window) meta.add("window", arccover::render_window(*window));
  meta.add("format", opt.format);
  emit(opt, meta, dimension_table_csv(summary.per_trial, summary.mean, summary.sd),
       dimension_summary_json(summary));
  return 0;
}

int run_find_point(const Options& opt) {
  const auto seq = arccover::parse_sequence(opt.seq_spec);
  Meta meta = base_meta(opt, nullptr);
  meta.add("depth", std::to_string(opt.depth));
  meta.add("cap", std::to_string(opt.cap));
  meta.add("format", "json");

  nlohmann::json body;
  std::string csv;
  try {
    const auto cert = arccover::find_point(opt.seed, 0, seq, opt.depth, opt.cap);
    const auto check = arccover::verify_certificate(cert, seq);
    const std::uint64_t horizon = cert.levels.back().n;
    const auto hits =
        arccover::verify_membership(cert.point, opt.seed, 0, seq, horizon);
    body = {{"certificate", arccover::to_json(cert)},
            {"verified", check.ok},
            {"verification_detail", check.detail},
            {"membership_hits", hits},
            {"membership_horizon", horizon},
            {"complete", true}};
  } catch (const arccover::SearchCapExhausted& e) {
    body = {{"certificate", arccover::to_json(e.partial)},
            {"complete", false},
            {"failed_level", e.failed_level},
            {"error", e.what()}};
  }
  // Certificates are structured data; they are emitted as JSON regardless of
  // the requested format.
  Options json_opt = opt;
  json_opt.format = "json";
  emit(json_opt, meta, csv, body);
  return 0;
}

int run_sweep(const Options& opt) {
  if (opt.param.empty() || opt.values.empty()) {
    throw arccover::ParseError("sweep: needs --param and --values");
  }
  const auto values = parse_value_list(opt.values, "sweep values");
  // Sweep tail start: the log-scale midpoint of [1, horizon]. Pilot-calibrated
  // so the default level band of every grid point sits on the informative part
  // of the count profile.
  const std::uint64_t m =
      opt.m != 0 ? opt.m
                 : static_cast<std::uint64_t>(
                       std::ceil(std::sqrt(static_cast<double>(opt.horizon))));

  std::string csv = "param,value,critical_exponent,mean_dimension,sd_dimension,trials\n";
  nlohmann::json rows = nlohmann::json::array();
  for (double v : values) {
    Options point = opt;
    point.seq_spec = arccover::override_spec_key(opt.seq_spec, opt.param, v);
    arccover::TrialConfig cfg(arccover::parse_sequence(point.seq_spec), opt.horizon);
    cfg.seed = opt.seed;
    cfg.tail_starts = {m};
    cfg.validate_and_normalize();
    std::optional<arccover::LevelRange> levels;
    if (!opt.levels.empty()) levels = arccover::parse_levels(opt.levels);
    const auto resolved =
        levels ? *levels : arccover::default_level_range(cfg.seq, m, cfg.horizon);
    const auto summary = dimension_over_trials(cfg, opt.trials, m, {}, resolved);
    const auto s = cfg.seq.critical_exponent();
    csv += opt.param + ',' + fmt_g17(v) + ',' + fmt_g17(s.value) + ',' +
           fmt_g17(summary.mean) + ',' + fmt_g17(summary.sd) + ',' +
           std::to_string(opt.trials) + '\n';
    rows.push_back({{"param", opt.param},
                    {"value", v},
                    {"critical_exponent", s.value},
                    {"mean_dimension", summary.mean},
                    {"sd_dimension", summary.sd},
                    {"levels", arccover::render_levels(resolved)},
                    {"trials", opt.trials}});
  }

  // The base spec may deliberately omit the swept key, so echo it verbatim.
  Meta meta;
  meta.add("command", opt.command);
  meta.add("seq", opt.seq_spec);
  meta.add("param", opt.param);
  meta.add("values", opt.values);
  meta.add("seed", std::to_string(opt.seed));
  meta.add("trials", std::to_string(opt.trials));
  meta.add("horizon", std::to_string(opt.horizon));
  meta.add("m", std::to_string(m));
  meta.add("format", opt.format);
  emit(opt, meta, csv, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"random arc coverings of the circle: simulation and analysis"};
  app.require_subcommand(1);

  const auto add_common = [&opt](CLI::App* sub, bool needs_seq) {
    auto* seq = sub->add_option("--seq", opt.seq_spec,
                                "sequence spec, e.g. 'powerlaw a=1 alpha=2'");
    if (needs_seq) seq->required();
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--out", opt.out, "output path (stdout when absent)");
    sub->add_option("--format", opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* analyze = app.add_subcommand("analyze", "series criteria and regime prediction");
  add_common(analyze, true);
  analyze->add_option("--gauge", opt.gauge_spec, "gauge spec, e.g. 'monomial s=0.5'");

  auto* simulate = app.add_subcommand("simulate", "seeded covering trials");
  add_common(simulate, true);
  simulate->add_option("--trials", opt.trials, "number of trials");
  simulate->add_option("--horizon", opt.horizon, "arcs per trial");
  simulate->add_option("--tails", opt.tails, "tail starts m (comma list)");

  auto* dimension = app.add_subcommand("dimension", "box-counting dimension of tail unions");
  add_common(dimension, true);
  dimension->add_option("--trials", opt.trials, "number of trials");
  dimension->add_option("--horizon", opt.horizon, "arcs per trial");
  dimension->add_option("--tails", opt.tails, "tail starts m (comma list)");
  dimension->add_option("--m", opt.m, "tail start to estimate on (default: largest)");
  dimension->add_option("--levels", opt.levels, "dyadic level band jmin:jmax");
  dimension->add_option("--window", opt.window, "restriction window center,length");

  auto* intersect = app.add_subcommand("intersect", "dimension of intersected independent copies");
  add_common(intersect, true);
  intersect->add_option("--trials", opt.trials, "number of intersection experiments");
  intersect->add_option("--horizon", opt.horizon, "arcs per trial");
  intersect->add_option("--tails", opt.tails, "tail starts m (comma list)");
  intersect->add_option("--m", opt.m, "tail start to intersect (default: largest)");
  intersect->add_option("--copies", opt.copies, "independent copies per experiment");
  intersect->add_option("--levels", opt.levels, "dyadic level band jmin:jmax");
  intersect->add_option("--window", opt.window, "restriction window center,length");

  auto* find_point = app.add_subcommand("find-point", "nested-arc membership certificate");
  add_common(find_point, true);
  find_point->add_option("--depth", opt.depth, "certificate depth K");
  find_point->add_option("--cap", opt.cap, "candidate cap per level");

  auto* sweep = app.add_subcommand("sweep", "dimension estimates over a parameter grid");
  add_common(sweep, true);
  sweep->add_option("--param", opt.param, "sequence key to sweep (e.g. alpha)");
  sweep->add_option("--values", opt.values, "comma list of parameter values");
  sweep->add_option("--trials", opt.trials, "trials per grid point");
  sweep->add_option("--horizon", opt.horizon, "arcs per trial");
  sweep->add_option("--m", opt.m, "tail start (default: ceil(sqrt(horizon)))");
  sweep->add_option("--levels", opt.levels, "dyadic level band jmin:jmax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  for (CLI::App* sub : {simulate, dimension, intersect}) {
    if (sub->parsed()) {
      const auto* tails_opt = sub->get_option_no_throw("--tails");
      opt.tails_given = tails_opt != nullptr && tails_opt->count() > 0;
    }
  }

  try {
    if (analyze->parsed()) {
      opt.command = "analyze";
      return run_analyze(opt);
    }
    if (simulate->parsed()) {
      opt.command = "simulate";
      return run_simulate(opt);
    }
    if (dimension->parsed()) {
      opt.command = "dimension";
      return run_dimension(opt);
    }
    if (intersect->parsed()) {
      opt.command = "intersect";
      return run_intersect(opt);
    }
    if (find_point->parsed()) {
      opt.command = "find-point";
      return run_find_point(opt);
    }
    if (sweep->parsed()) {
      opt.command = "sweep";
      return run_sweep(opt);
    }
  } catch (const arccover::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {  // includes ParseError
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
