#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "arccover/dimension.hpp"
#include "arccover/point_finder.hpp"
#include "arccover/series.hpp"
#include "arccover/simulate.hpp"

namespace arccover {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Locale-independent "%.17g" rendering; round-trips doubles exactly.
std::string fmt_g17(double value);

std::string to_string(SeriesOutcome outcome);
std::string to_string(VerdictMethod method);
std::string to_string(GaugeOrder order);

nlohmann::json to_json(const SeriesVerdict& verdict);
nlohmann::json to_json(const CriticalExponent& exponent);
nlohmann::json to_json(const ArcSet& set);
nlohmann::json to_json(const TrialConfig& config);
nlohmann::json to_json(const TrialResult& result);
nlohmann::json to_json(const EnsembleStats& stats);
nlohmann::json to_json(const DimensionEstimate& estimate);
nlohmann::json to_json(const GaugeMeasureBound& bound);
nlohmann::json to_json(const NestedCertificate& cert);
nlohmann::json to_json(const GaugeValidation& validation);

/// CSV bodies per the serialization contracts (no metadata header):
/// uncovered curve: columns N,uncovered_measure; ensemble: one row per trial;
/// dimension: columns j,N_j,local_slope plus a summary row.
std::string trial_curve_csv(const TrialResult& result);
std::string ensemble_csv(const EnsembleStats& stats);
std::string dimension_csv(const DimensionEstimate& estimate);

std::string read_text_file(const std::string& path);     // throws IoError
void write_text_file(const std::string& path, const std::string& content);

}  // namespace arccover
