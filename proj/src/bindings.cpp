#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arccover/dimension.hpp"
#include "arccover/io.hpp"
#include "arccover/parse.hpp"
#include "arccover/point_finder.hpp"
#include "arccover/rng.hpp"
#include "arccover/series.hpp"
#include "arccover/simulate.hpp"

namespace py = pybind11;
using namespace arccover;

namespace {

std::string dumps(const nlohmann::json& j) { return j.dump(2); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random arc coverings of the circle: simulation, series criteria, "
            "dimension estimation and nested-arc certificates.";

  m.attr("DEFAULT_SEED") = kDefaultSeed;
#ifdef ARCCOVER_VERSION
  m.attr("__version__") = ARCCOVER_VERSION;
#else
  m.attr("__version__") = "dev";
#endif

  py::register_exception<SearchCapExhausted>(m, "SearchCapExhaustedError");

  py::class_<CirclePoint>(m, "CirclePoint")
      .def(py::init<double>(), py::arg("position"))
      .def_property_readonly("position", &CirclePoint::position)
      .def("__repr__", [](const CirclePoint& p) {
        return "CirclePoint(" + fmt_g17(p.position()) + ")";
      })
      .def("__eq__", [](const CirclePoint& a, const CirclePoint& b) { return a == b; },
           py::is_operator());

  py::class_<Arc>(m, "Arc")
      .def(py::init<CirclePoint, double>(), py::arg("center"), py::arg("length"))
      .def(py::init([](double center, double length) {
             return Arc(CirclePoint(center), length);
           }),
           py::arg("center"), py::arg("length"))
      .def_readonly("center", &Arc::center)
      .def_readonly("length", &Arc::length);

  py::class_<ArcSet>(m, "ArcSet")
      .def(py::init<>())
      .def_static("full_circle", &ArcSet::full_circle)
      .def_static("from_intervals",
                  [](const std::vector<std::pair<double, double>>& pairs) {
                    std::vector<ArcSet::Interval> intervals;
                    intervals.reserve(pairs.size());
                    for (const auto& [lo, hi] : pairs) intervals.push_back({lo, hi});
                    return ArcSet::from_intervals(std::move(intervals));
                  })
      .def_property_readonly("intervals",
                             [](const ArcSet& s) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& iv : s.intervals()) {
                                 out.emplace_back(iv.lo, iv.hi);
                               }
                               return out;
                             })
      .def("measure", &ArcSet::measure)
      .def("contains", [](const ArcSet& s, double p) { return s.contains(CirclePoint(p)); })
      .def("union", &ArcSet::unite)
      .def("complement", &ArcSet::complement)
      .def("intersect", &ArcSet::intersect)
      .def("contains_set", &ArcSet::contains_set)
      .def("is_full", &ArcSet::is_full)
      .def("__len__", &ArcSet::size)
      .def("__eq__", [](const ArcSet& a, const ArcSet& b) { return a == b; },
           py::is_operator());

  m.def("torus_distance",
        [](double x, double y) { return torus_distance(CirclePoint(x), CirclePoint(y)); },
        py::arg("x"), py::arg("y"));
  m.def("make_arc",
        [](double center, double length) { return make_arc(CirclePoint(center), length); },
        py::arg("center"), py::arg("length"));
  m.def("arc_contains_arc", &arc_contains_arc, py::arg("outer"), py::arg("inner"));
  m.def("sample_center",
        [](std::uint64_t seed, std::uint32_t trial, std::uint64_t n) {
          return sample_center(seed, trial, n).position();
        },
        py::arg("seed"), py::arg("trial_index"), py::arg("n"));

  py::class_<LengthSequence>(m, "LengthSequence")
      .def_static("parse", &parse_sequence, py::arg("spec"))
      .def_static("power_law", &LengthSequence::power_law, py::arg("a"), py::arg("alpha"))
      .def_static("harmonic", &LengthSequence::harmonic, py::arg("c"))
      .def_static("power_log", &LengthSequence::power_log, py::arg("a"),
                  py::arg("alpha"), py::arg("beta"))
      .def_static("geometric", &LengthSequence::geometric, py::arg("q"))
      .def_static("explicit_list", &LengthSequence::explicit_list, py::arg("values"))
      .def("length", &LengthSequence::length, py::arg("n"))
      .def("critical_exponent",
           [](const LengthSequence& seq) {
             const auto s = seq.critical_exponent();
             return py::make_tuple(s.value, to_string(s.method));
           })
      .def("spec", &render_sequence)
      .def("__repr__", [](const LengthSequence& s) {
        return "LengthSequence('" + render_sequence(s) + "')";
      });

  py::class_<GaugeFunction>(m, "GaugeFunction")
      .def_static("parse", &parse_gauge, py::arg("spec"))
      .def_static("monomial", &GaugeFunction::monomial, py::arg("s"))
      .def_static("monomial_log", &GaugeFunction::monomial_log, py::arg("s"),
                  py::arg("beta"))
      .def_static("identity", &GaugeFunction::identity)
      .def_static("table", &GaugeFunction::table, py::arg("points"))
      .def("__call__", &GaugeFunction::operator(), py::arg("r"))
      .def("spec", &render_gauge)
      .def("__repr__", [](const GaugeFunction& g) {
        return "GaugeFunction('" + render_gauge(g) + "')";
      });

  m.def("validate_gauge",
        [](const GaugeFunction& g) { return dumps(to_json(validate_gauge(g))); });
  m.def("compare_gauges", [](const GaugeFunction& g1, const GaugeFunction& g2) {
    return to_string(compare_gauges(g1, g2).order);
  });

  m.def("classify_length_sum",
        [](const LengthSequence& seq) { return dumps(to_json(classify_length_sum(seq))); });
  m.def("shepp_test",
        [](const LengthSequence& seq) { return dumps(to_json(shepp_test(seq))); });
  m.def("shepp_verdict",
        [](const LengthSequence& seq) { return to_string(shepp_test(seq).outcome); });
  m.def("classify_series_gauge",
        [](const LengthSequence& seq, const GaugeFunction& g) {
          return to_string(classify_series_gauge(seq, g).outcome);
        });
  m.def("tail_gauge_sum", &tail_gauge_sum, py::arg("seq"), py::arg("gauge"),
        py::arg("n0"), py::arg("n"));
  m.def("tail_gauge_sum_to_infinity", &tail_gauge_sum_to_infinity, py::arg("seq"),
        py::arg("gauge"), py::arg("n0"));

  py::class_<TrialConfig>(m, "TrialConfig")
      .def(py::init([](const LengthSequence& seq, std::uint64_t horizon,
                       std::uint64_t seed, std::uint32_t trial_index,
                       std::vector<std::uint64_t> checkpoints,
                       std::vector<std::uint64_t> tail_starts) {
             TrialConfig cfg(seq, horizon);
             cfg.seed = seed;
             cfg.trial_index = trial_index;
             cfg.checkpoints = std::move(checkpoints);
             cfg.tail_starts = std::move(tail_starts);
             return cfg;
           }),
           py::arg("seq"), py::arg("horizon"), py::arg("seed") = kDefaultSeed,
           py::arg("trial_index") = 0,
           py::arg("checkpoints") = std::vector<std::uint64_t>{},
           py::arg("tail_starts") = std::vector<std::uint64_t>{})
      .def_readwrite("seed", &TrialConfig::seed)
      .def_readwrite("trial_index", &TrialConfig::trial_index)
      .def_readwrite("horizon", &TrialConfig::horizon)
      .def_readwrite("checkpoints", &TrialConfig::checkpoints)
      .def_readwrite("tail_starts", &TrialConfig::tail_starts);

  py::class_<TrialResult>(m, "TrialResult")
      .def_property_readonly("first_cover_n",
                             [](const TrialResult& r) -> py::object {
                               if (!r.first_cover_n) return py::none();
                               return py::cast(*r.first_cover_n);
                             })
      .def_readonly("uncovered_curve", &TrialResult::uncovered_curve)
      .def("tail_union", &TrialResult::tail_union, py::arg("m"),
           py::return_value_policy::reference_internal)
      .def("to_json", [](const TrialResult& r) { return dumps(to_json(r)); });

  m.def("run_trial", &run_trial, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<EnsembleStats>(m, "EnsembleStats")
      .def_readonly("trials", &EnsembleStats::trials)
      .def_readonly("coverage_fraction", &EnsembleStats::coverage_fraction)
      .def_readonly("mean_uncovered", &EnsembleStats::mean_uncovered)
      .def_readonly("mean_tail_measure", &EnsembleStats::mean_tail_measure)
      .def("to_json", [](const EnsembleStats& s) { return dumps(to_json(s)); });

  m.def("run_ensemble", &run_ensemble, py::arg("config"), py::arg("trials"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<LevelRange>(m, "LevelRange")
      .def(py::init([](int lo, int hi) { return LevelRange{lo, hi}; }),
           py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &LevelRange::lo)
      .def_readwrite("hi", &LevelRange::hi);

  py::class_<DimensionEstimate>(m, "DimensionEstimate")
      .def_readonly("dimension", &DimensionEstimate::dimension)
      .def_readonly("raw_slope", &DimensionEstimate::raw_slope)
      .def_readonly("counts", &DimensionEstimate::counts)
      .def_readonly("local_slopes", &DimensionEstimate::local_slopes)
      .def_readonly("degenerate", &DimensionEstimate::degenerate)
      .def("to_json", [](const DimensionEstimate& e) { return dumps(to_json(e)); });

  m.def("box_count", &box_count, py::arg("arcset"), py::arg("level"));
  m.def("default_level_range", &default_level_range, py::arg("seq"), py::arg("m"),
        py::arg("horizon"));
  m.def("estimate_arcset_dimension", &estimate_arcset_dimension, py::arg("arcset"),
        py::arg("levels"), py::arg("window") = std::optional<Arc>{});
  m.def("estimate_dimension", &estimate_dimension, py::arg("result"), py::arg("m"),
        py::arg("window") = std::optional<Arc>{},
        py::arg("levels") = std::optional<LevelRange>{});
  m.def("gauge_measure_bound",
        [](const LengthSequence& seq, const GaugeFunction& g, std::uint64_t n0) {
          return dumps(to_json(gauge_measure_bound(seq, g, n0)));
        },
        py::arg("seq"), py::arg("gauge"), py::arg("n0"));
  m.def("intersection_experiment", &intersection_experiment, py::arg("config"),
        py::arg("copies"), py::arg("m"), py::arg("window") = std::optional<Arc>{},
        py::arg("levels") = std::optional<LevelRange>{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<NestedCertificate>(m, "NestedCertificate")
      .def_property_readonly("indices", &NestedCertificate::indices)
      .def_property_readonly("point",
                             [](const NestedCertificate& c) { return c.point.position(); })
      .def_property_readonly("depth", &NestedCertificate::depth)
      .def("to_json", [](const NestedCertificate& c) { return dumps(to_json(c)); });

  m.def("find_point", &find_point, py::arg("seed"), py::arg("trial_index"),
        py::arg("seq"), py::arg("depth"), py::arg("search_cap") = 10'000'000,
        py::call_guard<py::gil_scoped_release>());
  m.def("verify_membership",
        [](double point, std::uint64_t seed, std::uint32_t trial,
           const LengthSequence& seq, std::uint64_t horizon) {
          return verify_membership(CirclePoint(point), seed, trial, seq, horizon);
        },
        py::arg("point"), py::arg("seed"), py::arg("trial_index"), py::arg("seq"),
        py::arg("horizon"));
  m.def("verify_certificate",
        [](const NestedCertificate& cert, const LengthSequence& seq) {
          const auto check = verify_certificate(cert, seq);
          return py::make_tuple(check.ok, check.detail);
        },
        py::arg("certificate"), py::arg("seq"));
}
