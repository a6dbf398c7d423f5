"""Random arc coverings of the circle: simulation and size analysis.

Thin re-export of the compiled extension; see the project README for the
full toolkit (CLI, series criteria, dimension estimation, certificates).
"""

from arccover._core import (  # noqa: F401
    DEFAULT_SEED,
    Arc,
    ArcSet,
    CirclePoint,
    DimensionEstimate,
    EnsembleStats,
    GaugeFunction,
    LengthSequence,
    LevelRange,
    NestedCertificate,
    SearchCapExhaustedError,
    TrialConfig,
    TrialResult,
    __version__,
    arc_contains_arc,
    box_count,
    classify_length_sum,
    classify_series_gauge,
    compare_gauges,
    default_level_range,
    estimate_arcset_dimension,
    estimate_dimension,
    find_point,
    gauge_measure_bound,
    intersection_experiment,
    make_arc,
    run_ensemble,
    run_trial,
    sample_center,
    shepp_test,
    shepp_verdict,
    tail_gauge_sum,
    tail_gauge_sum_to_infinity,
    torus_distance,
    validate_gauge,
    verify_certificate,
    verify_membership,
)
