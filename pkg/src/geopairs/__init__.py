"""All-pairs geodesic distances on grayscale images via geodesic-tree filling."""

from .distances import (
    APGD_MAGIC,
    APGD_SENTINEL,
    APGD_VERSION,
    MAX_PIXELS,
    DistanceArray,
    FillStats,
    SizeGuardError,
)
from .grid import (
    GREY_MAX,
    GREY_MIN,
    Image,
    Metric,
    edge_weight,
    neighbors,
    path_time,
    pixel_index,
    pixel_rowcol,
    scaled_weight,
)
from .harness import (
    ExperimentReport,
    GeneratorKind,
    RunRecord,
    StrategySummary,
    VerificationError,
    brute_force_oracle,
    generate_image,
    run_experiment,
    write_report_csv,
    write_trace_csv,
)
from .pgm import read_pgm, write_pgm
from .propagation import (
    GeodesicTree,
    GridGraph,
    PropagationResult,
    boundary_pixels,
    build_tree,
    propagate,
)
from .strategies import (
    DEFAULT_REPULSION,
    EXTREMA_OVERHEAD,
    ArrayFullError,
    ExtremaContext,
    FillingRateSelector,
    FillingTrace,
    ExtremaSelector,
    NaiveSelector,
    RunResult,
    SpiralRepulsionSelector,
    SpiralSelector,
    StrategyKind,
    compute_extrema_context,
    relative_difference,
    run_strategy,
    spiral_turns,
)

__version__ = "0.1.0"

__all__ = [
    "APGD_MAGIC", "APGD_SENTINEL", "APGD_VERSION", "MAX_PIXELS",
    "DistanceArray", "FillStats", "SizeGuardError",
    "GREY_MAX", "GREY_MIN", "Image", "Metric",
    "edge_weight", "neighbors", "path_time", "pixel_index", "pixel_rowcol",
    "scaled_weight",
    "ExperimentReport", "GeneratorKind", "RunRecord", "StrategySummary",
    "VerificationError", "brute_force_oracle", "generate_image",
    "run_experiment", "write_report_csv", "write_trace_csv",
    "read_pgm", "write_pgm",
    "GeodesicTree", "GridGraph", "PropagationResult",
    "boundary_pixels", "build_tree", "propagate",
    "DEFAULT_REPULSION", "EXTREMA_OVERHEAD", "ArrayFullError",
    "ExtremaContext", "ExtremaSelector", "FillingRateSelector",
    "FillingTrace", "NaiveSelector", "RunResult",
    "SpiralRepulsionSelector", "SpiralSelector", "StrategyKind",
    "compute_extrema_context", "relative_difference", "run_strategy",
    "spiral_turns",
]
