"""Fine spectrum classification for lower-bidiagonal difference operators
on l^p sequence spaces (1 < p < infinity), with periodic or asymptotically
periodic coefficients, plus independent numerical oracles for validation."""

from .errors import (
    ConfigError,
    EmptyPeriod,
    FinespecError,
    NearLimitAmbiguous,
    ParseError,
    RepeatedValue,
    SingularPivot,
    ValidationError,
    WrongPeriod,
    ZeroB,
    ZeroQ,
)
from .sequences import (
    CoefficientClass,
    ExponentPair,
    Override,
    Perturbation,
    SequenceSpec,
    make_asymptotic,
    make_periodic,
    norm_bound,
    term,
    term_exact,
    terms_upto,
)
from .verdicts import (
    CONVERGES,
    DIVERGES,
    GOLDBERG_FOR_PART,
    INCONCLUSIVE,
    PART_CONTINUOUS,
    PART_POINT,
    PART_REGULAR,
    PART_RESIDUAL,
    PART_UNRESOLVED,
    SeriesVerdict,
    ZONE_BOUNDARY,
    ZONE_EXTERIOR,
    ZONE_INTERIOR,
)
from .bidiagonal import (
    FiniteSection,
    ResolventColumnEstimate,
    ResolventRowValue,
    adjoint_solve,
    apply,
    column_norm,
    finite_section,
    pivot_floor,
    resolvent_entry,
    resolvent_solve,
    row_norm,
)
from .spectral_sets import (
    RegionVerdict,
    TwoBandReport,
    membership,
    region_indicator,
    series_adjoint,
    series_tail_point,
    symbol_ratio,
    two_band_check,
)
from .classify import (
    ClassifyOptions,
    Evidence,
    GridCell,
    GridScanResult,
    SpectrumClassification,
    SpectrumReport,
    boundary_points,
    classify,
    classify_grid,
    eigen_index,
    spectrum_report,
)
from .oracles import (
    ProbeResult,
    Violation,
    consistency_audit,
    partial_sum_oracle,
    resolvent_growth_probe,
)
from .config import RunConfig, load_config

__version__ = "0.1.0"
