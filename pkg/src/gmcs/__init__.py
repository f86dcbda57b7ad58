"""Confidence sets for undirected Gaussian graphical models.

Each vertex pair's conditional-independence hypothesis and its alternative
are tested simultaneously; the rejections split all pairs into significant
edges, significant non-edges, and an uncertainty zone.  The graphs compatible
with the undecided pairs form a confidence set that contains the true model
with probability at least the declared level.
"""

from ._core import COMPILED
from .confidence import (
    ConfidenceBounds,
    SinAnalysis,
    SinPartition,
    bounds_from_decisions,
    set_size_decimal,
    set_size_log2,
    sin_implied_level,
    template_from_bounds,
)
from .edges import (
    FREE,
    ONE,
    ZERO,
    AdjacencyTemplate,
    EdgeSet,
    TrueModel,
    all_pairs,
    edge_index,
    edge_pair,
    n_pairs,
)
from .errors import (
    DegenerateDataError,
    EnumerationLimitError,
    GmcsError,
    InconsistentBoundsError,
    InconsistentDecisionsError,
    InvalidEdgeError,
    InvalidThresholdError,
    NumericError,
    SingularCovarianceError,
    ValidationError,
)
from .pcorr import (
    EXACT,
    FISHER,
    SUPPLIED,
    Dataset,
    EdgePValues,
    PartialCorrMatrix,
    critical_value,
    edge_pvalues,
    null_density,
    partial_correlations,
    pvalue_exact,
    pvalue_fisher,
    reg_inc_beta,
    sample_cov,
)
from .procedures import (
    BONF_SPLIT,
    BONFERRONI,
    DOUBLE_HOLM,
    MB,
    SIDAK,
    SINGLE_STEP,
    DecisionSets,
    ProcedureSpec,
    alpha_m,
    apply_procedure,
    bonferroni_split,
    closure_masks,
    closure_oracle,
    double_holm,
    mb,
    single_step,
    single_step_masks,
)
from .simulate import (
    CoverageReport,
    Scenario,
    make_pattern_precision,
    run_coverage,
    sample_gaussian,
    scenario_from_precision,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
