"""Three-gap structure of {k alpha} and the constant-type ratio test.

The sequence ``d_max(m) / d_min(m)`` of extreme gap lengths in the partition
of [0, 1] by ``{alpha}, ..., {m alpha}`` is bounded exactly when the partial
quotients of ``alpha`` are bounded.  This package computes the gap structure
in closed form from the continued fraction of ``alpha`` and checks it against
a brute-force sort.
"""

from .cf import (
    ConvergentTable,
    PartialQuotientSource,
    PeriodicSource,
    RuleSource,
    SurdSource,
    build_table,
    constant_type_bound,
    rule_source,
    surd_partial_quotients,
)
from .errors import (
    AmbiguousComparison,
    ConsistencyError,
    InsufficientDepth,
    InvalidInput,
    PrecisionExhausted,
    RationalValue,
    ThreeGapError,
    UnsupportedComparison,
)
from .exact import (
    Interval,
    QuadraticSurd,
    interval_eval_cf_tail,
    surd_compare,
    surd_floor,
    surd_normalize,
)
from .gaps import (
    GapDecomposition,
    GapStructure,
    RatioPoint,
    decompose,
    extremes,
    gap_structure,
    ratio,
    ratio_scan,
)
from .oracle import PartitionSample, brute_force_gaps, iter_partitions, oracle_extremes
from .verify import VerifyReport, verify

__version__ = "0.1.0"
