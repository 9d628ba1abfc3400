"""Rule 150 patterns, exact nonzero-state counts, and the singular
function built from them, all in exact arithmetic."""

__version__ = "0.1.0"

from .eca import (
    Configuration,
    PatternSet,
    evolve,
    pattern_cells,
    single_site_seed,
    step_generic,
    step_rule150,
)
from .counting import (
    Mat2,
    cluster_factor,
    cum_decompose,
    cum_direct,
    cum_pow2,
    cum_pow2_closed,
    cum_series,
    num_cluster,
    num_direct,
    num_matrix,
    num_series,
    ones_coefficient,
)
from .quadratic import (
    ALPHA,
    SQRT5,
    TWO_ALPHA,
    BitStream,
    Dyadic,
    Generator,
    Ones,
    Periodic,
    QSqrt5,
    Zeros,
    bits_of,
    bits_of_fraction,
    dyadic_of,
    ones_tail_of,
)
from .singular import (
    Enclosure,
    RunState,
    check_dual_representation,
    eval_bitstream_exact,
    eval_dyadic_exact,
    eval_fk,
    eval_periodic_exact,
    eval_recursive_dyadic,
    eval_stream_enclosure,
    r_sequence,
)
from .analysis import (
    QuotientReport,
    derivative_zero_sample,
    dyadic_quotient_statistic,
    left_quotient,
    quotient_report,
    right_quotient,
)
from .fractal import (
    Bitmap,
    boxcount_slope,
    prefractal,
    selfsim_check,
    subsample_even,
)
from .errors import DomainError, OddRuleCodeError, ResourceLimitError

__all__ = [name for name in dir() if not name.startswith("_")]
