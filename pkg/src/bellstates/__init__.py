"""Generalized Bell numbers from boson normal ordering, their Stieltjes
weights, and the coherent states built on them."""

from .boson_algebra import (
    ANNIHILATE,
    CREATE,
    BellTable,
    Limits,
    OperatorPolynomial,
    bell_exact,
    bell_sequence,
    build_table,
    normal_order,
    stirling_exact,
    word_for,
)
from .coherent_states import (
    CoherentFamily,
    box_commutator_check,
    eigenvalue_residual,
    expectation_a_power,
    mandel_q,
    metric_factor,
    normalization,
    snr,
    squeezing,
)
from .errors import (
    BellStatesError,
    ConvergenceError,
    InvalidParameters,
    ResourceGuardError,
    TailBoundError,
    UnsupportedError,
)
from .sequences import RhoSequence, bell_dobinski, bell_hypergeom, box, rho
from .series import SeriesConfig
from .special_functions import PFQParams, bessel_i, log_gamma, pfq
from .weights import (
    QuadratureConfig,
    WeightSpec,
    dirac_comb_moment,
    moment,
    weight_closed,
    weight_series,
    weight_tilde,
)

__version__ = "0.1.0"
