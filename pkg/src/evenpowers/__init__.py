"""Representation counts for sums of signed even powers, their Dirichlet
series and two explicit lower bounds for it."""

from .core import (
    CertifiedValue,
    CountOverflowError,
    DivergenceError,
    DomainError,
    EvalOptions,
    EvenPowersError,
    PowerParams,
    TruncationError,
    UnsupportedOrderError,
)
from .special import coth, psi_kernel, theta, u_closed, u_direct
from .representation import (
    RepCoefficients,
    ball_count,
    base_coefficients,
    cumulative_growth_exponent,
    r_bruteforce,
    r_convolution,
)
from .series import SeriesBracket, integral_s, s_bracket, s_lattice, s_lower
from .bounds import (
    BoundReport,
    HolderReport,
    asymptotic_slope,
    b_ana,
    b_geo,
    crossover,
    holder_check,
    ratio,
    ratio_curve,
    verify_bounds,
)

__version__ = "0.1.0"
