"""Exact-arithmetic construction of alternating (-1)-classical orthogonal
polynomial families: Christoffel step, quadratic pullback of a moment
functional, Geronimus inversion, and exact structural checks."""

from .errors import (
    AltPullbackError,
    CannotFitMass,
    DegenerateParameters,
    DegenerateRecurrence,
    InsufficientMoments,
    KernelVanishes,
    NotAnOPSCandidate,
    NotDivisible,
    NotRegularUpTo,
    ParseError,
)
from .exact import (
    HypSeries,
    Polynomial,
    compose_square,
    hyp_terminating,
    parity_decompose,
    pochhammer,
    tau_decompose,
)
from .functionals import (
    MomentFunctional,
    MonicOPS,
    PearsonPair,
    annihilation_check,
    apply,
    dunkl_D,
    dunkl_S,
    gram_check,
    mops_from_functional,
    mul_poly,
    pearson_check,
    pearson_find,
    recurrence_fit,
    sigma_pushforward,
    transpose_D,
    transpose_S,
)
from .transforms import (
    GeronimusCoefficients,
    PullbackSpec,
    alternating_pullback,
    christoffel_step,
    geronimus_functional,
    geronimus_step,
    pullback_functional,
)

__version__ = "0.1.0"
