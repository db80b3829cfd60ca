"""Closed-form generators for the worked families and their input moments.

Family kinds (stable identifiers):

=======================  ==============================================
``shifted-jacobi``        monic Jacobi family ``R_n(t)`` after the affine
                          change ``y = (1 - t)/(1 - lambda^2)``
``big-m1-jacobi``         big (-1)-Jacobi, even/odd closed forms
``comp-bannai-ito``       complementary Bannai-Ito ``P_n``
``bannai-ito``            Bannai-Ito ``B_n = P_n - g_n P_{n-1}``
``shifted-laguerre``      monic Laguerre family in ``y - gamma^2``
``m1-meixner-pollaczek``  (-1)-Meixner-Pollaczek ``P_n``
=======================  ==============================================

Every generator checks all denominators for indices ``0 .. n`` before it
builds anything, so a sequence either comes out whole or fails up front.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List

from .errors import DegenerateParameters
from .exact import (
    ONE,
    HypSeries,
    Polynomial,
    format_rational,
    hyp_terminating,
    pochhammer,
    rational,
)
from .functionals import MomentFunctional, moments_from_family
from .transforms import GeronimusCoefficients

HALF = Fraction(1, 2)


def _nonzero(value: Fraction, n: int, formula: str) -> Fraction:
    if value == 0:
        raise DegenerateParameters(n, formula)
    return value


def _poch_nonzero(a: Fraction, m: int, n: int, label: str) -> Fraction:
    for j in range(m):
        if a + j == 0:
            raise DegenerateParameters(n, f"{label} = ({format_rational(a)})_{m}")
    return pochhammer(a, m)


# -- parameter tuples ------------------------------------------------------


@dataclass(frozen=True)
class JacobiParams:
    """``a, b, lambda`` with derived ``c = 2a + 1`` and ``d = 2b - 1``."""

    a: Fraction
    b: Fraction
    lam: Fraction

    def __post_init__(self):
        for name in ("a", "b", "lam"):
            object.__setattr__(self, name, rational(getattr(self, name)))
        if self.lam in (1, -1):
            raise DegenerateParameters(0, "1 - lambda^2")

    @classmethod
    def from_cd(cls, lam, c, d) -> "JacobiParams":
        c, d = rational(c), rational(d)
        return cls((c - 1) / 2, (d + 1) / 2, lam)

    @property
    def c(self) -> Fraction:
        return 2 * self.a + 1

    @property
    def d(self) -> Fraction:
        return 2 * self.b - 1

    @property
    def scale(self) -> Fraction:
        return 1 - self.lam * self.lam

    def to_json(self) -> dict:
        return {k: format_rational(v) for k, v in
                (("a", self.a), ("b", self.b), ("lambda", self.lam))}


@dataclass(frozen=True)
class BannaiItoParams:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, rational(getattr(self, name)))

    def to_json(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("a", "b", "c", "d")}


@dataclass(frozen=True)
class LaguerreParams:
    alpha: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "gamma"):
            object.__setattr__(self, name, rational(getattr(self, name)))

    def to_json(self) -> dict:
        return {"alpha": format_rational(self.alpha), "gamma": format_rational(self.gamma)}


# -- shifted Jacobi and big (-1)-Jacobi --------------------------------------


def _jacobi_argument(p: JacobiParams) -> Polynomial:
    # (1 - t)/(1 - lambda^2) as a polynomial in t
    return Polynomial([1, -1]) * (1 / p.scale)


def _check_jacobi(p: JacobiParams, n: int, shift: int = 0):
    a1 = p.a + 1 + shift
    s = p.a + p.b + 1 + 2 * shift
    for k in range(n + 1):
        _poch_nonzero(a1, k, k, "(a+1)_n")
        _poch_nonzero(k + s, k, k, "(n+a+b+1)_n")


def shifted_jacobi(params: JacobiParams, n: int) -> Polynomial:
    """Monic ``R_n(t) = (1-lambda^2)^n (a+1)_n/(n+a+b+1)_n 2F1(-n, n+a+b+1; a+1; (1-t)/(1-lambda^2))``."""
    return _jacobi_block(params, n, 0)


def shifted_jacobi_companion(params: JacobiParams, n: int) -> Polynomial:
    """The Christoffel companion ``S_n(t)`` at ``t = 1``: ``a -> a+1``, ``b`` fixed."""
    return _jacobi_block(params, n, 1)


def _jacobi_block(p: JacobiParams, n: int, shift: int) -> Polynomial:
    _check_jacobi(p, n, shift)
    a1 = p.a + 1 + shift
    top = n + p.a + p.b + 1 + shift
    pref = p.scale ** n * pochhammer(a1, n) / pochhammer(top, n)
    return hyp_terminating(HypSeries((-n, top), (a1,), n), _jacobi_argument(p)) * pref


def shifted_jacobi_at_one(params: JacobiParams, n: int) -> Fraction:
    """``R_n(1) = (1-lambda^2)^n (a+1)_n / (n+a+b+1)_n``."""
    _check_jacobi(params, n)
    p = params
    return p.scale ** n * pochhammer(p.a + 1, n) / pochhammer(n + p.a + p.b + 1, n)


def jacobi_kernel_ratio(params: JacobiParams, n: int) -> Fraction:
    """``R_{n+1}(1)/R_n(1)`` in product form."""
    a, b = params.a, params.b
    den = _nonzero((2 * n + a + b + 1) * (2 * n + a + b + 2), n, "(2n+a+b+1)(2n+a+b+2)")
    return params.scale * (a + n + 1) * (a + b + n + 1) / den


def big_m1_jacobi_g(params: JacobiParams, n: int) -> Fraction:
    """Geronimus coefficient ``g_n`` (n >= 1) of the big (-1)-Jacobi family."""
    lam, c, d = params.lam, params.c, params.d
    den = _nonzero(2 * n + c + d, n, "2n+c+d")
    if n % 2 == 0:
        return (1 - lam) * n / den
    return -(1 + lam) * (n + c) / den


def big_m1_jacobi_ledger(params: JacobiParams, N: int) -> GeronimusCoefficients:
    g = [Fraction(0)] + [big_m1_jacobi_g(params, n) for n in range(1, N + 1)]
    return GeronimusCoefficients(tuple(g), -params.lam)


def _check_big_m1_jacobi(p: JacobiParams, n: int):
    c, d, lam = p.c, p.d, p.lam
    _nonzero((1 + lam) * (c + 1), n, "(1+lambda)(c+1)")
    for k in range(1, n + 1):
        _nonzero(2 * k + c + d, k, "2n+c+d")
    for k in range(n + 1):
        m = k // 2
        _poch_nonzero((2 * m + c + d + 2) / 2, m + (k % 2), k, "((2m+c+d+2)/2)_m")
        for base in ((c + 1) / 2, (c + 3) / 2):
            _poch_nonzero(base, m, k, "hypergeometric denominator")


def big_m1_jacobi_kappa(params: JacobiParams, n: int) -> Fraction:
    c, d, lam = params.c, params.d, params.lam
    m = n // 2
    if n % 2 == 0:
        return (1 - lam * lam) ** m * pochhammer((c + 1) / 2, m) / pochhammer(
            (2 * m + c + d + 2) / 2, m)
    return (1 + lam) * (1 - lam * lam) ** m * pochhammer((c + 1) / 2, m + 1) / pochhammer(
        (2 * m + c + d + 2) / 2, m + 1)


def big_m1_jacobi_direct(params: JacobiParams, n: int) -> Polynomial:
    """Big (-1)-Jacobi ``B_n(x)`` from the even/odd closed forms, ``z = (1-x^2)/(1-lambda^2)``."""
    _check_big_m1_jacobi(params, n)
    if n == 0:
        return ONE
    c, d, lam = params.c, params.d, params.lam
    z = Polynomial([1, 0, -1]) * (1 / params.scale)
    one_minus_x = Polynomial([1, -1])
    m = n // 2
    first = hyp_terminating(HypSeries((-m, (2 * m + c + d + 2) / 2), ((c + 1) / 2,), m), z)
    if n % 2 == 0:
        second = hyp_terminating(
            HypSeries((1 - m, (2 * m + c + d + 2) / 2), ((c + 3) / 2,), m - 1), z)
        coef = Fraction(2 * m) / ((1 + lam) * (c + 1))
        body = first + one_minus_x * second * coef
    else:
        second = hyp_terminating(
            HypSeries((-m, (2 * m + c + d + 4) / 2), ((c + 3) / 2,), m), z)
        coef = (2 * m + c + d + 2) / ((1 + lam) * (c + 1))
        body = first - one_minus_x * second * coef
    return body * big_m1_jacobi_kappa(params, n)


# -- (complementary) Bannai-Ito ----------------------------------------------


def _x_pair_block(n: int, upper: tuple, lower: tuple, b: Fraction) -> Polynomial:
    """``4F3(-n, upper; lower; 1)`` whose remaining numerator pair is ``(b+x, b-x)``.

    ``(b+x)_k (b-x)_k = prod_{j<k} ((b+j)^2 - x^2)`` keeps every term a
    polynomial in ``x^2``.
    """
    total = ONE
    pair = ONE
    term = Fraction(1)
    for k in range(n):
        num = Fraction(-n + k)
        for a in upper:
            num *= a + k
        den = Fraction(k + 1)
        for q in lower:
            den *= q + k
        term *= num / den
        pair = pair * Polynomial([(b + k) ** 2, 0, -1])
        total = total + pair * term
    return total


def _cbi_shape(p: BannaiItoParams, shift: int):
    a, b, c, d = p.a, p.b, p.c, p.d
    top = a + b - c - d + 1 + shift
    lower = (a + b + 1 + shift, b - c + HALF + shift, b - d + HALF + shift)
    return top, lower


def _check_cbi(p: BannaiItoParams, n: int, shift: int):
    top, lower = _cbi_shape(p, shift)
    for k in range(n + 1):
        for q in lower:
            _poch_nonzero(q, k, k, "4F3 denominator Pochhammer")
        _poch_nonzero(k + top, k, k, "(n+a+b-c-d+1)_n")


def cbi_kappa(params: BannaiItoParams, n: int, shift: int = 0) -> Fraction:
    """Monic normaliser: ``shift=0`` gives kappa^(1), ``shift=1`` gives kappa^(2)."""
    top, lower = _cbi_shape(params, shift)
    num = Fraction(1)
    for q in lower:
        num *= pochhammer(q, n)
    return num / pochhammer(n + top, n)


def _cbi_block(params: BannaiItoParams, n: int, shift: int) -> Polynomial:
    _check_cbi(params, n, shift)
    top, lower = _cbi_shape(params, shift)
    return _x_pair_block(n, (n + top,), lower, params.b + shift) * cbi_kappa(params, n, shift)


def cbi_even(params: BannaiItoParams, n: int) -> Polynomial:
    """``R_n(x^2)`` as a polynomial in ``x`` (degree 2n, even)."""
    return _cbi_block(params, n, 0)


def cbi_companion(params: BannaiItoParams, n: int) -> Polynomial:
    """``S_n(x^2)`` as a polynomial in ``x`` (degree 2n, even)."""
    return _cbi_block(params, n, 1)


def comp_bannai_ito(params: BannaiItoParams, n: int) -> Polynomial:
    """Complementary Bannai-Ito ``P_n``: ``R_m(x^2)`` or ``(x - b) S_m(x^2)``."""
    m = n // 2
    if n % 2 == 0:
        return cbi_even(params, m)
    return Polynomial.linear_root(params.b) * cbi_companion(params, m)


def bannai_ito_g(params: BannaiItoParams, n: int) -> Fraction:
    a, b, c, d = params.a, params.b, params.c, params.d
    den = _nonzero(4 * (n - c - d + a + b), n, "4(n-c-d+a+b)")
    if n % 2 == 0:
        return -n * (n - 2 * c - 2 * d) / den
    return -(n - 2 * d + 2 * b) * (n - 2 * c + 2 * b) / den


def bannai_ito_ledger(params: BannaiItoParams, N: int) -> GeronimusCoefficients:
    g = [Fraction(0)] + [bannai_ito_g(params, n) for n in range(1, N + 1)]
    return GeronimusCoefficients(tuple(g))


def bannai_ito(params: BannaiItoParams, n: int) -> Polynomial:
    """``B_n = P_n - g_n P_{n-1}`` over the complementary family."""
    for k in range(1, n + 1):
        bannai_ito_g(params, k)
    _check_cbi(params, n // 2, 0)
    _check_cbi(params, n // 2, 1)
    if n == 0:
        return ONE
    return comp_bannai_ito(params, n) - comp_bannai_ito(params, n - 1) * bannai_ito_g(params, n)


def bannai_ito_base_family(params: BannaiItoParams, N: int) -> List[Polynomial]:
    """``R_0 .. R_N`` as polynomials in the quadratic variable ``y``."""
    return [Polynomial(cbi_even(params, n).coeffs[0::2]) for n in range(N + 1)]


# -- shifted Laguerre and (-1)-Meixner-Pollaczek ---------------------------


def _check_laguerre(p: LaguerreParams, n: int):
    for k in range(n + 1):
        _poch_nonzero(p.alpha + HALF, k, k, "(alpha+1/2)_n")
        _poch_nonzero(p.alpha + 3 * HALF, k, k, "(alpha+3/2)_n")


def _laguerre_block(p: LaguerreParams, n: int, base: Fraction, arg: Polynomial) -> Polynomial:
    pref = (-1) ** n * pochhammer(base, n)
    return hyp_terminating(HypSeries((-n,), (base,), n), arg) * pref


def shifted_laguerre(params: LaguerreParams, n: int) -> Polynomial:
    """Monic ``R_n(y) = (-1)^n (alpha+1/2)_n 1F1(-n; alpha+1/2; y - gamma^2)``."""
    _check_laguerre(params, n)
    shift = Polynomial([-params.gamma ** 2, 1])
    return _laguerre_block(params, n, params.alpha + HALF, shift)


def shifted_laguerre_companion(params: LaguerreParams, n: int) -> Polynomial:
    """Christoffel companion ``S_n(y)`` at ``y = gamma^2``: ``alpha+1/2 -> alpha+3/2``."""
    _check_laguerre(params, n)
    shift = Polynomial([-params.gamma ** 2, 1])
    return _laguerre_block(params, n, params.alpha + 3 * HALF, shift)


def m1_meixner_pollaczek_direct(params: LaguerreParams, n: int) -> Polynomial:
    _check_laguerre(params, n // 2)
    m = n // 2
    arg = Polynomial([-params.gamma ** 2, 0, 1])
    if n % 2 == 0:
        return _laguerre_block(params, m, params.alpha + HALF, arg)
    body = _laguerre_block(params, m, params.alpha + 3 * HALF, arg)
    return Polynomial.linear_root(params.gamma) * body


# -- moments ----------------------------------------------------------------


def _laguerre_moment(p: LaguerreParams, k: int) -> Fraction:
    g2 = p.gamma ** 2
    base = p.alpha + HALF
    return sum((comb(k, j) * g2 ** (k - j) * pochhammer(base, j) for j in range(k + 1)),
               Fraction(0))


def _jacobi_moment(p: JacobiParams, k: int) -> Fraction:
    step = -p.scale
    total = Fraction(0)
    for j in range(k + 1):
        den = pochhammer(p.a + p.b + 2, j)
        if den == 0:
            raise DegenerateParameters(j, "(a+b+2)_j in the Beta moments")
        total += comb(k, j) * step ** j * pochhammer(p.a + 1, j) / den
    return total


def family_moments(kind: str, params, K: int) -> MomentFunctional:
    """Closed-form input functional for ``kind`` (normalised ``mu_0 = 1``).

    Moments ``0 .. K`` are computed eagerly; later ones come from the same
    closed form on demand.

    * ``shifted-laguerre`` / ``m1-meixner-pollaczek``:
      ``mu_k = sum_j C(k,j) gamma^{2(k-j)} (alpha+1/2)_j``
    * ``shifted-jacobi`` / ``big-m1-jacobi``:
      ``mu_k = sum_j C(k,j) (-(1-lambda^2))^j (a+1)_j/(a+b+2)_j``
    * ``comp-bannai-ito`` / ``bannai-ito``: recovered from the closed-form
      ``R_n`` by ``<v, R_n> = 0`` (n >= 1), which needs ``R_0 .. R_K``.
    """
    base = FAMILY_INPUT.get(kind)
    if base == "shifted-laguerre":
        rule = lambda k: _laguerre_moment(params, k)  # noqa: E731
    elif base == "shifted-jacobi":
        rule = lambda k: _jacobi_moment(params, k)  # noqa: E731
    elif base == "comp-bannai-ito":
        stored = moments_from_family(bannai_ito_base_family(params, K), K + 1)
        stored.descriptor = {"rule": base, "params": params.to_json()}
        return stored
    else:
        raise KeyError(f"no moment generator for family {kind!r}")
    u = MomentFunctional(rule, {"rule": base, "params": params.to_json()})
    u.moments(K + 1)
    return u


# -- registry ---------------------------------------------------------------

FAMILY_INPUT = {
    "shifted-jacobi": "shifted-jacobi",
    "big-m1-jacobi": "shifted-jacobi",
    "shifted-laguerre": "shifted-laguerre",
    "m1-meixner-pollaczek": "shifted-laguerre",
    "comp-bannai-ito": "comp-bannai-ito",
    "bannai-ito": "comp-bannai-ito",
}

GENERATORS: Dict[str, Callable] = {
    "shifted-jacobi": shifted_jacobi,
    "big-m1-jacobi": big_m1_jacobi_direct,
    "comp-bannai-ito": comp_bannai_ito,
    "bannai-ito": bannai_ito,
    "shifted-laguerre": shifted_laguerre,
    "m1-meixner-pollaczek": m1_meixner_pollaczek_direct,
}

FAMILY_KINDS = tuple(GENERATORS)

# kinds whose base moments are pulled back at a default tau
DEFAULT_TAU = {
    "shifted-jacobi": lambda p: Fraction(1),
    "big-m1-jacobi": lambda p: Fraction(1),
    "shifted-laguerre": lambda p: p.gamma,
    "m1-meixner-pollaczek": lambda p: p.gamma,
    "comp-bannai-ito": lambda p: p.b,
    "bannai-ito": lambda p: p.b,
}

_PARAM_ALIASES = {"λ": "lambda", "lam": "lambda", "α": "alpha", "γ": "gamma"}


def make_params(kind: str, raw: Dict[str, object]):
    """Build the parameter tuple for ``kind`` from a name -> rational mapping."""
    vals = {_PARAM_ALIASES.get(k, k): rational(v) for k, v in raw.items()}
    if kind not in GENERATORS:
        raise KeyError(f"unknown family {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
    base = FAMILY_INPUT[kind]
    try:
        if base == "shifted-jacobi":
            if "c" in vals or "d" in vals:
                extra = set(vals) - {"c", "d", "lambda"}
                if extra:
                    raise KeyError(f"unexpected parameters {sorted(extra)}")
                return JacobiParams.from_cd(vals["lambda"], vals["c"], vals["d"])
            _only(vals, {"a", "b", "lambda"})
            return JacobiParams(vals["a"], vals["b"], vals["lambda"])
        if base == "shifted-laguerre":
            _only(vals, {"alpha", "gamma"})
            return LaguerreParams(vals["alpha"], vals["gamma"])
        _only(vals, {"a", "b", "c", "d"})
        return BannaiItoParams(vals["a"], vals["b"], vals["c"], vals["d"])
    except KeyError as exc:
        if exc.args and str(exc.args[0]).startswith(("unexpected", "unknown")):
            raise
        raise KeyError(f"family {kind!r} is missing parameter {exc.args[0]!r}") from None


def _only(vals, allowed):
    extra = set(vals) - allowed
    if extra:
        raise KeyError(f"unexpected parameters {sorted(extra)}")
    missing = allowed - set(vals)
    if missing:
        raise KeyError(sorted(missing)[0])


def family_polys(kind: str, params, N: int) -> List[Polynomial]:
    """``F_0 .. F_N`` for ``kind``; all denominators are screened first."""
    gen = GENERATORS[kind]
    gen(params, N)
    return [gen(params, n) for n in range(N + 1)]


def geronimus_ledger(kind: str, params, N: int):
    if kind == "big-m1-jacobi":
        return big_m1_jacobi_ledger(params, N)
    if kind == "bannai-ito":
        return bannai_ito_ledger(params, N)
    return None


def variable_name(kind: str) -> str:
    return {"shifted-jacobi": "t", "shifted-laguerre": "y"}.get(kind, "x")
