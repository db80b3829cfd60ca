"""Moment functionals, monic orthogonal sequences and the alternating
operator calculus.

The divided-difference and averaging operators of the normalised
alternating map act on monomials by parity rules::

    D(x^{2k}) = 0,   D(x^{2k+1}) = (-1)^k x^{2k}
    S(x^{2k+1}) = 0, S(x^{2k})   = (-1)^k x^{2k}

and their transposes on functionals follow from
``<D u, p> = -<u, D p>`` and ``<S u, p> = <u, S p>``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from . import linalg
from .errors import (
    DegenerateRecurrence,
    InsufficientMoments,
    NotAnOPSCandidate,
    NotRegularUpTo,
    ParseError,
)
from .exact import ONE, X, Polynomial, format_rational, parse_rational, rational


class MomentFunctional:
    """Linear functional on polynomials given by its moments ``<u, x^k>``.

    Moments are produced on demand by ``rule(k)`` and cached. The cache is
    extended strictly in index order under a lock, so a rule may itself
    query lower moments of the same functional.
    """

    def __init__(self, rule: Callable[[int], Fraction], descriptor="derived"):
        self._rule = rule
        self._cache: List[Fraction] = []
        self._lock = threading.RLock()
        self._stored: Optional[tuple] = None
        self.descriptor = descriptor

    @classmethod
    def stored(cls, moments: Sequence) -> "MomentFunctional":
        values = tuple(rational(m) for m in moments)

        def rule(k):
            if k >= len(values):
                raise InsufficientMoments(k, len(values))
            return values[k]

        u = cls(rule, "stored")
        u._stored = values
        return u

    @property
    def available(self) -> Optional[int]:
        """Number of moments a stored prefix holds; None for open-ended rules."""
        return None if self._stored is None else len(self._stored)

    def moment(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError("negative moment index")
        if k < len(self._cache):
            return self._cache[k]
        with self._lock:
            while len(self._cache) <= k:
                self._cache.append(Fraction(self._rule(len(self._cache))))
            return self._cache[k]

    def __getitem__(self, k: int) -> Fraction:
        return self.moment(k)

    def moments(self, count: int) -> List[Fraction]:
        """The first ``count`` moments (indices ``0 .. count-1``)."""
        if count > 0:
            self.moment(count - 1)
        return list(self._cache[:count])

    def apply(self, p: Polynomial) -> Fraction:
        return apply(self, p)

    def to_json(self, count: int) -> dict:
        desc = self.descriptor if isinstance(self.descriptor, (str, dict)) else "derived"
        return {
            "moments": [format_rational(m) for m in self.moments(count)],
            "generator": desc,
        }

    @classmethod
    def from_json(cls, doc, location: str = "$") -> "MomentFunctional":
        if not isinstance(doc, dict) or "moments" not in doc:
            raise ParseError(location, "functional must be an object with a 'moments' array")
        raw = doc["moments"]
        if not isinstance(raw, list):
            raise ParseError(f"{location}.moments", "expected an array")
        values = [parse_rational(m, f"{location}.moments[{i}]") for i, m in enumerate(raw)]
        return cls.stored(values)

    def __repr__(self):
        return f"MomentFunctional({self.descriptor!r}, cached={len(self._cache)})"


def apply(u: MomentFunctional, p: Polynomial) -> Fraction:
    """``<u, p> = sum_k p_k <u, x^k>``."""
    return sum((c * u.moment(k) for k, c in enumerate(p.coeffs) if c != 0), Fraction(0))


def mul_poly(phi: Polynomial, u: MomentFunctional) -> MomentFunctional:
    """The functional ``phi u`` with ``<phi u, p> = <u, phi p>``."""
    coeffs = phi.coeffs

    def rule(k):
        return sum((c * u.moment(k + j) for j, c in enumerate(coeffs) if c != 0), Fraction(0))

    return MomentFunctional(rule)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def dunkl_D(p: Polynomial) -> Polynomial:
    out = [Fraction(0)] * max(len(p.coeffs) - 1, 0)
    for n in range(1, len(p.coeffs), 2):
        k = (n - 1) // 2
        out[2 * k] = _sign(k) * p.coeffs[n]
    return Polynomial(out)


def dunkl_S(p: Polynomial) -> Polynomial:
    out = [Fraction(0)] * len(p.coeffs)
    for n in range(0, len(p.coeffs), 2):
        out[n] = _sign(n // 2) * p.coeffs[n]
    return Polynomial(out)


def transpose_D(u: MomentFunctional) -> MomentFunctional:
    def rule(n):
        if n % 2 == 0:
            return Fraction(0)
        return -_sign((n - 1) // 2) * u.moment(n - 1)

    return MomentFunctional(rule)


def transpose_S(u: MomentFunctional) -> MomentFunctional:
    def rule(n):
        if n % 2:
            return Fraction(0)
        return _sign(n // 2) * u.moment(n)

    return MomentFunctional(rule)


def sigma_pushforward(u: MomentFunctional) -> MomentFunctional:
    """Transpose of ``p -> p(x^2)``: moment k of the result is moment 2k of u."""
    return MomentFunctional(lambda k: u.moment(2 * k))


@dataclass(frozen=True)
class MonicOPS:
    """Monic polynomials ``polys[0..N]`` and, optionally, their recurrence.

    When present, ``beta[n]`` and ``gamma[n]`` satisfy
    ``polys[n+1] = (x - beta[n]) polys[n] - gamma[n] polys[n-1]``;
    ``gamma[0]`` is 0 by convention.
    """

    polys: tuple
    beta: tuple = ()
    gamma: tuple = ()

    def __post_init__(self):
        for n, p in enumerate(self.polys):
            if p.degree != n or not p.is_monic():
                raise ValueError(f"polys[{n}] is not monic of degree {n}")

    @property
    def depth(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, n):
        return self.polys[n]

    def __len__(self):
        return len(self.polys)


def mops_from_functional(u: MomentFunctional, N: int) -> MonicOPS:
    """Monic orthogonal ``P_0 .. P_N`` for ``u`` via the Stieltjes recurrence.

    Uses moments ``0 .. 2N``. Raises :class:`NotRegularUpTo` at the first n
    with ``<u, P_n^2> = 0``.
    """
    polys = [ONE]
    beta: List[Fraction] = []
    gamma: List[Fraction] = [Fraction(0)]
    norm_prev = None
    norm = apply(u, ONE)
    if norm == 0:
        raise NotRegularUpTo(0)
    for n in range(N):
        pn = polys[n]
        sq = pn * pn
        b = apply(u, X * sq) / norm
        beta.append(b)
        nxt = (X - b) * pn
        if n > 0:
            g = norm / norm_prev
            gamma.append(g)
            nxt = nxt - polys[n - 1] * g
        polys.append(nxt)
        norm_prev, norm = norm, apply(u, nxt * nxt)
        if norm == 0:
            raise NotRegularUpTo(n + 1)
    return MonicOPS(tuple(polys), tuple(beta), tuple(gamma[:N]))


def recurrence_fit(family: Sequence[Polynomial]) -> tuple:
    """Recover ``beta, gamma`` with ``F[n+1] = (x - beta_n) F[n] - gamma_n F[n-1]``.

    ``gamma[0]`` is 0 by convention. Raises :class:`NotAnOPSCandidate`
    when no such pair exists at some step, :class:`DegenerateRecurrence`
    when a ``gamma_n`` (n >= 1) vanishes.
    """
    for n, p in enumerate(family):
        if p.degree != n or not p.is_monic():
            raise ValueError(f"family[{n}] is not monic of degree {n}")
    beta, gamma = [], [Fraction(0)]
    for n in range(len(family) - 1):
        r = X * family[n] - family[n + 1]
        b = r.coeff(n)
        r = r - family[n] * b
        g = Fraction(0)
        if n > 0:
            g = r.coeff(n - 1)
            r = r - family[n - 1] * g
        if not r.is_zero():
            raise NotAnOPSCandidate(n, r)
        if n > 0:
            if g == 0:
                raise DegenerateRecurrence(n)
            gamma.append(g)
        beta.append(b)
    return tuple(beta), tuple(gamma[: len(beta)])


def moments_from_family(family: Sequence[Polynomial], count: int) -> MomentFunctional:
    """The functional (normalised ``mu_0 = 1``) for which ``family`` is orthogonal.

    Uses ``<v, F_n> = 0`` for ``n >= 1``; moment k is fixed by ``F_k`` once
    the lower moments are known, so ``count`` moments need ``F_0 .. F_{count-1}``.
    """
    if len(family) < count:
        raise ValueError(f"need {count} family members, got {len(family)}")
    mus = [Fraction(1)]
    for k in range(1, count):
        f = family[k]
        mus.append(-sum(f.coeff(j) * mus[j] for j in range(k)))
    return MomentFunctional.stored(mus)


@dataclass(frozen=True)
class Violation:
    indices: tuple
    value: object

    def to_json(self) -> dict:
        v = self.value
        return {
            "indices": list(self.indices),
            "value": format_rational(v) if isinstance(v, (int, Fraction)) else str(v),
        }


def report_to_json(report: Sequence[Violation]) -> list:
    return [v.to_json() for v in report]


def gram_check(u: MomentFunctional, family: Sequence[Polynomial], N: int) -> List[Violation]:
    """All violations of ``<u, P_n P_m> = 0`` (m < n <= N) and ``<u, P_n^2> != 0``.

    Off-diagonal violations carry indices ``(m, n)`` and the offending
    pairing; a vanishing diagonal carries ``(n, n)`` and value 0.
    """
    out = []
    for n in range(N + 1):
        for m in range(n):
            val = apply(u, family[n] * family[m])
            if val != 0:
                out.append(Violation((m, n), val))
        diag = apply(u, family[n] * family[n])
        if diag == 0:
            out.append(Violation((n, n), diag))
    return out


def annihilation_check(u: MomentFunctional, tau, K: int) -> List[Violation]:
    """Violations of ``<u, (x - tau) x^{2k}> = 0`` for ``k <= K``."""
    tau = rational(tau)
    out = []
    for k in range(K + 1):
        val = u.moment(2 * k + 1) - tau * u.moment(2 * k)
        if val != 0:
            out.append(Violation((k,), val))
    return out


@dataclass(frozen=True)
class PearsonPair:
    """``phi`` (degree <= 2) and ``psi`` (degree exactly 1)."""

    phi: Polynomial
    psi: Polynomial

    def __post_init__(self):
        if self.phi.degree > 2:
            raise ValueError("deg phi must be <= 2")
        if self.psi.degree != 1:
            raise ValueError("deg psi must be exactly 1")

    def to_json(self) -> dict:
        return {"phi": self.phi.to_json(), "psi": self.psi.to_json()}


def _pair_polys(pair):
    if isinstance(pair, PearsonPair):
        return pair.phi, pair.psi
    phi, psi = pair
    return phi, psi


def pearson_residuals(u: MomentFunctional, pair, N: int) -> List[Fraction]:
    """``<D(phi u) - S(psi u), x^n>`` for ``n = 0 .. N``, through the transposes.

    ``pair`` may be a :class:`PearsonPair` or any ``(phi, psi)`` tuple,
    so degenerate pairs can be probed too.
    """
    phi, psi = _pair_polys(pair)
    left = transpose_D(mul_poly(phi, u))
    right = transpose_S(mul_poly(psi, u))
    return [left.moment(n) - right.moment(n) for n in range(N + 1)]


def pearson_check(u: MomentFunctional, pair, N: int) -> List[Violation]:
    return [
        Violation((n,), v) for n, v in enumerate(pearson_residuals(u, pair, N)) if v != 0
    ]


PEARSON_UNKNOWNS = ("phi2", "phi1", "phi0", "psi1", "psi0")


def pearson_system(u: MomentFunctional, N: int) -> List[List[Fraction]]:
    """Rows ``n = 0 .. N`` of the homogeneous system in (phi2, phi1, phi0, psi1, psi0).

    Row n is the coefficient vector of ``-<u, phi D(x^n)> - <u, psi S(x^n)>``.
    """
    rows = []
    for n in range(N + 1):
        mono = Polynomial.monomial(n)
        d, s = dunkl_D(mono), dunkl_S(mono)
        rows.append([
            -apply(u, X * X * d),
            -apply(u, X * d),
            -apply(u, d),
            -apply(u, X * s),
            -apply(u, s),
        ])
    return rows


@dataclass(frozen=True)
class PearsonSearch:
    pair: Optional[PearsonPair]
    kernel_dimension: int
    kernel: tuple = field(default=())
    degenerate: bool = False

    def to_json(self) -> dict:
        return {
            "pair": self.pair.to_json() if self.pair else None,
            "kernel_dimension": self.kernel_dimension,
            "kernel": [[format_rational(v) for v in vec] for vec in self.kernel],
            "degenerate": self.degenerate,
        }


def pearson_find(u: MomentFunctional, N: int) -> PearsonSearch:
    """Search for ``(phi, psi)`` with ``D(phi u) = S(psi u)`` up to moment order N.

    The kernel basis comes from fraction-free elimination with the
    unknowns ordered (phi2, phi1, phi0, psi1, psi0); the first basis
    vector with ``psi1 != 0`` is rescaled to ``psi1 = 1`` and returned.
    A zero system (e.g. the zero functional) is flagged as degenerate
    and yields no pair.
    """
    if N < 8:
        raise ValueError("pearson_find needs N >= 8 to overdetermine five unknowns")
    rows = pearson_system(u, N)
    basis = linalg.kernel_basis(rows, 5)
    if len(basis) == 5:
        return PearsonSearch(None, 5, tuple(tuple(v) for v in basis), degenerate=True)
    pair = None
    for vec in basis:
        if vec[3] != 0:
            v = [c / vec[3] for c in vec]
            pair = PearsonPair(Polynomial([v[2], v[1], v[0]]), Polynomial([v[4], v[3]]))
            break
    return PearsonSearch(pair, len(basis), tuple(tuple(v) for v in basis))
