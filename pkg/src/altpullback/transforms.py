"""Christoffel step, quadratic pullback and Geronimus inversion.

Depth bookkeeping for :func:`alternating_pullback` at depth ``N``: the
output family runs to degree ``2N+1``, which needs ``R_0 .. R_{N+1}`` and
therefore the moments ``0 .. 2N+2`` of the input functional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CannotFitMass, KernelVanishes, NotDivisible
from .exact import Polynomial, compose_square, rational
from .functionals import MomentFunctional, MonicOPS, mops_from_functional


@dataclass(frozen=True)
class PullbackSpec:
    tau: Fraction
    depth: int

    @property
    def kernel_point(self) -> Fraction:
        return self.tau * self.tau

    @property
    def moments_needed(self) -> int:
        """Moments of the input functional consumed (indices ``0 .. 2N+2``)."""
        return 2 * self.depth + 3


@dataclass(frozen=True)
class GeronimusCoefficients:
    """Coefficients ``g[n]`` for ``B_n = P_n - g[n] P_{n-1}``; ``g[0]`` is unused."""

    g: tuple
    point: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(rational(v) for v in self.g))

    @property
    def depth(self) -> int:
        return len(self.g) - 1


def christoffel_step(R: MonicOPS, kernel_point, N: int) -> MonicOPS:
    """Monic ``S_0 .. S_N`` orthogonal for ``(y - kernel_point) v``.

    ``S_n = [R_{n+1} - (R_{n+1}(c)/R_n(c)) R_n] / (y - c)`` with ``c`` the
    kernel point; ``R`` must reach degree ``N+1``.
    """
    c = rational(kernel_point)
    if R.depth < N + 1:
        raise ValueError(f"need R up to degree {N + 1}, got {R.depth}")
    values = [R[n](c) for n in range(N + 2)]
    out = []
    for n in range(N + 1):
        if values[n] == 0:
            raise KernelVanishes(n, c)
        numer = R[n + 1] - R[n] * (values[n + 1] / values[n])
        try:
            out.append(numer.exact_div_linear(c))
        except NotDivisible as exc:  # pragma: no cover - impossible by construction
            raise AssertionError("kernel quotient left a remainder") from exc
    return MonicOPS(tuple(out))


def pullback_functional(v: MomentFunctional, tau) -> MomentFunctional:
    """The unique ``u`` with ``sigma u = v`` annihilating ``(x - tau) p(x^2)``.

    Even moments copy ``v``; odd moments are ``tau`` times the even
    moment just below them.
    """
    tau = rational(tau)

    def rule(k):
        half = v.moment(k // 2)
        return half if k % 2 == 0 else tau * half

    return MomentFunctional(rule)


@dataclass(frozen=True)
class PullbackResult:
    u: MomentFunctional
    P: MonicOPS
    R: MonicOPS
    S: MonicOPS
    spec: PullbackSpec


def assemble_alternating(R: Sequence[Polynomial], S: Sequence[Polynomial], tau) -> list:
    """Interleave ``R_n(x^2)`` and ``(x - tau) S_n(x^2)``."""
    lin = Polynomial.linear_root(tau)
    out = []
    for r, s in zip(R, S):
        out.append(compose_square(r))
        out.append(lin * compose_square(s))
    return out


def alternating_pullback(v: MomentFunctional, tau, N: int) -> PullbackResult:
    """Pull ``v`` back along ``x -> x^2`` and build ``P_0 .. P_{2N+1}``.

    ``P_{2n} = R_n(x^2)``, ``P_{2n+1} = (x - tau) S_n(x^2)``. Propagates
    :class:`NotRegularUpTo` from ``v`` and :class:`KernelVanishes` when
    some ``R_n(tau^2)`` is zero.
    """
    spec = PullbackSpec(rational(tau), N)
    R = mops_from_functional(v, N + 1)
    S = christoffel_step(R, spec.kernel_point, N)
    P = assemble_alternating(R.polys[: N + 1], S.polys, spec.tau)
    u = pullback_functional(v, spec.tau)
    return PullbackResult(u, MonicOPS(tuple(P)), R, S, spec)


def geronimus_step(P: Sequence[Polynomial], G: GeronimusCoefficients) -> list:
    """``B_0 = P_0`` and ``B_n = P_n - g_n P_{n-1}``."""
    if G.depth < len(P) - 1:
        raise ValueError(f"need g_1 .. g_{len(P) - 1}, got {G.depth}")
    out = [P[0]]
    for n in range(1, len(P)):
        out.append(P[n] - P[n - 1] * G.g[n])
    return out


def geronimus_functional(w: MomentFunctional, point, u0="auto", b1: Optional[Polynomial] = None):
    """A functional ``u`` with ``(x - point) u = w`` and ``<u, 1> = u0``.

    ``u0 = "auto"`` picks the unique mass making ``<u, b1> = 0`` for the
    supplied monic degree-one ``b1``. That condition reads
    ``w_0 + (point + b1(0)) u_0 = 0``; it fails to pin ``u_0`` down when
    ``point + b1(0) = 0``.
    """
    mu = rational(point)
    if u0 == "auto":
        if b1 is None or b1.degree != 1 or not b1.is_monic():
            raise CannotFitMass("auto mode needs a monic degree-one polynomial")
        slope = mu + b1.coeff(0)
        if slope == 0:
            raise CannotFitMass(
                "mass condition is degenerate: "
                + ("every u0 works" if w.moment(0) == 0 else "no u0 works")
            )
        seed = -w.moment(0) / slope
    else:
        seed = rational(u0)

    u: MomentFunctional

    def rule(k):
        if k == 0:
            return seed
        return w.moment(k - 1) + mu * u.moment(k - 1)

    u = MomentFunctional(rule)
    return u
