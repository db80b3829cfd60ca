"""Exact rational scalars, dense univariate polynomials and terminating
hypergeometric sums.

Scalars are :class:`fractions.Fraction` throughout. A :class:`Polynomial`
is an immutable tuple of coefficients, index = degree, with no trailing
zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DegenerateParameters, NotDivisible, ParseError

Scalar = Union[int, Fraction]


def rational(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or a ``"num/den"`` string) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("$", f"not a rational string: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    # canonical: lowest terms, sign on the numerator, integers without "/1"
    return str(Fraction(q))


def _trim(coeffs: Iterable[Fraction]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    """Dense univariate polynomial over the rationals.

    ``Polynomial([c0, c1, ...])`` represents ``c0 + c1 x + ...``. Instances
    are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        self._c = _trim(rational(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs) -> "Polynomial":
        p = cls.__new__(cls)
        p._c = _trim(coeffs)
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def linear_root(cls, r) -> "Polynomial":
        """The monic linear polynomial ``x - r``."""
        return cls([-rational(r), 1])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == _trim([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __bool__(self):
        return bool(self._c)

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial._raw([Fraction(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            s = Fraction(other)
            return Polynomial._raw([s * c for c in self._c])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return Polynomial._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial._raw([Fraction(1)])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, value):
        """Evaluate at a rational, or compose with another polynomial."""
        if isinstance(value, Polynomial):
            acc = Polynomial._raw(())
            for c in reversed(self._c):
                acc = acc * value + c
            return acc
        r = rational(value)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * r + c
        return acc

    def divmod_linear(self, r) -> tuple:
        """Synthetic division by ``x - r``: returns ``(quotient, remainder)``."""
        r = rational(r)
        if not self._c:
            return Polynomial._raw(()), Fraction(0)
        q = [Fraction(0)] * (len(self._c) - 1)
        acc = Fraction(0)
        for i in range(len(self._c) - 1, 0, -1):
            acc = acc * r + self._c[i]
            q[i - 1] = acc
        rem = acc * r + self._c[0]
        return Polynomial._raw(q), rem

    def exact_div_linear(self, r) -> "Polynomial":
        q, rem = self.divmod_linear(r)
        if rem != 0:
            raise NotDivisible(rational(r), rem)
        return q

    def to_json(self) -> list:
        return [format_rational(c) for c in self._c]

    @classmethod
    def from_json(cls, data, location: str = "$") -> "Polynomial":
        if not isinstance(data, list):
            raise ParseError(location, "polynomial must be a JSON array")
        out = []
        for i, item in enumerate(data):
            out.append(parse_rational(item, f"{location}[{i}]"))
        return cls(out)

    def __repr__(self):
        return f"Polynomial({self.to_json()!r})"

    def __str__(self):
        return self.pretty()

    def pretty(self, var: str = "x") -> str:
        if not self._c:
            return "0"
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def parse_rational(item, location: str = "$") -> Fraction:
    if isinstance(item, str):
        try:
            return Fraction(item.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(location, f"not a rational string: {item!r}") from None
    if isinstance(item, int) and not isinstance(item, bool):
        return Fraction(item)
    raise ParseError(location, f"expected a rational string, got {type(item).__name__}")


ZERO = Polynomial()
ONE = Polynomial([1])
X = Polynomial.x()


def compose_square(p: Polynomial) -> Polynomial:
    """Return ``p(x^2)``."""
    out = [Fraction(0)] * (2 * len(p.coeffs) - 1 if p.coeffs else 0)
    for k, c in enumerate(p.coeffs):
        out[2 * k] = c
    return Polynomial._raw(out)


def parity_decompose(p: Polynomial) -> tuple:
    """Split ``p(x) = a(-x^2) + x b(-x^2)``; returns ``(a, b)``.

    Coefficient ``c_{2k}`` of ``p`` lands in ``a`` as ``(-1)^k c_{2k} t^k``
    and ``c_{2k+1}`` lands in ``b`` as ``(-1)^k c_{2k+1} t^k``.
    """
    c = p.coeffs
    a = [c[i] if (i // 2) % 2 == 0 else -c[i] for i in range(0, len(c), 2)]
    b = [c[i] if (i // 2) % 2 == 0 else -c[i] for i in range(1, len(c), 2)]
    return Polynomial._raw(a), Polynomial._raw(b)


def tau_decompose(f: Polynomial, tau) -> tuple:
    """Split ``f(x) = p(x^2) + (x - tau) q(x^2)``; returns ``(p, q)``.

    With ``f = e(x^2) + x o(x^2)`` the unique answer is ``q = o`` and
    ``p = e + tau*o``.
    """
    tau = rational(tau)
    c = f.coeffs
    even = list(c[0::2])
    odd = list(c[1::2])
    p = even + [Fraction(0)] * (len(odd) - len(even))
    for k, o in enumerate(odd):
        p[k] += tau * o
    return Polynomial._raw(p), Polynomial._raw(odd)


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``."""
    if n < 0:
        raise ValueError("pochhammer index must be non-negative")
    a = rational(a)
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def pochhammer_poly(p: Polynomial, n: int) -> Polynomial:
    """``(p)_n`` for a polynomial argument ``p``."""
    out = ONE
    for j in range(n):
        out = out * (p + j)
    return out


@dataclass(frozen=True)
class HypSeries:
    """Terminating ``pFq(numer; denom; .)`` truncated at degree ``n``.

    Exactly one numerator parameter must equal ``-n``.
    """

    numerator: tuple
    denominator: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(rational(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(rational(b) for b in self.denominator))
        if self.n < 0:
            raise ValueError("truncation index must be non-negative")
        hits = sum(1 for a in self.numerator if a == -self.n)
        if self.n > 0 and hits != 1:
            raise ValueError(
                f"terminating series needs exactly one numerator parameter equal to {-self.n}"
            )
        self.check()

    def check(self):
        for b in self.denominator:
            for k in range(self.n):
                if b + k == 0:
                    raise DegenerateParameters(
                        self.n, f"denominator Pochhammer ({format_rational(b)})_{k + 1}"
                    )

    def term_ratios(self):
        """Yield the multiplier taking term k to term k+1, for k < n."""
        for k in range(self.n):
            num = Fraction(1)
            for a in self.numerator:
                num *= a + k
            den = Fraction(k + 1)
            for b in self.denominator:
                den *= b + k
            yield num / den


def hyp_terminating(series: HypSeries, z):
    """Evaluate a terminating hypergeometric sum at ``z``.

    ``z`` may be a rational (result: Fraction) or a Polynomial (result:
    Polynomial in the same variable).
    """
    if isinstance(z, Polynomial):
        total = ONE
        zk = ONE
        term = Fraction(1)
        for ratio in series.term_ratios():
            term *= ratio
            zk = zk * z
            total = total + zk * term
        return total
    z = rational(z)
    total = Fraction(1)
    term = Fraction(1)
    for ratio in series.term_ratios():
        term *= ratio * z
        total += term
    return total


def poly_sum(polys: Sequence[Polynomial]) -> Polynomial:
    out = ZERO
    for p in polys:
        out = out + p
    return out
