"""Exception hierarchy shared by every module of the package."""


class AltPullbackError(Exception):
    """Base class for all library errors."""


class NotDivisible(AltPullbackError, ArithmeticError):
    """Exact division requested but the remainder is nonzero."""

    def __init__(self, root, remainder):
        self.root = root
        self.remainder = remainder
        super().__init__(f"dividend does not vanish at {root} (remainder {remainder})")


class DegenerateParameters(AltPullbackError, ValueError):
    """A Pochhammer factor or closed-form denominator vanishes within range."""

    def __init__(self, n, formula):
        self.n = n
        self.formula = formula
        super().__init__(f"degenerate parameters at n={n}: {formula} vanishes")


class NotRegularUpTo(AltPullbackError):
    """<u, P_n^2> = 0: the functional is not regular at depth n."""

    def __init__(self, n):
        self.n = n
        super().__init__(f"functional is not regular: <u, P_{n}^2> = 0")


class NotAnOPSCandidate(AltPullbackError):
    def __init__(self, n, residual):
        self.n = n
        self.residual = residual
        super().__init__(f"no three-term recurrence at step n={n}; residual {residual}")


class DegenerateRecurrence(AltPullbackError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"recurrence coefficient gamma_{n} vanishes")


class KernelVanishes(AltPullbackError):
    """R_n(tau^2) = 0, so the Christoffel kernel quotient is undefined."""

    def __init__(self, n, point):
        self.n = n
        self.point = point
        super().__init__(f"R_{n}({point}) = 0; Christoffel transform undefined")


class CannotFitMass(AltPullbackError):
    """The Dirac-mass fitting equation has no solution or infinitely many."""


class InsufficientMoments(AltPullbackError, IndexError):
    def __init__(self, k, available):
        self.k = k
        self.available = available
        super().__init__(f"moment {k} requested but only {available} are stored")


class ParseError(AltPullbackError, ValueError):
    """Malformed input document. ``location`` is a JSON path like ``$.P[2][0]``."""

    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")
