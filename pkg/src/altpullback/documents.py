"""JSON documents exchanged by the command line front end.

All rationals are canonical ``"num/den"`` strings and objects are dumped
with sorted keys, so serialise -> parse -> serialise is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import DegenerateRecurrence, NotAnOPSCandidate, ParseError
from .exact import Polynomial, format_rational, parse_rational
from .functionals import (
    MomentFunctional,
    Violation,
    annihilation_check,
    gram_check,
    pearson_check,
    pearson_find,
    recurrence_fit,
    report_to_json,
)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _rationals(data, location) -> List[Fraction]:
    if not isinstance(data, list):
        raise ParseError(location, "expected an array of rational strings")
    return [parse_rational(v, f"{location}[{i}]") for i, v in enumerate(data)]


def _polys(data, location) -> List[Polynomial]:
    if not isinstance(data, list):
        raise ParseError(location, "expected an array of polynomials")
    return [Polynomial.from_json(p, f"{location}[{i}]") for i, p in enumerate(data)]


def annihilation_depth(moment_count: int) -> int:
    """Largest k with moment 2k+1 inside a prefix of ``moment_count`` moments."""
    return (moment_count - 2) // 2


def recurrence_report(family) -> List[Violation]:
    try:
        recurrence_fit(family)
    except NotAnOPSCandidate as exc:
        return [Violation((exc.n,), f"residual {exc.residual.pretty()}")]
    except DegenerateRecurrence as exc:
        return [Violation((exc.n,), 0)]
    except ValueError as exc:
        return [Violation((), str(exc))]
    return []


def pearson_report(u: MomentFunctional, order: int) -> dict:
    found = pearson_find(u, order)
    out = found.to_json()
    out["order"] = order
    if found.pair is None:
        out["violations"] = [{"indices": [], "value": "no admissible pair"}]
    else:
        out["violations"] = report_to_json(pearson_check(u, found.pair, order))
    return out


@dataclass
class PipelineDocument:
    """Output of the ``pipeline`` command and input of ``verify``."""

    P: List[Polynomial]
    u_moments: List[Fraction] = field(default_factory=list)
    tau: Optional[Fraction] = None
    family: Optional[str] = None
    params: Dict[str, str] = field(default_factory=dict)
    depth: Optional[int] = None
    B: Optional[List[Polynomial]] = None
    g: Optional[List[Fraction]] = None
    geronimus: Optional[dict] = None
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = {
            "P": [p.to_json() for p in self.P],
            "u_moments": [format_rational(m) for m in self.u_moments],
            "checks": self.checks,
        }
        if self.tau is not None:
            doc["tau"] = format_rational(self.tau)
        if self.family is not None:
            doc["family"] = self.family
            doc["params"] = dict(self.params)
        if self.depth is not None:
            doc["depth"] = self.depth
        if self.B is not None:
            doc["B"] = [p.to_json() for p in self.B]
        if self.g is not None:
            doc["g"] = [format_rational(v) for v in self.g]
        if self.geronimus is not None:
            doc["geronimus"] = {
                "point": format_rational(self.geronimus["point"]),
                "u_moments": [format_rational(m) for m in self.geronimus["u_moments"]],
            }
        return doc

    @classmethod
    def from_json(cls, doc) -> "PipelineDocument":
        if not isinstance(doc, dict):
            raise ParseError("$", "document must be a JSON object")
        if "P" not in doc:
            raise ParseError("$", "missing 'P'")
        out = cls(P=_polys(doc["P"], "$.P"))
        out.u_moments = _rationals(doc.get("u_moments", []), "$.u_moments")
        if "tau" in doc:
            out.tau = parse_rational(doc["tau"], "$.tau")
        if "family" in doc:
            if not isinstance(doc["family"], str):
                raise ParseError("$.family", "expected a string")
            out.family = doc["family"]
            params = doc.get("params", {})
            if not isinstance(params, dict):
                raise ParseError("$.params", "expected an object")
            out.params = {k: format_rational(parse_rational(v, f"$.params.{k}"))
                          for k, v in params.items()}
        if "depth" in doc:
            if not isinstance(doc["depth"], int) or doc["depth"] < 0:
                raise ParseError("$.depth", "expected a non-negative integer")
            out.depth = doc["depth"]
        if "B" in doc:
            out.B = _polys(doc["B"], "$.B")
        if "g" in doc:
            out.g = _rationals(doc["g"], "$.g")
        if "geronimus" in doc:
            ger = doc["geronimus"]
            if not isinstance(ger, dict) or "point" not in ger:
                raise ParseError("$.geronimus", "expected an object with 'point'")
            out.geronimus = {
                "point": parse_rational(ger["point"], "$.geronimus.point"),
                "u_moments": _rationals(ger.get("u_moments", []), "$.geronimus.u_moments"),
            }
        checks = doc.get("checks", {})
        if not isinstance(checks, dict):
            raise ParseError("$.checks", "expected an object")
        out.checks = checks
        return out


def replay_checks(doc: PipelineDocument, pearson_order: Optional[int] = None) -> dict:
    """Recompute every check the document's data supports."""
    checks = {}
    if doc.u_moments:
        u = MomentFunctional.stored(doc.u_moments)
        top = min(len(doc.P) - 1, (len(doc.u_moments) - 1) // 2)
        checks["gram"] = report_to_json(gram_check(u, doc.P, top))
        if doc.tau is not None:
            k = annihilation_depth(len(doc.u_moments))
            checks["annihilation"] = report_to_json(annihilation_check(u, doc.tau, k))
        if pearson_order is not None:
            checks["pearson"] = pearson_report(u, pearson_order)
    checks["recurrence"] = report_to_json(recurrence_report(doc.P))
    if doc.B is not None:
        checks["B_recurrence"] = report_to_json(recurrence_report(doc.B))
        if doc.geronimus is not None and doc.geronimus["u_moments"]:
            ug = MomentFunctional.stored(doc.geronimus["u_moments"])
            top = min(len(doc.B) - 1, (len(doc.geronimus["u_moments"]) - 1) // 2)
            checks["B_gram"] = report_to_json(gram_check(ug, doc.B, top))
    return checks


def checks_clean(checks: dict) -> bool:
    for value in checks.values():
        if isinstance(value, dict):
            if value.get("violations"):
                return False
        elif value:
            return False
    return True
