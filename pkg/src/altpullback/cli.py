"""Command line front end: ``generate``, ``pipeline``, ``verify``, ``pearson``."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from decimal import Context, Decimal
from fractions import Fraction
from typing import Dict, List, Optional

from . import families
from .documents import (
    PipelineDocument,
    checks_clean,
    dumps,
    loads,
    pearson_report,
    replay_checks,
)
from .errors import AltPullbackError, InsufficientMoments, ParseError
from .exact import format_rational, parse_rational, rational
from .functionals import MomentFunctional
from .transforms import alternating_pullback, geronimus_functional, geronimus_step

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2

_APPROX = Context(prec=30)


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    params: Dict[str, Fraction] = field(default_factory=dict)
    depth: int = 0
    tau: Optional[Fraction] = None
    out: Optional[str] = None
    fmt: str = "json"
    input: Optional[str] = None
    plot: bool = False
    grid: tuple = (Fraction(-1), Fraction(1), 21)

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        if self.command in ("generate", "pipeline") and self.family not in families.FAMILY_KINDS:
            raise ValueError(
                f"unknown family {self.family!r}; expected one of {', '.join(families.FAMILY_KINDS)}"
            )


def approx(q: Fraction) -> str:
    """30 significant digits, for display only."""
    return format(_APPROX.divide(Decimal(q.numerator), Decimal(q.denominator)), "")


# -- commands ---------------------------------------------------------------


def cmd_generate(cfg: RunConfig) -> tuple:
    params = families.make_params(cfg.family, cfg.params)
    rows = families.family_polys(cfg.family, params, cfg.depth)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if cfg.plot:
            lo, hi, count = cfg.grid
            xs = [lo + (hi - lo) * Fraction(i, max(count - 1, 1)) for i in range(count)]
            writer.writerow(["n", "x", "value", "value_approx30"])
            for n, p in enumerate(rows):
                for x in xs:
                    val = p(x)
                    writer.writerow([n, format_rational(x), format_rational(val), approx(val)])
        else:
            writer.writerow(["n"] + [f"c{k}" for k in range(cfg.depth + 1)])
            for n, p in enumerate(rows):
                cells = p.to_json()
                writer.writerow([n] + cells + [""] * (cfg.depth + 1 - len(cells)))
        return buf.getvalue(), EXIT_OK
    doc = {
        "family": cfg.family,
        "params": params.to_json(),
        "variable": families.variable_name(cfg.family),
        "depth": cfg.depth,
        "rows": [p.to_json() for p in rows],
    }
    return dumps(doc), EXIT_OK


def run_pipeline(kind: str, params, tau, N: int) -> PipelineDocument:
    """family_moments -> alternating_pullback (-> Geronimus step) plus all checks."""
    tau = families.DEFAULT_TAU[kind](params) if tau is None else rational(tau)
    count = max(4 * N + 3, 10)
    v = families.family_moments(kind, params, max(2 * N + 2, (count - 1) // 2))
    res = alternating_pullback(v, tau, N)
    doc = PipelineDocument(
        P=list(res.P.polys),
        u_moments=res.u.moments(count),
        tau=tau,
        family=kind,
        params=params.to_json(),
        depth=N,
    )
    ledger = families.geronimus_ledger(kind, params, 2 * N + 1)
    if ledger is not None:
        doc.B = geronimus_step(doc.P, ledger)
        doc.g = list(ledger.g)
        if ledger.point is not None and len(doc.B) > 1:
            ug = geronimus_functional(res.u, ledger.point, "auto", doc.B[1])
            doc.geronimus = {"point": ledger.point, "u_moments": ug.moments(count)}
    doc.checks = replay_checks(doc, pearson_order=count - 2)
    return doc


def cmd_pipeline(cfg: RunConfig) -> tuple:
    params = families.make_params(cfg.family, cfg.params)
    doc = run_pipeline(cfg.family, params, cfg.tau, cfg.depth)
    code = EXIT_OK if checks_clean(doc.checks) else EXIT_VIOLATION
    return dumps(doc.to_json()), code


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_verify(cfg: RunConfig) -> tuple:
    doc = PipelineDocument.from_json(loads(_read_input(cfg.input)))
    pearson_order = None
    if "pearson" in doc.checks and doc.u_moments:
        pearson_order = len(doc.u_moments) - 2
    checks = replay_checks(doc, pearson_order)
    code = EXIT_OK if checks_clean(checks) else EXIT_VIOLATION
    return dumps({"checks": checks}), code


def cmd_pearson(cfg: RunConfig) -> tuple:
    raw = loads(_read_input(cfg.input))
    if isinstance(raw, dict) and "u_moments" in raw:
        u = MomentFunctional.from_json({"moments": raw["u_moments"]}, "$.u_moments")
        where = "$.u_moments"
    else:
        u = MomentFunctional.from_json(raw)
        where = "$.moments"
    available = u.available
    order = cfg.depth if cfg.depth else available - 2
    if order + 2 > available:
        raise InsufficientMoments(order + 1, available)
    if order < 8:
        raise ParseError(where, f"need at least 10 moments for a Pearson search, got {available}")
    report = pearson_report(u, order)
    code = EXIT_OK if not report["violations"] else EXIT_VIOLATION
    return dumps(report), code


COMMANDS = {
    "generate": cmd_generate,
    "pipeline": cmd_pipeline,
    "verify": cmd_verify,
    "pearson": cmd_pearson,
}


# -- argument parsing -------------------------------------------------------


def _param(text: str) -> tuple:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, _, value = text.partition("=")
    try:
        return key.strip(), parse_rational(value.strip())
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rat(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text: str) -> tuple:
    try:
        lo, hi, count = text.split(",")
        return parse_rational(lo), parse_rational(hi), int(count)
    except (ValueError, ParseError):
        raise argparse.ArgumentTypeError("grid must be LO,HI,COUNT") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="altpullback",
        description="Exact construction and verification of alternating (-1)-classical families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True):
        if family:
            p.add_argument("--family", required=True, choices=families.FAMILY_KINDS)
            p.add_argument("--param", action="append", type=_param, default=[],
                           metavar="KEY=VAL", help="rational parameter, repeatable")
        p.add_argument("--depth", type=int, default=0)
        p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, metavar="PATH")

    gen = sub.add_parser("generate", help="closed-form coefficient table")
    common(gen)
    gen.add_argument("--plot", action="store_true",
                     help="with --format csv: sampled values instead of coefficients")
    gen.add_argument("--grid", type=_grid, default=(Fraction(-1), Fraction(1), 21),
                     metavar="LO,HI,COUNT")

    pipe = sub.add_parser("pipeline", help="moments -> pullback -> Geronimus, with checks")
    common(pipe)
    pipe.add_argument("--tau", type=_rat, default=None)

    ver = sub.add_parser("verify", help="replay checks on a pipeline document")
    common(ver, family=False)
    ver.add_argument("input", nargs="?", default="-")

    pea = sub.add_parser("pearson", help="search and check a Pearson pair")
    common(pea, family=False)
    pea.add_argument("input", nargs="?", default="-")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            family=getattr(args, "family", None),
            params=dict(getattr(args, "param", [])),
            depth=args.depth,
            tau=getattr(args, "tau", None),
            out=args.out,
            fmt=args.fmt,
            input=getattr(args, "input", None),
            plot=getattr(args, "plot", False),
            grid=getattr(args, "grid", (Fraction(-1), Fraction(1), 21)),
        )
        if cfg.fmt == "csv" and cfg.command != "generate":
            raise ValueError("csv output is only available for generate")
        text, code = COMMANDS[cfg.command](cfg)
    except (AltPullbackError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_ERROR
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
