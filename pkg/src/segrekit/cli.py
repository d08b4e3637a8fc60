"""Command-line front end.

    segrekit segre ideal.txt
    segrekit csm curve.txt --format json
    segrekit arrangement planes.txt
    segrekit chow-calc -e "integral(cap(ci_segre(3,[2,2,2]), (1+2H)^3))"

Exit status: 0 on success, 2 for malformed input, 3 when a randomized step
fails its genericity checks or a resource cap is hit, 1 for anything else.
"""
from __future__ import annotations

import argparse
import json
import logging
import signal
import sys
import warnings
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from . import arrangements as arr
from . import charcls
from .calc import Series, evaluate
from .chow import ChowClass, render
from .errors import (BudgetExceededError, ConsistencyError, GenericityError, NotHomogeneousError,
                     NotZeroDimensionalError, ParseError, SegreKitError)
from .ffpoly import DEFAULT_PRIME, MonomialOrder, PrimeField
from .groebner import Ideal
from .inputs import read_polynomials
from .segre import RandomPlan, segre_with_degrees

log = logging.getLogger("segrekit")

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_RETRY = 0, 1, 2, 3


@dataclass(frozen=True)
class JobConfig:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    trials: int = 2
    order: str = "grevlex"
    format: str = "text"
    max_degree: int = 60
    max_basis: int = 20000
    max_product_degree: int = charcls.DEFAULT_MAX_PRODUCT_DEGREE
    timeout_seconds: Optional[float] = None

    @property
    def plan(self) -> RandomPlan:
        return RandomPlan(seed=self.seed, trials=self.trials, max_degree=self.max_degree,
                          max_basis=self.max_basis, order=self.order)


@dataclass
class Report:
    command: str
    ambient: Optional[int]
    degree: Optional[int]
    result: Dict[str, Any]


# ----------------------------------------------------------------------------------
# rendering

def encode(value):
    """JSON-native form of a result value."""
    if isinstance(value, ChowClass):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    return value


def decode(value):
    """Inverse of :func:`encode`: class dicts become ChowClass, lists become tuples."""
    if isinstance(value, dict):
        if set(value) == {"ambient", "coeffs"}:
            return ChowClass.from_json(value)
        return {k: decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return tuple(decode(v) for v in value)
    return value


def render_json(report: Report, cfg: JobConfig) -> str:
    doc = {"command": report.command, "ambient": report.ambient, "degree": report.degree,
           "result": encode(report.result), "seed": cfg.seed, "prime": cfg.prime}
    return json.dumps(doc, sort_keys=False)


def parse_json(text: str) -> Dict[str, Any]:
    doc = json.loads(text)
    doc["result"] = decode(doc["result"])
    return doc


def _text_value(key: str, v) -> List[str]:
    if isinstance(v, ChowClass):
        return [f"{key}: {render(v)}", f"{key} vector: {json.dumps(list(v.coeffs))}"]
    if isinstance(v, (list, tuple)):
        if v and all(isinstance(x, dict) for x in v):
            out = []
            for x in v:
                for k2, v2 in x.items():
                    out.extend(_text_value(k2, v2))
            return out
        return [f"{key}: {json.dumps(list(v))}"]
    if v is None:
        return [f"{key}: none"]
    if isinstance(v, bool):
        return [f"{key}: {'yes' if v else 'no'}"]
    return [f"{key}: {v}"]


def render_text(report: Report) -> str:
    lines = []
    for k, v in report.result.items():
        lines.extend(_text_value(k, v))
    return "\n".join(lines)


# ----------------------------------------------------------------------------------
# commands

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _polys(path: str, cfg: JobConfig):
    return read_polynomials(_read(path), cfg.prime)


def _single(path: str, cfg: JobConfig):
    ring, polys = _polys(path, cfg)
    if len(polys) != 1:
        raise ParseError(f"expected exactly one polynomial, found {len(polys)}")
    F = polys[0]
    if F.is_zero() or not F.is_homogeneous:
        raise NotHomogeneousError("input must be a nonzero homogeneous polynomial")
    if F.degree < 1:
        raise NotHomogeneousError("input must have positive degree")
    return ring.nvars - 1, F


def cmd_segre(path, cfg):
    ring, polys = _polys(path, cfg)
    I = Ideal(ring, polys)
    s, pd = segre_with_degrees(I, cfg.plan)
    degree = max((g.degree for g in I.generators), default=None)
    result = {"segre": s, "projective_degrees": list(pd.g) if pd else None}
    return Report("segre", ring.nvars - 1, degree, result)


def cmd_csm(path, cfg):
    ring, polys = _polys(path, cfg)
    csm = charcls.csm_subscheme(polys, cfg.plan, cfg.max_product_degree)
    degree = max(g.degree for g in polys)
    return Report("csm", ring.nvars - 1, degree, {"csm": csm, "euler": csm[0]})


def cmd_euler(path, cfg):
    ring, polys = _polys(path, cfg)
    chi = charcls.euler_characteristic(polys, cfg.plan, cfg.max_product_degree)
    return Report("euler", ring.nvars - 1, max(g.degree for g in polys), {"euler": chi})


def cmd_milnor_class(path, cfg):
    n, F = _single(path, cfg)
    return Report("milnor-class", n, F.degree, {"milnor_class": charcls.milnor_class(F, cfg.plan)})


def cmd_milnor_number(path, cfg):
    n, F = _single(path, cfg)
    mu = charcls.parusinski_milnor(F, cfg.plan)
    try:
        local = charcls.milnor_number_sum(F, cfg.plan)
    except NotZeroDimensionalError:
        local = None
    return Report("milnor-number", n, F.degree, {"parusinski": mu, "milnor_sum": local})


def cmd_le(path, cfg):
    n, F = _single(path, cfg)
    data = charcls.le_numbers(F, cfg.plan)
    return Report("le", n, F.degree,
                  {"lambda": list(data.lam), "gamma": list(data.gamma), "le_class": data.le_class})


def cmd_polar(path, cfg):
    n, F = _single(path, cfg)
    return Report("polar", n, F.degree, {"gamma": list(charcls.polar_numbers(F, cfg.plan))})


def cmd_polar_degree(path, cfg):
    n, F = _single(path, cfg)
    return Report("polar-degree", n, F.degree, {"polar_degree": charcls.polar_degree(F, cfg.plan)})


def cmd_discriminant(path, cfg):
    n, F = _single(path, cfg)
    result = {"multiplicity": charcls.discriminant_multiplicity(F, cfg.plan),
              "euler_obstruction": charcls.euler_obstruction_discriminant(F, cfg.plan)}
    return Report("discriminant", n, F.degree, result)


def cmd_arrangement(path, cfg):
    A = arr.parse_arrangement(_read(path))
    result: Dict[str, Any] = {
        "hyperplanes": len(A),
        "essential": A.is_essential,
        "characteristic": list(arr.characteristic_polynomial(A)),
        "csm_complement": arr.csm_complement(A),
    }
    if len(A):
        pi = list(arr.poincare_polynomial(A))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            betti = list(arr.betti_ranks_via_segre(A, cfg.plan, cfg.prime))
        result["poincare"] = pi
        result["betti_via_segre"] = betti
        result["routes_agree"] = pi == betti
        if not A.is_essential:
            log.warning("arrangement is not essential; the Segre route is unproven there")
    result["sja_closed_form"] = arr.sja_closed_form(A) if A.is_reduced else None
    return Report("arrangement", A.n, A.d, result)


def cmd_chow_calc(path, cfg, expr=None):
    text = expr if expr is not None else _read(path)
    values = evaluate(text)
    out = []
    ambient = None
    for v in values:
        if isinstance(v, ChowClass):
            out.append({"class": v})
            ambient = v.n
        elif isinstance(v, list):
            out.append({"list": v})
        elif isinstance(v, str):
            out.append({"word": v})
        else:
            out.append({"value": v})
    return Report("chow-calc", ambient, None, {"values": out})


COMMANDS: Dict[str, Callable] = {
    "segre": cmd_segre,
    "csm": cmd_csm,
    "euler": cmd_euler,
    "milnor-class": cmd_milnor_class,
    "milnor-number": cmd_milnor_number,
    "le": cmd_le,
    "polar": cmd_polar,
    "polar-degree": cmd_polar_degree,
    "discriminant": cmd_discriminant,
    "arrangement": cmd_arrangement,
    "chow-calc": cmd_chow_calc,
}

HELP = {
    "segre": "Segre class of the subscheme cut out by the listed polynomials",
    "csm": "CSM class (and Euler characteristic) of the listed hypersurfaces' intersection",
    "euler": "topological Euler characteristic of the intersection",
    "milnor-class": "Milnor class of a single reduced hypersurface",
    "milnor-number": "Parusinski Milnor number and, for isolated singularities, the local sum",
    "le": "Le and polar numbers of a hypersurface",
    "polar": "polar numbers of a hypersurface",
    "polar-degree": "degree of the gradient map",
    "discriminant": "multiplicity and Euler obstruction of the discriminant at the hypersurface",
    "arrangement": "lattice invariants and Betti ranks of an arrangement complement",
    "chow-calc": "evaluate a class-calculus program",
}


# ----------------------------------------------------------------------------------
# process boundary

class _Timeout(Exception):
    pass


@contextmanager
def _deadline(seconds: Optional[float]):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def handler(signum, frame):
        raise _Timeout()

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def run(command: str, path: Optional[str], cfg: JobConfig, expr: Optional[str] = None
        ) -> Tuple[int, str, str]:
    """Run one job; returns (exit code, stdout text, stderr text)."""
    try:
        MonomialOrder.parse(cfg.order)
        PrimeField(cfg.prime)
    except ValueError as exc:
        return EXIT_PARSE, "", f"error [config]: {exc}\n"
    fn = COMMANDS[command]
    stage = command
    try:
        with _deadline(cfg.timeout_seconds):
            if command == "chow-calc":
                report = fn(path, cfg, expr)
            else:
                report = fn(path, cfg)
    except ParseError as exc:
        return EXIT_PARSE, "", f"error [parse {path or 'expression'}]: {exc}\n"
    except (OSError, UnicodeDecodeError) as exc:
        return EXIT_PARSE, "", f"error [read]: {exc}\n"
    except (GenericityError, BudgetExceededError) as exc:
        return EXIT_RETRY, "", (f"error [{stage}]: {exc}\n"
                                "retry with another --seed, more --trials or larger caps\n")
    except _Timeout:
        return EXIT_RETRY, "", (f"error [{stage}]: time limit of {cfg.timeout_seconds}s reached\n"
                                "retry with a larger --timeout-seconds\n")
    except ConsistencyError as exc:
        return EXIT_ERROR, "", f"error [{stage} consistency check]: {exc}\n"
    except (SegreKitError, ValueError) as exc:
        return EXIT_PARSE, "", f"error [{stage} input]: {exc}\n"
    if cfg.format == "json":
        out = render_json(report, cfg)
    else:
        out = render_text(report)
    return EXIT_OK, out + "\n", ""


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="characteristic of the coefficient field")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=2, help="independent random trials that must agree")
    common.add_argument("--order", default="grevlex", help="grevlex, lex or elim(k)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-degree", type=int, default=60, help="cap on S-pair degrees")
    common.add_argument("--max-basis", type=int, default=20000, help="cap on Groebner basis size")
    common.add_argument("--max-product-degree", type=int, default=charcls.DEFAULT_MAX_PRODUCT_DEGREE,
                        help="cap on inclusion-exclusion product degrees")
    common.add_argument("--timeout-seconds", type=float, default=None)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="segrekit", description="Segre and characteristic classes in P^n")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=HELP[name])
        if name == "chow-calc":
            p.add_argument("input", nargs="?", help="program file ('-' for stdin)")
            p.add_argument("-e", "--expr", help="program text given inline")
        else:
            p.add_argument("input", help="input file ('-' for stdin)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "chow-calc" and args.input is None and args.expr is None:
        parser.error("chow-calc needs an input file or --expr")
    cfg = JobConfig(prime=args.prime, seed=args.seed, trials=args.trials, order=args.order,
                    format=args.format, max_degree=args.max_degree, max_basis=args.max_basis,
                    max_product_degree=args.max_product_degree,
                    timeout_seconds=args.timeout_seconds)
    expr = getattr(args, "expr", None)
    code, out, err = run(args.command, args.input, cfg, expr)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
