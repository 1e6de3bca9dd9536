"""Command-line entry point: every subcommand prints deterministic JSON.

Exit codes: 0 success, 1 assertion failure or fault, 2 usage error,
3 undecided at the requested precision.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

import mpmath

from . import __version__
from .config import Config
from .congruence import certify_square_mod4, congruence_witness
from .geometry import (
    Hedgehog,
    RootIsolationError,
    dubinin_bound,
    house,
    isolate_roots,
    leja_capacity_estimate,
    mahler_measure,
    unit_circle_roots,
)
from .pipelines import (
    PreconditionError,
    RationalMap,
    UndecidedError,
    check_atoral_bound,
    check_holonomic_bound,
    check_smale_bound,
    check_sz_bound,
    critical_values,
    diagonal_series,
    matveev_crossover,
    matveev_table,
    scan,
)
from .poly import IntPoly, PolynomialSyntaxError, parse_poly, root_power_transform
from .rationality import hankel_determinants, reconstruct_rational
from .series import (
    IntegralityFault,
    OdeOperator,
    TruncatedSeries,
    growth_radius,
    pth_root_series,
    quadratic_branch_ode,
    sqrt_series,
    sz_series,
)

OK, FAIL, USAGE, UNDECIDED = 0, 1, 2, 3
FLOAT_DIGITS = 17  # floats are IEEE doubles printed with shortest round-trip repr


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunManifest:
    command: str
    inputs: dict
    config: dict
    outcome: str
    exit_code: int
    version: str = __version__

    def to_json(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < 2**53 else str(obj)
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, IntPoly):
        return obj.to_json()
    if isinstance(obj, TruncatedSeries):
        return obj.to_json()
    if isinstance(obj, mpmath.mpf):
        return float(obj)
    if isinstance(obj, mpmath.mpc):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _plain(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render(payload: dict) -> str:
    body = dict(payload)
    body["float_precision"] = FLOAT_DIGITS
    return json.dumps(_plain(body), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Subcommand handlers: (inputs, config) -> (payload, exit code)
# ---------------------------------------------------------------------------


def _poly(text: str) -> IntPoly:
    return parse_poly(text)


def cmd_transform(a: dict, cfg: Config):
    p = _poly(a["poly"])
    return {"input": p, "m": a["m"], "transform": root_power_transform(p, a["m"])}, OK


def cmd_expand(a: dict, cfg: Config):
    q = _poly(a["poly"])
    n = cfg.order if a["n"] is None else a["n"]
    try:
        if a["mode"] == "sqrt":
            f = sqrt_series(q, n)
        elif a["mode"] == "pth-root":
            f = pth_root_series(q, a["p"], n)
        else:
            f = sz_series(q, n)
    except IntegralityFault as exc:
        return {"input": q, "mode": a["mode"], "integral": False, "fault": str(exc)}, FAIL
    integral = f.is_integral()
    code = FAIL if a["assert_integral"] and not integral else OK
    return {"input": q, "mode": a["mode"], "order": n, "coefficients": f, "integral": integral}, code


def cmd_congruence(a: dict, cfg: Config):
    p = _poly(a["poly"])
    w = congruence_witness(p, a["prime"])
    out = {
        "input": p,
        "prime": w.prime,
        "low": w.low,
        "high": w.high,
        "difference": w.difference,
        "modulus": w.modulus,
        "quotient": w.quotient,
        "holds": w.holds,
    }
    return out, OK if w.holds else FAIL


def cmd_certify(a: dict, cfg: Config):
    q = _poly(a["poly"])
    cert = certify_square_mod4(q)
    if cert is None:
        return {"input": q, "square_mod4": False}, FAIL
    return {"input": q, "square_mod4": True, "u": cert.u, "v": cert.v}, OK


def cmd_rationality(a: dict, cfg: Config):
    q = _poly(a["poly"])
    k = cfg.hankel_k if a["k"] is None else a["k"]
    order = max(cfg.order, 2 * k + 1)
    f = sz_series(q, order) if a["sz"] else TruncatedSeries.from_poly(q, order).inverse()
    rep = hankel_determinants(f, k, cfg.jobs)
    out = {"input": q, "series": "sz" if a["sz"] else "inverse", "order": order, **rep.to_json()}
    dmax = k if a["dmax"] is None else a["dmax"]
    rec = reconstruct_rational(f, dmax)
    out["reconstruction"] = None if rec is None else {"numerator": rec[0], "denominator": rec[1]}
    return out, OK


def cmd_roots(a: dict, cfg: Config):
    p = _poly(a["poly"])
    encs = isolate_roots(p, cfg.tol, cfg.precision_cap)
    return {"input": p, "roots": [e.to_json() for e in encs]}, OK


def cmd_house(a: dict, cfg: Config):
    p = _poly(a["poly"])
    return {
        "input": p,
        "house": house(p, cfg.tol, cfg.precision_cap),
        "mahler_measure": mahler_measure(p, cfg.tol, cfg.precision_cap),
        "unit_circle_roots": unit_circle_roots(p) if p[0] != 0 else None,
    }, OK


def cmd_capacity(a: dict, cfg: Config):
    verts = json.loads(a["vertices"])
    try:
        hog = Hedgehog(tuple(complex(*v) if isinstance(v, list) else complex(v) for v in verts))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"vertices must be a JSON list of numbers or [re, im] pairs: {exc}") from exc
    out = {"vertices": hog, "dubinin": dubinin_bound(hog), "spikes": hog.spike_directions()}
    if a["npts"]:
        out["leja_estimate"] = leja_capacity_estimate(hog, a["npts"])
        out["npts"] = a["npts"]
    return out, OK


def cmd_sz_check(a: dict, cfg: Config):
    p = _poly(a["poly"])
    tr = check_sz_bound(p, cfg.tol, cfg.order, cfg.hankel_k, cfg.precision_cap)
    return tr.to_json(), FAIL if tr.classification == "fault" else OK


def cmd_atoral_check(a: dict, cfg: Config):
    p = _poly(a["poly"])
    rep = check_atoral_bound(p, cfg.tol, cfg.precision_cap)
    return rep.to_json(), OK if rep.satisfied else FAIL


def cmd_scan(a: dict, cfg: Config):
    rep = scan(
        a["degree"],
        a["coeff_bound"],
        tol=cfg.tol,
        budget=cfg.scan_budget,
        resume=a["resume"],
        jobs=cfg.jobs,
    )
    out = rep.to_json()
    if rep.counterexamples or rep.faults:
        return out, FAIL
    if rep.undecided:
        return out, UNDECIDED
    return out, OK if rep.complete else UNDECIDED


def _holonomic_inputs(a: dict, cfg: Config) -> tuple[TruncatedSeries, OdeOperator]:
    order = cfg.order if a["n"] is None else a["n"]
    if a["quadratic"]:
        pa, pb, pd = (_poly(t) for t in a["quadratic"])
        if pb.is_zero():
            raise UsageError("B must be nonzero")
        # B = X^v B1 with B1(0) != 0; the numerator must vanish to order v
        v = next(i for i, c in enumerate(pb.coeffs) if c)
        num = TruncatedSeries.from_poly(pa, order + v) - sqrt_series(pd, order + v)
        if any(num.coeffs[:v]):
            raise UsageError("A - sqrt(DELTA) is not divisible by the power of X in B")
        num = TruncatedSeries(num.coeffs[v:])
        f = num * TruncatedSeries.from_poly(IntPoly(pb.coeffs[v:]), order).inverse()
        op = quadratic_branch_ode(pa, pb, pd)
    elif a["rational"]:
        num, den = (_poly(t) for t in a["rational"])
        f = TruncatedSeries.from_poly(num, order) * TruncatedSeries.from_poly(den, order).inverse()
        op = OdeOperator(num * den, (-(num.derivative() * den - num * den.derivative()),))
    else:
        raise UsageError("give --quadratic A B DELTA or --rational NUM DEN")
    if a["operator"]:
        cs = [_poly(t) if isinstance(t, str) else IntPoly.from_descending(t) for t in json.loads(a["operator"])]
        if len(cs) < 2:
            raise UsageError("operator needs at least two coefficients [a_0, ..., a_r]")
        op = OdeOperator(cs[-1], tuple(cs[:-1]))
    return f, op


def cmd_holonomic_check(a: dict, cfg: Config):
    f, op = _holonomic_inputs(a, cfg)
    rep = check_holonomic_bound(f, op, cfg.height_slack)
    out = rep.to_json()
    out["operator"] = [c for c in op.coefficients()]
    return out, FAIL if rep.passed is False else OK


def _rmap(a: dict) -> RationalMap:
    try:
        return RationalMap(_poly(a["p"]), _poly(a["q"]))
    except ValueError as exc:
        if isinstance(exc, PolynomialSyntaxError):
            raise
        raise UsageError(str(exc)) from exc


def cmd_critical_values(a: dict, cfg: Config):
    r = _rmap(a)
    vals = critical_values(r, cfg.tol, cfg.precision_cap)
    return {"p": r.p, "q": r.q, "critical_values": [v.to_json() for v in vals]}, OK


def cmd_smale_check(a: dict, cfg: Config):
    r = _rmap(a)
    rep = check_smale_bound(r, cfg.tol, cfg.precision_cap)
    return {"p": r.p, "q": r.q, **rep.to_json()}, FAIL if rep.holds is False else OK


def cmd_diagonal(a: dict, cfg: Config):
    r = _rmap(a)
    n = cfg.order if a["n"] is None else a["n"]
    f = diagonal_series(r, n)
    return {"p": r.p, "q": r.q, "order": n, "coefficients": f, "growth_radius": growth_radius(f)}, OK


def cmd_matveev(a: dict, cfg: Config):
    rows = matveev_table(a["lo"], a["hi"], atoral=a["atoral"])
    return {"table": rows, "crossover": matveev_crossover(atoral=a["atoral"]), "atoral": a["atoral"]}, OK


HANDLERS: dict[str, Callable] = {
    "transform": cmd_transform,
    "expand": cmd_expand,
    "congruence": cmd_congruence,
    "certify": cmd_certify,
    "rationality": cmd_rationality,
    "roots": cmd_roots,
    "house": cmd_house,
    "capacity": cmd_capacity,
    "sz-check": cmd_sz_check,
    "atoral-check": cmd_atoral_check,
    "scan": cmd_scan,
    "holonomic-check": cmd_holonomic_check,
    "critical-values": cmd_critical_values,
    "smale-check": cmd_smale_check,
    "diagonal": cmd_diagonal,
    "matveev": cmd_matveev,
}

GLOBAL_FLAGS = ("tol", "order", "precision_cap", "slack", "jobs")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("configuration (env: SZKIT_<NAME>)")
    g.add_argument("--tol", type=float, default=None, help="root enclosure tolerance (1e-12)")
    g.add_argument("--order", type=int, default=None, help="series truncation order (128)")
    g.add_argument("--precision-cap", type=int, default=None, help="max working precision in bits (4096)")
    g.add_argument("--slack", type=float, default=None, help="decay diagnostic slack (1.5)")
    g.add_argument("--jobs", type=int, default=None, help="worker count for scans and determinants")
    common.add_argument("--manifest", default=None, help="write a replayable run manifest here")

    parser = _Parser(prog="szkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_, parents=[common])

    s = add("transform", "root-power transform P_m")
    s.add_argument("poly")
    s.add_argument("-m", type=int, required=True)

    s = add("expand", "truncated series of a radical")
    s.add_argument("poly")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--sqrt", dest="mode", action="store_const", const="sqrt")
    mode.add_argument("--pth-root", dest="p", type=int, default=None)
    mode.add_argument("--sz", dest="mode", action="store_const", const="sz")
    s.add_argument("-n", type=int, default=None, help="highest coefficient index")
    s.add_argument("--assert-integral", action="store_true")

    s = add("congruence", "P_{p^2} - P_p divisibility by p^2")
    s.add_argument("poly")
    s.add_argument("--prime", type=int, default=2)

    s = add("certify", "write Q = U^2 + 4V")
    s.add_argument("poly")

    s = add("rationality", "Hankel determinants and rational reconstruction")
    s.add_argument("poly", help="radicand source P (with --sz) or denominator Q of 1/Q")
    s.add_argument("-k", type=int, default=None)
    s.add_argument("--dmax", type=int, default=None)
    s.add_argument("--inverse", dest="sz", action="store_false", help="use 1/Q instead of the sz series")

    for name, text in (("roots", "certified root enclosures"), ("house", "house and Mahler measure")):
        s = add(name, text)
        s.add_argument("poly")

    s = add("capacity", "Dubinin bound and Leja estimate of a hedgehog")
    s.add_argument("vertices", help='JSON list, e.g. "[[1,0],[0,1],[-1,0],[0,-1]]"')
    s.add_argument("--npts", type=int, default=0)

    for name, text in (("sz-check", "root-modulus dichotomy"), ("atoral-check", "atoral reciprocal bound")):
        s = add(name, text)
        s.add_argument("poly")

    s = add("scan", "exhaustive dichotomy scan")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--coeff-bound", type=int, required=True)
    s.add_argument("--resume", default=None, help="token degree:bound:index from a partial scan")

    s = add("holonomic-check", "height bound for a holonomic series")
    s.add_argument("--quadratic", nargs=3, metavar=("A", "B", "DELTA"), help="f = (A - sqrt(DELTA)) / B")
    s.add_argument("--rational", nargs=2, metavar=("NUM", "DEN"), help="f = NUM / DEN")
    s.add_argument("--operator", default=None, help="JSON list [a_0, ..., a_r] of polynomials")
    s.add_argument("-n", type=int, default=None)

    for name, text in (
        ("critical-values", "critical values of R = P/Q"),
        ("smale-check", "least critical value bound"),
        ("diagonal", "diagonal series of 1/(X Q(Y) - P(Y)/Y)"),
    ):
        s = add(name, text)
        s.add_argument("p")
        s.add_argument("q", nargs="?", default="1")
        if name == "diagonal":
            s.add_argument("-n", type=int, default=None)

    s = add("matveev", "comparison table against Matveev's bound")
    s.add_argument("--lo", type=int, default=55)
    s.add_argument("--hi", type=int, default=62)
    s.add_argument("--atoral", action="store_true")

    s = sub.add_parser("replay", help="re-run a manifest and check the output digest")
    s.add_argument("path")
    return parser


def _split(ns: argparse.Namespace) -> tuple[str, dict, dict]:
    d = vars(ns).copy()
    command = d.pop("command")
    d.pop("manifest", None)
    overrides = {k: d.pop(k) for k in GLOBAL_FLAGS}
    if command == "expand":
        if d["p"] is not None:
            d["mode"] = "pth-root"
    return command, d, overrides


def execute(command: str, inputs: dict, cfg: Config) -> tuple[str, int]:
    try:
        payload, code = HANDLERS[command](inputs, cfg)
        payload = {"command": command, **payload}
    except UndecidedError as exc:
        payload = {"command": command, "error": "undecided", "message": str(exc), "house": exc.interval}
        payload["threshold"] = exc.threshold
        code = UNDECIDED
    except RootIsolationError as exc:
        payload, code = {"command": command, "error": "undecided", "message": str(exc)}, UNDECIDED
    except PreconditionError as exc:
        payload, code = {"command": command, "error": exc.reason, "message": str(exc)}, FAIL
    except IntegralityFault as exc:
        payload, code = {"command": command, "error": "fault", "message": str(exc)}, FAIL
    except (UsageError, PolynomialSyntaxError) as exc:
        payload, code = {"command": command, "error": "usage", "message": str(exc)}, USAGE
    except (ValueError, ArithmeticError) as exc:
        payload, code = {"command": command, "error": "invalid-input", "message": str(exc)}, USAGE
    return render(payload), code


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _replay(path: str, out) -> int:
    try:
        data = json.loads(Path(path).read_text())
        man = RunManifest(**data)
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read manifest {path}: {exc}") from exc
    if man.command not in HANDLERS:
        raise UsageError(f"manifest names unknown command {man.command!r}")
    text, code = execute(man.command, dict(man.inputs), Config(**man.config))
    out.write(text)
    if _digest(text) != man.outcome or code != man.exit_code:
        print("replay output differs from the recorded digest", file=sys.stderr)
        return FAIL
    return code


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            raise UsageError("missing subcommand")
        if ns.command == "replay":
            return _replay(ns.path, out)
        command, inputs, overrides = _split(ns)
        cfg = Config.from_env(**overrides)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"szkit: error: {exc}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"szkit: error: {exc}", file=sys.stderr)
        return USAGE
    text, code = execute(command, inputs, cfg)
    out.write(text)
    if ns.manifest:
        man = RunManifest(command, inputs, cfg.to_json(), _digest(text), code)
        Path(ns.manifest).write_text(json.dumps(man.to_json(), sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
