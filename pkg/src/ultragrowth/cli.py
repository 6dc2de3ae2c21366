"""Command-line front end: load JSON specs, dispatch, emit reports and CSV.

Subcommands
    eval      point evaluation of omega / lambda / young / poisson / kappa
    check     one mixed growth condition between two sequences or matrices
    pipeline  the full jet-to-pair reduction, result as a JSON report
    harness   Gevrey verdict grid against the exact order criterion
    mollify   entire mollification of a closed-form function, error CSV
    report    pretty-print a previously written JSON report

Global flags --K, --tol, --out, --format json|csv apply before the
subcommand name.  Every output embeds a RunManifest (command, input file
hashes, K, tolerance, library version); the manifest's timestamp is kept
out of serialized outputs so that identical inputs produce bitwise
identical files, and is logged to stderr instead.

Exit codes follow the report verdicts: 0 HOLDS_TREND, 1 FAILS_TREND,
2 INCONCLUSIVE, 3 domain errors (the library's own exceptions, printed as
"error: <Type>: <message>"), 4 usage or parse errors.

Input JSON schemas (all versioned with "schema": "ultragrowth/1"):
    sequence   {"kind": "gevrey", "s": 1.5, "K": 2000}
               {"kind": "qgevrey", "q": 1.2, "K": 2000}
               {"kind": "quotients", "params": {"log_mu": [...]}}
               (the to_dict round-trip form is accepted everywhere)
    matrix     {"kind": "constant", "seq": <sequence>, "ks": [1, .., 6]}
               {"rows": [{"x": "1/2", "seq": <sequence>}, ...]}
    jet        {"kind": "factorial_power", "power": 1.4, "K": 1500}
               {"kind": "unit", "index": 3, "K": 200}
               {"values": [...]} or {"log_abs": [...], "phase": [...]}
    weight fn  {"kind": "sqrt"} (closed forms sqrt/power/logpower/linear
               with their params), {"kind": "from_sequence", "seq": ...},
               {"kind": "piecewise", "params": {"t": [...], "w": [...]}}

Inline specs on flags use "name:args" shorthand: --f poly:1,0,2 (ascending
coefficients), exp:rate, gaussian:rate; --M gevrey:s or qgevrey:q.
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime as _dt
import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .errors import UltragrowthError
from .reports import FAILS_TREND, HOLDS_TREND, INCONCLUSIVE, to_jsonable
from .sequences import Jet, TailModel, WeightMatrix, WeightSequence, make_sequence
from .weightfuncs import (
    PreWeightFunction,
    lambda_series,
    omega_assoc,
    young_conjugate,
)
from .harmonic import kappa, poisson
from .conditions import (
    MixedConditionSpec,
    gevrey_harness,
    matrix_mixed_condition,
    mixed_condition,
)
from .entire import SampledFunction, derivative_seminorm, mollify
from .pipeline import run_pipeline

SCHEMA = "ultragrowth/1"
_EXIT = {HOLDS_TREND: 0, FAILS_TREND: 1, INCONCLUSIVE: 2}


# ---------------------------------------------------------------------------
# manifest


@dataclasses.dataclass
class RunManifest:
    """Provenance block embedded in every output.

    Outputs with equal manifests minus the timestamp are bitwise equal; the
    serialized form therefore drops the timestamp (it goes to stderr).
    """

    command: list
    inputs: dict
    K: int | None
    tol: float | None
    version: str
    timestamp: str

    @classmethod
    def collect(cls, args, files: dict) -> "RunManifest":
        hashes = {}
        for name, path in files.items():
            if path is None:
                continue
            hashes[name] = hashlib.sha256(Path(path).read_bytes()).hexdigest()
        return cls(
            command=list(getattr(args, "argv_record", sys.argv[1:])),
            inputs=hashes,
            K=args.K,
            tol=args.tol,
            version=__version__,
            timestamp=_dt.datetime.now(_dt.timezone.utc).isoformat(),
        )

    def to_dict(self) -> dict:
        return {
            "command": list(self.command),
            "inputs": dict(self.inputs),
            "K": self.K,
            "tol": self.tol,
            "version": self.version,
        }


def _log_manifest(man: RunManifest) -> None:
    digest = hashlib.sha256(
        json.dumps(man.to_dict(), sort_keys=True).encode()
    ).hexdigest()[:12]
    print(f"run {man.timestamp} manifest {digest}", file=sys.stderr)


# ---------------------------------------------------------------------------
# loaders


def _read_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def load_sequence(spec: dict | str, K: int | None = None) -> WeightSequence:
    d = _read_json(spec) if isinstance(spec, str) else dict(spec)
    kind = d.get("kind", "quotients")
    horizon = int(d.get("K") or K or 2000)
    label = d.get("label") or ""
    params = d.get("params") or {}
    tail = "auto"
    if "tail" in d and d["tail"] is not None and isinstance(d["tail"], dict):
        t = d["tail"]
        tail = TailModel(p=float(t["exponent"]),
                         log_c=float(t["log_coefficient"]),
                         fitted=bool(t.get("fitted", True)))
    elif d.get("tail", "auto") is None:
        tail = None
    if kind == "gevrey":
        s = float(d.get("s", params.get("s", 0.0)))
        return make_sequence("gevrey", horizon, s=s, label=label or None)
    if kind == "qgevrey":
        q = float(d.get("q", params.get("q", 0.0)))
        return make_sequence("qgevrey", horizon, q=q, label=label or None)
    if "log_mu" in params:
        return make_sequence("quotients", min(horizon, len(params["log_mu"])),
                             log_quotients=params["log_mu"],
                             label=label or None, tail=tail)
    if "mu" in params or "quotients" in d:
        mu = params.get("mu", d.get("quotients"))
        return make_sequence("quotients", min(horizon, len(mu)),
                             quotients=mu, label=label or None, tail=tail)
    if "values" in d or "values" in params:
        v = d.get("values", params.get("values"))
        return make_sequence("values", min(horizon, len(v) - 1),
                             values=v, label=label or None, tail=tail)
    raise ValueError(f"cannot interpret sequence spec with kind {kind!r}")


def load_matrix(spec: dict | str, K: int | None = None) -> WeightMatrix:
    d = _read_json(spec) if isinstance(spec, str) else dict(spec)
    label = d.get("label", "")
    if d.get("kind") == "constant" or ("seq" in d and "ks" in d):
        seq = load_sequence(d["seq"], K)
        return WeightMatrix.constant(seq, [int(k) for k in d["ks"]], label=label)
    rows = [(Fraction(r["x"]), load_sequence(r["seq"], K)) for r in d["rows"]]
    return WeightMatrix(rows, label=label)


def load_jet(spec: dict | str, K: int | None = None) -> Jet:
    d = _read_json(spec) if isinstance(spec, str) else dict(spec)
    label = d.get("label", "")
    horizon = int(d.get("K") or K or 2000)
    kind = d.get("kind")
    if kind == "factorial_power":
        return Jet.from_factorial_power(float(d["power"]), horizon, label=label)
    if kind == "unit":
        return Jet.unit(int(d["index"]), horizon, label=label)
    if "values" in d:
        return Jet.from_values(d["values"], label=label)
    if "log_abs" in d:
        return Jet(np.asarray(d["log_abs"], dtype=float),
                   np.asarray(d["phase"], dtype=float) if "phase" in d else None,
                   label=label)
    raise ValueError(f"cannot interpret jet spec with kind {kind!r}")


def load_weightfn(spec: dict | str, K: int | None = None) -> PreWeightFunction:
    d = _read_json(spec) if isinstance(spec, str) else dict(spec)
    kind = d.get("kind")
    label = d.get("label", "")
    params = {k: v for k, v in (d.get("params") or {}).items()}
    if kind == "from_sequence":
        return PreWeightFunction.from_sequence(load_sequence(d["seq"], K),
                                               label=label)
    if kind == "piecewise":
        return PreWeightFunction.piecewise(params["t"], params["w"], label=label)
    if kind in ("sqrt", "power", "logpower", "linear"):
        return PreWeightFunction.closed(kind, label=label or kind, **params)
    raise ValueError(f"cannot interpret weight-function spec {kind!r}")


def _inline_function(text: str) -> SampledFunction:
    name, _, rest = text.partition(":")
    args = [float(v) for v in rest.split(",")] if rest else []
    if name == "poly":
        return SampledFunction.polynomial(args or [0.0], label=text)
    if name == "exp":
        return SampledFunction.exponential(rate=args[0] if args else 1.0,
                                           label=text)
    if name == "gaussian":
        return SampledFunction.gaussian(rate=args[0] if args else 1.0,
                                        label=text)
    raise ValueError(f"unknown inline function {text!r} (poly/exp/gaussian)")


def _inline_sequence(text: str, K: int) -> WeightSequence:
    name, _, rest = text.partition(":")
    if name == "gevrey":
        return make_sequence("gevrey", K, s=float(rest or 1.0))
    if name == "qgevrey":
        return make_sequence("qgevrey", K, q=float(rest or 1.2))
    raise ValueError(f"unknown inline sequence {text!r} (gevrey:s/qgevrey:q)")


# ---------------------------------------------------------------------------
# output plumbing


def _emit(text: str, out: str | None) -> None:
    if out:
        tmp = Path(out).with_suffix(Path(out).suffix + ".tmp")
        tmp.write_text(text)
        tmp.replace(out)
    else:
        sys.stdout.write(text)


def _csv(rows: list, header: list, man: RunManifest) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            f"{v:.12g}" if isinstance(v, float) else str(v) for v in row))
    lines.append("# manifest: " + json.dumps(man.to_dict(), sort_keys=True))
    return "\n".join(lines) + "\n"


def _json_payload(body: dict, man: RunManifest) -> str:
    payload = {"schema": SCHEMA, "manifest": man.to_dict(), **body}
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_eval(args) -> int:
    points = [float(p) for p in args.points.split(",")]
    man = RunManifest.collect(args, {"seq": args.seq, "fn": args.fn})
    values = []
    if args.target in ("omega", "lambda"):
        if not args.seq:
            raise ValueError(f"eval {args.target} needs --seq")
        M = load_sequence(args.seq, args.K)
        f = (lambda t: float(omega_assoc(M, t))) if args.target == "omega" \
            else (lambda t: float(lambda_series(M, t)))
    else:
        if args.fn:
            om = load_weightfn(args.fn, args.K)
        elif args.seq:
            om = PreWeightFunction.from_sequence(load_sequence(args.seq, args.K))
        else:
            raise ValueError(f"eval {args.target} needs --fn or --seq")
        if args.target == "young":
            f = lambda x: float(young_conjugate(om, x))
        elif args.target == "kappa":
            f = lambda r: float(kappa(om, r))
        else:                       # poisson, evaluated on the imaginary axis
            f = lambda y: float(poisson(om, complex(0.0, y)).value)
    for p in points:
        values.append((p, f(p)))
    _log_manifest(man)
    if args.format == "json":
        _emit(_json_payload({"target": args.target, "points": values}, man),
              args.out)
    else:
        _emit(_csv(values, ["t", args.target], man), args.out)
    return 0


def _load_side(path: str, K: int | None):
    d = _read_json(path)
    if "rows" in d or d.get("kind") == "constant" or "ks" in d:
        return load_matrix(d, K)
    return load_sequence(d, K)


def _cmd_check(args) -> int:
    man = RunManifest.collect(args, {"m": args.m, "n": args.n})
    M = _load_side(args.m, args.K)
    N = _load_side(args.n, args.K)
    spec = MixedConditionSpec(kind=args.kind) if args.K is None \
        else MixedConditionSpec(kind=args.kind, K=args.K)
    if isinstance(M, WeightMatrix) or isinstance(N, WeightMatrix):
        if not (isinstance(M, WeightMatrix) and isinstance(N, WeightMatrix)):
            raise ValueError("check needs two sequences or two matrices")
        rep = matrix_mixed_condition(spec, M, N, args.quantifier)
    else:
        rep = mixed_condition(spec, M, N)
    _log_manifest(man)
    _emit(_json_payload({"report": rep.to_dict()}, man), args.out)
    return _EXIT.get(rep.verdict, 3)


def _cmd_pipeline(args) -> int:
    man = RunManifest.collect(args, {"jet": args.jet, "mm": args.mm,
                                     "nn": args.nn})
    jet = load_jet(args.jet, args.K)
    MM = load_matrix(args.mm, args.K)
    NN = load_matrix(args.nn, args.K)
    result = run_pipeline(jet, MM, NN, K=args.K, strict=args.strict)
    _log_manifest(man)
    _emit(_json_payload({"result": result.to_dict()}, man), args.out)
    core = [result.verifications[k].verdict
            for k in ("jet_in_R", "sv_RS", "S_below_rows")]
    if any(v == FAILS_TREND for v in core):
        return 1
    if all(v == HOLDS_TREND for v in core):
        return 0
    return 2


def _cmd_harness(args) -> int:
    if args.grid != "gevrey-grid":
        raise ValueError(f"unknown harness {args.grid!r}")
    man = RunManifest.collect(args, {})
    s_vals = [float(v) for v in args.s.split(",")]
    t_vals = [float(v) for v in args.t.split(",")]
    cells = gevrey_harness(s_vals, t_vals, kind=args.kind,
                           K=args.K or 1200)
    rows = [(c["s"], c["t"], c["verdict"], c["expected"],
             "yes" if c["agree"] else "no") for c in cells]
    _log_manifest(man)
    _emit(_csv(rows, ["s", "t", "verdict", "expected", "agree"], man),
          args.out)
    if args.out:
        cell_path = str(args.out) + ".cells.json"
        _emit(_json_payload({"cells": cells}, man), cell_path)
    return 0 if all(c["agree"] for c in cells) else 1


def _cmd_mollify(args) -> int:
    man = RunManifest.collect(args, {})
    f = _inline_function(args.f)
    k = float(args.interval)
    fj = mollify(f, k, args.j)
    M = _inline_sequence(args.M, args.K or 256)
    xs = np.asarray(fj.grid, dtype=float)
    fv = np.real(f(xs))
    fjv = np.real(np.asarray(fj.values))
    rows = [(float(x), float(a), float(b), float(abs(a - b)))
            for x, a, b in zip(xs, fv, fjv)]
    err = derivative_seminorm(f, M, k, minus=fj)
    _log_manifest(man)
    _emit(_csv(rows, ["x", "f", "f_j", "abs_err"], man), args.out)
    summary = {"j": args.j, "interval": k, "grading": args.M,
               "seminorm_error": err,
               "max_grid_error": float(np.max(np.abs(fv - fjv)))}
    _emit(_json_payload({"summary": summary}, man),
          (str(args.out) + ".summary.json") if args.out else None)
    return 0


def _cmd_report(args) -> int:
    d = _read_json(args.input)
    seen = set()
    lines = []

    def fmt_one(name: str, rep: dict) -> None:
        verdict = rep.get("verdict", "?")
        seen.add(verdict)
        wit = rep.get("witnesses", {})
        brief = {k: v for k, v in wit.items()
                 if isinstance(v, (int, float, str))}
        keys = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                         for k, v in list(brief.items())[:4])
        lines.append(f"[{verdict}] {name}" + (f"  {keys}" if keys else ""))

    if "report" in d:
        fmt_one(d["report"].get("condition", "check"), d["report"])
    elif "result" in d:
        res = d["result"]
        for name, rep in res.get("verifications", {}).items():
            fmt_one(name, rep)
        extra = {k: res[k] for k in ("A", "D", "K") if k in res}
        lines.append(f"constants {extra}")
        if res.get("theta_violations"):
            lines.append(f"theta_violations {res['theta_violations']}")
    elif "cells" in d:
        for c in d["cells"]:
            fmt_one(f"s={c['s']} t={c['t']}", c)
    else:
        raise ValueError("unrecognized report file")
    _emit("\n".join(lines) + "\n", args.out)
    # a definite failure outranks an indeterminate verdict
    if FAILS_TREND in seen:
        return 1
    if seen <= {HOLDS_TREND, "?"}:
        return 0
    return 2


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ultragrowth",
        description=__doc__.split("\n\n")[0],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "condition catalog: SV (strong vanishing of the mixed sup), "
            "gamma1 (strong gamma_1 via quotient tails), L (Poisson-bound "
            "comparison), strong_omega1 (weight-function composition), "
            "BMT_kappa (kappa-transform domination)"
        ),
    )
    ap.add_argument("--K", type=int, default=None, help="horizon override")
    ap.add_argument("--tol", type=float, default=None,
                    help="tolerance override, recorded in the manifest")
    ap.add_argument("--out", default=None, help="output file (default stdout)")
    ap.add_argument("--format", choices=("json", "csv"), default="csv",
                    help="eval output format")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("eval", help="point evaluation")
    p.add_argument("target",
                   choices=("omega", "lambda", "young", "poisson", "kappa"))
    p.add_argument("--seq", help="sequence JSON file")
    p.add_argument("--fn", help="weight-function JSON file")
    p.add_argument("--points", required=True, help="comma-separated points")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("check", help="mixed growth condition")
    p.add_argument("kind",
                   choices=("SV", "gamma1", "L", "strong_omega1", "BMT_kappa"))
    p.add_argument("--m", required=True, help="source sequence/matrix JSON")
    p.add_argument("--n", required=True, help="target sequence/matrix JSON")
    p.add_argument("--quantifier", default="forall_y_exists_x",
                   help="matrix quantifier pattern")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("pipeline", help="jet-to-pair reduction")
    p.add_argument("--jet", required=True)
    p.add_argument("--mm", required=True, help="source matrix JSON")
    p.add_argument("--nn", required=True, help="target matrix JSON")
    p.add_argument("--strict", action="store_true",
                   help="raise instead of recording failed verifications")
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("harness", help="verdict grids")
    p.add_argument("grid", choices=("gevrey-grid",))
    p.add_argument("--s", default="1.25,1.5,2,3")
    p.add_argument("--t", default="1.25,1.5,2,3")
    p.add_argument("--kind", default="SV",
                   choices=("SV", "gamma1", "L", "strong_omega1", "BMT_kappa"))
    p.set_defaults(func=_cmd_harness)

    p = sub.add_parser("mollify", help="entire mollification error table")
    p.add_argument("--f", required=True, help="inline function, e.g. poly:1,0,2")
    p.add_argument("--j", type=int, required=True, help="kernel parameter")
    p.add_argument("--interval", type=float, required=True,
                   help="cutoff radius k")
    p.add_argument("--M", default="gevrey:1",
                   help="grading sequence, e.g. gevrey:1")
    p.set_defaults(func=_cmd_mollify)

    p = sub.add_parser("report", help="pretty-print a JSON report")
    p.add_argument("input", help="report file from check/pipeline/harness")
    p.set_defaults(func=_cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:]) if argv is None else [str(a) for a in argv]
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 4 if e.code not in (0, None) else 0
    args.argv_record = argv
    try:
        return args.func(args)
    except UltragrowthError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
