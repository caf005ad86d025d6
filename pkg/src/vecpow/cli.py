"""Command-line front end.

Input documents are YAML or JSON of the form
``{M: 3, nu: 1, vectors: [[0.4, 0, 0], [0, 1, 0]]}``, given either as a file
path or inline.  Tables are written as comma-separated text with a header row.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 a numerical error (non-convergence or domain violation).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import DomainError, NonConvergence, ParseError, ValidationError, VecpowError
from .expand import (
    ExpansionParams,
    MVector,
    Truncation,
    direct_eval,
    theorem1_series,
    theorem2_series,
)
from .numerics import McSpec, QuadSpec
from .radial import eta_table, hankel_xi_table, xi_table
from .verify import SuiteConfig, format_reports, run_suite

COMMANDS = ("expand-direct", "expand-ortho", "oracle", "converge", "bases", "verify")
CONVERGE_HEADER = ("l_max", "n_or_mu_max", "value", "abs_err_vs_oracle", "tail_estimate", "mc_stderr",
                   "elapsed_seconds")
EXPAND_HEADER = ("method", "value", "oracle", "abs_err", "terms_used", "tail_estimate", "mc_stderr")


@dataclass
class JobConfig:
    command: str
    input: str | None = None
    truncation: Truncation = field(default_factory=Truncation)
    mc: McSpec = field(default_factory=McSpec)
    quad: QuadSpec = field(default_factory=QuadSpec)
    output: str | None = None
    threads: int = 1
    timing: bool = True
    extra: dict = field(default_factory=dict)


def _load_document(source: str):
    try:
        is_file = "\n" not in source and Path(source).is_file()
    except OSError:
        is_file = False
    text = Path(source).read_text() if is_file else source
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ParseError(f"could not parse input{where}: {getattr(exc, 'problem', exc)}") from exc


def parse_input(document: str, theorem2: bool = False):
    """Validate an input document and return ``(ExpansionParams, [MVector, ...])``."""
    doc = _load_document(document)
    if not isinstance(doc, dict):
        raise ParseError("input must be a mapping with keys M, nu, vectors")
    missing = [k for k in ("M", "nu", "vectors") if k not in doc]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}")
    M, nu, vecs = doc["M"], doc["nu"], doc["vectors"]
    if isinstance(M, bool) or not isinstance(M, int) or M < 3:
        raise ValidationError(f"field M: expected an integer >= 3, got {M!r}")
    if isinstance(nu, bool) or not isinstance(nu, (int, float)) or not math.isfinite(nu):
        raise ValidationError(f"field nu: expected a finite real, got {nu!r}")
    if not isinstance(vecs, list) or len(vecs) < 2:
        raise ValidationError("field vectors: expected a list of at least two vectors")
    out = []
    for i, v in enumerate(vecs):
        if not isinstance(v, list) or len(v) != M:
            raise ValidationError(f"field vectors[{i}]: expected a list of {M} reals")
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
            raise ValidationError(f"field vectors[{i}]: entries must be real numbers")
        out.append(MVector(v))
    if theorem2 and not 0 < nu < M:
        raise ValidationError(f"field nu: the orthogonal-basis series needs 0 < nu < M, got nu={nu}")
    return ExpansionParams(M, len(out), float(nu)), out


def _writer(stream):
    return csv.writer(stream, lineterminator="\n")


def _fmt(x):
    return "NA" if x is None else repr(float(x))


def _evaluate(method, params, vectors, trunc, job):
    if method == "direct":
        return theorem1_series(vectors, params, trunc, job.mc, job.threads)
    return theorem2_series(vectors, params, trunc, job.quad, job.mc, job.threads)


def _run_expand(job, out, method):
    params, vectors = parse_input(job.input, theorem2=(method == "ortho"))
    ev = _evaluate(method, params, vectors, job.truncation, job)
    oracle = direct_eval(vectors, params.nu)
    w = _writer(out)
    w.writerow(EXPAND_HEADER)
    w.writerow([method, _fmt(ev.value), _fmt(oracle), _fmt(abs(ev.value - oracle)), ev.terms_used,
                _fmt(ev.tail_estimate), _fmt(ev.mc_stderr)])
    return 0


def _run_oracle(job, out):
    params, vectors = parse_input(job.input)
    out.write(_fmt(direct_eval(vectors, params.nu)) + "\n")
    return 0


def _run_converge(job, out):
    method = job.extra.get("method", "direct")
    params, vectors = parse_input(job.input, theorem2=(method == "ortho"))
    oracle = direct_eval(vectors, params.nu)
    w = _writer(out)
    w.writerow(CONVERGE_HEADER)
    base = job.truncation
    for k in job.extra.get("steps") or range(2, base.l_max + 1, 2):
        if method == "direct":
            trunc = Truncation(k, k, base.n_max)
        else:
            trunc = Truncation(k, base.mu_max, k)
        t0 = time.perf_counter()
        ev = _evaluate(method, params, vectors, trunc, job)
        elapsed = time.perf_counter() - t0
        w.writerow([k, k, _fmt(ev.value), _fmt(abs(ev.value - oracle)), _fmt(ev.tail_estimate),
                    _fmt(ev.mc_stderr), f"{elapsed:.6f}" if job.timing else "NA"])
    return 0


def _run_bases(job, out):
    M, nu, l = job.extra["M"], job.extra.get("nu"), job.extra["l"]
    grid = job.extra["grid"]
    n_max = job.truncation.n_max
    w = _writer(out)
    if job.extra["kind"] == "eta":
        w.writerow(("r", "n", "l", "eta"))
        for r in grid:
            vals = eta_table(n_max, l, M, r)
            for n in range(n_max + 1):
                w.writerow([_fmt(r), n, l, _fmt(vals[n])])
        return 0
    if nu is None or not 0 < nu < M:
        raise ValidationError("xi tables need --nu with 0 < nu < M")
    w.writerow(("u", "n", "l", "xi_real", "route"))
    for u in grid:
        if job.extra.get("hankel"):
            vals, route = hankel_xi_table(n_max, l, M, nu, u, job.quad), "hankel"
        else:
            vals, route = xi_table(n_max, l, M, nu, u)[l], "macdonald_sum"
        for n in range(n_max + 1):
            w.writerow([_fmt(u), n, l, _fmt(vals[n]), route])
    return 0


def _run_verify(job, out):
    cfg = SuiteConfig(mc=job.mc, quad=job.quad, tolerances=job.extra.get("tolerances", {}),
                      workers=job.threads, include_slow=job.extra.get("include_slow", False))
    reports = run_suite(cfg)
    out.write(format_reports(reports))
    return 0 if all(r.passed for r in reports) else 1


def run(job: JobConfig, stream=None) -> int:
    """Execute a job, writing its artifact to ``job.output`` or ``stream``."""
    if job.command not in COMMANDS:
        raise ValidationError(f"unknown command {job.command!r}")
    buf = io.StringIO()
    if job.command in ("expand-direct", "expand-ortho", "oracle", "converge") and job.input is None:
        raise ValidationError(f"{job.command} needs an input document")
    handlers = {
        "expand-direct": lambda: _run_expand(job, buf, "direct"),
        "expand-ortho": lambda: _run_expand(job, buf, "ortho"),
        "oracle": lambda: _run_oracle(job, buf),
        "converge": lambda: _run_converge(job, buf),
        "bases": lambda: _run_bases(job, buf),
        "verify": lambda: _run_verify(job, buf),
    }
    status = handlers[job.command]()
    if job.output:
        Path(job.output).write_text(buf.getvalue())
    else:
        (stream or sys.stdout).write(buf.getvalue())
    return status


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _tol_override(text):
    kind, _, val = text.partition("=")
    if not kind or not val:
        raise argparse.ArgumentTypeError("expected KIND=VALUE")
    return kind, float(val)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--l-max", type=int, default=12)
    common.add_argument("--mu-max", type=int, default=12)
    common.add_argument("--n-max", type=int, default=20)
    common.add_argument("--samples", type=int, default=1_000_000)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--batches", type=int, default=20)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--abs-tol", type=float, default=1e-13)
    common.add_argument("--rel-tol", type=float, default=1e-11)
    common.add_argument("--max-subdivisions", type=int, default=4000)
    common.add_argument("--output", "-o", default=None)
    common.add_argument("--no-timing", action="store_true", help="write NA instead of elapsed seconds")

    p = argparse.ArgumentParser(prog="vecpow", description="Separable series for |r_1+...+r_N|^(-nu).")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("expand-direct", "rational lattice series"),
                        ("expand-ortho", "orthogonal-basis series"),
                        ("oracle", "direct evaluation only")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("input", help="path to a YAML/JSON document, or the document itself")
    s = sub.add_parser("converge", parents=[common], help="convergence table against the direct value")
    s.add_argument("input")
    s.add_argument("--method", choices=("direct", "ortho"), default="direct")
    s.add_argument("--steps", type=_ints, default=None, help="comma-separated cutoffs (default 2,4,...,l_max)")
    s = sub.add_parser("bases", parents=[common], help="tabulate eta or xi on a grid")
    s.add_argument("--kind", choices=("eta", "xi"), default="eta")
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--nu", type=float, default=None)
    s.add_argument("--l", type=int, default=0)
    s.add_argument("--grid", type=_floats, default=[0.25, 0.5, 1.0, 2.0, 4.0])
    s.add_argument("--hankel", action="store_true", help="compute xi by the Hankel transform of eta")
    s = sub.add_parser("verify", parents=[common], help="run the identity suite")
    s.add_argument("--include-slow", action="store_true", help="also run the slow or non-converging checks")
    s.add_argument("--tol", type=_tol_override, action="append", default=[], metavar="KIND=VALUE")
    return p


def job_from_args(args) -> JobConfig:
    try:
        trunc = Truncation(args.l_max, args.mu_max, args.n_max)
        mc = McSpec(args.samples, args.seed, args.batches)
        quad = QuadSpec(args.abs_tol, args.rel_tol, args.max_subdivisions)
    except (ValueError, DomainError) as exc:
        raise ValidationError(str(exc)) from exc
    extra = {}
    if args.command == "converge":
        extra = {"method": args.method, "steps": args.steps}
    elif args.command == "bases":
        if args.M < 3:
            raise ValidationError("--M must be >= 3")
        extra = {"kind": args.kind, "M": args.M, "nu": args.nu, "l": args.l, "grid": args.grid,
                 "hankel": args.hankel}
    elif args.command == "verify":
        extra = {"include_slow": args.include_slow, "tolerances": dict(args.tol)}
    return JobConfig(args.command, getattr(args, "input", None), trunc, mc, quad, args.output,
                     args.threads, not args.no_timing, extra)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(job_from_args(args))
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergence, VecpowError, DomainError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
