"""Command-line harness: ``qcoherence {grover,min-coherence,dj,qof}``.

Exit codes: 0 success, 2 usage or validation error, 3 capacity error.
Relative ``--out`` paths are resolved against ``$QCOHERENCE_OUTPUT_DIR``
when that variable is set.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .dj import DjFunction, balanced_coherence_extremes, run_dj
from .errors import CapacityError, InvalidBaseError
from .grover import GroverConfig, min_coherence, optimal_iterations, run_trace
from .order_finding import QofConfig, recover_order, run_qof, shor_factor
from .state import check_capacity

OUTPUT_DIR_ENV = "QCOHERENCE_OUTPUT_DIR"

GROVER_COLUMNS = ["k", "c_r_closed", "c_l1_closed", "c_r_sim", "c_l1_sim", "p_success",
                  "c_l1_log"]
MIN_COHERENCE_COLUMNS = ["M", "log2M", "min_c_r", "min_c_l1"]
DJ_COLUMNS = ["verdict", "p_zero", "c_r_0", "c_l1_0", "c_r_1", "c_l1_1", "c_r_2", "c_l1_2"]
DJ_ENUM_COLUMNS = ["n", "count", "max_c_r", "max_c_l1", "min_c_r", "min_c_l1",
                   "argmax_c_r", "argmax_c_l1", "max_p_zero", "within_bounds"]
QOF_COLUMNS = ["stage", "c_r", "c_l1"]
FACTOR_COLUMNS = ["N", "p", "q", "method", "attempts", "base", "order"]


class UsageError(Exception):
    pass


def _num(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def _cell(v) -> str:
    v = _num(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    if v is None:
        return ""
    return str(v)


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def render_json(metadata, rows, extra=None) -> str:
    doc = {"metadata": metadata,
           "rows": [{k: _num(v) for k, v in row.items()} for row in rows]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def _metadata(algorithm, **params):
    seed = params.pop("seed", None)
    return {"algorithm": algorithm, "parameters": params, "seed": seed,
            "version": __version__}


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(out):
        out = os.path.join(base, out)
    parent = os.path.dirname(out)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(out, "w", newline="") as fh:
        fh.write(text)


def _emit(args, columns, rows, metadata, extra=None):
    if args.format == "json":
        text = render_json(metadata, rows, extra)
    else:
        text = render_csv(columns, rows)
    _write(text, args.out)


def cmd_grover(args):
    check_capacity(args.qubits)
    config = GroverConfig(args.qubits, args.solutions, k_max=args.iterations,
                          seed=args.seed)
    rows = []
    for r in run_trace(config):
        rows.append({"k": r.k, "c_r_closed": r.c_r_closed, "c_l1_closed": r.c_l1_closed,
                     "c_r_sim": r.c_r_sim, "c_l1_sim": r.c_l1_sim,
                     "p_success": r.p_success, "c_l1_log": float(np.log2(r.c_l1_closed + 1))})
    meta = _metadata("grover", qubits=args.qubits, solutions=args.solutions,
                     iterations=config.k_max, k_star=optimal_iterations(args.qubits,
                                                                        args.solutions),
                     solution_indices=list(config.solutions), seed=args.seed)
    _emit(args, GROVER_COLUMNS, rows, meta)


def _parse_m_list(text: str, qubits: int) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--solutions-list must be comma-separated integers, got {text!r}")
    if not values:
        raise UsageError("--solutions-list is empty")
    unique = sorted(set(values))
    if len(unique) != len(values):
        print(f"warning: duplicate solution counts removed from {text!r}", file=sys.stderr)
    bad = [m for m in unique if not 1 <= m <= 1 << qubits]
    if bad:
        raise UsageError(f"solution counts {bad} outside 1..{1 << qubits}")
    return unique


def cmd_min_coherence(args):
    check_capacity(args.qubits)
    Ms = _parse_m_list(args.solutions_list, args.qubits)
    if args.parallel and len(Ms) > 1:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(min_coherence, [args.qubits] * len(Ms), Ms))
    else:
        results = [min_coherence(args.qubits, M) for M in Ms]
    results.sort(key=lambda r: r.M)
    rows = [{"M": r.M, "log2M": float(np.log2(r.M)), "min_c_r": r.min_c_r,
             "min_c_l1": r.min_c_l1} for r in results]
    meta = _metadata("min-coherence", qubits=args.qubits, solutions_list=Ms)
    _emit(args, MIN_COHERENCE_COLUMNS, rows, meta)


def _parse_function(spec: str, n: int) -> DjFunction:
    kind, _, arg = spec.partition(":")
    if kind == "constant":
        if arg not in ("0", "1"):
            raise UsageError(f"constant function value must be 0 or 1, got {arg!r}")
        return DjFunction.constant(n, int(arg))
    if kind == "balanced":
        if len(arg) != 1 << n:
            raise UsageError(
                f"table {arg!r} has length {len(arg)}, expected 2**{n} = {1 << n}")
        f = DjFunction.from_bitstring(arg, n)
        if f.kind != "balanced":
            raise UsageError(
                f"table {arg!r} has {int(f.table.sum())} ones; balanced needs {1 << (n - 1)}")
        return f
    raise UsageError(f"unknown function spec {spec!r}; "
                     "use constant:0, constant:1, balanced:<bits> or enumerate")


def cmd_dj(args):
    check_capacity(args.qubits)
    if args.function == "enumerate":
        ext = balanced_coherence_extremes(args.qubits)
        row = {c: getattr(ext, c) for c in DJ_ENUM_COLUMNS}
        meta = _metadata("dj", qubits=args.qubits, function="enumerate")
        extra = {"bounds": {"c_r": ext.bound_c_r, "c_l1": ext.bound_c_l1}}
        _emit(args, DJ_ENUM_COLUMNS, [row], meta, extra)
        return
    f = _parse_function(args.function, args.qubits)
    res = run_dj(f)
    row = {"verdict": res.verdict, "p_zero": res.p_zero}
    for i, pair in enumerate(res.trace):
        row[f"c_r_{i}"] = pair.c_r
        row[f"c_l1_{i}"] = pair.c_l1
    meta = _metadata("dj", qubits=args.qubits, function=args.function)
    _emit(args, DJ_COLUMNS, [row], meta)


def cmd_qof(args):
    if args.factor is not None:
        res = shor_factor(args.factor, seed=args.seed, attempt_budget=args.attempts,
                          samples=args.samples, epsilon=args.epsilon, t=args.t)
        p, q = res.factors if res.factors else (None, None)
        row = {"N": res.N, "p": p, "q": q, "method": res.method, "attempts": res.attempts,
               "base": res.base, "order": res.order}
        meta = _metadata("shor", N=args.factor, epsilon=args.epsilon, t=args.t,
                         samples=args.samples, attempts=args.attempts, seed=args.seed)
        _emit(args, FACTOR_COLUMNS, [row], meta, {"log": list(res.log)})
        return
    if args.base is None or args.modulus is None:
        raise UsageError("--base and --modulus are required unless --factor is given")
    config = QofConfig(args.base, args.modulus, epsilon=args.epsilon, t=args.t)
    qof = run_qof(config)
    found = recover_order(config, args.samples, seed=args.seed, qof=qof)
    rows = [{"stage": i, "c_r": pair.c_r, "c_l1": pair.c_l1}
            for i, pair in enumerate(qof.trace)]
    support = np.flatnonzero(qof.distribution > 1e-15)
    extra = {
        "histogram": [[int(j), float(qof.distribution[j])] for j in support],
        "continued_fractions": [
            {"j": cf.measured_j, "partial_quotients": list(cf.partial_quotients),
             "convergents": [list(c) for c in cf.convergents],
             "candidate_r": cf.candidate_r}
            for cf in found.transcripts],
        "order": found.r,
        "samples_used": found.attempts,
    }
    meta = _metadata("qof", base=args.base, modulus=args.modulus, epsilon=args.epsilon,
                     t=config.t, L=config.L, samples=args.samples, seed=args.seed)
    _emit(args, QOF_COLUMNS, rows, meta, extra)


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcoherence",
        description="Coherence traces of Grover, Deutsch-Jozsa and quantum order finding.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="csv"):
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)

    g = sub.add_parser("grover", help="per-iteration coherence trace")
    g.add_argument("--qubits", type=int, required=True)
    g.add_argument("--solutions", type=_positive_int, default=1)
    g.add_argument("--iterations", type=int, default=None,
                   help="last iteration k (default 2k*+5)")
    g.add_argument("--seed", type=int, default=None,
                   help="place solutions at random indices")
    common(g)
    g.set_defaults(func=cmd_grover)

    m = sub.add_parser("min-coherence", help="minimum coherence versus solution count")
    m.add_argument("--qubits", type=int, required=True)
    m.add_argument("--solutions-list", required=True, help="comma list, e.g. 1,2,4,8,16")
    m.add_argument("--parallel", action="store_true")
    common(m)
    m.set_defaults(func=cmd_min_coherence)

    d = sub.add_parser("dj", help="Deutsch-Jozsa run or balanced-function enumeration")
    d.add_argument("--qubits", type=int, required=True)
    d.add_argument("--function", required=True,
                   help="constant:0 | constant:1 | balanced:<bits> | enumerate")
    common(d, "json")
    d.set_defaults(func=cmd_dj)

    q = sub.add_parser("qof", help="order finding, optionally full factoring")
    q.add_argument("--base", type=int)
    q.add_argument("--modulus", type=int)
    tgroup = q.add_mutually_exclusive_group()
    tgroup.add_argument("--epsilon", type=float, default=0.25)
    tgroup.add_argument("--t", type=_positive_int, default=None)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--samples", type=_positive_int, default=10)
    q.add_argument("--factor", type=int, default=None, metavar="N")
    q.add_argument("--attempts", type=_positive_int, default=20)
    common(q, "json")
    q.set_defaults(func=cmd_qof)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except InvalidBaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
