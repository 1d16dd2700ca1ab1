"""Command-line front end: `gen`, `run` and `bench`.

Exit codes: 0 success, 1 sizing error (too many LNST probes for the
configured budget), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import glob
import io
import json
import math
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import generators as gens
from .ed_stream import EdStreamParams, approx_ed_streaming
from .fls import FlsParams, fls_report
from .inner import BACKENDS, InnerEstimator
from .lcs_binary import approx_lcs_binary
from .lnst import SizingError, run_lnst
from .model import Instance, OnlineStream, RunReport, read_instance, render, write_instance
from .oracles import ed_full, lcs_full, lis_exact, lns_exact, lnst_exact

ALGORITHMS = ("ed-approx", "lcs-approx", "lnst", "fls", "oracle")
ORACLES = ("ed", "lcs", "lis", "lns", "lnst")
GEN_KINDS = ("ed-dis", "ed-dis-eq", "lcs-fool", "perm-dis", "lis-gap", "lns-gap", "planted")


class UsageError(ValueError):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def bits(text: str) -> tuple[int, ...]:
    """Bit vector written as 101 or 1,0,1."""
    toks = text.replace(",", " ").split()
    if len(toks) == 1:
        toks = list(toks[0])
    if not toks or any(tok not in ("0", "1") for tok in toks):
        raise argparse.ArgumentTypeError(f"not a bit vector: {text!r}")
    return tuple(int(tok) for tok in toks)


# --- gen ------------------------------------------------------------------------


def build_generated(args) -> gens.Generated:
    rng = random.Random(args.seed)
    kind = args.kind
    if kind in ("ed-dis", "ed-dis-eq"):
        if (args.alpha is None) != (args.beta is None):
            raise UsageError("--alpha and --beta go together")
        if args.alpha is not None:
            dis = gens.DisInput(args.alpha, args.beta)
        else:
            dis = gens.random_dis(args.m, rng)
        return gens.ed_dis_instance(dis) if kind == "ed-dis" else gens.ed_dis_equal_instance(dis)
    if kind == "lcs-fool":
        if args.n is None:
            raise UsageError("lcs-fool needs --n")
        blocks = gens.FoolingBlocks(args.n, tuple(args.s)) if args.s else gens.random_blocks(args.n, rng)
        return gens.lcs_fooling_instance(blocks)
    if kind == "perm-dis":
        if args.z1 is not None and args.z2 is not None:
            z1, z2 = args.z1, args.z2
        else:
            if args.n is None:
                raise UsageError("perm-dis needs --z1/--z2 or --n (the value of n', a multiple of 4)")
            q = args.n // 4
            z1 = tuple(rng.randint(0, 1) for _ in range(q))
            z2 = tuple(rng.randint(0, 1) for _ in range(q))
        return gens.perm_dis_instance(z1, z2)
    if kind == "lis-gap":
        r = args.r or 24
        mat = gens.random_gap_matrix(r // args.c, r, args.l, args.density, args.dense, rng)
        return gens.lis_matrix_instance(mat, args.c)
    if kind == "lns-gap":
        r = args.r or 6
        mat = gens.random_gap_matrix(r, args.c * r, args.l, args.density, args.dense, rng)
        return gens.lns_matrix_instance(mat, args.c)
    if kind == "planted":
        if args.n is None:
            raise UsageError("planted needs --n")
        return gens.planted_instance(args.n, args.edits, args.r or 2, rng)
    raise UsageError(f"unknown generator {kind!r}")


def cmd_gen(args) -> int:
    g = build_generated(args)
    side = g.sidecar()
    side["seed"] = args.seed
    if args.out:
        write_instance(args.out, g.instance)
        Path(str(args.out) + ".json").write_text(json.dumps(side, sort_keys=True) + "\n")
    else:
        side["instance"] = {
            "r": g.instance.r,
            "online": render(g.instance.online, g.instance.r),
            "offline": render(g.instance.offline, g.instance.r),
        }
        print(json.dumps(side, sort_keys=True))
    return 0


# --- run ------------------------------------------------------------------------------


def oracle_report(which: str, inst: Instance, t: int | None) -> RunReport:
    x, y = inst.online, inst.offline
    if which == "ed":
        value = ed_full(x, y)
    elif which == "lcs":
        value = lcs_full(x, y)
    elif which == "lis":
        value = lis_exact(x)
    elif which == "lns":
        value = lns_exact(x, inst.r)
    else:
        if t is None:
            raise UsageError("oracle lnst needs --t")
        value = lnst_exact(x, inst.r, t)
    return RunReport(value, Fraction(1), 0, len(x), {"oracle": which})


def run_algorithm(algo: str, inst: Instance, args) -> RunReport:
    x, y = inst.online, inst.offline
    backend = args.inner_ed
    eps = args.epsilon
    if algo == "ed-approx":
        params = EdStreamParams(args.delta or Fraction(1, 2), eps, k0=args.k0, backend=backend)
        return approx_ed_streaming(OnlineStream(x), y, params)[2]
    if algo == "lcs-approx":
        return approx_lcs_binary(OnlineStream(x), y, args.delta or Fraction(1, 3), eps, backend)[1]
    if algo == "lnst":
        if args.t is None:
            raise UsageError("lnst needs --t")
        r = args.r or max(x, default=1)
        return run_lnst(OnlineStream(x), r, args.t, eps)[1]
    if algo == "fls":
        if args.u is None:
            raise UsageError("fls needs --u")
        return fls_report(x, y, FlsParams(args.u, args.s, InnerEstimator(eps, backend)))[1]
    if algo == "oracle":
        return oracle_report(args.which, inst, args.t)
    raise UsageError(f"unknown algorithm {algo!r}")


def emit(report: RunReport, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(report.to_json() + "\n")
        return
    row = report.to_dict()
    row["trace"] = json.dumps(row["trace"], sort_keys=True)
    writer = csv.DictWriter(out, fieldnames=list(row), lineterminator="\n")
    writer.writeheader()
    writer.writerow(row)


def cmd_run(args) -> int:
    try:
        inst = read_instance(args.instance)
    except OSError as err:
        raise UsageError(str(err)) from None
    report = run_algorithm(args.algorithm, inst, args)
    report.trace["seed"] = args.seed
    if args.out:
        with open(args.out, "w") as fh:
            emit(report, args.format, fh)
    else:
        emit(report, args.format)
    return 0


# --- bench ------------------------------------------------------------------------------------


@dataclass
class BenchSpec:
    algorithm: str
    corpus: str  # "planted", "random-binary" or "files"
    sizes: list[int] = field(default_factory=list)
    distances: list[int] = field(default_factory=list)
    files: list[str] = field(default_factory=list)
    repetitions: int = 1
    delta: Fraction | None = None
    epsilon: float = 0.1
    t: int | None = None
    r: int | None = None
    inner_ed: str = "banded"
    seed: int = 0

    def __post_init__(self):
        if self.algorithm not in ("ed-approx", "lcs-approx", "lnst"):
            raise UsageError("bench supports ed-approx, lcs-approx and lnst")
        if self.corpus not in ("planted", "random-binary", "files"):
            raise UsageError(f"unknown corpus {self.corpus!r}")
        if self.repetitions < 0:
            raise UsageError("repetitions must be non-negative")


def fit_slope(points) -> float | None:
    """Least-squares slope of log(peak) against log(size)."""
    pts = [(math.log(a), math.log(b)) for a, b in points if a > 0 and b > 0]
    if len(pts) < 2:
        return None
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    var = sum((p[0] - mx) ** 2 for p in pts)
    if var == 0:
        return None
    return sum((p[0] - mx) * (p[1] - my) for p in pts) / var


def bench_corpus(spec: BenchSpec):
    rng = random.Random(spec.seed)
    if spec.corpus == "files":
        for pattern in spec.files:
            for path in sorted(glob.glob(pattern)):
                yield path, read_instance(path)
        return
    for n in spec.sizes:
        for d in spec.distances or [0]:
            for rep in range(spec.repetitions):
                if spec.corpus == "planted":
                    x, y = gens.planted_pair(n, d, spec.r or 2, rng)
                    yield f"planted-n{n}-d{d}-{rep}", Instance(spec.r or 2, tuple(x), tuple(y))
                else:
                    x = tuple(rng.randint(0, 1) for _ in range(n))
                    y = tuple(rng.randint(0, 1) for _ in range(n))
                    yield f"binary-n{n}-{rep}", Instance(2, x, y)


BENCH_FIELDS = ("instance", "n", "truth", "value", "ratio", "guarantee_factor", "within_guarantee", "peak_space_words", "runtime")


def bench_row(spec: BenchSpec, name: str, inst: Instance) -> dict:
    x, y = inst.online, inst.offline
    start = time.perf_counter()
    if spec.algorithm == "ed-approx":
        params = EdStreamParams(spec.delta or Fraction(1, 2), spec.epsilon, backend=spec.inner_ed)
        report = approx_ed_streaming(OnlineStream(x), y, params)[2]
        elapsed = time.perf_counter() - start
        truth = ed_full(x, y)
        ratio = report.value / truth if truth else (1.0 if report.value == 0 else math.inf)
        ok = truth <= report.value <= report.guarantee_factor * truth
    elif spec.algorithm == "lcs-approx":
        report = approx_lcs_binary(OnlineStream(x), y, spec.delta or Fraction(1, 3), spec.epsilon, spec.inner_ed)[1]
        elapsed = time.perf_counter() - start
        truth = lcs_full(x, y)
        ratio = report.value / truth if truth else 1.0
        ok = truth >= report.value and report.guarantee_factor * report.value >= truth
    else:
        if spec.t is None:
            raise UsageError("lnst bench needs --t")
        r = spec.r or max(x, default=1)
        report = run_lnst(OnlineStream(x), r, spec.t, spec.epsilon)[1]
        elapsed = time.perf_counter() - start
        truth = lnst_exact(x, r + 1, spec.t)
        ratio = report.value / truth if truth else 1.0
        ok = (1 - spec.epsilon) * truth <= report.value <= truth
    return {
        "instance": name,
        "n": len(x),
        "truth": truth,
        "value": report.value,
        "ratio": ratio,
        "guarantee_factor": float(report.guarantee_factor),
        "within_guarantee": bool(ok),
        "peak_space_words": report.peak_space_words,
        "runtime": round(elapsed, 6),
    }


def run_bench(spec: BenchSpec) -> tuple[list[dict], dict]:
    rows = [bench_row(spec, name, inst) for name, inst in bench_corpus(spec)]
    ratios = [r["ratio"] for r in rows if math.isfinite(r["ratio"])]
    summary = {
        "algorithm": spec.algorithm,
        "runs": len(rows),
        "seed": spec.seed,
        "min_ratio": min(ratios) if ratios else None,
        "max_ratio": max(ratios) if ratios else None,
        "mean_ratio": sum(ratios) / len(ratios) if ratios else None,
        "all_within_guarantee": all(r["within_guarantee"] for r in rows),
        "space_slope": fit_slope([(r["truth"], r["peak_space_words"]) for r in rows]),
    }
    return rows, summary


def write_bench(rows: list[dict], summary: dict, out: str | None) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if out:
        Path(out + ".csv").write_text(buf.getvalue())
        Path(out + ".json").write_text(json.dumps(summary, sort_keys=True) + "\n")
    else:
        sys.stdout.write(buf.getvalue())
        sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")


def cmd_bench(args) -> int:
    spec = BenchSpec(
        algorithm=args.algorithm,
        corpus=args.corpus,
        sizes=args.sizes or [],
        distances=args.distances or [],
        files=args.files or [],
        repetitions=args.repetitions,
        delta=args.delta,
        epsilon=args.epsilon,
        t=args.t,
        r=args.r,
        inner_ed=args.inner_ed,
        seed=args.seed,
    )
    rows, summary = run_bench(spec)
    write_bench(rows, summary, args.out)
    return 0


# --- parser -------------------------------------------------------------------------------------


def common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delta", type=rational, help="space exponent as a/b")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--t", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--inner-ed", choices=BACKENDS, default="banded")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asymstream", description="Asymmetric streaming string algorithms")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance file and its sidecar")
    g.add_argument("kind", choices=GEN_KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.add_argument("--alpha", type=bits, help="DIS bits for the first party")
    g.add_argument("--beta", type=bits, help="DIS bits for the second party")
    g.add_argument("--m", type=int, default=2, help="DIS length when bits are drawn")
    g.add_argument("--n", type=int)
    g.add_argument("--s", type=int_list, help="block sizes, e.g. 9,9,7")
    g.add_argument("--z1", type=bits)
    g.add_argument("--z2", type=bits)
    g.add_argument("--r", type=int)
    g.add_argument("--c", type=int, default=4)
    g.add_argument("--l", type=int, default=6)
    g.add_argument("--density", type=float, default=0.6)
    g.add_argument("--dense", action="store_true")
    g.add_argument("--edits", type=int, default=8)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run one algorithm on an instance file")
    r.add_argument("algorithm", choices=ALGORITHMS)
    r.add_argument("rest", nargs="+", help="[oracle kind] instance file")
    common(r)
    r.add_argument("--k0", type=int)
    r.add_argument("--u", type=int)
    r.add_argument("--s", type=int, default=3)
    r.set_defaults(func=cmd_run)

    b = sub.add_parser("bench", help="batch runs with accuracy and space summary")
    b.add_argument("algorithm", choices=("ed-approx", "lcs-approx", "lnst"))
    b.add_argument("--corpus", choices=("planted", "random-binary", "files"), default="planted")
    b.add_argument("--sizes", type=int_list)
    b.add_argument("--distances", type=int_list)
    b.add_argument("--files", nargs="*")
    b.add_argument("--repetitions", type=int, default=1)
    common(b)
    b.set_defaults(func=cmd_bench)
    return parser


def split_run_targets(args) -> None:
    if args.algorithm == "oracle":
        if len(args.rest) != 2 or args.rest[0] not in ORACLES:
            raise UsageError(f"usage: run oracle {{{','.join(ORACLES)}}} <instance>")
        args.which, args.instance = args.rest
    else:
        if len(args.rest) != 1:
            raise UsageError("run takes exactly one instance file")
        args.instance = args.rest[0]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # `run` targets may come after options; argparse leaves them behind
        if extra and (getattr(args, "command", None) != "run" or any(e.startswith("-") for e in extra)):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        if extra:
            args.rest += extra
    except SystemExit as stop:
        return int(stop.code or 0)
    try:
        if args.command == "run":
            split_run_targets(args)
        return args.func(args)
    except SizingError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
