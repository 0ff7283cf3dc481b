"""Command-line front end.

Every command prints a run report (``key=value`` lines) to stdout, or to
stderr when the main output itself goes to stdout (``-``). Exit status is 0
on success and the error class's ``exit_code`` otherwise.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import io
from .bench import SUITES, format_table, run_bench
from .decompose import decompose, decompose_sparse, greedy_decompose, verify_decomposition
from .errors import LcaError, VerificationFailed
from .graph import random_dag, transitive_closure, verify_lca
from .lca import DEFAULT_X, all_pairs_lca
from .spairs import s_pairs_table


@dataclass
class RunReport:
    command: str
    params: dict = field(default_factory=dict)
    durations: dict = field(default_factory=dict)
    checksums: dict = field(default_factory=dict)

    def to_text(self) -> str:
        lines = [f"command={self.command}"]
        lines += [f"{k}={v}" for k, v in self.params.items()]
        lines += [f"time.{k}_ms={v:.3f}" for k, v in self.durations.items()]
        lines += [f"checksum.{k}={v}" for k, v in self.checksums.items()]
        return "\n".join(lines) + "\n"


class _Stopwatch:
    def __init__(self, report: RunReport):
        self.report = report

    def __call__(self, stage: str):
        sw = self

        class _Ctx:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                sw.report.durations[stage] = (time.perf_counter() - self.t0) * 1e3

        return _Ctx()


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load(path: str, sparse: bool = False):
    from .graph import AdjacencyLists, Dag

    n, edges = io.parse_edge_list(_read_text(path))
    return AdjacencyLists.from_edges(n, edges) if sparse else Dag.from_edges(n, edges)


def cmd_closure(args) -> RunReport:
    rep = RunReport("closure", {"input": args.input})
    timed = _Stopwatch(rep)
    with timed("read"):
        g = _load(args.input)
    with timed("closure"):
        gc = transitive_closure(g)
    text = io.format_edge_list(gc)
    rep.params.update(n=g.n, m=g.m, closure_m=gc.m)
    rep.checksums["output"] = _sha(text)
    _write(args.output, text)
    return rep


def cmd_decompose(args) -> RunReport:
    rep = RunReport("decompose", {"input": args.input, "algo": args.algo, "ell": args.ell})
    timed = _Stopwatch(rep)
    with timed("read"):
        g = _load(args.input)
    if args.closure:
        with timed("closure"):
            g = transitive_closure(g)
    with timed("decompose"):
        if args.algo == "layered":
            d = decompose(g, args.ell)
        elif args.algo == "greedy":
            d = greedy_decompose(g, args.ell)
        else:
            d = decompose_sparse(g, args.ell)
    if not args.no_verify:
        bound = -(-g.n // args.ell) if args.algo == "greedy" else None
        with timed("verify"):
            if not verify_decomposition(g, d, bound):
                raise VerificationFailed("decomposition failed its self-check")
    text = io.format_decomposition(d, g.n)
    rep.params.update(n=g.n, m=g.m, chains=len(d.chains), antichains=len(d.antichains))
    rep.checksums["output"] = _sha(text)
    _write(args.output, text)
    return rep


def cmd_lca(args) -> RunReport:
    rep = RunReport("lca", {"input": args.input, "x": args.x, "format": args.format})
    timed = _Stopwatch(rep)
    with timed("read"):
        g = _load(args.input)
    stages = {}
    if args.pairs:
        pairs = io.parse_pairs(_read_text(args.pairs), g.n)
        s = sorted({v for p in pairs for v in p})
        with timed("lca"):
            rows, tab = s_pairs_table(g, s, args.x, timings=stages)
        pos = {int(v): i for i, v in enumerate(rows)}
        triples = [(u, v, int(tab[pos[u], pos[v]])) for u, v in pairs]
        rep.params.update(pairs=len(pairs), query_vertices=len(rows))
    else:
        with timed("lca"):
            lca = all_pairs_lca(g, args.x, timings=stages)
        triples = None
    rep.durations.update(stages)
    rep.params.update(n=g.n, m=g.m)
    if not args.no_verify:
        with timed("verify"):
            gc = transitive_closure(g)
            rng = np.random.default_rng(args.seed)
            if triples is not None:
                sample = [triples[i] for i in rng.permutation(len(triples))[: args.verify_sample]]
            else:
                k = min(args.verify_sample, g.n * g.n)
                us, vs = rng.integers(0, max(g.n, 1), size=(2, k)) if g.n else ([], [])
                sample = [(int(u), int(v), int(lca[u, v])) for u, v in zip(us, vs)]
            for u, v, w in sample:
                if not verify_lca(gc, u, v, w):
                    raise VerificationFailed(f"self-check failed: lca({u}, {v}) = {w} is not a LCA")
        rep.params["verified"] = len(sample)
    if triples is not None:
        text = io.format_triples(triples)
    elif args.format == "tsv":
        text = io.format_lca_tsv(lca)
    else:
        text = io.format_triples(io.lca_triples(lca))
    rep.checksums["output"] = _sha(text)
    _write(args.output, text)
    return rep


def cmd_gen(args) -> RunReport:
    rep = RunReport("gen", {"n": args.n, "density": args.density, "seed": args.seed})
    timed = _Stopwatch(rep)
    with timed("gen"):
        g = random_dag(args.n, args.density, args.seed)
    text = io.format_edge_list(g)
    rep.params["m"] = g.m
    rep.checksums["output"] = _sha(text)
    _write(args.output, text)
    return rep


def cmd_bench(args) -> RunReport:
    rep = RunReport("bench", {"suite": args.suite, "sizes": ",".join(map(str, args.sizes)),
                              "seed": args.seed, "repeat": args.repeat})
    timed = _Stopwatch(rep)
    with timed("bench"):
        rows = run_bench(args.suite, args.sizes, args.seed, args.repeat)
    table = format_table(rows)
    _write(args.output, table)
    return rep


def _sizes(text: str) -> list:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="allpairs-lca", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="write the transitive closure of an edge list")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("decompose", help="chain/antichain decomposition")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--algo", choices=("layered", "greedy", "sparse"), default="layered")
    p.add_argument("--closure", action="store_true", help="decompose the transitive closure")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("lca", help="all-pairs (or query-pairs) lowest common ancestors")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--x", type=float, default=DEFAULT_X)
    p.add_argument("--pairs", help="file of 'u v' query lines")
    p.add_argument("--format", choices=("tsv", "triples"), default="tsv")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--verify-sample", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_lca)

    p = sub.add_parser("gen", help="random DAG as an edge list")
    p.add_argument("output")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("bench", help="timing table across sizes")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--sizes", type=_sizes, default=[])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--output", default="-")
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.fn(args)
    except LcaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    stream = sys.stderr if getattr(args, "output", None) == "-" else sys.stdout
    stream.write(rep.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
