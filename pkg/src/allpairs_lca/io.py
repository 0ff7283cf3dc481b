"""Text formats: edge lists, decompositions, LCA tables and query pairs.

Edge list::

    # comments start with '#'
    n m
    u v        (m lines, 0-based)

Decomposition: one ``chain: v1 v2 ...`` or ``antichain: v1 ...`` line per
part, preceded by a ``# ell=K n=N final=F`` header.

LCA output: ``tsv`` (n rows of n tab-separated entries) or ``triples``
(``u v w`` lines); ``-`` stands for "no common ancestor" in both.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .decompose import Decomposition
from .errors import ParseError
from .graph import NONE, AdjacencyLists, Dag


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _ints(line: str, lineno: int, count: int | None = None) -> list:
    try:
        vals = [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None
    if count is not None and len(vals) != count:
        raise ParseError(f"line {lineno}: expected {count} integers, got {len(vals)}")
    return vals


def parse_edge_list(text: str) -> tuple:
    """Return ``(n, edges)`` with ``edges`` an ``(m, 2)`` int array."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input: missing 'n m' header") from None
    n, m = _ints(header, lineno, 2)
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative count in header")
    edges = []
    for lineno, line in lines:
        u, v = _ints(line, lineno, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex out of range [0, {n})")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop on {u}")
        edges.append((u, v))
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return n, np.asarray(edges, dtype=np.int64).reshape(-1, 2)


def read_edge_list(path, sparse: bool = False) -> Dag | AdjacencyLists:
    with open(path) as fh:
        n, edges = parse_edge_list(fh.read())
    return AdjacencyLists.from_edges(n, edges) if sparse else Dag.from_edges(n, edges)


def format_edge_list(g: Dag) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def format_decomposition(d: Decomposition, n: int | None = None) -> str:
    head = f"# ell={d.ell}" + ("" if n is None else f" n={n}") + f" final={d.n_final}"
    out = [head]
    out.extend("chain: " + " ".join(map(str, c)) for c in d.chains)
    out.extend("antichain: " + " ".join(map(str, a)) for a in d.antichains)
    return "\n".join(out) + "\n"


def parse_decomposition(text: str, ell: int | None = None) -> Decomposition:
    """Inverse of :func:`format_decomposition`.

    ``ell`` overrides the header; without either, the number of chains is
    used.
    """
    meta = {}
    chains, antichains = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                key, sep, val = tok.partition("=")
                if sep:
                    try:
                        meta[key] = int(val)
                    except ValueError:
                        raise ParseError(f"line {lineno}: bad header field {tok!r}") from None
            continue
        kind, sep, rest = line.partition(":")
        if not sep or kind.strip() not in ("chain", "antichain"):
            raise ParseError(f"line {lineno}: expected 'chain:' or 'antichain:'")
        part = tuple(_ints(rest, lineno))
        (chains if kind.strip() == "chain" else antichains).append(part)
    if ell is None:
        ell = meta.get("ell", max(1, len(chains)))
    return Decomposition(ell, tuple(chains), tuple(antichains), meta.get("final", 0))


def _cell(w) -> str:
    return "-" if w is None or w == NONE else str(int(w))


def format_lca_tsv(lca: np.ndarray) -> str:
    return "".join("\t".join(_cell(w) for w in row) + "\n" for row in lca)


def parse_lca_tsv(text: str) -> np.ndarray:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            rows.append([NONE if tok == "-" else int(tok) for tok in raw.split("\t")])
        except ValueError:
            raise ParseError(f"line {lineno}: bad LCA entry") from None
    if rows and any(len(r) != len(rows) for r in rows):
        raise ParseError("LCA table is not square")
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(rows))


def format_triples(triples: Iterable) -> str:
    return "".join(f"{u} {v} {_cell(w)}\n" for u, v, w in triples)


def lca_triples(lca: np.ndarray) -> list:
    """``(u, v, w)`` for every unordered pair ``u < v`` of a full LCA matrix."""
    n = len(lca)
    return [(u, v, int(lca[u, v])) for u in range(n) for v in range(u + 1, n)]


def parse_pairs(text: str, n: int | None = None) -> list:
    pairs = []
    for lineno, line in _content_lines(text):
        u, v = _ints(line, lineno, 2)
        if n is not None and not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex out of range [0, {n})")
        pairs.append((u, v))
    return pairs
