"""Path-respecting antichain families and block-compact topological orders."""

from __future__ import annotations

import heapq
from typing import Sequence

import numpy as np

from .errors import CycleDetected, NotAntichain, NotPathRespecting
from .graph import ClosureDag, TopoOrder


def _block_ids(n: int, family: Sequence[Sequence[int]]) -> np.ndarray:
    """``block[v]`` = 1-based index of the set holding ``v``, 0 if none."""
    block = np.zeros(n, dtype=np.int64)
    for i, part in enumerate(family, start=1):
        idx = np.asarray(part, dtype=np.int64)
        if np.any(block[idx]) or len(np.unique(idx)) != len(idx):
            raise NotAntichain(f"set {i} overlaps an earlier set or repeats a vertex")
        block[idx] = i
    return block


def is_path_respecting(gc: ClosureDag, family) -> bool:
    """Every edge between members goes from a lower to a higher set index."""
    try:
        block = _block_ids(gc.n, family)
    except NotAntichain:
        return False
    src, dst = np.nonzero(gc.adj)
    both = (block[src] > 0) & (block[dst] > 0)
    return bool(np.all(block[src][both] < block[dst][both]))


def check_path_respecting(gc: ClosureDag, family):
    if not is_path_respecting(gc, family):
        raise NotPathRespecting("antichain family is not path-respecting")


def path_respecting_refine(gc: ClosureDag, antichains) -> list:
    """Regroup the union of ``antichains`` into source-peeling rounds.

    Round ``i`` takes every vertex of the remaining set with no remaining
    parent. On a closed graph the rounds are antichains, every edge between
    rounds points forward, and their number equals the longest chain of the
    induced subgraph, hence never exceeds ``len(antichains)``.

    Raises
    ------
    NotAntichain
        If an input set has an internal edge or the sets overlap.
    """
    n = gc.n
    _block_ids(n, antichains)
    for i, part in enumerate(antichains, start=1):
        idx = np.asarray(part, dtype=np.int64)
        if gc.adj[np.ix_(idx, idx)].any():
            raise NotAntichain(f"set {i} contains an edge")
    inw = np.zeros(n, dtype=bool)
    for part in antichains:
        inw[np.asarray(part, dtype=np.int64)] = True
    sub = gc.adj & inw[:, None]
    indeg = sub.sum(axis=0) * inw
    remaining = inw.copy()
    rounds = []
    ready = np.flatnonzero(remaining & (indeg == 0))
    while len(ready):
        rounds.append(tuple(ready.tolist()))
        remaining[ready] = False
        indeg -= sub[ready].sum(axis=0)
        ready = np.flatnonzero(remaining & (indeg == 0))
    if remaining.any():
        raise CycleDetected("restricted subgraph has a cycle")
    return rounds


def q_compact_order(gc: ClosureDag, family) -> TopoOrder:
    """Topological order placing each set of ``family`` as one contiguous block.

    Round 0 emits every vertex outside the family that becomes ready; round
    ``i`` appends ``family[i-1]`` and then again drains the ready vertices
    outside the family. Ties go to the smallest id.

    Raises
    ------
    NotPathRespecting
        If the family is not a path-respecting antichain family of ``gc``.
    """
    check_path_respecting(gc, family)
    n = gc.n
    block = _block_ids(n, family)
    indeg = gc.adj.sum(axis=0).astype(np.int64)
    placed = np.zeros(n, dtype=bool)
    out = []
    ready = [int(v) for v in np.flatnonzero((indeg == 0) & (block == 0))]
    heapq.heapify(ready)

    def place(v):
        out.append(v)
        placed[v] = True
        ch = np.flatnonzero(gc.adj[v])
        if len(ch):
            indeg[ch] -= 1
            for w in ch[(indeg[ch] == 0) & (block[ch] == 0)]:
                heapq.heappush(ready, int(w))

    def drain():
        while ready:
            place(heapq.heappop(ready))

    drain()
    for part in family:
        members = sorted(int(v) for v in part)
        if np.any(indeg[members] != 0):
            raise NotPathRespecting("a set member has an unplaced parent")
        for v in members:
            place(v)
        drain()
    if len(out) != n:
        raise CycleDetected("graph has a cycle")
    return TopoOrder(np.array(out, dtype=np.int64))


def verify_q_compact(gc: ClosureDag, family, t: TopoOrder) -> bool:
    """Whether ``t`` is topological with each set a contiguous, ascending block."""
    if t.n != gc.n or not t.is_topological(gc):
        return False
    prev_hi = -1
    for part in family:
        if len(part) == 0:
            continue
        lab = t.label[np.asarray(part, dtype=np.int64)]
        lo, hi = int(lab.min()), int(lab.max())
        if hi - lo + 1 != len(part) or lo <= prev_hi:
            return False
        prev_hi = hi
    return True
