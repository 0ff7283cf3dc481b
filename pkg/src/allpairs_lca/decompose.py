"""Chain/antichain decomposition of a DAG.

:func:`decompose` splits the vertices into at most ``ell`` chains and at most
``2 * ceil(n / ell)`` antichains in quadratic time. Vertices are fed in
topological order into a stack of ``h = ceil(n / ell)`` layers; a vertex
reaching the top layer closes a chain of exactly ``h`` vertices, a layer
reaching ``ell`` vertices is emitted as an antichain, and removed vertices
trigger downward moves that restore the layering.

:func:`greedy_decompose` is the slow longest-chain baseline and
:func:`decompose_sparse` the adjacency-list twin of :func:`decompose`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidEll
from .graph import AdjacencyLists, Dag, topological_order


@dataclass(frozen=True)
class Decomposition:
    """Chains (directed paths, listed source first) and antichains covering V.

    ``n_final`` counts the trailing antichains emitted by the final flush;
    every earlier antichain was emitted mid-run.
    """

    ell: int
    chains: tuple
    antichains: tuple
    n_final: int = 0

    @property
    def mid_run_antichains(self) -> tuple:
        return self.antichains[: len(self.antichains) - self.n_final]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_ell(n: int, ell: int):
    if not (isinstance(ell, (int, np.integer)) and 1 <= ell <= max(n, 1)):
        raise InvalidEll(f"ell must be an integer in [1, {n}], got {ell!r}")


class LayerState:
    """Mutable state of the layered decomposition engine.

    Layers are 1-based, ``layers[1] .. layers[h]``; each is an insertion
    ordered dict used as an ordered set. ``nxt[v]`` holds the parents of
    ``v`` one layer down and ``prv[v]`` its children one layer up; both are
    dicts, so dropping a partner's occurrence is O(1).

    ``alive_parents(v)`` and ``alive_children(v)`` return the neighbours of
    ``v`` currently in the graph; they are the only graph access.
    """

    def __init__(self, n: int, ell: int,
                 alive_parents: Callable[[int], np.ndarray] = None,
                 alive_children: Callable[[int], np.ndarray] = None):
        self.n = n
        self.ell = ell
        self.h = _ceil_div(n, ell)
        self.alive = np.zeros(n, dtype=bool)
        self.level = np.zeros(n, dtype=np.int64)
        self.layers = [dict() for _ in range(self.h + 1)]
        self.nxt = [dict() for _ in range(n)]
        self.prv = [dict() for _ in range(n)]
        self.DEL = deque()
        self.MOVE = deque()
        self.alive_parents = alive_parents
        self.alive_children = alive_children

    def _place(self, v: int, parents: np.ndarray):
        """Put ``v`` one layer above its highest parent in ``parents``."""
        if len(parents):
            lv = self.level[parents]
            j = int(lv.max())
            self.nxt[v] = dict.fromkeys(parents[lv == j].tolist())
            for u in self.nxt[v]:
                self.prv[u][v] = None
        else:
            j = 0
            self.nxt[v] = {}
        self.level[v] = j + 1
        self.layers[j + 1][v] = None

    def insert(self, v: int):
        """Add ``v`` to the graph above its highest alive parent (layer 1 if none)."""
        assert not self.alive[v], f"vertex {v} inserted twice"
        self.alive[v] = True
        self.prv[v] = {}
        self._place(v, self.alive_parents(v))

    def _unlink_children(self, v: int):
        for w in self.prv[v]:
            nw = self.nxt[w]
            del nw[v]
            if not nw:
                self.MOVE.append(w)
        self.prv[v] = {}

    def delete(self, v: int):
        """Remove ``v``; children left without a parent below go on MOVE."""
        assert self.alive[v], f"vertex {v} is not alive"
        self.alive[v] = False
        del self.layers[self.level[v]][v]
        for u in self.nxt[v]:
            del self.prv[u][v]
        self.nxt[v] = {}
        self._unlink_children(v)
        self.level[v] = 0

    def move(self, v: int):
        """Drop ``v`` strictly below its current layer.

        Lands one above the highest alive parent at level ``h(v) - 2`` or
        lower, then adopts the alive children one layer above its new level.
        """
        old = int(self.level[v])
        assert self.alive[v] and old >= 2 and not self.nxt[v]
        del self.layers[old][v]
        for u in self.nxt[v]:
            del self.prv[u][v]
        self._unlink_children(v)
        ps = self.alive_parents(v)
        self._place(v, ps[self.level[ps] <= old - 2])
        new = int(self.level[v])
        cs = self.alive_children(v)
        for w in cs[self.level[cs] == new + 1].tolist():
            self.prv[v][w] = None
            self.nxt[w][v] = None
        assert new < old

    def extract_chain(self, v: int) -> list:
        """Follow the first listed lower parent from ``v`` down to layer 1.

        Returns the vertices top layer first; reversed, they form a path.
        """
        seq = [v]
        while self.nxt[v]:
            v = next(iter(self.nxt[v]))
            seq.append(v)
        return seq

    def audit(self, adj: np.ndarray, phase: str = "after") -> list:
        """Check the layering invariants; returns a list of violation messages.

        ``phase`` is ``"before_insert"``, ``"before_move"`` or ``"after"``
        (after any single operation); the stricter items only apply before
        an insert or a move.
        """
        bad = []
        alive = self.alive
        ell, h = self.ell, self.h
        members = np.zeros(self.n, dtype=np.int64)
        for i in range(1, h + 1):
            for v in self.layers[i]:
                members[v] += 1
                if not alive[v] or self.level[v] != i:
                    bad.append(f"(1) vertex {v} listed in layer {i} but level={self.level[v]} alive={alive[v]}")
        if np.any(members[alive] != 1) or np.any(members[~alive] != 0):
            bad.append("(1) layer membership is not a partition of the alive vertices")
        if phase == "before_insert" and self.layers[h]:
            bad.append(f"(1) top layer non-empty before insert: {list(self.layers[h])}")
        cap = ell - 1 if phase in ("before_insert", "before_move") else ell
        for i in range(1, h + 1):
            if len(self.layers[i]) > cap:
                bad.append(f"(2) |L{i}|={len(self.layers[i])} exceeds {cap} ({phase})")
        sub = adj & alive[:, None] & alive[None, :]
        src, dst = np.nonzero(sub)
        if np.any(self.level[src] >= self.level[dst]):
            k = np.flatnonzero(self.level[src] >= self.level[dst])[0]
            bad.append(f"(3) parent {src[k]} (level {self.level[src[k]]}) not below child {dst[k]} (level {self.level[dst[k]]})")
        if np.any(self.level[src] == self.level[dst]):
            bad.append("(4) edge inside a layer")
        for v in np.flatnonzero(alive):
            lv = self.level[v]
            below = set(np.flatnonzero(sub[:, v] & (self.level == lv - 1)).tolist())
            above = set(np.flatnonzero(sub[v] & (self.level == lv + 1)).tolist())
            if set(self.nxt[v]) != below:
                bad.append(f"lower-parent list of {v} is {sorted(self.nxt[v])}, expected {sorted(below)}")
            if set(self.prv[v]) != above:
                bad.append(f"upper-child list of {v} is {sorted(self.prv[v])}, expected {sorted(above)}")
            if phase == "before_insert" and lv >= 2 and not below:
                bad.append(f"(5) vertex {v} at level {lv} has no parent at level {lv - 1}")
        if phase == "before_move" and self.DEL:
            bad.append("move attempted while deletions are pending")
        return bad


class _DenseLayerState(LayerState):
    """Layer engine over an adjacency matrix that scans whole layers.

    Parents are searched layer by layer downward from the highest candidate
    layer and children only in the single layer above, so a move from level
    ``i`` to ``j`` touches ``O((i - j) * ell)`` matrix entries.
    """

    def __init__(self, adj: np.ndarray, ell: int):
        super().__init__(adj.shape[0], ell)
        self.adj = adj
        self.adj_t = np.ascontiguousarray(adj.T)

    def _members(self, i: int) -> np.ndarray:
        layer = self.layers[i]
        return np.fromiter(layer, dtype=np.int64, count=len(layer))

    def _scan_down(self, v: int, top: int) -> np.ndarray:
        col = self.adj_t[v]
        for j in range(top, 0, -1):
            if self.layers[j]:
                mem = self._members(j)
                hit = mem[col[mem]]
                if len(hit):
                    return hit
        return np.empty(0, dtype=np.int64)

    def insert(self, v: int):
        assert not self.alive[v], f"vertex {v} inserted twice"
        self.alive[v] = True
        self.prv[v] = {}
        self._place(v, self._scan_down(v, self.h - 1))

    def move(self, v: int):
        old = int(self.level[v])
        assert self.alive[v] and old >= 2 and not self.nxt[v]
        del self.layers[old][v]
        self._unlink_children(v)
        self._place(v, self._scan_down(v, old - 2))
        new = int(self.level[v])
        if new < self.h and self.layers[new + 1]:
            mem = self._members(new + 1)
            for w in mem[self.adj[v, mem]].tolist():
                self.prv[v][w] = None
                self.nxt[w][v] = None
        assert new < old


def _run(n: int, ell: int, order, state: LayerState, audit_adj=None, log=None) -> Decomposition:
    chains, antichains = [], []
    h = state.h

    def check(phase):
        if audit_adj is not None:
            bad = state.audit(audit_adj, phase)
            if bad:
                raise AssertionError("; ".join(bad))

    def emit_layer(i):
        layer = state.layers[i]
        antichains.append(tuple(sorted(layer)))
        state.DEL.extend(layer)

    for v in order:
        v = int(v)
        check("before_insert")
        state.insert(v)
        if log is not None:
            log.append(("insert", v, int(state.level[v])))
        check("after")
        lv = int(state.level[v])
        if len(state.layers[lv]) >= ell:
            emit_layer(lv)
        elif lv == h:
            chain = state.extract_chain(v)
            chains.append(tuple(reversed(chain)))
            state.DEL.extend(chain)
        while state.DEL or state.MOVE:
            if state.DEL:
                w = state.DEL.popleft()
                state.delete(w)
                if log is not None:
                    log.append(("delete", w))
                check("after")
            else:
                w = state.MOVE.popleft()
                if not state.alive[w] or state.nxt[w]:
                    continue  # deleted meanwhile, or regained a lower parent
                check("before_move")
                old = int(state.level[w])
                state.move(w)
                new = int(state.level[w])
                if log is not None:
                    log.append(("move", w, old, new))
                check("after")
                if len(state.layers[new]) >= ell:
                    emit_layer(new)
    n_final = 0
    for i in range(1, h):
        if state.layers[i]:
            antichains.append(tuple(sorted(state.layers[i])))
            n_final += 1
    return Decomposition(ell, tuple(chains), tuple(antichains), n_final)


def decompose(g: Dag, ell: int, *, audit: bool = False, log: list | None = None) -> Decomposition:
    """Layered ``(ell, 2n/ell)`` chain/antichain decomposition of ``g``.

    Parameters
    ----------
    g : Dag
        Any DAG; the LCA pipeline passes the transitive closure.
    ell : int
        Chain budget in ``[1, n]``.
    audit : bool
        Re-check every layering invariant around each insert, delete and
        move (quadratic per step; meant for small graphs in tests).
    log : list, optional
        Receives ``("insert", v, level)``, ``("delete", v)`` and
        ``("move", v, old_level, new_level)`` records.
    """
    n = g.n
    _check_ell(n, ell)
    order = topological_order(g).order
    state = _DenseLayerState(g.adj, ell)
    return _run(n, ell, order, state, g.adj if audit else None, log)


def decompose_sparse(g: AdjacencyLists | Dag, ell: int, *, audit: bool = False,
                     log: list | None = None) -> Decomposition:
    """:func:`decompose` driven by in/out-neighbour lists.

    Every insert and move costs ``O(deg(v))``, which pays off when the graph
    has far fewer than ``n * ell`` edges.
    """
    if isinstance(g, Dag):
        g = AdjacencyLists.from_dag(g)
    n = g.n
    _check_ell(n, ell)
    order = topological_order(g).order
    state = LayerState(n, ell)
    alive = state.alive
    parents, children = g.parents, g.children
    state.alive_parents = lambda v: parents[v][alive[parents[v]]]
    state.alive_children = lambda v: children[v][alive[children[v]]]
    audit_adj = g.to_dag().adj if audit else None
    return _run(n, ell, order, state, audit_adj, log)


def _longest_path_levels(adj: np.ndarray, keep: np.ndarray, order) -> tuple:
    """Longest-path length ending at each kept vertex, and a predecessor.

    Predecessor ties go to the smallest vertex id.
    """
    n = adj.shape[0]
    dist = np.zeros(n, dtype=np.int64)
    pred = np.full(n, -1, dtype=np.int64)
    for v in order:
        if not keep[v]:
            continue
        ps = np.flatnonzero(adj[:, v] & keep)
        if len(ps):
            k = int(np.argmax(dist[ps]))
            dist[v] = dist[ps[k]] + 1
            pred[v] = ps[k]
        else:
            dist[v] = 1
    return dist, pred


def greedy_decompose(g: Dag, ell: int) -> Decomposition:
    """Baseline: remove a longest chain ``ell`` times, then peel by depth.

    The remainder has depth at most ``ceil(n / ell)``, so it splits into
    that many antichains (vertices grouped by longest-path depth).
    """
    n = g.n
    _check_ell(n, ell)
    order = topological_order(g).order
    keep = np.ones(n, dtype=bool)
    chains = []
    for _ in range(ell):
        if not keep.any():
            break
        dist, pred = _longest_path_levels(g.adj, keep, order)
        v = int(np.argmax(np.where(keep, dist, 0)))
        chain = []
        while v >= 0:
            chain.append(v)
            v = int(pred[v])
        chain.reverse()
        chains.append(tuple(chain))
        keep[chain] = False
    dist, _ = _longest_path_levels(g.adj, keep, order)
    antichains = tuple(tuple(np.flatnonzero(keep & (dist == d)).tolist())
                       for d in range(1, int(dist.max(initial=0)) + 1))
    return Decomposition(ell, tuple(chains), antichains, len(antichains))


def verify_decomposition(g: Dag, d: Decomposition, antichain_bound: int | None = None) -> bool:
    """Whether ``d`` is a valid ``(ell, antichain_bound)`` decomposition of ``g``.

    The default bound is ``2 * ceil(n / ell)``.
    """
    n = g.n
    if not 1 <= d.ell <= max(n, 1):
        return False
    if antichain_bound is None:
        antichain_bound = 2 * _ceil_div(n, d.ell)
    if len(d.chains) > d.ell or len(d.antichains) > antichain_bound:
        return False
    seen = np.zeros(n, dtype=np.int64)
    for part in (*d.chains, *d.antichains):
        idx = np.asarray(part, dtype=np.int64)
        if len(idx) == 0 or idx.min() < 0 or idx.max() >= n:
            return False
        np.add.at(seen, idx, 1)
    if np.any(seen != 1):
        return False
    for c in d.chains:
        c = np.asarray(c)
        if not np.all(g.adj[c[:-1], c[1:]]):
            return False
    for a in d.antichains:
        a = np.asarray(a)
        if g.adj[np.ix_(a, a)].any():
            return False
    return True


def has_exact_sizes(d: Decomposition, n: int) -> bool:
    """Chains have exactly ``ceil(n/ell)`` vertices; mid-run antichains exactly ``ell``."""
    h = _ceil_div(n, d.ell)
    return (all(len(c) == h for c in d.chains)
            and all(len(a) == d.ell for a in d.mid_run_antichains))
