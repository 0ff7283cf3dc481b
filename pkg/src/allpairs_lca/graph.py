"""DAG containers, topological ordering, transitive closure and the LCA oracle.

Vertices are ``0..n-1``. A graph is stored as a dense boolean adjacency
matrix ``adj`` with ``adj[u, v]`` meaning the edge ``u -> v``. Ancestry is
reflexive throughout: every vertex is an ancestor of itself, so the LCA of
``u`` and one of its descendants ``v`` is ``u``.

LCA answers are stored in integer matrices with :data:`NONE` (``-1``) for
pairs that have no common ancestor.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CycleDetected, LcaError

NONE = -1


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dag:
    """Directed acyclic graph on ``n`` vertices backed by a dense bool matrix.

    Acyclicity is not checked on construction (it costs a topological sort);
    operations that need it raise :class:`CycleDetected`.
    """

    n: int
    adj: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adj, dtype=bool, copy=True)
        if adj.shape != (self.n, self.n):
            raise LcaError(f"adjacency must be {self.n}x{self.n}, got {adj.shape}")
        if self.n and adj.diagonal().any():
            raise LcaError("self-loops are not allowed")
        object.__setattr__(self, "adj", _frozen(adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]):
        adj = np.zeros((n, n), dtype=bool)
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise LcaError("edge endpoint out of range")
        adj[e[:, 0], e[:, 1]] = True
        return cls(n, adj)

    @property
    def m(self) -> int:
        return int(self.adj.sum())

    def edges(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` array sorted by (source, target)."""
        return np.argwhere(self.adj)

    def parents(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[:, v])

    def children(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def induced(self, vertices: Sequence[int]) -> "Dag":
        idx = np.asarray(vertices, dtype=np.int64)
        return Dag(len(idx), self.adj[np.ix_(idx, idx)])

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, m={self.m})"


class ClosureDag(Dag):
    """A :class:`Dag` whose edge relation is transitively closed.

    Only :func:`transitive_closure` should build these; the constructor does
    not re-check closure.
    """

    @property
    def reach(self) -> np.ndarray:
        """Reflexive ancestry: ``reach[a, v]`` iff ``a`` is an ancestor of ``v``."""
        r = self.__dict__.get("_reach")
        if r is None:
            r = self.adj.copy()
            np.fill_diagonal(r, True)
            r = _frozen(r)
            object.__setattr__(self, "_reach", r)
        return r


@dataclass(frozen=True, eq=False)
class AdjacencyLists:
    """In- and out-neighbour lists of a DAG, for the sparse code paths."""

    n: int
    parents: tuple
    children: tuple
    m: int = field(default=0)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]):
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise LcaError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise LcaError("self-loops are not allowed")
        e = np.unique(e, axis=0)
        by_src = np.argsort(e[:, 0], kind="stable")
        by_dst = np.lexsort((e[:, 0], e[:, 1]))
        out_split = np.searchsorted(e[by_src, 0], np.arange(1, n))
        in_split = np.searchsorted(e[by_dst, 1], np.arange(1, n))
        children = tuple(np.split(e[by_src, 1], out_split))
        parents = tuple(np.split(e[by_dst, 0], in_split))
        if n == 0:
            children = parents = ()
        return cls(n, parents, children, len(e))

    @classmethod
    def from_dag(cls, g: Dag):
        return cls.from_edges(g.n, g.edges())

    def to_dag(self) -> Dag:
        edges = [(u, v) for v in range(self.n) for u in self.parents[v]]
        return Dag.from_edges(self.n, edges)


@dataclass(frozen=True, eq=False)
class TopoOrder:
    """A bijection between vertices and positions ``0..n-1``.

    ``label[v]`` is the position of vertex ``v``; ``order[i]`` is the vertex at
    position ``i``.
    """

    order: np.ndarray

    def __post_init__(self):
        order = np.array(self.order, dtype=np.int64, copy=True)
        n = len(order)
        if not np.array_equal(np.sort(order), np.arange(n)):
            raise LcaError("order is not a permutation of 0..n-1")
        label = np.empty(n, dtype=np.int64)
        label[order] = np.arange(n)
        object.__setattr__(self, "order", _frozen(order))
        object.__setattr__(self, "label", _frozen(label))

    @property
    def n(self) -> int:
        return len(self.order)

    def is_topological(self, g: Dag) -> bool:
        src, dst = np.nonzero(g.adj)
        return bool(np.all(self.label[src] < self.label[dst]))


def topological_order(g: Dag | AdjacencyLists) -> TopoOrder:
    """Kahn's algorithm, always emitting the smallest ready vertex id first.

    Raises
    ------
    CycleDetected
        If ``g`` is not acyclic.
    """
    n = g.n
    if isinstance(g, AdjacencyLists):
        indeg = np.array([len(p) for p in g.parents], dtype=np.int64)
        children_of = g.children.__getitem__
    else:
        indeg = g.adj.sum(axis=0).astype(np.int64)
        children_of = g.children
    ready = [int(v) for v in np.flatnonzero(indeg == 0)]
    heapq.heapify(ready)
    out = []
    while ready:
        v = heapq.heappop(ready)
        out.append(v)
        ch = children_of(v)
        if len(ch):
            indeg[ch] -= 1
            for w in ch[indeg[ch] == 0]:
                heapq.heappush(ready, int(w))
    if len(out) != n:
        raise CycleDetected(f"graph has a cycle ({n - len(out)} vertices unordered)")
    return TopoOrder(np.array(out, dtype=np.int64))


def transitive_closure(g: Dag, batch: int = 32) -> ClosureDag:
    """Reachability closure by row OR-ing in reverse topological order.

    Children of ``v`` are folded in topological order, ``batch`` rows at a
    time; a child already reachable through an earlier child contributes
    nothing new and is skipped.
    """
    topo = topological_order(g)
    n = g.n
    reach = np.zeros((n, n), dtype=bool)
    label = topo.label
    for v in topo.order[::-1]:
        row = g.adj[v].copy()
        todo = np.flatnonzero(row)
        todo = todo[np.argsort(label[todo], kind="stable")]
        while len(todo):
            head, todo = todo[:batch], todo[batch:]
            row |= reach[head].any(axis=0)
            if len(todo):
                # skip children already covered by a folded child
                todo = todo[~reach[head][:, todo].any(axis=0)]
        reach[v] = row
    return ClosureDag(n, reach)


def is_transitively_closed(g: Dag) -> bool:
    a = g.adj.astype(np.float32)
    two_step = (a @ a) > 0
    return not np.any(two_step & ~g.adj)


def random_dag(n: int, edge_density: float, seed=None) -> Dag:
    """Random DAG: a random permutation fixes the order, then every forward
    pair becomes an edge independently with probability ``edge_density``."""
    if not 0.0 <= edge_density <= 1.0:
        raise LcaError(f"edge_density must lie in [0, 1], got {edge_density}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    upper = np.triu(rng.random((n, n)) < edge_density, k=1)
    adj = np.zeros((n, n), dtype=bool)
    adj[np.ix_(perm, perm)] = upper
    return Dag(n, adj)


def _as_closure(g: Dag) -> ClosureDag:
    return g if isinstance(g, ClosureDag) else transitive_closure(g)


def brute_force_all_pairs_lca(g: Dag) -> np.ndarray:
    """Oracle: for every pair, the smallest-id maximal common ancestor.

    Common ancestors of ``(u, v)`` are enumerated directly from reflexive
    reachability; a common ancestor is kept when none of its proper
    descendants is also a common ancestor. Entries are :data:`NONE` where no
    common ancestor exists.
    """
    gc = _as_closure(g)
    n = gc.n
    reach = gc.reach
    adj_f = gc.adj.astype(np.float32)
    out = np.full((n, n), NONE, dtype=np.int64)
    for u in range(n):
        common = reach[:, u][:, None] & reach  # [w, v]: w ancestor of u and v
        below = adj_f @ common.astype(np.float32)
        maximal = common & (below == 0)
        has = maximal.any(axis=0)
        out[u] = np.where(has, maximal.argmax(axis=0), NONE)
    return out


def verify_lca(gc: ClosureDag, u: int, v: int, w: int | None) -> bool:
    """Whether ``w`` is a lowest common ancestor of ``u`` and ``v`` in ``gc``.

    ``w`` may be ``None`` or :data:`NONE`, meaning "no common ancestor".
    """
    reach = gc.reach
    common = reach[:, u] & reach[:, v]
    if w is None or w == NONE:
        return not common.any()
    if not common[w]:
        return False
    return not np.any(gc.adj[w] & common)


def verify_lca_matrix(gc: ClosureDag, lca: np.ndarray, rows=None, cols=None) -> np.ndarray:
    """Vectorised :func:`verify_lca` over a block of a LCA matrix.

    ``lca[i, j]`` is the answer for ``(rows[i], cols[j])``; both default to
    all vertices. Returns a bool matrix of per-entry verdicts.
    """
    n = gc.n
    rows = np.arange(n) if rows is None else np.asarray(rows, dtype=np.int64)
    cols = np.arange(n) if cols is None else np.asarray(cols, dtype=np.int64)
    lca = np.asarray(lca)
    if lca.shape != (len(rows), len(cols)):
        raise LcaError(f"expected shape {(len(rows), len(cols))}, got {lca.shape}")
    reach = gc.reach
    rc = reach[:, cols]
    ok = np.empty(lca.shape, dtype=bool)
    for i, u in enumerate(rows):
        common = (reach[:, u][:, None] & rc).T  # [j, w]
        ans = lca[i]
        none = ans < 0
        w = np.where(none, 0, ans)
        is_common = common[np.arange(len(cols)), w]
        deeper = np.any(gc.adj[w] & common, axis=1)
        ok[i] = np.where(none, ~common.any(axis=1), is_common & ~deeper)
    return ok
