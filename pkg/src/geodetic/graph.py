"""Finite simple graphs, breadth-first layers and geodesic uniqueness."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import _backend
from .errors import (
    AmbiguousGeodesicError,
    DisconnectedGraphError,
    GraphFormatError,
    UnknownVertexError,
    UnreachableError,
)

#: Saturated geodesic count: "two or more".
MANY = 2


class Graph:
    """Immutable simple undirected graph.

    Vertices are strings; internally they are the dense indices ``0..n-1`` in
    declaration order, and every neighbour tuple is sorted by index.
    """

    def __init__(self, names: Sequence[str], adjacency: Sequence[Iterable[int]]):
        self.names = tuple(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise GraphFormatError("vertex identifiers must be unique")
        self.adj = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.names == other.names and self.adj == other.adj

    def __hash__(self):
        return hash((self.names, self.adj))

    def __repr__(self):
        return f"Graph(|V|={len(self.names)}, |E|={self.edge_count})"

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Index pairs ``(i, j)`` with ``i < j``, sorted."""
        return [(i, j) for i, nbrs in enumerate(self.adj) for j in nbrs if i < j]

    def edge_names(self) -> list[tuple[str, str]]:
        return [(self.names[i], self.names[j]) for i, j in self.edges()]

    def idx(self, vertex) -> int:
        try:
            return self.index[vertex]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {vertex!r}") from None

    def neighbors(self, vertex) -> tuple[str, ...]:
        return tuple(self.names[j] for j in self.adj[self.idx(vertex)])

    def degree(self, vertex) -> int:
        return len(self.adj[self.idx(vertex)])

    def has_edge(self, u, v) -> bool:
        return self.idx(v) in self._adjsets[self.idx(u)]

    @cached_property
    def _adjsets(self):
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(len(self.names) + 1, dtype=np.int32)
        indptr[1:] = np.cumsum([len(a) for a in self.adj])
        indices = np.fromiter((j for a in self.adj for j in a), dtype=np.int32, count=int(indptr[-1]))
        return indptr, indices

    @cached_property
    def apsp(self) -> "AllPairs":
        dist, count, parent = _backend.all_pairs(*self.csr)
        for arr in (dist, count, parent):
            arr.setflags(write=False)
        return AllPairs(dist, count, parent)

    def bfs_row(self, root) -> np.ndarray:
        """Distances from one root without building the all-pairs tables."""
        return _backend.bfs(*self.csr, self.idx(root))[0]

    def dist(self, u, v) -> int:
        d = int(self.apsp.dist[self.idx(u), self.idx(v)])
        if d < 0:
            raise UnreachableError(f"{v!r} is unreachable from {u!r}")
        return d

    def components(self) -> list[list[int]]:
        seen = [False] * len(self.names)
        comps = []
        for s in range(len(self.names)):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def require_connected(self):
        comps = self.components()
        if len(comps) > 1:
            a, b = comps[0], comps[1]
            raise DisconnectedGraphError([self.names[i] for i in a], [self.names[i] for i in b])

    def induced(self, vertices) -> "Graph":
        keep = sorted(self.idx(v) for v in set(vertices))
        remap = {old: new for new, old in enumerate(keep)}
        adj = [[remap[j] for j in self.adj[i] if j in remap] for i in keep]
        return Graph([self.names[i] for i in keep], adj)


@dataclass(frozen=True)
class AllPairs:
    dist: np.ndarray
    count: np.ndarray
    parent: np.ndarray  # parent[root, v]: smallest-index predecessor of v seen from root


@dataclass(frozen=True)
class BfsLayers:
    root: str
    dist: dict
    count: dict
    preds: dict

    def layers(self) -> list[list[str]]:
        out: list[list[str]] = []
        for v, d in self.dist.items():
            while len(out) <= d:
                out.append([])
            out[d].append(v)
        return out


@dataclass(frozen=True)
class Witness:
    pair: tuple[str, str]
    paths: tuple[tuple[str, ...], tuple[str, ...]]


@dataclass(frozen=True)
class GeodeticReport:
    geodetic: bool
    witness: Witness | None = None
    vertex_index: tuple[str, ...] = ()

    def to_json(self):
        out = {"geodetic": self.geodetic, "vertex_index": list(self.vertex_index)}
        if self.witness is None:
            out["witness"] = None
        else:
            out["witness"] = {
                "pair": list(self.witness.pair),
                "paths": [list(p) for p in self.witness.paths],
            }
        return out


def build_graph(edges: Iterable[tuple[Hashable, Hashable]], vertices: Iterable[Hashable] = ()) -> Graph:
    """Graph on the declared ``vertices`` plus every edge endpoint.

    Vertex order is declaration order followed by first appearance in
    ``edges``. Identifiers are converted with ``str``; duplicate edges
    collapse.
    """
    order: dict[str, int] = {}
    for v in vertices:
        order.setdefault(str(v), len(order))
    pairs = []
    for edge in edges:
        u, v = edge
        u, v = str(u), str(v)
        if u == v:
            raise GraphFormatError(f"self-loop ({u}, {v}) is not allowed in a simple graph")
        for w in (u, v):
            order.setdefault(w, len(order))
        pairs.append((order[u], order[v]))
    adj: list[set[int]] = [set() for _ in order]
    for i, j in pairs:
        adj[i].add(j)
        adj[j].add(i)
    return Graph(list(order), adj)


def bfs_from(g: Graph, root) -> BfsLayers:
    r = g.idx(root)
    dist, count, _ = _backend.bfs(*g.csr, r)
    names = g.names
    d, c, p = {}, {}, {}
    for v in np.argsort(dist, kind="stable"):
        dv = int(dist[v])
        if dv < 0:
            continue
        d[names[v]] = dv
        c[names[v]] = int(count[v])
        p[names[v]] = frozenset(names[u] for u in g.adj[v] if dist[u] == dv - 1)
    return BfsLayers(root=names[r], dist=d, count=c, preds=p)


def _geodesics_idx(g: Graph, u: int, v: int, cap: int) -> list[tuple[int, ...]]:
    dv = g.apsp.dist[v]
    if dv[u] < 0:
        return []
    found: list[tuple[int, ...]] = []
    path = [u]

    def extend(x):
        if len(found) >= cap:
            return
        if x == v:
            found.append(tuple(path))
            return
        want = dv[x] - 1
        for w in g.adj[x]:
            if dv[w] == want:
                path.append(w)
                extend(w)
                path.pop()

    extend(u)
    return found


def enumerate_geodesics(g: Graph, u, v, cap: int = 2**31) -> list[tuple[str, ...]]:
    """All geodesics from ``u`` to ``v`` in lexicographic (index) order, at most ``cap``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    paths = _geodesics_idx(g, g.idx(u), g.idx(v), cap)
    return [tuple(g.names[i] for i in p) for p in paths]


def is_geodetic(g: Graph) -> GeodeticReport:
    g.require_connected()
    bad = np.argwhere(g.apsp.count >= MANY)
    if len(bad) == 0:
        return GeodeticReport(True, None, g.names)
    # argwhere is row-major: the first hit is the lexicographically first (root, target)
    r, v = (int(x) for x in bad[0])
    p1, p2 = _geodesics_idx(g, r, v, 2)
    witness = Witness(
        pair=(g.names[r], g.names[v]),
        paths=(tuple(g.names[i] for i in p1), tuple(g.names[i] for i in p2)),
    )
    return GeodeticReport(False, witness, g.names)


def unique_geodesic(g: Graph, u, v) -> tuple[str, ...]:
    paths = enumerate_geodesics(g, u, v, cap=2)
    if not paths:
        raise UnreachableError(f"{v!r} is unreachable from {u!r}")
    if len(paths) > 1:
        raise AmbiguousGeodesicError(u, v, paths)
    return paths[0]


def path_to_root(g: Graph, root: int, v: int) -> list[int]:
    """Vertices from ``v`` back to ``root`` along smallest-index BFS predecessors."""
    parent = g.apsp.parent[root]
    out = [v]
    while v != root:
        v = int(parent[v])
        out.append(v)
    return out


def is_convex(g: Graph, s) -> bool:
    """True iff every geodesic between two vertices of ``s`` stays inside ``s``.

    A vertex ``w`` lies on some geodesic from ``x`` to ``y`` exactly when
    ``d(x, w) + d(w, y) = d(x, y)``, so checking these intervals covers every
    geodesic.
    """
    members = sorted({g.idx(v) for v in s})
    inside = np.zeros(len(g), dtype=bool)
    inside[members] = True
    dist = g.apsp.dist
    for a, x in enumerate(members):
        for y in members[a + 1:]:
            dxy = dist[x, y]
            if dxy < 0:
                continue
            interval = (dist[x] + dist[y] == dxy) & (dist[x] >= 0) & (dist[y] >= 0)
            if np.any(interval & ~inside):
                return False
    return True


def is_geodesic_path(g: Graph, seq) -> bool:
    idx = [g.idx(v) for v in seq]
    if any(b not in g._adjsets[a] for a, b in zip(idx, idx[1:])):
        return False
    return int(g.apsp.dist[idx[0], idx[-1]]) == len(idx) - 1
