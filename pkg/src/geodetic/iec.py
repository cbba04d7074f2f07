"""Isometrically embedded circuits (IECs): detection, construction, enumeration."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InternalInconsistencyError, NotGeodeticError, PreconditionError
from .graph import Graph, is_geodesic_path, is_geodetic


@dataclass(frozen=True, order=True)
class Iec:
    length: int
    canon: tuple = field(compare=False)
    key: tuple = field(repr=False, default=())

    @property
    def vertices(self) -> tuple:
        return self.canon[:-1]


@dataclass(frozen=True)
class IecInventory:
    iecs: tuple[Iec, ...]
    histogram: dict
    max_length: int | None

    @classmethod
    def from_iecs(cls, iecs) -> "IecInventory":
        unique = {c.key: c for c in iecs}
        ordered = tuple(sorted(unique.values()))
        hist = dict(sorted(Counter(c.length for c in ordered).items()))
        return cls(ordered, hist, max(hist) if hist else None)

    def __len__(self):
        return len(self.iecs)

    def canon_set(self) -> frozenset:
        return frozenset(c.canon for c in self.iecs)

    def to_json(self):
        return {
            "iecs": [list(c.canon) for c in self.iecs],
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "max_length": self.max_length,
        }


def _check_circuit(g: Graph, c: Sequence) -> list[int]:
    if len(c) < 3 or c[0] != c[-1]:
        raise PreconditionError(f"not a circuit: {list(c)}")
    idx = [g.idx(v) for v in c]
    for a, b in zip(idx, idx[1:]):
        if b not in g._adjsets[a]:
            raise PreconditionError(f"{g.names[a]} and {g.names[b]} are not adjacent")
    return idx


def _embedded(idx: Sequence[int]) -> bool:
    n = len(idx) - 1
    return n >= 3 and len(set(idx[:-1])) == n


def _isometric_idx(g: Graph, idx: Sequence[int]) -> bool:
    n = len(idx) - 1
    ring = np.asarray(idx[:-1])
    steps = np.arange(n)
    gap = np.abs(steps[:, None] - steps[None, :])
    expected = np.minimum(gap, n - gap)
    return bool(np.array_equal(g.apsp.dist[np.ix_(ring, ring)], expected))


def is_iec(g: Graph, c: Sequence) -> bool:
    idx = _check_circuit(g, c)
    return _embedded(idx) and _isometric_idx(g, idx)


def canonical_circuit(c: Sequence, key: Callable | None = None) -> tuple:
    """Least closed sequence among all rotations and reflections of ``c``.

    Comparison uses ``key`` on each vertex (identity by default).
    """
    if len(c) < 4 or c[0] != c[-1] or len(set(c[:-1])) != len(c) - 1:
        raise PreconditionError(f"not an embedded circuit: {list(c)}")
    ring = list(c[:-1])
    k = key or (lambda v: v)
    keyed = [k(v) for v in ring]
    n = len(ring)
    best = None
    for seq, kseq in ((ring, keyed), (ring[::-1], keyed[::-1])):
        for s in range(n):
            cand = kseq[s:] + kseq[:s]
            if best is None or cand < best[0]:
                best = (cand, seq[s:] + seq[:s])
    out = best[1]
    return tuple(out) + (out[0],)


def _make_iec(g: Graph, idx: Sequence[int]) -> Iec:
    canon_idx = canonical_circuit(list(idx))
    return Iec(len(idx) - 1, tuple(g.names[i] for i in canon_idx), canon_idx)


def iec_from_fork(g: Graph, alpha: Sequence, beta: Sequence) -> Iec:
    """Close two diverging geodesics with adjacent endpoints into an IEC.

    ``alpha`` and ``beta`` start at the same vertex, differ at their second
    vertex, and end at adjacent vertices. In a geodetic graph they then have
    equal length and ``alpha`` followed by reversed ``beta`` is an IEC.
    """
    if len(alpha) < 2 or len(beta) < 2:
        raise PreconditionError("both fork paths need at least one edge")
    if alpha[0] != beta[0]:
        raise PreconditionError(f"fork paths start at {alpha[0]} and {beta[0]}")
    if alpha[1] == beta[1]:
        raise PreconditionError(f"fork paths share their second vertex {alpha[1]}")
    for name, path in (("alpha", alpha), ("beta", beta)):
        if not is_geodesic_path(g, path):
            raise PreconditionError(f"{name} is not a geodesic: {list(path)}")
    if not g.has_edge(alpha[-1], beta[-1]):
        raise PreconditionError(f"endpoints {alpha[-1]} and {beta[-1]} are not adjacent")
    if len(alpha) != len(beta):
        raise InternalInconsistencyError(
            f"fork lengths differ ({len(alpha) - 1} vs {len(beta) - 1}); graph is not geodetic"
        )
    idx = [g.idx(v) for v in list(alpha) + list(beta[::-1])]
    if not (_embedded(idx) and _isometric_idx(g, idx)):
        raise InternalInconsistencyError("fork closure is not an IEC; graph is not geodetic")
    return _make_iec(g, idx)


def _require_geodetic(g: Graph):
    report = is_geodetic(g)
    if not report.geodetic:
        raise NotGeodeticError(report)


def enumerate_iecs_geodetic(g: Graph) -> IecInventory:
    """Every IEC of a geodetic graph, found as forks over its edges.

    For each edge ``{u, v}`` and each vertex ``x`` equidistant from ``u`` and
    ``v``, the geodesics ``[x, u]`` and ``[x, v]`` share a prefix ending at a
    vertex ``y`` where they split; closing the fork at ``y`` gives an IEC.
    Such ``y`` are exactly the equidistant vertices whose first steps toward
    ``u`` and ``v`` differ, so iterating over those covers every ``x``.
    """
    _require_geodetic(g)
    ap = g.apsp
    dist, parent = ap.dist, ap.parent
    found: dict[tuple, Iec] = {}
    for u, v in g.edges():
        # first step from y toward u is y's BFS parent in the tree rooted at u
        apex = np.flatnonzero((dist[u] == dist[v]) & (parent[u] != parent[v]))
        for y in apex:
            y = int(y)
            a = _walk(parent[y], u, y)
            b = _walk(parent[y], v, y)
            key = canonical_circuit(a + b[::-1])
            if key in found:
                continue
            names = g.names
            found[key] = iec_from_fork(g, [names[i] for i in a], [names[i] for i in b])
    return IecInventory.from_iecs(found.values())


def _walk(parent_row, v: int, root: int) -> list[int]:
    out = [v]
    while v != root:
        v = int(parent_row[v])
        out.append(v)
    return out[::-1]


def enumerate_iecs_bruteforce(g: Graph, max_len: int) -> IecInventory:
    """IECs of length at most ``max_len`` by depth-first search.

    Works on any graph. A partial path is abandoned as soon as one of its
    vertex pairs violates the circuit distance formula for the target length.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    dist = g.apsp.dist
    adj = g.adj
    n = len(g)
    found: dict[tuple, Iec] = {}
    for length in range(3, min(max_len, n) + 1):
        for s in range(n):
            path = [s]
            on_path = {s}

            def extend():
                k = len(path)
                if k == length:
                    if s in g._adjsets[path[-1]] and path[1] < path[-1]:
                        idx = path + [s]
                        if _isometric_idx(g, idx):
                            it = _make_iec(g, idx)
                            found.setdefault(it.key, it)
                    return
                for w in adj[path[-1]]:
                    if w <= s or w in on_path:
                        continue
                    row = dist[w]
                    ok = True
                    for i, p in enumerate(path):
                        gap = k - i
                        if row[p] != min(gap, length - gap):
                            ok = False
                            break
                    if ok:
                        path.append(w)
                        on_path.add(w)
                        extend()
                        path.pop()
                        on_path.discard(w)

            extend()
    return IecInventory.from_iecs(found.values())
