"""Finite-horizon tools for geodesic rays and the geodesic boundary.

Nothing here materialises a boundary point. Rays are represented by finite
geodesic prefixes, and every "eventually" claim is certified only on the
prefix at hand; a failed certificate is inconclusive, never a refutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    HorizonTooShortError,
    InternalInconsistencyError,
    NotGeodesicError,
    PreconditionError,
)
from .graph import Graph, build_graph, unique_geodesic
from .iec import IecInventory

#: Returned by ``coincidence_radius`` when two prefixes agree on their common horizon.
FULL_HORIZON = math.inf

DEFAULT_WINDOW = 3


@dataclass(frozen=True)
class RayPrefix:
    base: str
    seq: tuple

    @property
    def horizon(self) -> int:
        return len(self.seq) - 1

    def to_json(self):
        return {"base": self.base, "seq": list(self.seq), "horizon": self.horizon}


@dataclass(frozen=True)
class BusemannTrace:
    values: tuple
    window: int
    stable_from: int | None
    limit: int | None

    @property
    def horizon(self) -> int:
        return len(self.values) - 1

    def to_json(self):
        return {
            "values": list(self.values),
            "horizon": self.horizon,
            "window": self.window,
            "stable_from": self.stable_from,
            "limit": self.limit,
        }


@dataclass(frozen=True)
class OnionPrefix:
    depth: int
    r: tuple
    s: tuple
    thetas: tuple  # one Iec per level

    def spine(self) -> tuple:
        return tuple(reversed(self.s)) + tuple(self.r)

    def to_json(self):
        return {
            "depth": self.depth,
            "r": list(self.r),
            "s": list(self.s),
            "thetas": [list(t.canon) for t in self.thetas],
        }


def validate_ray_prefix(g: Graph, seq) -> RayPrefix:
    seq = tuple(seq)
    if not seq:
        raise PreconditionError("a ray prefix needs at least one vertex")
    row = g.apsp.dist[g.idx(seq[0])]
    for t, v in enumerate(seq):
        if t and not g.has_edge(seq[t - 1], v):
            raise NotGeodesicError(f"{seq[t - 1]} and {v} are not adjacent (t={t})", index=t)
        if row[g.idx(v)] != t:
            raise NotGeodesicError(
                f"d({seq[0]}, {v}) = {int(row[g.idx(v)])} != {t}: not geodesic at t={t}", index=t
            )
    return RayPrefix(seq[0], seq)


def busemann_trace(g: Graph, gamma: RayPrefix, x, window: int = DEFAULT_WINDOW) -> BusemannTrace:
    """Values ``d(x, gamma(t)) - t`` along the prefix.

    The tail is declared stable when it is constant over at least ``window``
    steps ending at the horizon. This is a heuristic certificate: the limit
    is only guaranteed to be reached on the infinite ray.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    row = g.apsp.dist[g.idx(x)]
    values = tuple(int(row[g.idx(v)]) - t for t, v in enumerate(gamma.seq))
    floor = -values[0]
    for t, f in enumerate(values):
        if f < floor:
            raise InternalInconsistencyError(f"trace value {f} at t={t} is below {floor}")
        if t and f > values[t - 1]:
            raise InternalInconsistencyError(f"trace increases at t={t}")
    t0 = len(values) - 1
    while t0 > 0 and values[t0 - 1] == values[-1]:
        t0 -= 1
    if len(values) - 1 - t0 >= window:
        return BusemannTrace(values, window, t0, values[-1])
    return BusemannTrace(values, window, None, None)


def rebase_ray(g: Graph, gamma: RayPrefix, o, window: int = DEFAULT_WINDOW) -> RayPrefix:
    """Move a ray prefix to base ``o`` while keeping its tail.

    Once the Busemann trace for ``o`` is constant from ``t0`` on, the unique
    geodesic ``[o, gamma(t0)]`` followed by ``gamma`` from ``t0`` is again a
    geodesic prefix.
    """
    trace = busemann_trace(g, gamma, o, window)
    if trace.stable_from is None:
        raise HorizonTooShortError(
            f"Busemann trace from {o} not stable for {window} steps within horizon {gamma.horizon}"
        )
    t0 = trace.stable_from
    head = unique_geodesic(g, o, gamma.seq[t0])
    return validate_ray_prefix(g, head + gamma.seq[t0 + 1:])


def coincidence_radius(a: RayPrefix, b: RayPrefix):
    """Largest ``r`` with ``a[i] == b[i]`` for all ``i <= r``, or ``FULL_HORIZON``."""
    if a.base != b.base:
        raise PreconditionError(f"prefixes have different bases {a.base} and {b.base}")
    common = min(a.horizon, b.horizon)
    for i in range(common + 1):
        if a.seq[i] != b.seq[i]:
            return i - 1
    return FULL_HORIZON


def extension_vertex(g_names, a, i: int) -> str:
    name = f"{a}~{i}"
    while name in g_names:
        name += "~"
    return name


def ray_extend(g: Graph, attach, length: int) -> Graph:
    """Glue a path with ``length`` edges to every vertex of ``attach``.

    The path at ``a`` uses fresh vertices ``a~1 .. a~length``; the result is a
    truncation of the infinite ray extension.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    attach = sorted({g.idx(a) for a in attach})
    names = set(g.names)
    edges = list(g.edge_names())
    fresh = []
    for i in attach:
        a = g.names[i]
        prev = a
        for k in range(1, length + 1):
            v = extension_vertex(names, a, k)
            names.add(v)
            fresh.append(v)
            edges.append((prev, v))
            prev = v
    return build_graph(edges, vertices=list(g.names) + fresh)


@lru_cache(maxsize=None)
def _iec_edges(canon: tuple) -> frozenset:
    return frozenset(frozenset(e) for e in zip(canon, canon[1:]))


def find_onion_prefix(g: Graph, inv: IecInventory, max_depth: int, central_edges=None) -> OnionPrefix | None:
    """Deepest onion prefix of depth at most ``max_depth``, by exhaustive search.

    Central edges ``(s0, r0)`` are tried in index order with ``s0`` the
    smaller index, unless ``central_edges`` restricts them. ``None`` means no
    IEC contains any candidate central edge.
    """
    dist = g.apsp.dist
    idx = g.idx
    by_edge: dict = {}
    for it in inv.iecs:
        c = it.canon
        for x, y in zip(c, c[1:]):
            by_edge.setdefault(frozenset((x, y)), []).append(it)
    if central_edges is None:
        candidates = g.edges()
    else:
        candidates = sorted(tuple(sorted((idx(u), idx(v)))) for u, v in central_edges)
    best: list = [None]

    def search(s, r, thetas, used):
        depth = len(thetas) - 1
        if best[0] is None or depth > best[0].depth:
            best[0] = OnionPrefix(depth, tuple(r), tuple(s), tuple(thetas))
        if depth >= max_depth:
            return True
        spine = s[::-1] + r
        spine_edges = [frozenset(e) for e in zip(spine, spine[1:])]
        want = 2 * (depth + 1) + 1
        for si in g.neighbors(s[-1]):
            if si in s or si in r:
                continue
            for ri in g.neighbors(r[-1]):
                if ri in s or ri in r or ri == si:
                    continue
                if dist[idx(si), idx(ri)] != want:
                    continue
                new_edges = spine_edges + [frozenset((si, s[-1])), frozenset((r[-1], ri))]
                for theta in by_edge.get(new_edges[-1], ()):
                    if theta.key in used:
                        continue
                    if all(e in _iec_edges(theta.canon) for e in new_edges):
                        if search(s + [si], r + [ri], thetas + [theta], used | {theta.key}):
                            return True
        return False

    for a, b in candidates:
        s0, r0 = g.names[a], g.names[b]
        for theta in by_edge.get(frozenset((s0, r0)), ()):
            if search([s0], [r0], [theta], frozenset([theta.key])):
                return best[0]
    return best[0]


def check_onion_prefix(g: Graph, p: OnionPrefix) -> bool:
    """Re-verify an onion prefix against its definition, independently of the search."""
    from .graph import is_geodesic_path
    from .iec import is_iec

    spine = p.spine()
    if len(spine) != 2 * p.depth + 2 or not is_geodesic_path(g, spine):
        return False
    if len({t.canon for t in p.thetas}) != len(p.thetas):
        return False
    for i, theta in enumerate(p.thetas):
        if not is_iec(g, theta.canon):
            return False
        arc = tuple(reversed(p.s[: i + 1])) + tuple(p.r[: i + 1])
        ring = list(theta.canon[:-1])
        n = len(ring)
        found = False
        for seq in (ring, ring[::-1]):
            for start in range(n):
                if all(seq[(start + j) % n] == arc[j] for j in range(len(arc))):
                    found = True
        if not found:
            return False
    return True


def onion_apexes(g: Graph, p: OnionPrefix) -> list:
    """For each level, the vertex of its IEC equidistant from ``s0`` and ``r0``."""
    s0, r0 = g.idx(p.s[0]), g.idx(p.r[0])
    dist = g.apsp.dist
    out = []
    for theta in p.thetas:
        if theta.length % 2 == 0:
            raise PreconditionError(f"IEC of even length {theta.length} has no apex vertex")
        hits = [v for v in theta.vertices if dist[g.idx(v), s0] == dist[g.idx(v), r0]]
        if len(hits) != 1:
            raise PreconditionError(f"expected one equidistant vertex on {list(theta.canon)}, got {hits}")
        out.append(hits[0])
    return out
