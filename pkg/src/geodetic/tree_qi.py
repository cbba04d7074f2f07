"""Geodesic spanning trees and the identity-map quasi-isometry to them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend
from .errors import InternalInconsistencyError, NotGeodesicError, NotGeodeticError
from .graph import Graph, is_geodesic_path, is_geodetic
from .iec import IecInventory, enumerate_iecs_geodetic, is_iec


@dataclass(frozen=True)
class GeodesicSpanningTree:
    graph: Graph
    root: str
    parent: dict
    depth: dict

    def path_to_root(self, v) -> list:
        out = [v]
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out

    def has_edge(self, u, v) -> bool:
        return self.parent.get(u) == v or self.parent.get(v) == u

    def as_graph(self) -> Graph:
        g = self.graph
        adj = [[] for _ in g.names]
        for child, par in self.parent.items():
            i, j = g.index[child], g.index[par]
            adj[i].append(j)
            adj[j].append(i)
        return Graph(g.names, adj)


@dataclass(frozen=True)
class LiftedPath:
    tree_path: tuple
    source_geodesic: tuple
    splice_points: tuple
    splice_circuits: tuple
    bound: int

    @property
    def length(self) -> int:
        return len(self.tree_path) - 1


@dataclass(frozen=True)
class DistortionReport:
    root: str
    n: int
    max_ratio: Fraction
    bound_satisfied: bool
    worst_pair: tuple | None

    @property
    def lam(self) -> int:
        return max(1, 2 * self.n)

    def to_json(self):
        return {
            "root": self.root,
            "n": self.n,
            "lambda": self.lam,
            "max_ratio": f"{self.max_ratio.numerator}/{self.max_ratio.denominator}",
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
            "bound_satisfied": self.bound_satisfied,
        }


def _require_geodetic(g: Graph):
    report = is_geodetic(g)
    if not report.geodetic:
        raise NotGeodeticError(report)


def geodesic_spanning_tree(g: Graph, o) -> GeodesicSpanningTree:
    _require_geodetic(g)
    r = g.idx(o)
    prow = g.apsp.parent[r]
    drow = g.apsp.dist[r]
    names = g.names
    parent = {names[v]: names[int(prow[v])] for v in range(len(g)) if v != r}
    depth = {names[v]: int(drow[v]) for v in range(len(g))}
    return GeodesicSpanningTree(g, names[r], parent, depth)


def iec_half_length(inventory: IecInventory) -> int:
    """``n`` such that every IEC has length at most ``2n + 1``; 0 without IECs."""
    if inventory.max_length is None:
        return 0
    return (inventory.max_length - 1) // 2


def lift_path(g: Graph, t: GeodesicSpanningTree, gamma, inventory: IecInventory | None = None) -> LiftedPath:
    """Reroute a geodesic through the spanning tree, one edge at a time.

    A tree edge is kept. A non-tree edge ``(x, y)`` is replaced by the detour
    through ``u``, the last vertex shared by the tree paths from the root to
    ``x`` and ``y``; the detour closes up with the edge into an IEC.
    """
    gamma = tuple(gamma)
    if not is_geodesic_path(g, gamma):
        raise NotGeodesicError(f"not a geodesic: {list(gamma)}")
    if inventory is None:
        inventory = enumerate_iecs_geodetic(g)
    lam = max(1, 2 * iec_half_length(inventory))
    out = [gamma[0]]
    splices, circuits = [], []
    for x, y in zip(gamma, gamma[1:]):
        if t.has_edge(x, y):
            out.append(y)
            continue
        up_x = t.path_to_root(x)
        up_y = t.path_to_root(y)
        # walk down from the root until the two tree paths diverge
        i = 1
        while i <= min(len(up_x), len(up_y)) and up_x[-i] == up_y[-i]:
            i += 1
        u = up_x[-i + 1]
        down_x = up_x[: len(up_x) - i + 2]  # x ... u
        down_y = up_y[: len(up_y) - i + 2]  # y ... u
        out.extend(down_x[1:])
        out.extend(down_y[::-1][1:])
        splices.append(u)
        circuits.append(tuple(down_x[::-1]) + tuple(down_y))
    lifted = LiftedPath(tuple(out), gamma, tuple(splices), tuple(circuits), lam)
    if lifted.length > lam * (len(gamma) - 1):
        raise InternalInconsistencyError(
            f"lifted length {lifted.length} exceeds {lam} * {len(gamma) - 1}"
        )
    return lifted


def splices_are_iecs(g: Graph, lifted: LiftedPath) -> bool:
    return all(is_iec(g, c) for c in lifted.splice_circuits)


def tree_distances(t: GeodesicSpanningTree) -> np.ndarray:
    tg = t.as_graph()
    dist, _, _ = _backend.all_pairs(*tg.csr)
    return dist


def distortion_report(g: Graph, o, inventory: IecInventory | None = None) -> DistortionReport:
    """Exact worst ratio ``d_T(v, w) / d(v, w)`` for the tree rooted at ``o``."""
    t = geodesic_spanning_tree(g, o)
    if inventory is None:
        inventory = enumerate_iecs_geodetic(g)
    n = iec_half_length(inventory)
    lam = max(1, 2 * n)
    dg = g.apsp.dist
    dt = tree_distances(t)
    if np.any(dt < dg):
        raise InternalInconsistencyError("tree distance below graph distance")
    size = len(g)
    if size < 2:
        return DistortionReport(t.root, n, Fraction(1), True, None)
    iu = np.triu_indices(size, k=1)
    num, den = dt[iu], dg[iu]
    ratios = num / den
    k = int(np.argmax(ratios))
    best = Fraction(int(num[k]), int(den[k]))
    pair = (g.names[int(iu[0][k])], g.names[int(iu[1][k])])
    return DistortionReport(t.root, n, best, best <= lam, pair)
