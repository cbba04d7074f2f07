"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""

from collections import deque

import numpy as np


def _bfs_lists(indptr, indices, root):
    n = len(indptr) - 1
    dist = [-1] * n
    count = [0] * n
    parent = [-1] * n
    dist[root] = 0
    count[root] = 1
    queue = deque([root])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] == -1:
                dist[v] = du
                count[v] = count[u]
                parent[v] = u
                queue.append(v)
            elif dist[v] == du:
                count[v] = min(2, count[v] + count[u])
                if u < parent[v]:
                    parent[v] = u
    return dist, count, parent


def bfs(indptr, indices, root):
    dist, count, parent = _bfs_lists(list(indptr), list(indices), int(root))
    return (
        np.array(dist, dtype=np.int32),
        np.array(count, dtype=np.int8),
        np.array(parent, dtype=np.int32),
    )


def all_pairs(indptr, indices):
    indptr = list(indptr)
    indices = list(indices)
    n = len(indptr) - 1
    rows = [_bfs_lists(indptr, indices, r) for r in range(n)]
    shape = (n, n)
    dist = np.array([row[0] for row in rows], dtype=np.int32).reshape(shape)
    count = np.array([row[1] for row in rows], dtype=np.int8).reshape(shape)
    parent = np.array([row[2] for row in rows], dtype=np.int32).reshape(shape)
    return dist, count, parent
