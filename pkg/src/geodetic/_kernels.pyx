# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled breadth-first search kernels.

Graphs arrive in CSR form (``indptr``, ``indices``, both int32). Every kernel
returns distances (-1 when unreachable), geodesic counts saturated at 2, and
the smallest-index BFS predecessor (-1 for the root and unreachable vertices).
"""

import numpy as np

cimport cython


cdef void _bfs_row(const int[::1] indptr, const int[::1] indices, int root,
                   int[::1] dist, signed char[::1] count, int[::1] parent,
                   int[::1] queue) noexcept nogil:
    cdef int n = dist.shape[0]
    cdef int i, u, v, head = 0, tail = 0, k, c
    for i in range(n):
        dist[i] = -1
        count[i] = 0
        parent[i] = -1
    dist[root] = 0
    count[root] = 1
    queue[tail] = root
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] == -1:
                dist[v] = dist[u] + 1
                count[v] = count[u]
                parent[v] = u
                queue[tail] = v
                tail += 1
            elif dist[v] == dist[u] + 1:
                c = count[v] + count[u]
                count[v] = 2 if c > 2 else c
                if u < parent[v]:
                    parent[v] = u


def bfs(const int[::1] indptr, const int[::1] indices, int root):
    cdef int n = indptr.shape[0] - 1
    dist = np.empty(n, dtype=np.int32)
    count = np.empty(n, dtype=np.int8)
    parent = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    cdef int[::1] d = dist
    cdef signed char[::1] c = count
    cdef int[::1] p = parent
    cdef int[::1] q = queue
    with nogil:
        _bfs_row(indptr, indices, root, d, c, p, q)
    return dist, count, parent


def all_pairs(const int[::1] indptr, const int[::1] indices):
    cdef int n = indptr.shape[0] - 1
    cdef int r
    dist = np.empty((n, n), dtype=np.int32)
    count = np.empty((n, n), dtype=np.int8)
    parent = np.empty((n, n), dtype=np.int32)
    queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int[:, ::1] d = dist
    cdef signed char[:, ::1] c = count
    cdef int[:, ::1] p = parent
    cdef int[::1] q = queue
    with nogil:
        for r in range(n):
            _bfs_row(indptr, indices, r, d[r], c[r], p[r], q)
    return dist, count, parent
