# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the two hot loops. Same contracts as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def bellman_ford(Py_ssize_t n_nodes, src, dst, weight):
    cdef const cnp.int64_t[:] s = np.ascontiguousarray(src, dtype=np.int64)
    cdef const cnp.int64_t[:] d = np.ascontiguousarray(dst, dtype=np.int64)
    cdef const double[:] w = np.ascontiguousarray(weight, dtype=np.float64)
    dist_arr = np.zeros(n_nodes, dtype=np.float64)
    cdef double[:] dist = dist_arr
    cdef Py_ssize_t n_edges = s.shape[0]
    cdef Py_ssize_t it, e
    cdef double cand
    cdef bint changed = True
    for it in range(n_nodes + 1):
        changed = False
        for e in range(n_edges):
            cand = dist[s[e]] + w[e]
            if cand < dist[d[e]]:
                dist[d[e]] = cand
                changed = True
        if not changed:
            break
    return (not changed), dist_arr


def mck_dp(costs, values, Py_ssize_t capacity):
    cdef const cnp.int64_t[:, :] c = np.ascontiguousarray(costs, dtype=np.int64)
    cdef const double[:, :] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n_groups = c.shape[0], n_choices = c.shape[1]
    cur_arr = np.zeros(capacity + 1, dtype=np.float64)
    nxt_arr = np.empty(capacity + 1, dtype=np.float64)
    choice_arr = np.full((n_groups, capacity + 1), -1, dtype=np.int32)
    cdef double[:] cur = cur_arr
    cdef double[:] nxt = nxt_arr
    cdef int[:, :] choice = choice_arr
    cdef Py_ssize_t g, k, x
    cdef cnp.int64_t ck
    cdef double best, cand
    cdef int arg
    cdef double NEG = -np.inf
    for g in range(n_groups):
        for x in range(capacity + 1):
            best = NEG
            arg = -1
            for k in range(n_choices):
                ck = c[g, k]
                if ck < 0 or ck > x:
                    continue
                cand = cur[x - ck] + v[g, k]
                if cand > best:
                    best = cand
                    arg = <int>k
            nxt[x] = best
            choice[g, x] = arg
        cur[:] = nxt
    return cur_arr, choice_arr
