# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset scan for the max-error objective."""
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def scan_error_objective(int n, weights, tails, heads):
    """Smallest minimizer of ``2n*f(X) + |X|`` over all ``X ⊆ range(n)``.

    ``f(X) = m - w(X) - |X| - #{edges with no endpoint in X}``.
    Returns ``(mask, value)``; ties go to the numerically smallest mask.
    """
    cdef int m = len(tails)
    cdef int k, i
    cdef unsigned long long mask, total, best_mask = 0, em
    cdef long long w, f, best = 0, scale = 2 * n
    cdef bint first = True
    cdef unsigned long long *edge_masks = <unsigned long long *> malloc((m + 1) * sizeof(unsigned long long))
    cdef long long *wt = <long long *> malloc((n + 1) * sizeof(long long))
    if edge_masks == NULL or wt == NULL:
        raise MemoryError()
    try:
        for k in range(m):
            edge_masks[k] = (1ULL << <int> tails[k]) | (1ULL << <int> heads[k])
        for i in range(n):
            wt[i] = weights[i]
        total = 1ULL << n
        mask = 0
        while mask < total:
            w = 0
            f = m
            for i in range(n):
                if (mask >> i) & 1:
                    w += wt[i] + 1
            f -= w
            for k in range(m):
                if (mask & edge_masks[k]) == 0:
                    f -= 1
            f = scale * f + __builtin_popcountll(mask)
            if first or f < best:
                best = f
                best_mask = mask
                first = False
            mask += 1
    finally:
        free(edge_masks)
        free(wt)
    return int(best_mask), int(best)

