# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the k-NN distance scan and linear-model SGD.

Twin of depforge._speedups.pykernels: same API, same arithmetic in the
same order, so results are interchangeable with the fallback.
"""

from libc.math cimport exp

import numpy as np

COMPILED = True


def knn_distances(stored, weights, query):
    """Weighted-overlap distance from ``query`` to every stored row."""
    cdef const int[:, ::1] x = stored
    cdef const double[::1] w = weights
    cdef const int[::1] q = query
    out = np.empty(x.shape[0], dtype=np.float64)
    cdef double[::1] d = out
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t f = x.shape[1]
    cdef Py_ssize_t i, j
    cdef double acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(f):
                if x[i, j] != q[j]:
                    acc += w[j]
            d[i] = acc
    return out


cdef class SgdState:
    """One-versus-rest SGD over sparse binary instances, scaled-vector trick."""

    cdef double[:, ::1] _raw
    cdef double[::1] _scales
    cdef double _t
    cdef Py_ssize_t n_classes, dim

    def __init__(self, int n_classes, int dim):
        self.n_classes = n_classes
        self.dim = dim
        self._raw = np.zeros((n_classes, dim), dtype=np.float64)
        self._scales = np.ones(n_classes, dtype=np.float64)
        self._t = 0.0

    def run_epoch(self, indptr, indices, labels, order,
                  double eta0, double lam, double horizon, bint hinge):
        cdef const long[::1] iptr = np.ascontiguousarray(indptr, dtype=np.int64)
        cdef const long[::1] idx = np.ascontiguousarray(indices, dtype=np.int64)
        cdef const int[::1] lab = np.ascontiguousarray(labels, dtype=np.int32)
        cdef const long[::1] ordr = np.ascontiguousarray(order, dtype=np.int64)
        cdef double[:, ::1] raw = self._raw
        cdef double[::1] scales = self._scales
        cdef double t = self._t
        cdef Py_ssize_t n_classes = self.n_classes
        cdef Py_ssize_t dim = self.dim
        cdef Py_ssize_t k, i, c, p, j
        cdef long start, end
        cdef int label
        cdef double eta, dot, margin, y, g, z, scale
        with nogil:
            for k in range(ordr.shape[0]):
                i = ordr[k]
                eta = eta0 / (1.0 + t / horizon)
                start = iptr[i]
                end = iptr[i + 1]
                label = lab[i]
                for c in range(n_classes):
                    dot = 0.0
                    for p in range(start, end):
                        dot += raw[c, idx[p]]
                    margin = scales[c] * dot
                    y = 1.0 if label == c else -1.0
                    scales[c] *= 1.0 - eta * lam
                    if scales[c] < 1e-12:
                        scale = scales[c]
                        for j in range(dim):
                            raw[c, j] *= scale
                        scales[c] = 1.0
                    if hinge:
                        if y * margin < 1.0:
                            g = eta * y / scales[c]
                            for p in range(start, end):
                                raw[c, idx[p]] += g
                    else:
                        z = y * margin
                        if z > 500.0:
                            z = 500.0
                        elif z < -500.0:
                            z = -500.0
                        g = eta * y / (1.0 + exp(z)) / scales[c]
                        for p in range(start, end):
                            raw[c, idx[p]] += g
                t += 1.0
        self._t = t

    def weights(self):
        """Materialized (n_classes, dim) weight matrix."""
        out = np.asarray(self._raw).copy()
        out *= np.asarray(self._scales)[:, None]
        return out
