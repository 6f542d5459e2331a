# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled PBW straightening kernel; same interface as ``_pbw_py``."""
from ._scalar import ONE

cdef Py_ssize_t _MEMO_CAP = 400000


cdef inline void _acc(dict out, tuple m, object c):
    cdef object v = out.get(m)
    if v is None:
        out[m] = c
    else:
        out[m] = v + c


cdef dict _prune(dict d):
    return {m: c for m, c in d.items() if c}


cdef class PBWKernel:
    cdef public int dim
    cdef dict _br
    cdef dict _gen
    cdef dict _mono

    def __init__(self, dim, brackets):
        self.dim = dim
        self._br = {key: tuple(v) for key, v in brackets.items() if key[0] > key[1]}
        self._gen = {}
        self._mono = {}

    def clear(self):
        self._gen.clear()
        self._mono.clear()

    def memo_size(self):
        return len(self._gen) + len(self._mono)

    cpdef dict mono_gen(self, tuple mono, int g):
        cdef Py_ssize_t n = len(mono)
        cdef int a
        cdef tuple prefix, m, m2, key
        cdef dict out, left, hit
        cdef object c, c2, ck
        if n == 0 or <int>mono[n - 1] <= g:
            return {mono + (g,): ONE}
        key = (mono, g)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        a = mono[n - 1]
        prefix = mono[:n - 1]
        out = {}
        left = self.mono_gen(prefix, g)
        for m, c in left.items():
            for m2, c2 in self.mono_gen(m, a).items():
                _acc(out, m2, c * c2)
        for k, ck in self._br.get((a, g), ()):
            for m, c in self.mono_gen(prefix, k).items():
                _acc(out, m, ck * c)
        out = _prune(out)
        self._gen[key] = out
        return out

    cpdef dict mono_mono(self, tuple ma, tuple mb):
        cdef tuple key, m, m2
        cdef dict cur, nxt, hit
        cdef object c, c2
        cdef int g
        if not mb:
            return {ma: ONE}
        if not ma or <int>ma[len(ma) - 1] <= <int>mb[0]:
            return {ma + mb: ONE}
        key = (ma, mb)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        cur = {ma: ONE}
        for g in mb:
            nxt = {}
            for m, c in cur.items():
                for m2, c2 in self.mono_gen(m, g).items():
                    _acc(nxt, m2, c * c2)
            cur = _prune(nxt)
        if len(self._mono) > _MEMO_CAP:
            self._mono.clear()
        self._mono[key] = cur
        return cur

    cpdef dict mul(self, dict A, dict B):
        cdef dict out = {}
        cdef tuple ma, mb, m
        cdef object ca, cb, cab, c
        for mb, cb in B.items():
            for ma, ca in A.items():
                cab = ca * cb
                for m, c in self.mono_mono(ma, mb).items():
                    _acc(out, m, cab * c)
        return _prune(out)
