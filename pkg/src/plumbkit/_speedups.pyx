# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``plumbkit._pure``.

Same signatures and results.  Arithmetic is in ``long long``; callers are
expected to route oversized inputs to the pure module (see ``kernels``).
"""

from libc.stdlib cimport malloc, calloc, free

from plumbkit._pure import LauferDiverged

cdef long long _LIMIT = 1LL << 60


cdef long long* _to_c(seq, Py_ssize_t n) except NULL:
    cdef long long* out = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = seq[i]
    return out


def laufer(euler, offsets, nbrs, mults, order=None, long long max_steps=10_000_000):
    cdef Py_ssize_t n = len(euler)
    cdef Py_ssize_t m = len(nbrs)
    cdef long long* e = _to_c(euler, n)
    cdef long long* off = _to_c(offsets, n + 1)
    cdef long long* nb = _to_c(nbrs, m)
    cdef long long* mu = _to_c(mults, m)
    cdef long long* ordr = _to_c(order if order is not None else range(n), n)
    cdef long long* z = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    cdef long long* pairing = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    cdef Py_ssize_t i, k, t
    cdef long long s, steps = 0
    cdef bint overflow = False, diverged = False
    try:
        for i in range(n):
            z[i] = 1
            s = e[i]
            for k in range(off[i], off[i + 1]):
                s += mu[k]
            pairing[i] = s
        while True:
            i = -1
            for t in range(n):
                if pairing[ordr[t]] > 0:
                    i = ordr[t]
                    break
            if i < 0:
                break
            steps += 1
            if steps > max_steps:
                diverged = True
                break
            z[i] += 1
            if z[i] > _LIMIT:
                overflow = True
                break
            pairing[i] += e[i]
            for k in range(off[i], off[i + 1]):
                pairing[nb[k]] += mu[k]
        if diverged:
            raise LauferDiverged(f"no fixed point after {max_steps} increments")
        if overflow:
            raise OverflowError("coefficient exceeds machine range")
        return [z[i] for i in range(n)]
    finally:
        free(e); free(off); free(nb); free(mu); free(ordr); free(z); free(pairing)


cdef struct Search:
    Py_ssize_t n
    long long bound
    long long* e
    long long* off
    long long* nb
    long long* mu
    long long* z
    long long* resid
    long long* best
    long long count


cdef void _last(Search* st, bint nonzero) noexcept nogil:
    cdef Py_ssize_t k = st.n - 1
    cdef long long lo = 0, hi = st.bound, e = st.e[k], r = st.resid[k]
    cdef long long rj, mm, q
    cdef Py_ssize_t s, j, i
    if e < 0:
        if r > 0:
            q = (r - e - 1) / (-e)
            if q > lo:
                lo = q
    elif e > 0:
        if r > 0:
            return
        q = (-r) / e
        if q < hi:
            hi = q
    elif r > 0:
        return
    for s in range(st.off[k], st.off[k + 1]):
        j = st.nb[s]
        mm = st.mu[s]
        if mm == 0:
            continue
        rj = st.resid[j]
        if rj > 0:
            return
        q = (-rj) / mm
        if q < hi:
            hi = q
    if not nonzero and lo < 1:
        lo = 1
    if lo > hi:
        return
    st.count += hi - lo + 1
    for i in range(k):
        if st.z[i] < st.best[i]:
            st.best[i] = st.z[i]
    if lo < st.best[k]:
        st.best[k] = lo


cdef void _descend(Search* st, Py_ssize_t k, bint nonzero) noexcept nogil:
    if k == st.n - 1:
        _last(st, nonzero)
        return
    cdef long long e = st.e[k], v, vv
    cdef Py_ssize_t lo_s = st.off[k], hi_s = st.off[k + 1], s, j
    cdef bint blocked
    for v in range(st.bound + 1):
        if v:
            st.resid[k] += e
            for s in range(lo_s, hi_s):
                st.resid[st.nb[s]] += st.mu[s]
        st.z[k] = v
        if st.resid[k] > 0 and e >= 0:
            break
        blocked = False
        for s in range(lo_s, hi_s):
            j = st.nb[s]
            if j < k and st.resid[j] > 0:
                blocked = True
                break
        if blocked:
            break
        if st.resid[k] <= 0:
            _descend(st, k + 1, nonzero or v > 0)
    vv = st.z[k]
    st.resid[k] -= e * vv
    for s in range(lo_s, hi_s):
        st.resid[st.nb[s]] -= st.mu[s] * vv
    st.z[k] = 0


def min_cycle_search(euler, offsets, nbrs, mults, long long bound):
    cdef Search st
    cdef Py_ssize_t n = len(euler)
    cdef Py_ssize_t m = len(nbrs)
    cdef Py_ssize_t i
    st.n = n
    st.bound = bound
    st.count = 0
    st.e = _to_c(euler, n)
    st.off = _to_c(offsets, n + 1)
    st.nb = _to_c(nbrs, m)
    st.mu = _to_c(mults, m)
    st.z = <long long*> calloc(n if n > 0 else 1, sizeof(long long))
    st.resid = <long long*> calloc(n if n > 0 else 1, sizeof(long long))
    st.best = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    try:
        for i in range(n):
            st.best[i] = bound + 1
        if n:
            with nogil:
                _descend(&st, 0, False)
        found = st.count > 0
        best = [st.best[i] for i in range(n)] if found else []
        return found, best, st.count
    finally:
        free(st.e); free(st.off); free(st.nb); free(st.mu)
        free(st.z); free(st.resid); free(st.best)
