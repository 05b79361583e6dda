# cython: language_level=3
"""Compiled kernels for cycle-sequence reduction and tree peeling."""

from libc.stdlib cimport malloc, free


cdef Py_ssize_t _reduce_a_inplace(long *buf, Py_ssize_t n):
    cdef Py_ssize_t i, m = 0
    for i in range(n):
        if m == 0 or buf[m - 1] != buf[i]:
            buf[m] = buf[i]
            m += 1
    while m > 0 and buf[m - 1] == buf[0]:
        m -= 1
    return m


cdef long *_load(codes, Py_ssize_t *n_out) except NULL:
    cdef Py_ssize_t i, n = len(codes)
    cdef long *buf = <long *> malloc((n + 1) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = codes[i]
    n_out[0] = n
    return buf


def reduce_a(codes):
    cdef Py_ssize_t n
    cdef long *buf = _load(codes, &n)
    try:
        n = _reduce_a_inplace(buf, n)
        return [buf[i] for i in range(n)]
    finally:
        free(buf)


def reduce_ab(codes):
    cdef Py_ssize_t n, i, j, found
    cdef long *buf = _load(codes, &n)
    try:
        n = _reduce_a_inplace(buf, n)
        while n >= 2:
            found = -1
            for i in range(n - 1, -1, -1):
                if buf[i] == buf[(i + 2) % n]:
                    found = i
                    break
            if found < 0:
                break
            if found == n - 1:
                for j in range(n - 2):
                    buf[j] = buf[j + 1]
            else:
                for j in range(found, n - 2):
                    buf[j] = buf[j + 2]
            n = _reduce_a_inplace(buf, n - 2)
        return [buf[i] for i in range(n)]
    finally:
        free(buf)


def peel_greedy(int n, masks):
    cdef Py_ssize_t k, npts = len(masks)
    cdef int i, count
    cdef unsigned long long remaining, rest, m
    cdef unsigned long long *pts
    cdef bint peeled
    if n <= 0:
        return None
    if n > 63:
        raise ValueError("at most 63 components supported")
    pts = <unsigned long long *> malloc((npts + 1) * sizeof(unsigned long long))
    if pts == NULL:
        raise MemoryError()
    try:
        for k in range(npts):
            pts[k] = masks[k]
        remaining = (1ULL << n) - 1
        order = []
        while remaining & (remaining - 1):
            peeled = False
            for i in range(n):
                if not (remaining >> i) & 1:
                    continue
                rest = remaining & ~(1ULL << i)
                count = 0
                for k in range(npts):
                    m = pts[k]
                    if (m >> i) & 1 and (m & rest):
                        count += 1
                        if count > 1:
                            break
                if count == 1:
                    order.append(i)
                    remaining = rest
                    peeled = True
                    break
            if not peeled:
                return None
        i = 0
        while not (remaining >> i) & 1:
            i += 1
        order.append(i)
        return order
    finally:
        free(pts)
