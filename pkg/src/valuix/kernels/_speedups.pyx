# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the lattice-scan and mod-p rank kernels."""

import numpy as np

cimport numpy as cnp


def scan_min_generators(normals, rhs, shift, strict, box):
    cdef cnp.int64_t[:, ::1] A = np.ascontiguousarray(normals, dtype=np.int64)
    cdef cnp.int64_t[::1] b = np.ascontiguousarray(rhs, dtype=np.int64)
    cdef cnp.int64_t[::1] sh = np.ascontiguousarray(shift, dtype=np.int64)
    cdef cnp.int64_t[::1] bx = np.ascontiguousarray(box, dtype=np.int64)
    cdef int nfac = A.shape[0]
    cdef int n = A.shape[1]
    cdef bint is_strict = bool(strict)
    cdef cnp.int64_t[::1] m = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] dec = np.zeros(n, dtype=np.int64)
    cdef list gens = []
    cdef int i, j, k
    cdef bint done = False, ok, minimal
    cdef cnp.int64_t v

    # overflow guard: max |<A_j, m+shift>| must fit comfortably in int64
    cdef object bound = 0
    for j in range(nfac):
        s = 0
        for i in range(n):
            s += abs(int(A[j, i])) * (int(bx[i]) + int(sh[i]) + 1)
        if s > bound:
            bound = s
    if bound > (1 << 62):
        raise OverflowError("lattice scan exceeds int64 range")

    while not done:
        ok = True
        for j in range(nfac):
            v = 0
            for i in range(n):
                v += A[j, i] * (m[i] + sh[i])
            if is_strict:
                if v <= b[j]:
                    ok = False
                    break
            else:
                if v < b[j]:
                    ok = False
                    break
        if ok:
            minimal = True
            for i in range(n):
                if m[i] > 0:
                    for j in range(n):
                        dec[j] = m[j]
                    dec[i] -= 1
                    ok = True
                    for j in range(nfac):
                        v = 0
                        for k in range(n):
                            v += A[j, k] * (dec[k] + sh[k])
                        if is_strict:
                            if v <= b[j]:
                                ok = False
                                break
                        else:
                            if v < b[j]:
                                ok = False
                                break
                    if ok:
                        minimal = False
                        break
            if minimal:
                gens.append(tuple(int(m[i]) for i in range(n)))
        # odometer increment
        i = n - 1
        while True:
            if i < 0:
                done = True
                break
            if m[i] < bx[i]:
                m[i] += 1
                break
            m[i] = 0
            i -= 1
    return sorted(gens)


def rank_modp(rows, p):
    cdef cnp.int64_t[:, ::1] a = np.ascontiguousarray(
        np.asarray(rows, dtype=np.int64) % p
    )
    cdef cnp.int64_t pp = p
    cdef int nrows = a.shape[0]
    cdef int ncols = a.shape[1]
    if nrows == 0 or ncols == 0:
        return 0
    cdef int rank = 0, col, r, piv, j
    cdef cnp.int64_t inv, f, tmp
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                tmp = a[rank, j]
                a[rank, j] = a[piv, j]
                a[piv, j] = tmp
        inv = pow(int(a[rank, col]), pp - 2, pp)
        for j in range(col, ncols):
            a[rank, j] = (a[rank, j] * inv) % pp
        for r in range(rank + 1, nrows):
            f = a[r, col]
            if f != 0:
                for j in range(col, ncols):
                    a[r, j] = (a[r, j] - f * a[rank, j]) % pp
                    if a[r, j] < 0:
                        a[r, j] += pp
        rank += 1
    return rank
