"""Pure-Python/NumPy implementations of the hot kernels."""

from __future__ import annotations

import itertools

import numpy as np


def scan_min_generators(normals, rhs, shift, strict, box):
    """Minimal generators of an upward-closed lattice set cut out by facets.

    A point ``m`` in the box ``prod(range(b+1) for b in box)`` is a member iff
    ``<normals[j], m + shift> > rhs[j]`` for every j (``>=`` when ``strict``
    is false).  Membership is upward closed because all normals are
    nonnegative.  Returns the sorted list of members none of whose coordinate
    decrements is a member.
    """
    n = len(box)
    normals = [tuple(int(x) for x in row) for row in normals]
    rhs = [int(b) for b in rhs]
    shift = tuple(int(s) for s in shift)

    def member(m):
        for row, b in zip(normals, rhs):
            v = sum(r * (x + s) for r, x, s in zip(row, m, shift))
            if (v <= b) if strict else (v < b):
                return False
        return True

    gens = []
    for m in itertools.product(*(range(b + 1) for b in box)):
        if not member(m):
            continue
        minimal = True
        for i in range(n):
            if m[i] > 0:
                dec = m[:i] + (m[i] - 1,) + m[i + 1 :]
                if member(dec):
                    minimal = False
                    break
        if minimal:
            gens.append(m)
    return sorted(gens)


def rank_modp(rows, p):
    """Rank of an integer matrix over F_p (p prime, p**2 within int64)."""
    a = np.asarray(rows, dtype=np.int64) % p
    if a.size == 0:
        return 0
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        for r in range(rank, nrows):
            if a[r, col]:
                piv = r
                break
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        rest = a[rank + 1 :]
        factors = rest[:, col]
        nz = np.nonzero(factors)[0]
        if nz.size:
            rest[nz] = (rest[nz] - factors[nz, None] * a[rank][None, :]) % p
        rank += 1
    return rank
