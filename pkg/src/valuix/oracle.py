"""Independent multiplicity oracle via generic forms over a large prime field.

For monomial ideals a_1, ..., a_n the mixed multiplicity equals the
colength of an ideal generated by one generic element of each a_i.  This
module computes that colength directly as truncated linear algebra over
F_p with pseudo-random coefficients, without touching the polyhedral
machinery, so it can referee the covolume-based computations.
"""

from __future__ import annotations

import itertools
import random

from valuix import kernels

PRIME = 2147483647  # largest signed-32-bit prime; products stay inside int64


def _monomials_below(n, degree):
    """All exponent vectors in n variables of total degree < degree."""
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)

    rec([], n, degree - 1)
    return sorted(out)


def _generic_form(ideal, rng):
    """Random F_p-combination of the generators, all coefficients nonzero."""
    return [
        (g, rng.randrange(1, PRIME)) for g in ideal.generators
    ]


def _colength_at(forms, n, degree):
    """dim R / (I + m^degree) as exact linear algebra over F_p.

    Columns are the monomials of total degree < degree; rows are the
    truncations of x^gamma * f_i modulo m^degree, which span the image of
    I in the quotient by m^degree.  The colength is #columns - rank.
    """
    columns = _monomials_below(n, degree)
    index = {m: i for i, m in enumerate(columns)}
    rows = []
    for form in forms:
        low = min(sum(g) for g, _ in form)
        for gamma in _monomials_below(n, degree - low):
            row = [0] * len(columns)
            hit = False
            for g, c in form:
                e = tuple(a + b for a, b in zip(g, gamma))
                if sum(e) < degree:
                    row[index[e]] = c
                    hit = True
            if hit:
                rows.append(row)
    if not rows:
        return len(columns)
    return len(columns) - kernels.rank_modp(rows, PRIME)


def generic_colength(ideals, seed: int = 1) -> int:
    """Colength of an ideal spanned by one generic element of each input.

    Evaluates the truncated colength at the sufficient degree bound
    (sum of the generator degrees plus n) and one step beyond, requires
    the two to agree, and repeats with a second seed as confirmation.
    """
    ideals = list(ideals)
    n = ideals[0].dim
    if len(ideals) != n:
        raise ValueError(f"need exactly {n} ideals in {n} variables")
    bound = sum(max(sum(g) for g in a.generators) for a in ideals) + n

    def run(seed_value):
        rng = random.Random(seed_value)
        forms = [_generic_form(a, rng) for a in ideals]
        first = _colength_at(forms, n, bound)
        second = _colength_at(forms, n, bound + 1)
        if first != second:
            raise ArithmeticError("truncated colength did not stabilize")
        return first

    value = run(seed)
    confirm = run(seed + 101)
    if value != confirm:
        raise ArithmeticError("colength disagrees across generic choices")
    return value
