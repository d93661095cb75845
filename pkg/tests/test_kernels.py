import random

from hypothesis import given, settings, strategies as st

from valuix import kernels
from valuix.kernels import _fallback


def active_and_fallback():
    return kernels.scan_min_generators, _fallback.scan_min_generators


class TestScan:
    def test_simple_halfplane(self):
        # m1 + m2 >= 2
        gens = kernels.scan_min_generators([[1, 1]], [2], [0, 0], False, [3, 3])
        assert sorted(gens) == [(0, 2), (1, 1), (2, 0)]

    def test_strict_with_shift(self):
        # m + (1,1) strictly inside 3*m1 + 2*m2 >= 6
        gens = kernels.scan_min_generators([[3, 2]], [6], [1, 1], True, [4, 4])
        assert sorted(gens) == [(0, 1), (1, 0)]

    def test_unit(self):
        gens = kernels.scan_min_generators([[1, 1]], [0], [1, 1], True, [2, 2])
        assert gens == [(0, 0)]

    def test_empty_axis(self):
        # second coordinate never constrained: box pins it to 0
        gens = kernels.scan_min_generators([[1, 0]], [2], [0, 0], False, [3, 0])
        assert gens == [(2, 0)]


class TestRank:
    def test_identity(self):
        assert kernels.rank_modp([[1, 0], [0, 1]], 7) == 2

    def test_dependent_rows(self):
        assert kernels.rank_modp([[1, 2, 3], [2, 4, 6], [0, 1, 1]], 2147483647) == 2

    def test_rank_respects_characteristic(self):
        # rows differ by a multiple of p
        p = 101
        assert kernels.rank_modp([[1, 1], [1 + p, 1 + 2 * p]], p) == 1


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "fallback")


constraints = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda r: sum(r) > 0),
    min_size=1,
    max_size=3,
)


@settings(max_examples=80, deadline=None)
@given(constraints, st.integers(0, 10), st.integers(0, 1), st.booleans())
def test_backends_agree_on_scans(rows, rhs, shift, strict):
    normals = [list(r) for r in rows]
    rhs_list = [rhs] * len(normals)
    box = [rhs + 2, rhs + 2]
    active, pure = active_and_fallback()
    a = active(normals, rhs_list, [shift, shift], strict, box)
    b = pure(normals, rhs_list, [shift, shift], strict, box)
    assert sorted(a) == sorted(b)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-50, 50), min_size=4, max_size=4),
        min_size=1,
        max_size=6,
    )
)
def test_backends_agree_on_ranks(rows):
    p = 2147483647
    assert kernels.rank_modp(rows, p) == _fallback.rank_modp(rows, p)
    assert kernels.rank_modp(rows, p) <= min(len(rows), 4)


def test_random_cross_validation():
    rng = random.Random(7)
    active, pure = active_and_fallback()
    for _ in range(100):
        k = rng.randint(1, 3)
        normals = [[rng.randint(0, 5) for _ in range(2)] for _ in range(k)]
        normals = [r for r in normals if sum(r) > 0] or [[1, 1]]
        rhs = [rng.randint(1, 12) for _ in normals]
        box = [14, 14]
        strict = rng.random() < 0.5
        shift = rng.randint(0, 1)
        assert sorted(active(normals, rhs, [shift, shift], strict, box)) == sorted(
            pure(normals, rhs, [shift, shift], strict, box)
        )
