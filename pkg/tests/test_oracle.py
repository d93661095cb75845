import pytest

from valuix.divisors import MonomialIdeal, maximal_ideal
from valuix.intersection import mixed_multiplicity, multiplicity
from valuix.oracle import generic_colength


def ideal2(*gens):
    return MonomialIdeal.make(2, gens)


class TestKnownColengths:
    def test_maximal_ideal(self):
        m = maximal_ideal(2)
        assert generic_colength([m, m]) == 1
        m3 = maximal_ideal(3)
        assert generic_colength([m3, m3, m3]) == 1

    def test_pure_powers(self):
        a = ideal2((2, 0), (0, 2))
        assert generic_colength([a, a]) == 4
        b = ideal2((2, 0), (0, 3))
        assert generic_colength([b, b]) == 6

    def test_mixed_pair(self):
        a = ideal2((2, 0), (0, 3))
        m = maximal_ideal(2)
        assert generic_colength([a, m]) == 2

    def test_staircase(self):
        a = ideal2((3, 0), (1, 1), (0, 2))
        assert generic_colength([a, a]) == 5

    def test_rejects_wrong_count(self):
        with pytest.raises(ValueError):
            generic_colength([maximal_ideal(2)])


class TestAgreesWithPolyhedral:
    def test_2d_samples(self):
        samples = [
            (ideal2((1, 0), (0, 1)), ideal2((2, 0), (0, 3))),
            (ideal2((2, 0), (1, 1), (0, 3)), ideal2((2, 0), (0, 2))),
            (ideal2((4, 0), (0, 1)), ideal2((1, 0), (0, 4))),
            (ideal2((3, 0), (2, 1), (0, 4)), ideal2((2, 0), (1, 2), (0, 3))),
        ]
        for a, b in samples:
            expected = mixed_multiplicity(a.region(), b.region())
            assert generic_colength([a, b]) == expected

    def test_3d_sample(self):
        m = maximal_ideal(3)
        a = MonomialIdeal.make(3, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
        assert generic_colength([m, m, a]) == 2
        assert generic_colength([a, a, a]) == multiplicity(a.region())

    def test_seed_independence(self):
        a = ideal2((2, 0), (0, 3))
        assert generic_colength([a, a], seed=1) == generic_colength([a, a], seed=42)
