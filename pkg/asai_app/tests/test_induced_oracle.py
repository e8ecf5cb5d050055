import random
from fractions import Fraction

from django.test import SimpleTestCase

from asai_app.services.induced_oracle import induced_rep_oracle
from asai_app.services.local_factors import (
    CUBIC_TAME,
    CUBIC_UNRAM,
    QUAD_LINE,
    SPLIT,
    AsaiRepData,
    EtaleCubicShape,
    SatakeData,
    asai_cube_L,
    asai_eigen_factors,
)
from asai_app.services.symbolic_core import equal, var

INVARIANT_DIMENSION = {SPLIT: 8, QUAD_LINE: 8, CUBIC_UNRAM: 8, CUBIC_TAME: 4}


def _random_value(rng: random.Random) -> Fraction:
    return rng.choice((1, -1)) * Fraction(rng.randint(1, 9), rng.randint(1, 9))


class InducedModelTests(SimpleTestCase):
    def test_symbolic_shapes(self):
        for kind, dimension in INVARIANT_DIMENSION.items():
            rep = AsaiRepData.symbolic(EtaleCubicShape(kind, 7))
            result = induced_rep_oracle(rep)
            self.assertEqual(result['invariant_dimension'], dimension, kind)
            self.assertEqual(result['L'], asai_cube_L(rep), kind)

    def assertSameMultiset(self, actual, expected):
        remaining = list(actual)
        self.assertEqual(len(remaining), len(expected))
        for value in expected:
            match = next((e for e in remaining if equal(e, value)), None)
            self.assertIsNotNone(match, value.text())
            remaining.remove(match)

    def test_tame_eigenvalues(self):
        a, b = var('a1'), var('b1')
        expected = [a ** 3, b ** 3, a ** 2 * b, a * b ** 2]
        # q = 1 и q = 2 по модулю 3
        for p in (7, 13, 5, 11):
            result = induced_rep_oracle(AsaiRepData.symbolic(EtaleCubicShape(CUBIC_TAME, p)))
            self.assertIsNotNone(result['eigenvalues'], p)
            self.assertSameMultiset(result['eigenvalues'], expected)

    def test_split_eigenvalues(self):
        rep = AsaiRepData.symbolic(EtaleCubicShape(SPLIT, 5))
        result = induced_rep_oracle(rep)
        self.assertIsNotNone(result['eigenvalues'])
        self.assertSameMultiset(result['eigenvalues'], [c for c, _ in asai_eigen_factors(rep)])

    def test_tame_relation_for_both_residue_classes(self):
        # q = 1 и q = 2 по модулю 3
        for p in (7, 5, 13, 11):
            rep = AsaiRepData.symbolic(EtaleCubicShape(CUBIC_TAME, p))
            self.assertEqual(induced_rep_oracle(rep)['L'], asai_cube_L(rep), p)

    def test_random_rational_data(self):
        rng = random.Random(31)
        for kind, dimension in INVARIANT_DIMENSION.items():
            shape = EtaleCubicShape(kind, rng.choice((5, 7, 11, 13)))
            for _ in range(20):
                satake = tuple(
                    SatakeData(_random_value(rng), _random_value(rng)) for _ in range(shape.rank)
                )
                rep = AsaiRepData(shape, satake)
                result = induced_rep_oracle(rep)
                self.assertEqual(result['invariant_dimension'], dimension)
                self.assertEqual(result['L'], asai_cube_L(rep), (kind, satake))
