import cmath
import math

from django.test import SimpleTestCase

from asai_app.exceptions import OracleRejected
from asai_app.services.numeric_oracle import (
    decay_report,
    numeric_oracle,
    oracle_grid,
    pole_level,
    pr_integral_shells,
    shell_integral,
)

ALPHA = cmath.exp(1j * math.pi / 7)
BETA = cmath.exp(-1j * math.pi / 3)


class ShellIntegralTests(SimpleTestCase):
    def test_shells(self):
        self.assertAlmostEqual(shell_integral(0, 5.0), 0.8)
        self.assertAlmostEqual(shell_integral(-1, 5.0), 0.16)
        self.assertEqual(shell_integral(1, 5.0), -1.0)
        self.assertEqual(shell_integral(2, 5.0), 0.0)

    def test_ball_integral(self):
        x = 0.3
        self.assertAlmostEqual(pr_integral_shells(0, 0, x, 5.0, 10).real, 1 - x)
        # q^{-1} X^{-1} + (1 - q^{-1}) - X
        self.assertAlmostEqual(pr_integral_shells(1, 0, x, 5.0, 10).real, 1 / (5 * x) + 0.8 - x)

    def test_below_conductor(self):
        self.assertAlmostEqual(abs(pr_integral_shells(1, -2, 0.3, 5.0, 10)), 0.0)


class OracleTests(SimpleTestCase):
    def test_unitary_point(self):
        report = numeric_oracle(5, ALPHA, BETA, 2, 60, 60)
        self.assertLessEqual(report['rel_error'], 1e-8)
        self.assertEqual(report['params']['N'], 60)

    def test_real_satake(self):
        report = numeric_oracle(7, 0.9, -0.8, 2, 60, 60)
        self.assertLessEqual(report['rel_error'], 1e-8)
        self.assertEqual(report['params']['alpha'], [0.9, 0.0])

    def test_complex_s(self):
        report = numeric_oracle(11, ALPHA, BETA, complex(1.5, 0.25), 60, 60)
        self.assertLessEqual(report['rel_error'], 1e-8)

    def test_divergent_region(self):
        self.assertEqual(pole_level(ALPHA, BETA, 5.0), 0.0)
        with self.assertRaises(OracleRejected):
            numeric_oracle(5, ALPHA, BETA, 0.3)

    def test_truncation_must_be_positive(self):
        with self.assertRaises(OracleRejected):
            numeric_oracle(5, ALPHA, BETA, 2, 0, 60)
        with self.assertRaises(OracleRejected):
            numeric_oracle(5, ALPHA, BETA, 2, 10, 0)

    def test_decay(self):
        report = decay_report(5, ALPHA, BETA, 2, 2, depth=60)
        self.assertAlmostEqual(report['ratio'], 5.0 ** -4)
        self.assertLess(report['error_2N'], report['error_N'])

    def test_small_grid(self):
        grid = oracle_grid(primes=(5,), phases=[(0.3, 1.1)], real_parts=(2.0,), n_terms=40, depth=40)
        self.assertEqual(len(grid['points']), 1)
        self.assertLessEqual(grid['worst_rel_error'], 1e-8)
