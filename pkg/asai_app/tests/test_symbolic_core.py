import random
from fractions import Fraction

from django.test import SimpleTestCase

from asai_app.exceptions import BindingError, DivergentSeriesError, DivisionByZeroFunction, NumericPoleError
from asai_app.services.cyclotomic import CyclotomicNumber
from asai_app.services.symbolic_core import (
    GeometricSequence,
    LaurentPoly,
    LaurentRational,
    arith,
    equal,
    evaluate_numeric,
    geometric_sum,
    mono,
    substitute,
    var,
)

T, U, A, B = var('T'), var('u'), var('a1'), var('b1')


class LaurentArithmeticTests(SimpleTestCase):
    def test_negative_powers_cancel(self):
        self.assertEqual(T ** -2 * T ** 2, 1)
        self.assertTrue((A ** 3 / A ** 5).is_monomial)
        self.assertEqual(A ** 3 / A ** 5, mono(a1=-2))

    def test_rational_identity_by_cross_multiplication(self):
        lhs = 1 / (1 - T) + 1 / (1 + T)
        rhs = 2 / (1 - T ** 2)
        self.assertTrue(equal(lhs, rhs))
        self.assertFalse(equal(lhs, 2 / (1 - T)))

    def test_arith_matches_operators(self):
        f, g = 1 / (1 - A * T), U ** 2 / T
        self.assertEqual(arith(f, g, '+'), f + g)
        self.assertEqual(arith(f, g, '-'), f - g)
        self.assertEqual(arith(f, g, '*'), f * g)
        self.assertEqual(arith(f, g, '/'), f / g)
        with self.assertRaises(ValueError):
            arith(f, g, '^')

    def test_division_by_zero_function(self):
        with self.assertRaises(DivisionByZeroFunction):
            arith(T, A - A, '/')
        with self.assertRaises(DivisionByZeroFunction):
            LaurentRational(0).inverse()

    def test_inexact_coefficients_rejected(self):
        with self.assertRaises(TypeError):
            LaurentPoly.constant(0.5)

    def test_random_sums_of_fractions(self):
        rng = random.Random(7)
        for _ in range(20):
            c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            d = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            f = 1 / (1 - c * A * T)
            g = 1 / (1 - d * B * T)
            total = f + g
            self.assertEqual(total * (1 - c * A * T) * (1 - d * B * T), 2 - (c * A + d * B) * T)


class SubstitutionTests(SimpleTestCase):
    def test_satake_binding(self):
        f = 1 / (1 - A * T)
        self.assertEqual(substitute(f, {'a1': Fraction(2)}), 1 / (1 - 2 * T))

    def test_one_minus_s(self):
        self.assertEqual(substitute(T, {'T': U ** 2 / T}), U ** 2 * T ** -1)

    def test_zero_for_negative_variable(self):
        with self.assertRaises(BindingError):
            substitute(1 / A, {'a1': 0})

    def test_vanishing_denominator(self):
        with self.assertRaises(DivisionByZeroFunction):
            substitute(1 / (1 - T), {'T': 1})

    def test_polynomial_binding(self):
        f = 1 / (1 - A * T)
        self.assertEqual(substitute(f, {'a1': 1 + B}), 1 / (1 - T - B * T))

    def test_unknown_variable(self):
        with self.assertRaises(BindingError):
            substitute(T, {'x': 1})


class NumericEvaluationTests(SimpleTestCase):
    def test_value(self):
        f = 1 / (1 - A * T)
        self.assertAlmostEqual(evaluate_numeric(f, {'a1': 0.5, 'T': 1.0}), 2.0)

    def test_pole(self):
        with self.assertRaises(NumericPoleError):
            evaluate_numeric(1 / (1 - T), {'T': 1.0})

    def test_missing_variable(self):
        with self.assertRaises(BindingError):
            evaluate_numeric(A * T, {'T': 1.0})

    def test_cyclotomic_coefficient(self):
        zeta = CyclotomicNumber.zeta(5, 1)
        f = LaurentRational(LaurentPoly.constant(zeta)) * T
        value = evaluate_numeric(f, {'T': 2.0})
        self.assertAlmostEqual(abs(value), 2.0)


class GeometricSeriesTests(SimpleTestCase):
    def test_closed_form(self):
        self.assertEqual(geometric_sum(A, T), A / (1 - T))

    def test_divergent_ratio(self):
        with self.assertRaises(DivergentSeriesError):
            geometric_sum(1, 1)

    def test_equal_ratios_merge(self):
        seq = GeometricSequence([(1, T), (2, T), (1, A)])
        self.assertEqual(len(seq.components), 2)

    def test_partial_sums_approach_total(self):
        seq = GeometricSequence([(1, A * T), (U, B * T)])
        count = 6
        tail = seq.total() - seq.partial_sum(count)
        expected = (A * T) ** count / (1 - A * T) + U * (B * T) ** count / (1 - B * T)
        self.assertEqual(tail, expected)

    def test_product_of_sequences(self):
        seq = GeometricSequence.geometric(1, A) * GeometricSequence.geometric(1, B)
        self.assertEqual(seq.term(3), (A * B) ** 3)


class JsonTests(SimpleTestCase):
    def test_rational_document(self):
        f = (1 + CyclotomicNumber.zeta(5, 1) * A) / (1 - A * B * T ** 3)
        restored = LaurentRational.from_json(f.to_json())
        self.assertEqual(restored, f)


class CyclotomicTests(SimpleTestCase):
    def test_sum_of_roots_vanishes(self):
        zeta = CyclotomicNumber.zeta(7, 1)
        self.assertEqual(sum((zeta ** k for k in range(7)), CyclotomicNumber.rational(0)), 0)

    def test_order(self):
        self.assertEqual(CyclotomicNumber.zeta(5, 2) ** 25, 1)

    def test_level_descends(self):
        self.assertEqual(CyclotomicNumber.zeta(5, 2, 5), CyclotomicNumber.zeta(5, 1))

    def test_inverse(self):
        x = 2 + CyclotomicNumber.zeta(5, 1) * 3
        self.assertEqual(x * x.inverse(), 1)

    def test_complex_embedding(self):
        value = CyclotomicNumber.zeta(5, 1).to_complex()
        self.assertAlmostEqual(abs(value), 1.0)
