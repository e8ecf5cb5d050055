import math
import random
from fractions import Fraction

from django.test import SimpleTestCase

from asai_app.exceptions import WhittakerError
from asai_app.services.local_factors import SatakeData
from asai_app.services.padic_values import FieldTag, psi_eval
from asai_app.services.symbolic_core import LaurentPoly, equal, mono, substitute, var
from asai_app.services.weil_whittaker import (
    BoxTerm,
    SchwartzFunction2D,
    WhittakerFamily,
    a,
    analytic_family_constants,
    asymptotic_bound_check,
    coset_representatives,
    factorwise_spherical_bound,
    l_and_lambda_params,
    m,
    n,
    shell_sup,
    shintani,
    w,
    weil_act,
    weil_act_word,
    whittaker_eval,
)

P = 5


def random_schwartz(rng: random.Random, p: int = P) -> SchwartzFunction2D:
    terms = []
    for _ in range(rng.randint(1, 3)):
        depth = (rng.randint(-1, 1), rng.randint(-1, 1))
        center = tuple(Fraction(rng.randint(0, p * p - 1), p ** 2) for _ in range(2))
        twist = tuple(Fraction(rng.randint(0, p - 1), p) for _ in range(2))
        coef = LaurentPoly.constant(rng.randint(1, 4)) * mono(u=rng.randint(-2, 2)).numerator
        terms.append(BoxTerm(coef, twist, center, depth))
    return SchwartzFunction2D(p, tuple(terms))


def random_point(rng: random.Random, p: int = P):
    return tuple(Fraction(rng.randint(-30, 30), p ** rng.randint(0, 3)) for _ in range(2))


class SchwartzFunctionTests(SimpleTestCase):
    def test_indicator_values(self):
        phi = SchwartzFunction2D.unit_box(P)
        self.assertEqual(phi.evaluate(3, Fraction(2, 7)), 1)
        self.assertTrue(phi.evaluate(Fraction(1, 5), 0).is_zero)

    def test_refinement_invariance(self):
        rng = random.Random(11)
        for _ in range(100):
            phi = random_schwartz(rng)
            refined = phi.refine()
            for _ in range(3):
                x, y = random_point(rng)
                self.assertEqual(refined.evaluate(x, y), phi.evaluate(x, y))

    def test_fourier_inversion(self):
        # ω(w)^2 φ(x, y) = φ(-x, -y)
        rng = random.Random(13)
        for _ in range(100):
            phi = random_schwartz(rng)
            twice = weil_act_word([w(), w()], phi)
            for _ in range(3):
                x, y = random_point(rng)
                self.assertEqual(twice.evaluate(x, y), phi.evaluate(-x, -y))

    def test_unit_box_is_self_dual(self):
        phi = SchwartzFunction2D.unit_box(P)
        hat = weil_act(w(), phi)
        for point in ((0, 0), (Fraction(1, 5), 0), (2, Fraction(3, 25))):
            self.assertEqual(hat.evaluate(*point), phi.evaluate(*point))

    def test_scaling(self):
        phi = weil_act(m(P), SchwartzFunction2D.unit_box(P))
        # |ϖ| φ(ϖx, ϖy)
        self.assertEqual(phi.evaluate(Fraction(1, 5), Fraction(1, 5)), mono(u=2).numerator)

    def test_character_multiplication(self):
        phi = weil_act(n(Fraction(1, 5)), SchwartzFunction2D.unit_box(P))
        self.assertEqual(phi.evaluate(2, 3), psi_eval(Fraction(6, 5), P))

    def test_support_exponent(self):
        phi = SchwartzFunction2D.indicator(P, depth=(-2, 1))
        self.assertEqual(phi.support_exponent(), 2)

    def test_json_fields(self):
        document = SchwartzFunction2D.unit_box(P).to_json()
        self.assertEqual(document['p'], P)
        self.assertEqual(set(document['terms'][0]), {'coef', 'twist', 'center', 'depth'})


class WhittakerEvaluationTests(SimpleTestCase):
    def setUp(self):
        self.satake = SatakeData.symbolic(1)
        self.family = WhittakerFamily.principal_series(self.satake, SchwartzFunction2D.unit_box(P))

    def test_shintani_with_unit_constant(self):
        for k in range(11):
            value = whittaker_eval(self.family, (0, 0), [a(Fraction(P) ** k)])
            self.assertTrue(equal(value, shintani(k, self.satake)), k)

    def test_vanishes_off_support(self):
        self.assertTrue(whittaker_eval(self.family, (0, 0), [a(Fraction(1, P))]).is_zero)

    def test_unipotent_equivariance(self):
        for x in (Fraction(1, 5), Fraction(2, 5), Fraction(3, 25)):
            moved = whittaker_eval(self.family, (0, 0), [n(x), a(Fraction(P))])
            base = whittaker_eval(self.family, (0, 0), [a(Fraction(P))])
            self.assertEqual(moved, base * psi_eval(x, P))

    def test_half_integral_shift(self):
        lam = (Fraction(1, 2), Fraction(-1, 2))
        value = whittaker_eval(self.family, lam, [a(Fraction(P) ** 3)])
        shifted = substitute(shintani(3, self.satake), {'a1': var('a1') * var('u'), 'b1': var('b1') / var('u')})
        self.assertTrue(equal(value, shifted))

    def test_non_half_integral_shift(self):
        with self.assertRaises(WhittakerError):
            whittaker_eval(self.family, (Fraction(1, 3), 0), [])

    def test_rational_satake(self):
        satake = SatakeData(Fraction(2), Fraction(1, 3))
        family = WhittakerFamily.principal_series(satake, SchwartzFunction2D.unit_box(P))
        value = whittaker_eval(family, (0, 0), [a(Fraction(P) ** 2)])
        self.assertTrue(equal(value, shintani(2, satake)))

    def test_square_integrable_table(self):
        family = WhittakerFamily.discrete({0: 1, 1: LaurentPoly.var('u')}, central_weight=1, prime=P)
        self.assertEqual(whittaker_eval(family, (1,), [a(P)]), mono(u=3).numerator)
        self.assertEqual(whittaker_eval(family, (0,), []), 1)
        with self.assertRaises(WhittakerError):
            whittaker_eval(family, (0,), [w()])

    def test_square_integrable_needs_prime(self):
        family = WhittakerFamily.discrete({0: 1})
        with self.assertRaises(WhittakerError):
            whittaker_eval(family, (0,), [a(P)])


class AnalyticFamilyTests(SimpleTestCase):
    def test_parameters(self):
        params = l_and_lambda_params(
            [{'kind': 'PS', 'weights': (Fraction(1, 4), Fraction(-1, 4)), 'degree': 3}],
            [0],
        )
        self.assertEqual(params['l'], [Fraction(-1, 4)])
        self.assertEqual(params['L'], Fraction(-3, 4))
        self.assertEqual(params['lambda_norm'], Fraction(3, 4))
        self.assertFalse(params['tempered'])

    def test_square_integrable_parameters(self):
        params = l_and_lambda_params([{'kind': 'DS', 'central_weight': Fraction(1, 2)}], [Fraction(-1, 4)])
        self.assertEqual(params['l'], [Fraction(0)])
        self.assertTrue(params['tempered'])

    def test_equal_weight_constant(self):
        constants = analytic_family_constants(5.0, 2, 0.0, 4)
        self.assertEqual(constants['C1'], 5.0)
        self.assertEqual(constants['C2'], 4.0)

    def test_shell_sup_at_start(self):
        # для большого ε максимум в начальной точке v = -2n
        self.assertAlmostEqual(shell_sup(1, 5.0, 5.0), 5.0 ** 10)

    def test_bound_grid(self):
        samples = []
        box = SchwartzFunction2D.indicator(P, depth=(1, 0))
        for phi in (SchwartzFunction2D.unit_box(P), box):
            family = WhittakerFamily.principal_series(SatakeData.symbolic(1), phi)
            words = ([], [w()], [n(1)], [m(2), w()])
            samples = [(order, word) for order in range(-3, 7) for word in words]
            report = asymptotic_bound_check(
                family,
                lambda_grid=[(0, 0), (0.1, -0.1), (-0.05, 0.05), (0.2, 0.1), (-0.1, -0.2)],
                eps_values=[0.05, 0.1, 0.25, 0.5],
                samples=samples,
            )
            self.assertEqual(report['violations'], [])
            self.assertGreaterEqual(report['checked'], 500)
            self.assertTrue(math.isfinite(report['C']))

    def test_factorwise_bound(self):
        tags = (FieldTag(3, 1, 'E'),)
        report = factorwise_spherical_bound(tags, [(0.1, -0.1)], eps=0.1, p=P)
        self.assertEqual(report['violations'], [])
        self.assertEqual(report['cosets'], [(0,), (1,), (2,)])

    def test_factorwise_bound_split(self):
        tags = (FieldTag(), FieldTag(), FieldTag())
        report = factorwise_spherical_bound(tags, [(0, 0), (0.05, -0.05), (-0.1, 0.1)], eps=0.05, p=7)
        self.assertEqual(report['violations'], [])
        self.assertEqual(coset_representatives(tags), [(0, 0, 0)])
