import random
from fractions import Fraction

from django.test import SimpleTestCase

from asai_app.services.local_factors import (
    CUBIC_TAME,
    CUBIC_UNRAM,
    QUAD_LINE,
    SHAPES,
    SPLIT,
    AsaiRepData,
    EtaleCubicShape,
    SatakeData,
    abelian_L,
    asai_cube_gamma,
    correction_factor,
)
from asai_app.services.padic_values import LocalFieldElement, valuation
from asai_app.services.symbolic_core import equal, mono, var
from asai_app.services.zeta_engine import (
    MEASURE_TAG,
    TameZetaContext,
    closed_form_tame,
    combined_bracket,
    coset_sequence,
    dual_zeta,
    dual_zeta_tame,
    expected_dual,
    gamma_psr,
    gk_normalization,
    partial_fraction_identities,
    pr_integral,
    section_exponent,
    section_value,
    section_value_from_minors,
    verify_theorem1,
    whittaker_value_tame,
    z0_display,
    z1_display,
    zeta_tame,
    zeta_term,
)

T, U, A, B = var('T'), var('u'), var('a1'), var('b1')
PRIMES = (5, 7, 11, 13)


class TameZetaTests(SimpleTestCase):
    def test_closed_form(self):
        omega = (A * B) ** 3
        expected = (
            (1 - omega * U ** 2 * T ** 2) * (1 - omega ** 2 * T ** 4)
            / ((1 - A ** 3 * T) * (1 - B ** 3 * T) * (1 - A ** 2 * B * T) * (1 - A * B ** 2 * T))
        )
        self.assertTrue(equal(zeta_tame().total, expected))
        self.assertTrue(equal(closed_form_tame(), expected))

    def test_displays(self):
        decomposition = zeta_tame()
        self.assertTrue(equal(decomposition.Z0, z0_display()))
        self.assertTrue(equal(decomposition.Z1, z1_display()))

    def test_sequences_match_terms(self):
        for part in (0, 1):
            for i in range(3):
                sequence = coset_sequence(i, part)
                for n in range(6):
                    self.assertTrue(equal(sequence.term(n), zeta_term(n, i, part)), (part, i, n))

    def test_first_term(self):
        # n = i = 0: f = 1, W = 1, pr = 1 - Q
        self.assertTrue(equal(zeta_term(0, 0), 1 - section_exponent()))
        with self.assertRaises(ValueError):
            zeta_term(0, 0, part=2)

    def test_partial_fractions(self):
        for name, lhs, rhs in partial_fraction_identities():
            self.assertTrue(equal(lhs, rhs), name)

    def test_combined_bracket(self):
        self.assertTrue(equal(combined_bracket(), zeta_tame().total))

    def test_numeric_satake(self):
        ctx = TameZetaContext(SatakeData(Fraction(2), Fraction(-1, 3)), 7)
        decomposition = zeta_tame(ctx)
        self.assertTrue(equal(decomposition.total, closed_form_tame(ctx)))
        self.assertTrue(equal(decomposition.Z0 + decomposition.Z1 / U ** 4, decomposition.total))

    def test_equal_satake_values(self):
        ctx = TameZetaContext(SatakeData(Fraction(3, 2), Fraction(3, 2)), 5)
        decomposition = zeta_tame(ctx)
        self.assertIsNone(decomposition.Z0)
        self.assertIsNone(decomposition.Z1)
        self.assertTrue(equal(decomposition.total, closed_form_tame(ctx)))

    def test_dual_side(self):
        self.assertTrue(equal(dual_zeta_tame(), expected_dual(TameZetaContext().rep)))

    def test_measure_tag(self):
        self.assertEqual(TameZetaContext().measure, MEASURE_TAG)
        with self.assertRaises(ValueError):
            TameZetaContext(measure='vol(o_F)=q^{-1/2}')


class BuildingBlockTests(SimpleTestCase):
    def test_pr_integral_vanishes_below_conductor(self):
        self.assertTrue(pr_integral(1, -2, T).is_zero)

    def test_pr_integral_ball(self):
        # m = n = 0: вклад o равен 1, оболочка |x| = q даёт -X, дальше ноль
        x = mono(T=1)
        self.assertTrue(equal(pr_integral(0, 0, x), 1 - x))
        # m = 1: q^{-1} X^{-1} + (1 - q^{-1}) - X
        self.assertTrue(equal(pr_integral(1, 0, x), 1 / (x / U ** 2) + 1 - U ** 2 - x))

    def test_section_value(self):
        prefactor, q_exp = section_value(2, 1)
        self.assertEqual(q_exp, section_exponent())
        self.assertEqual(prefactor, section_exponent() ** 7)
        with self.assertRaises(ValueError):
            section_value(0, 3)

    def test_section_from_minors(self):
        rng = random.Random(5)
        q_exp = section_exponent()
        for _ in range(30):
            p = rng.choice(PRIMES)
            n, i = rng.randint(0, 3), rng.randint(0, 2)
            x = Fraction(rng.randint(1, 50), rng.randint(1, 50)) * Fraction(p) ** rng.randint(-3, 8)
            prefactor, _ = section_value(n, i)
            depth = min(int(valuation(x, p)), 2 * n)
            self.assertEqual(section_value_from_minors(n, i, x, p), prefactor * q_exp ** -depth, (n, i, x, p))

    def test_section_from_minors_at_zero(self):
        prefactor, q_exp = section_value(1, 2)
        self.assertEqual(section_value_from_minors(1, 2, 0, 5), prefactor * q_exp ** -2)

    def test_whittaker_value(self):
        # n = 0, i = 0: W(1) = 1
        self.assertEqual(whittaker_value_tame(0, 0), 1)
        self.assertEqual(
            whittaker_value_tame(0, 1),
            (A * B) ** -1 * U ** 2 * (A ** 2 + A * B + B ** 2),
        )

    def test_gk_normalization(self):
        w = var('a1')
        expected = (
            abelian_L(1 / w, -2, 3) * abelian_L(w ** -2, -4, 4) / (abelian_L(w, 2, 1) * abelian_L(w ** 2, 4, 0))
        )
        self.assertEqual(gk_normalization(w), expected)


class GammaTests(SimpleTestCase):
    def test_gamma_identity_tame(self):
        for p in PRIMES:
            rep = AsaiRepData.symbolic(EtaleCubicShape(CUBIC_TAME, p))
            report = verify_theorem1(rep)
            self.assertTrue(report['passed'], report['identities'])
            self.assertEqual(report['omega_k_minus_one'], 1)
            names = {item['name'] for item in report['identities']}
            self.assertIn('gamma_psr_equals_corrected_gamma', names)
            self.assertIn('basis_change_invariance', names)

    def test_unramified_shapes(self):
        for kind in (SPLIT, CUBIC_UNRAM, QUAD_LINE):
            rep = AsaiRepData.symbolic(EtaleCubicShape(kind, 7))
            gamma = asai_cube_gamma(rep)
            self.assertEqual(gamma.eps, 1)
            self.assertEqual(correction_factor(rep), 1)
            self.assertTrue(equal(gamma_psr(rep), gamma.gamma / gamma.eps), kind)

    def test_dual_zeta_every_shape(self):
        for kind in SHAPES:
            rep = AsaiRepData.symbolic(EtaleCubicShape(kind, 11))
            self.assertTrue(equal(dual_zeta(rep), expected_dual(rep)), kind)

    def test_basis_and_twist(self):
        rep = AsaiRepData.symbolic(EtaleCubicShape(CUBIC_TAME, 7))
        delta = LocalFieldElement(0, Fraction(1, 27))
        twist = LocalFieldElement(1, Fraction(2))
        report = verify_theorem1(rep, delta, twist)
        self.assertTrue(report['passed'], report['identities'])

    def test_numeric_data_with_equal_satake(self):
        shape = EtaleCubicShape(CUBIC_TAME, 5)
        rep = AsaiRepData(shape, (SatakeData(Fraction(2), Fraction(2)),))
        self.assertTrue(verify_theorem1(rep)['passed'])

    def test_random_rational_reps(self):
        rng = random.Random(17)
        for kind in SHAPES:
            shape = EtaleCubicShape(kind, rng.choice(PRIMES))
            satake = tuple(
                SatakeData(Fraction(rng.randint(1, 7), rng.randint(1, 7)), Fraction(-rng.randint(1, 7), rng.randint(1, 7)))
                for _ in range(shape.rank)
            )
            report = verify_theorem1(AsaiRepData(shape, satake))
            self.assertTrue(report['passed'], (kind, report['identities']))

    def test_gamma_psr_is_eps_inverse_gamma(self):
        rep = AsaiRepData.symbolic(EtaleCubicShape(CUBIC_TAME, 11))
        triple = asai_cube_gamma(rep)
        self.assertTrue(equal(gamma_psr(rep), triple.gamma / triple.eps))
        self.assertTrue(equal(gamma_psr(rep), correction_factor(rep) * triple.gamma))
