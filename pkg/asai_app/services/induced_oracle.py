"""
Матричная модель индуцированного представления для проверки asai_cube_L.

Фробениус (и порождающий ручной инерции для cubic_tame) задаются явными
мономиальными матрицами на C^2 ⊗ C^2 ⊗ C^2; L-фактор считается как
det(1 - Φ T | инварианты инерции)^{-1}.
"""
import itertools
import logging
from fractions import Fraction

import sympy as sp
from sympy.physics.quantum import TensorProduct

from ..exceptions import UnsupportedShapeError
from .local_factors import CUBIC_TAME, CUBIC_UNRAM, QUAD_LINE, SPLIT, AsaiRepData
from .symbolic_core import VARIABLES, LaurentPoly, LaurentRational, Monomial

logger = logging.getLogger(__name__)

SYMBOLS = {name: sp.Symbol(name) for name in VARIABLES}


def _coef_to_sympy(c) -> sp.Rational:
    if not isinstance(c, Fraction):
        raise TypeError(f"Matrix oracle works over Q, got coefficient {c}")
    return sp.Rational(c.numerator, c.denominator)


def poly_to_sympy(poly: LaurentPoly) -> sp.Expr:
    expr = sp.Integer(0)
    for monomial, c in poly.items():
        term = _coef_to_sympy(c)
        for name, e in monomial.exponents().items():
            term *= SYMBOLS[name] ** e
        expr += term
    return expr


def to_sympy(f: LaurentRational) -> sp.Expr:
    return poly_to_sympy(f.numerator) / poly_to_sympy(f.denominator)


def poly_from_sympy(expr: sp.Expr) -> LaurentPoly:
    names = {sym: name for name, sym in SYMBOLS.items()}
    terms = []
    for monomial, coef in sp.expand(expr).as_coefficients_dict().items():
        exps = {}
        for base, e in monomial.as_powers_dict().items():
            if base in names:
                exps[names[base]] = int(e)
            elif base != 1:
                raise ValueError(f"Unexpected factor {base} in {expr}")
        coef = sp.Rational(coef)
        terms.append((Monomial(exps), Fraction(int(coef.p), int(coef.q))))
    return LaurentPoly(terms)


def from_sympy(expr: sp.Expr) -> LaurentRational:
    num, den = sp.fraction(sp.together(expr))
    return LaurentRational(poly_from_sympy(num), poly_from_sympy(den))


def _slot_permutation(perm, slots: int = 3) -> sp.Matrix:
    """e_{i_0} ⊗ ... ⊗ e_{i_{n-1}} -> e_{i_perm[0]} ⊗ ... ⊗ e_{i_perm[n-1]}"""
    size = 2 ** slots
    matrix = sp.zeros(size, size)
    for indices in itertools.product((0, 1), repeat=slots):
        source = int(''.join(map(str, indices)), 2)
        target = int(''.join(str(indices[j]) for j in perm), 2)
        matrix[target, source] = 1
    return matrix


def _satake_matrix(data) -> sp.Matrix:
    return sp.diag(to_sympy(data.alpha), to_sympy(data.beta))


def frobenius_and_inertia(rep: AsaiRepData):
    """
    Returns:
        (Φ, τ): матрица Фробениуса и порождающий ручной инерции (None, если инерция действует тривиально)
    """
    kind = rep.shape.kind
    identity = sp.eye(2)
    if kind == SPLIT:
        a1, a2, a3 = (_satake_matrix(d) for d in rep.satake)
        return TensorProduct(a1, a2, a3), None
    if kind == QUAD_LINE:
        quad, line = rep.satake
        swap = _slot_permutation((1, 0), slots=2)
        return TensorProduct(TensorProduct(_satake_matrix(quad), identity) * swap, _satake_matrix(line)), None
    (data,) = rep.satake
    a = _satake_matrix(data)
    cycle = _slot_permutation((2, 0, 1))
    if kind == CUBIC_UNRAM:
        return TensorProduct(a, identity, identity) * cycle, None
    if kind == CUBIC_TAME:
        frobenius = TensorProduct(a, a, a)
        if rep.shape.p % 3 == 2:
            frobenius = frobenius * _slot_permutation((1, 0, 2))
        return frobenius, cycle
    raise UnsupportedShapeError(f"No matrix model for shape '{kind}'")


def induced_rep_oracle(rep: AsaiRepData) -> dict:
    """
    Независимое вычисление L(s, As Π) по матричной модели.

    Returns:
        dict: invariant_dimension, eigenvalues (если Φ треугольна на инвариантах), L
    """
    frobenius, tau = frobenius_and_inertia(rep)
    size = frobenius.rows
    if tau is None:
        basis = sp.eye(size)
    else:
        q = rep.shape.p
        if not (frobenius * tau - tau ** (q % 3) * frobenius).applyfunc(sp.expand).is_zero_matrix:
            raise AssertionError("Tame relation Φ τ Φ^{-1} = τ^q fails")
        basis = sp.Matrix.hstack(*(tau - sp.eye(size)).nullspace())
    restricted = (basis.T * basis).inv() * basis.T * frobenius * basis
    restricted = restricted.applyfunc(sp.simplify)

    t = SYMBOLS['T']
    det = sp.expand((sp.eye(restricted.rows) - restricted * t).det(method='berkowitz'))
    L = LaurentRational(1, poly_from_sympy(det))

    eigenvalues = None
    if restricted.is_upper or restricted.is_lower:
        eigenvalues = [from_sympy(restricted[i, i]) for i in range(restricted.rows)]
    logger.debug(f"Induced model {rep.shape.kind}: invariant dimension {basis.cols}")
    return {
        'invariant_dimension': basis.cols,
        'frobenius': restricted,
        'eigenvalues': eigenvalues,
        'L': L,
    }
