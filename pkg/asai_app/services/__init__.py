"""
Сервисный слой движка: символьная алгебра, p-адические значения,
представление Вейля, локальные факторы и дзета-интегралы
"""
from .symbolic_core import LaurentPoly, LaurentRational, GeometricSequence, arith, substitute, geometric_sum, evaluate_numeric
from .cyclotomic import CyclotomicNumber
from .padic_values import LocalFieldElement, UnramChar, DiscriminantClass, psi_eval, unram_char_eval, hilbert_symbol, quad_char_eval
from .local_factors import (
    EtaleCubicShape, SatakeData, AsaiRepData, LocalFactorTriple, BasisChange, PsiTwist,
    tate_factors, asai_cube_L, asai_cube_eps, asai_cube_gamma, contragredient, correction_factor,
    transform_gamma_psr, pole_region_check,
)
from .induced_oracle import induced_rep_oracle
from .weil_whittaker import SchwartzFunction2D, WhittakerFamily, weil_act, whittaker_eval, shintani, asymptotic_bound_check, l_and_lambda_params
from .zeta_engine import TameZetaContext, ZetaDecomposition, pr_integral, section_value, whittaker_value_tame, zeta_term, zeta_tame, dual_zeta_tame, gk_normalization, gamma_psr, verify_theorem1
from .numeric_oracle import numeric_oracle

__all__ = [
    'LaurentPoly', 'LaurentRational', 'GeometricSequence', 'arith', 'substitute', 'geometric_sum', 'evaluate_numeric',
    'CyclotomicNumber',
    'LocalFieldElement', 'UnramChar', 'DiscriminantClass', 'psi_eval', 'unram_char_eval', 'hilbert_symbol', 'quad_char_eval',
    'EtaleCubicShape', 'SatakeData', 'AsaiRepData', 'LocalFactorTriple', 'BasisChange', 'PsiTwist',
    'tate_factors', 'asai_cube_L', 'asai_cube_eps', 'asai_cube_gamma', 'contragredient', 'correction_factor',
    'transform_gamma_psr', 'pole_region_check',
    'induced_rep_oracle',
    'SchwartzFunction2D', 'WhittakerFamily', 'weil_act', 'whittaker_eval', 'shintani', 'asymptotic_bound_check', 'l_and_lambda_params',
    'TameZetaContext', 'ZetaDecomposition', 'pr_integral', 'section_value', 'whittaker_value_tame', 'zeta_term', 'zeta_tame',
    'dual_zeta_tame', 'gk_normalization', 'gamma_psr', 'verify_theorem1',
    'numeric_oracle',
]
