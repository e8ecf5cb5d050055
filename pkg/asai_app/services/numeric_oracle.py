"""
Численный оракул для дзета-интеграла ручного кубического случая:
усечённые суммы по n, i и по оболочкам |x| = q^j, сравнение с замкнутой формой.
"""
import itertools
import logging
import math
from typing import Iterable, Sequence

import numpy as np
from django.conf import settings

from ..exceptions import OracleRejected
from .symbolic_core import evaluate_numeric

logger = logging.getLogger(__name__)


def _oracle_settings() -> dict:
    return getattr(settings, 'ASAI', {})


def shell_integral(j: int, q: float) -> float:
    """∫_{|x| = q^j} ψ(x) dx при vol(o) = 1."""
    if j <= 0:
        return (1 - 1 / q) * q ** j
    if j == 1:
        return -1.0
    return 0.0


def pr_integral_shells(m: int, n: int, x: complex, q: float, depth: int, scaled: bool = False) -> complex:
    """
    ∫_F max{|x|, q^{-m}}^{-s'} ψ(ϖ^n x) dx при X = q^{-s'} по оболочкам:
    шар ϖ^m o плюс оболочки q^{-m+1}, ..., q^{-m+depth}.

    При scaled=True возвращается интеграл, умноженный на X^m.
    """
    total = complex(q ** -m if m + n >= 0 else 0.0)
    for j in range(-m + 1, -m + depth + 1):
        # y = ϖ^n x, dx = q^n dy
        value = shell_integral(j - n, q)
        if value:
            total += x ** (j + m) * q ** n * value
    return total if scaled else total * x ** (-m)


def _shintani(n: int, alpha: complex, beta: complex, q: float) -> complex:
    if n < 0:
        return 0j
    powers = alpha ** np.arange(n, -1, -1) * beta ** np.arange(0, n + 1)
    return q ** (-n / 2) * complex(powers.sum())


def pole_level(alpha: complex, beta: complex, q: float) -> float:
    """L(Π) = 3 min(wt(χ_1), wt(χ_2)), |χ(ϖ_E)| = q^{-wt}."""
    weights = [-math.log(abs(v)) / math.log(q) for v in (alpha, beta)]
    return 3 * min(weights)


def truncated_zeta(alpha: complex, beta: complex, q: float, s: complex, n_terms: int, depth: int) -> complex:
    """Σ_{n<N} Σ_i (Z^(0) + q^2 Z^(1)) с оболочками до глубины depth."""
    u = q ** -0.5
    t = q ** (-s)
    omega_e = alpha * beta
    section = omega_e ** 3 * u ** 2 * t ** 2
    step = section / (omega_e * u ** 4)
    total = 0j
    for n, i in itertools.product(range(n_terms), range(3)):
        level = 3 * n + i
        # Q^{level} (αβ)^{-level} q^{2 level} · X^{-2n}, X = Q
        weight = (step ** 3 / section ** 2) ** n * step ** i
        z0 = weight * _shintani(2 * level, alpha, beta, q) * pr_integral_shells(2 * n, 0, section, q, depth, scaled=True)
        z1 = t * u * weight * _shintani(2 * level + 3, alpha, beta, q) * pr_integral_shells(
            2 * n, 1, section, q, depth, scaled=True
        )
        total += z0 + z1 / u ** 4
    return total


def _closed_value(alpha: complex, beta: complex, q: float, s: complex) -> complex:
    from .zeta_engine import certified_closed_form

    return evaluate_numeric(certified_closed_form(), {'a1': alpha, 'b1': beta, 'u': q ** -0.5, 'T': q ** (-s)})


def numeric_oracle(
    q: int,
    alpha: complex,
    beta: complex,
    s: complex,
    n_terms: int = 60,
    depth: int = 60,
    margin: float = None,
) -> dict:
    """
    Усечённая сумма против замкнутой формы.

    Args:
        q: порядок поля вычетов
        alpha, beta: комплексные параметры Сатаке
        s: комплексное s с Re(s) > -L(Π) + margin
        n_terms: N
        depth: D
    Returns:
        dict: {'params', 'truncated', 'closed_form', 'rel_error'}
    Raises:
        OracleRejected: s в области расходимости или N, D < 1
    """
    if n_terms < 1 or depth < 1:
        raise OracleRejected(f"Truncation must be positive, got N={n_terms}, D={depth}")
    if alpha == 0 or beta == 0:
        raise OracleRejected("Satake parameters must be nonzero")
    margin = _oracle_settings().get('ORACLE_MARGIN', 0.5) if margin is None else margin
    q = float(q)
    s = complex(s)
    bound = -pole_level(alpha, beta, q) + margin
    if s.real <= bound:
        raise OracleRejected(f"Re(s) = {s.real} is not above -L(Π) + margin = {bound}")

    truncated = truncated_zeta(alpha, beta, q, s, n_terms, depth)
    closed = _closed_value(alpha, beta, q, s)
    rel_error = abs(truncated - closed) / max(abs(closed), 1e-300)
    tolerance = _oracle_settings().get('ORACLE_TOLERANCE', 1e-8)
    if rel_error > tolerance:
        logger.warning(f"Oracle miss at q={q}, s={s}: rel_error={rel_error:.3e} > {tolerance:.1e}")
    return {
        'params': {
            'q': q,
            'alpha': [alpha.real, alpha.imag] if isinstance(alpha, complex) else [float(alpha), 0.0],
            'beta': [beta.real, beta.imag] if isinstance(beta, complex) else [float(beta), 0.0],
            's': [s.real, s.imag],
            'N': n_terms,
            'D': depth,
        },
        'truncated': [truncated.real, truncated.imag],
        'closed_form': [closed.real, closed.imag],
        'rel_error': rel_error,
    }


def decay_report(q: int, alpha: complex, beta: complex, s: complex, n_terms: int, depth: int = 200) -> dict:
    """
    Ошибка при N и 2N против предсказанного множителя ρ^N,
    ρ = max(|α|, |β|)^6 q^{-2 Re s}.
    """
    first = numeric_oracle(q, alpha, beta, s, n_terms, depth)
    second = numeric_oracle(q, alpha, beta, s, 2 * n_terms, depth)
    rho = max(abs(alpha), abs(beta)) ** 6 * float(q) ** (-2 * complex(s).real)
    predicted = rho ** n_terms
    floor = 1e-13
    geometric = second['rel_error'] <= max(10 * predicted * first['rel_error'], floor)
    if not geometric:
        logger.warning(f"Tail decay slower than predicted: {first['rel_error']:.3e} -> {second['rel_error']:.3e}")
    return {
        'N': n_terms,
        'error_N': first['rel_error'],
        'error_2N': second['rel_error'],
        'ratio': rho,
        'predicted_factor': predicted,
        'geometric': geometric,
    }


def oracle_grid(
    primes: Sequence[int] = (5, 7, 11),
    phases: Iterable = ((math.pi / 7, -math.pi / 3), (0.3, 1.1), (2.0, -0.4)),
    real_parts: Sequence[float] = (1.5, 2.0, 3.0),
    n_terms: int = 60,
    depth: int = 60,
) -> dict:
    """Сетка q × фазы × Re(s) на единичной окружности."""
    phases = list(phases)
    results = []
    for q, (theta1, theta2), re_s in itertools.product(primes, phases, real_parts):
        alpha, beta = complex(np.exp(1j * theta1)), complex(np.exp(1j * theta2))
        report = numeric_oracle(q, alpha, beta, complex(re_s, 0.25), n_terms, depth)
        results.append(report)
    worst = max(r['rel_error'] for r in results)
    logger.info(f"Oracle grid: {len(results)} points, worst rel_error {worst:.3e}")
    return {'points': results, 'worst_rel_error': worst}
