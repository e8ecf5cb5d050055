"""
Выполнение заданий cli: диспетчеризация по команде, сериализация результата
в детерминированный JSON и файловый кэш результатов.
"""
import hashlib
import json
import logging
import math
from fractions import Fraction
from typing import Tuple

from django.conf import settings
from django.core.cache import caches

from ..exceptions import EXIT_IDENTITY_FAILURE, EXIT_OK
from ..serializers import build_shape, canonical_job
from .local_factors import (
    AsaiRepData,
    SatakeData,
    asai_cube_gamma,
    correction_factor,
    degree_in_T,
)
from .numeric_oracle import decay_report, numeric_oracle
from .symbolic_core import LaurentRational, equal
from .weil_whittaker import SchwartzFunction2D, WhittakerFamily, a, shintani, whittaker_eval
from .zeta_engine import (
    TameZetaContext,
    closed_form_tame,
    dual_zeta_tame,
    expected_dual,
    gamma_psr,
    partial_fraction_identities,
    verify_theorem1,
    z0_display,
    z1_display,
    zeta_tame,
)

logger = logging.getLogger(__name__)

CACHE_PREFIX = 'asai:job:'


def render(document: dict) -> str:
    """Детерминированная запись JSON: ключи отсортированы, отступ 2."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)


def job_key(data: dict) -> str:
    canonical = json.dumps(canonical_job(data), sort_keys=True)
    return CACHE_PREFIX + hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def build_rep(data: dict) -> AsaiRepData:
    shape = build_shape(data)
    values = data.get('satake_values')
    if values is None:
        return AsaiRepData.symbolic(shape)
    pairs = [SatakeData(values[k], values[k + 1]) for k in range(0, len(values), 2)]
    return AsaiRepData(shape, tuple(pairs))


def _factor_list(f: LaurentRational) -> list:
    return [{'factor': poly.text(), 'multiplicity': mult} for poly, mult in f.factors()]


def _rational_document(f: LaurentRational) -> dict:
    return {'json': f.to_json(), 'text': f.factored_text(), 'denominator_factors': _factor_list(f)}


def _run_lfactor(data: dict) -> Tuple[dict, int]:
    rep = build_rep(data)
    triple = asai_cube_gamma(rep, data.get('psi_twist_element'))
    document = {
        'L': _rational_document(triple.L),
        'eps': _rational_document(triple.eps),
        'gamma': _rational_document(triple.gamma),
        'degree_in_T': degree_in_T(rep),
        'omega_k_minus_one': rep.shape.omega_k_minus_one(),
    }
    return document, EXIT_OK


def _run_gamma(data: dict) -> Tuple[dict, int]:
    rep = build_rep(data)
    delta = data.get('basis_disc_element')
    psi = data.get('psi_twist_element')
    document = {
        'gamma_psr': _rational_document(gamma_psr(rep, delta, psi)),
        'correction_factor': _rational_document(correction_factor(rep, delta)),
        'gamma': _rational_document(asai_cube_gamma(rep, psi).gamma),
    }
    return document, EXIT_OK


def _run_verify(data: dict) -> Tuple[dict, int]:
    rep = build_rep(data)
    report = verify_theorem1(rep, data.get('basis_disc_element'), data.get('psi_twist_element'))
    return report, EXIT_OK if report['passed'] else EXIT_IDENTITY_FAILURE


def _check(name: str, lhs: LaurentRational, rhs: LaurentRational) -> dict:
    passed = equal(lhs, rhs)
    if not passed:
        logger.warning(f"zeta-tame identity '{name}' failed")
    return {'name': name, 'pass': passed, 'lhs': lhs.text(), 'rhs': rhs.text()}


def _run_zeta_tame(data: dict) -> Tuple[dict, int]:
    rep = build_rep(data)
    ctx = TameZetaContext(rep.satake[0], data['p'])
    decomposition = zeta_tame(ctx)
    checks = [_check('closed_form', decomposition.total, closed_form_tame(ctx))]
    if ctx.is_symbolic:
        checks.append(_check('z0_display', decomposition.Z0, z0_display()))
        checks.append(_check('z1_display', decomposition.Z1, z1_display()))
        checks.extend(_check(name, lhs, rhs) for name, lhs, rhs in partial_fraction_identities())
    checks.append(_check('dual_zeta', dual_zeta_tame(ctx), expected_dual(ctx.rep)))
    passed = all(item['pass'] for item in checks)
    document = {
        'measure': ctx.measure,
        'Z0': _rational_document(decomposition.Z0) if decomposition.Z0 is not None else None,
        'Z1': _rational_document(decomposition.Z1) if decomposition.Z1 is not None else None,
        'total': _rational_document(decomposition.total),
        'identities': checks,
        'passed': passed,
    }
    return document, EXIT_OK if passed else EXIT_IDENTITY_FAILURE


def _run_whittaker(data: dict) -> Tuple[dict, int]:
    p = data['p']
    satake = SatakeData.symbolic(1)
    family = WhittakerFamily.principal_series(satake, SchwartzFunction2D.unit_box(p))
    rows = []
    constant = None
    proportional = True
    for n in range(data['nmax'] + 1):
        value = LaurentRational.coerce(whittaker_eval(family, (0, 0), [a(Fraction(p) ** n)]))
        reference = shintani(n, satake)
        if constant is None:
            # shintani(0) = 1
            constant = value / reference
        proportional = proportional and equal(value, constant * reference)
        rows.append({'n': n, 'value': value.text(), 'shintani': reference.text()})
    if not proportional:
        logger.warning("Whittaker values are not proportional to the Shintani formula")
    document = {
        'p': p,
        'phi': SchwartzFunction2D.unit_box(p).to_json(),
        'values': rows,
        'constant': constant.text(),
        'proportional': proportional,
    }
    return document, EXIT_OK if proportional else EXIT_IDENTITY_FAILURE


def _oracle_satake(data: dict):
    values = data.get('satake_values')
    if values is None:
        return complex(math.cos(math.pi / 7), math.sin(math.pi / 7)), complex(math.cos(math.pi / 3), -math.sin(math.pi / 3))
    return tuple(complex(v) for v in values)


def _run_oracle(data: dict) -> Tuple[dict, int]:
    alpha, beta = _oracle_satake(data)
    q = data.get('q') or data['p']
    s = complex(data['s'])
    document = numeric_oracle(q, alpha, beta, s, data['N'], data['D'])
    if data.get('decay'):
        document['decay'] = decay_report(q, alpha, beta, s, max(1, data['N'] // 4))
    tolerance = settings.ASAI.get('ORACLE_TOLERANCE', 1e-8)
    document['within_tolerance'] = document['rel_error'] <= tolerance
    return document, EXIT_OK


DISPATCH = {
    'lfactor': _run_lfactor,
    'gamma': _run_gamma,
    'verify-theorem1': _run_verify,
    'zeta-tame': _run_zeta_tame,
    'whittaker': _run_whittaker,
    'oracle': _run_oracle,
}


def run_job(data: dict) -> Tuple[int, str]:
    """
    Выполняет проверенный JobSpec.

    Args:
        data: validated_data из JobSpecSerializer
    Returns:
        (exit_code, JSON-текст)
    """
    use_cache = settings.ASAI.get('CACHE_ENABLED', True)
    key = job_key(data)
    cache = caches['default']
    if use_cache:
        hit = cache.get(key)
        if hit is not None:
            logger.info(f"Cache hit for {data['command']} ({key[-12:]})")
            return hit['exit_code'], hit['output']

    logger.info(f"Running {data['command']} job: {canonical_job(data)}")
    document, exit_code = DISPATCH[data['command']](data)
    output = render({'job': canonical_job(data), 'result': document, 'exit_code': exit_code})
    if use_cache:
        cache.set(key, {'exit_code': exit_code, 'output': output})
    logger.info(f"Finished {data['command']} job with exit code {exit_code}")
    return exit_code, output
