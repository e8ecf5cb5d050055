"""
Django REST Framework Serializers для входных параметров заданий
"""
from fractions import Fraction

from django.conf import settings
from rest_framework import serializers
from sympy import factorint, isprime

from .services.local_factors import SHAPES, CUBIC_TAME, EtaleCubicShape
from .services.padic_values import LocalFieldElement

COMMANDS = ('lfactor', 'gamma', 'verify-theorem1', 'zeta-tame', 'whittaker', 'oracle')

# число пар Сатаке по форме E
SATAKE_PAIRS = {'split': 3, 'quad_line': 2, 'cubic_unram': 1, 'cubic_tame': 1}


def _is_float_token(token: str) -> bool:
    return any(ch in token.lower() for ch in '.ej')


def parse_satake(text: str, allow_complex: bool = False):
    """
    'symbolic' -> None; иначе список значений через запятую.
    Точные рациональные ('2/3', '-1') -> Fraction, числа с плавающей точкой -> complex.
    """
    text = (text or 'symbolic').strip()
    if text == 'symbolic':
        return None
    values = []
    for token in (t.strip() for t in text.split(',')):
        if not token:
            raise serializers.ValidationError("Empty Satake value")
        try:
            if _is_float_token(token):
                if not allow_complex:
                    raise serializers.ValidationError(
                        f"Floating-point Satake value '{token}' is only accepted by the oracle"
                    )
                value = complex(token)
            else:
                value = Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError(f"Malformed Satake value '{token}'")
        if value == 0:
            raise serializers.ValidationError("Satake parameters must be nonzero")
        values.append(value)
    return values


def parse_local_element(text: str, p: int) -> LocalFieldElement:
    """
    'v:unit' -> ϖ^v · unit; рациональное число -> элемент Q_p.
    """
    try:
        if ':' in text:
            order, unit = text.split(':', 1)
            element = LocalFieldElement(int(order), Fraction(unit))
        else:
            element = LocalFieldElement.from_rational(Fraction(text), p)
    except (ValueError, ZeroDivisionError):
        raise serializers.ValidationError(f"Malformed local field element '{text}'")
    if element.is_zero:
        raise serializers.ValidationError("Local field element must be nonzero")
    return element


class JobSpecSerializer(serializers.Serializer):
    """Serializer для JobSpec"""

    command = serializers.ChoiceField(choices=COMMANDS)
    shape = serializers.ChoiceField(choices=SHAPES, default=CUBIC_TAME)
    satake = serializers.CharField(default='symbolic', allow_blank=False)
    p = serializers.IntegerField(required=False, allow_null=True)
    basis_disc = serializers.CharField(required=False, allow_null=True, allow_blank=False)
    psi_twist = serializers.CharField(required=False, allow_null=True, allow_blank=False)
    q = serializers.IntegerField(required=False, allow_null=True)
    s = serializers.CharField(default='2')
    N = serializers.IntegerField(default=60, min_value=1)
    D = serializers.IntegerField(default=60, min_value=1)
    nmax = serializers.IntegerField(default=10, min_value=0, max_value=40)
    decay = serializers.BooleanField(default=False)

    def validate_p(self, value):
        if value is not None and not isprime(value):
            raise serializers.ValidationError(f"p = {value} is not prime")
        return value

    def validate_q(self, value):
        if value is not None and (value < 2 or len(factorint(value)) != 1):
            raise serializers.ValidationError(f"q = {value} is not a prime power")
        return value

    def validate_s(self, value):
        try:
            complex(value.replace(' ', ''))
        except ValueError:
            raise serializers.ValidationError(f"Malformed complex number s = '{value}'")
        return value.replace(' ', '')

    def validate(self, data):
        """Валидация: число пар Сатаке по форме, элементы Δ и a по простому p"""
        command = data['command']
        if data.get('p') is None:
            if data.get('q'):
                data['p'] = next(iter(factorint(data['q'])))
            else:
                data['p'] = settings.ASAI.get('DEFAULT_PRIME', 5)
        if command == 'zeta-tame':
            data['shape'] = CUBIC_TAME
        oracle = command == 'oracle'
        values = parse_satake(data['satake'], allow_complex=oracle)
        if oracle:
            if values is not None and len(values) != 2:
                raise serializers.ValidationError("Oracle takes exactly two Satake values α, β")
        elif values is not None:
            expected = 2 * SATAKE_PAIRS[data['shape']]
            if len(values) != expected:
                raise serializers.ValidationError(
                    f"Shape {data['shape']} needs {expected} Satake values, got {len(values)}"
                )
        data['satake_values'] = values
        for name in ('basis_disc', 'psi_twist'):
            if data.get(name):
                data[f'{name}_element'] = parse_local_element(data[name], data['p'])
        return data


def canonical_job(data: dict) -> dict:
    """Каноническая форма JobSpec: только поля, влияющие на результат, в строковом виде."""
    keys = {
        'lfactor': ('shape', 'satake', 'p', 'psi_twist'),
        'gamma': ('shape', 'satake', 'p', 'basis_disc', 'psi_twist'),
        'verify-theorem1': ('shape', 'satake', 'p', 'basis_disc', 'psi_twist'),
        'zeta-tame': ('satake', 'p'),
        'whittaker': ('p', 'nmax'),
        'oracle': ('satake', 'q', 'p', 's', 'N', 'D', 'decay'),
    }[data['command']]
    canonical = {'command': data['command']}
    for key in keys:
        value = data.get(key)
        canonical[key] = None if value is None else str(value)
    if data['command'] == 'oracle':
        # within_tolerance зависит от допуска
        canonical['tolerance'] = str(settings.ASAI.get('ORACLE_TOLERANCE', 1e-8))
    return canonical


def build_shape(data: dict) -> EtaleCubicShape:
    return EtaleCubicShape(data['shape'], data['p'])
