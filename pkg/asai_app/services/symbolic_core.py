"""
Символьное ядро: многочлены Лорана и рациональные функции
в фиксированных переменных u = q^{-1/2}, T = q^{-s}, a1, b1, a2, b2, a3, b3.

Все вычисления точные (Fraction или CyclotomicNumber). Знаменатели
хранятся в виде мультимножества нормализованных множителей: старший
(лексикографически минимальный) член каждого множителя равен 1. Порядок
лексикографический по вектору показателей, он согласован с умножением,
поэтому старший член произведения равен произведению старших членов.
"""
import logging
import sys
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import numpy as np
from django.conf import settings

from ..exceptions import (
    BindingError,
    DivergentSeriesError,
    DivisionByZeroFunction,
    NumericPoleError,
)
from .cyclotomic import CyclotomicNumber

logger = logging.getLogger(__name__)

VARIABLES = ('u', 'T', 'a1', 'b1', 'a2', 'b2', 'a3', 'b3')
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_NVARS = len(VARIABLES)
_ZERO_EXPS = (0,) * _NVARS

Coefficient = Union[Fraction, CyclotomicNumber]


def variable_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise BindingError(f"Unknown variable '{name}', expected one of {', '.join(VARIABLES)}")


def _coerce_coef(c) -> Coefficient:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, CyclotomicNumber):
        return c.to_fraction() if c.is_rational else c
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"Inexact coefficient {c!r} is not allowed")


def _coef_to_complex(c: Coefficient) -> complex:
    if isinstance(c, CyclotomicNumber):
        return c.to_complex()
    return complex(float(c))


def _coef_json(c: Coefficient):
    if isinstance(c, CyclotomicNumber):
        return c.to_json()
    return str(c)


def _coef_from_json(data) -> Coefficient:
    if isinstance(data, dict):
        return _coerce_coef(CyclotomicNumber.from_json(data))
    return Fraction(data)


def _coef_text(c: Coefficient) -> str:
    if isinstance(c, CyclotomicNumber):
        return f'({c})'
    return str(c)


class Monomial:
    """
    Моном u^e0 T^e1 a1^e2 ... с целыми показателями.

    Args:
        exps: кортеж из 8 показателей или словарь {имя: показатель}
        **powers: показатели по именам переменных
    """

    __slots__ = ('exps', '_hash')

    def __init__(self, exps=None, **powers):
        if exps is None:
            vec = [0] * _NVARS
        elif isinstance(exps, Mapping):
            vec = [0] * _NVARS
            for name, e in exps.items():
                vec[variable_index(name)] += int(e)
        else:
            vec = [int(e) for e in exps]
            if len(vec) != _NVARS:
                raise ValueError(f"Monomial needs {_NVARS} exponents, got {len(vec)}")
        for name, e in powers.items():
            vec[variable_index(name)] += int(e)
        self.exps = tuple(vec)
        self._hash = hash(self.exps)

    @classmethod
    def _from_tuple(cls, exps: tuple) -> 'Monomial':
        obj = object.__new__(cls)
        obj.exps = exps
        obj._hash = hash(exps)
        return obj

    @property
    def is_one(self) -> bool:
        return self.exps == _ZERO_EXPS

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def exponent(self, name: str) -> int:
        return self.exps[variable_index(name)]

    def exponents(self) -> dict:
        return {name: e for name, e in zip(VARIABLES, self.exps) if e}

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial._from_tuple(tuple(x + y for x, y in zip(self.exps, other.exps)))

    def __truediv__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial._from_tuple(tuple(x - y for x, y in zip(self.exps, other.exps)))

    def __pow__(self, k: int):
        return Monomial._from_tuple(tuple(x * k for x in self.exps))

    def inverse(self) -> 'Monomial':
        return Monomial._from_tuple(tuple(-x for x in self.exps))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def text(self) -> str:
        if self.is_one:
            return '1'
        parts = []
        for name, e in zip(VARIABLES, self.exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f'{name}^{e}')
        return '*'.join(parts)

    def __repr__(self):
        return f'Monomial({self.text()})'


def _sort_key(mono: Monomial):
    return (mono.degree, mono.exps)


class LaurentPoly:
    """
    Многочлен Лорана: конечная сумма coef * моном с ненулевыми коэффициентами.
    Неизменяемый и хешируемый.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mono, coef in items:
                if not isinstance(mono, Monomial):
                    mono = Monomial(mono)
                coef = _coerce_coef(coef)
                if mono in clean:
                    coef = clean[mono] + coef
                if coef == 0:
                    clean.pop(mono, None)
                else:
                    clean[mono] = coef
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> 'LaurentPoly':
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value) -> 'LaurentPoly':
        return cls({Monomial._from_tuple(_ZERO_EXPS): value})

    @classmethod
    def monomial(cls, coef=1, mono: Monomial = None, **powers) -> 'LaurentPoly':
        mono = mono if mono is not None else Monomial(**powers)
        return cls({mono: coef})

    @classmethod
    def var(cls, name: str) -> 'LaurentPoly':
        return cls({Monomial({name: 1}): 1})

    @staticmethod
    def coerce(value) -> 'LaurentPoly':
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, Monomial):
            return LaurentPoly({value: 1})
        if isinstance(value, (int, Fraction, CyclotomicNumber)):
            return LaurentPoly.constant(value)
        raise TypeError(f"Cannot coerce {value!r} to LaurentPoly")

    # -- structure --------------------------------------------------------

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def is_constant(self) -> bool:
        return self.is_zero or (self.is_monomial and next(iter(self._terms)).is_one)

    def constant_value(self) -> Coefficient:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError(f"{self.text()} is not constant")
        return next(iter(self._terms.values()))

    def coefficient(self, mono: Monomial) -> Coefficient:
        return self._terms.get(mono, Fraction(0))

    def leading_term(self):
        """Старший член (лексикографически минимальный моном) как (моном, коэффициент)."""
        if not self._terms:
            raise ValueError("Zero polynomial has no leading term")
        return min(self._terms.items(), key=lambda kv: kv[0].exps)

    def used_variables(self, negative_only: bool = False) -> set:
        used = set()
        for mono in self._terms:
            for i, e in enumerate(mono.exps):
                if e < 0 or (e and not negative_only):
                    used.add(i)
        return used

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for m, c in other._terms.items():
            s = result.get(m)
            if s is None:
                result[m] = c
            else:
                s = s + c
                if s == 0:
                    del result[m]
                else:
                    result[m] = s
        return LaurentPoly._wrap(result)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, coef, mono: Monomial = None) -> 'LaurentPoly':
        coef = _coerce_coef(coef)
        if coef == 0:
            return LaurentPoly()
        if mono is None or mono.is_one:
            return LaurentPoly._wrap({m: c * coef for m, c in self._terms.items()})
        return LaurentPoly._wrap({m * mono: c * coef for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.scale(1, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.is_monomial:
            (m, c), = other._terms.items()
            return self.scale(c, m)
        if self.is_monomial:
            return other * self
        acc = {}
        for m1, c1 in self._terms.items():
            e1 = m1.exps
            for m2, c2 in other._terms.items():
                key = tuple(x + y for x, y in zip(e1, m2.exps))
                prev = acc.get(key)
                acc[key] = c1 * c2 if prev is None else prev + c1 * c2
        return LaurentPoly._wrap({Monomial._from_tuple(k): _coerce_coef(v) for k, v in acc.items() if v != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial:
                raise ValueError("Negative power of a non-monomial LaurentPoly")
            (m, c), = self._terms.items()
            return LaurentPoly({m ** k: _coef_pow(c, k)})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution / evaluation ---------------------------------------

    def substitute_monomials(self, mapping: dict) -> 'LaurentPoly':
        """
        Подстановка переменная -> coef * моном.

        Args:
            mapping: {индекс переменной: (коэффициент, Monomial)}
        """
        acc = {}
        for mono, c in self._terms.items():
            exps = list(mono.exps)
            factor = c
            vanished = False
            for idx, (bc, bm) in mapping.items():
                e = mono.exps[idx]
                if e == 0:
                    continue
                if bc == 0:
                    if e < 0:
                        raise BindingError(f"Variable {VARIABLES[idx]} occurs with negative exponent and is bound to 0")
                    vanished = True
                    break
                exps[idx] -= e
                for j, be in enumerate(bm.exps):
                    if be:
                        exps[j] += e * be
                factor = factor * _coef_pow(bc, e)
            if vanished:
                continue
            key = tuple(exps)
            prev = acc.get(key)
            acc[key] = factor if prev is None else prev + factor
        return LaurentPoly._wrap({Monomial._from_tuple(k): _coerce_coef(v) for k, v in acc.items() if v != 0})

    def evaluate(self, values: np.ndarray):
        """
        Численное значение и масштаб (сумма модулей членов).

        Args:
            values: комплексный вектор значений переменных длины 8
        Returns:
            (value, scale)
        """
        if not self._terms:
            return 0j, 0.0
        monos = list(self._terms)
        exps = np.array([m.exps for m in monos], dtype=np.int64)
        coefs = np.array([_coef_to_complex(self._terms[m]) for m in monos], dtype=complex)
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            terms = coefs * np.prod(np.power(values[np.newaxis, :], exps), axis=1)
        return complex(np.sum(terms)), float(np.sum(np.abs(terms)))

    # -- presentation -----------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def text(self) -> str:
        if not self._terms:
            return '0'
        parts = []
        for mono, c in self.sorted_terms():
            if mono.is_one:
                parts.append(_coef_text(c))
            elif c == 1:
                parts.append(mono.text())
            elif c == -1:
                parts.append('-' + mono.text())
            else:
                parts.append(f'{_coef_text(c)}*{mono.text()}')
        return ' + '.join(parts).replace('+ -', '- ')

    def to_json(self) -> list:
        return [{'coef': _coef_json(c), 'exps': mono.exponents()} for mono, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable) -> 'LaurentPoly':
        return cls([(Monomial(term.get('exps', {})), _coef_from_json(term['coef'])) for term in data])

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f'LaurentPoly({self.text()})'


def _coef_pow(c: Coefficient, k: int) -> Coefficient:
    if isinstance(c, Fraction):
        return c ** k
    return _coerce_coef(c ** k)


@lru_cache(maxsize=8192)
def _factor_power(factor: LaurentPoly, mult: int) -> LaurentPoly:
    return factor ** mult


def _expand(factors: Mapping) -> LaurentPoly:
    result = LaurentPoly.constant(1)
    for factor, mult in factors.items():
        if mult:
            result = result * _factor_power(factor, mult)
    return result


def _attach_factor(num: LaurentPoly, factors: dict, poly: LaurentPoly, mult: int) -> LaurentPoly:
    """
    Нормализует poly и добавляет его в знаменатель с кратностью mult.
    Обратимый старший член переносится в числитель.
    """
    if poly.is_zero:
        raise DivisionByZeroFunction("Denominator factor vanishes identically")
    lead_mono, lead_coef = poly.leading_term()
    inv_coef = _coef_pow(lead_coef, -1)
    inv_mono = lead_mono.inverse()
    normalized = poly.scale(inv_coef, inv_mono)
    num = num.scale(_coef_pow(inv_coef, mult), inv_mono ** mult)
    if not normalized.is_monomial:
        factors[normalized] = factors.get(normalized, 0) + mult
    return num


def _numeric_eps() -> float:
    return settings.ASAI.get('NUMERIC_EPS', 64 * sys.float_info.epsilon)


class LaurentRational:
    """
    Рациональная функция numerator / Π factor^mult.

    Равенство проверяется точно: числитель разности равен нулю.
    """

    __slots__ = ('_num', '_den')

    def __init__(self, numerator=1, denominator=1):
        num = LaurentPoly.coerce(numerator)
        den = LaurentPoly.coerce(denominator)
        factors = {}
        num = _attach_factor(num, factors, den, 1)
        self._num = num
        self._den = {} if num.is_zero else factors

    @classmethod
    def _make(cls, num: LaurentPoly, factors: dict) -> 'LaurentRational':
        obj = object.__new__(cls)
        obj._num = num
        obj._den = {} if num.is_zero else factors
        return obj

    @staticmethod
    def coerce(value) -> 'LaurentRational':
        if isinstance(value, LaurentRational):
            return value
        return LaurentRational._make(LaurentPoly.coerce(value), {})

    @classmethod
    def monomial(cls, coef=1, **powers) -> 'LaurentRational':
        return cls._make(LaurentPoly.monomial(coef, **powers), {})

    @classmethod
    def var(cls, name: str) -> 'LaurentRational':
        return cls._make(LaurentPoly.var(name), {})

    # -- structure --------------------------------------------------------

    @property
    def numerator(self) -> LaurentPoly:
        return self._num

    @property
    def denominator(self) -> LaurentPoly:
        return _expand(self._den)

    def factors(self) -> list:
        """Нормализованные множители знаменателя [(poly, кратность)] в каноническом порядке."""
        return sorted(self._den.items(), key=lambda kv: kv[0].text())

    @property
    def is_zero(self) -> bool:
        return self._num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return not self._den

    @property
    def is_monomial(self) -> bool:
        return not self._den and self._num.is_monomial

    def as_monomial(self):
        if not self.is_monomial:
            raise ValueError(f"{self.text()} is not a monomial")
        (mono, coef), = self._num.items()
        return coef, mono

    def as_poly(self) -> LaurentPoly:
        if self._den:
            raise ValueError(f"{self.text()} is not a Laurent polynomial")
        return self._num

    def used_variables(self, negative_only: bool = False) -> set:
        used = self._num.used_variables(negative_only)
        for factor in self._den:
            used |= factor.used_variables(negative_only)
        return used

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentRational.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if not self._den and not other._den:
            return LaurentRational._make(self._num + other._num, {})
        lcm = dict(self._den)
        for f, m in other._den.items():
            if lcm.get(f, 0) < m:
                lcm[f] = m
        left = self._num * _expand({f: m - self._den.get(f, 0) for f, m in lcm.items()})
        right = other._num * _expand({f: m - other._den.get(f, 0) for f, m in lcm.items()})
        return LaurentRational._make(left + right, lcm)

    __radd__ = __add__

    def __neg__(self):
        return LaurentRational._make(-self._num, self._den)

    def __sub__(self, other):
        try:
            other = LaurentRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = LaurentRational.coerce(other)
        except TypeError:
            return NotImplemented
        num = self._num * other._num
        if num.is_zero:
            return LaurentRational._make(num, {})
        factors = dict(self._den)
        for f, m in other._den.items():
            factors[f] = factors.get(f, 0) + m
        return LaurentRational._make(num, factors)

    __rmul__ = __mul__

    def inverse(self) -> 'LaurentRational':
        if self.is_zero:
            raise DivisionByZeroFunction("Inverse of the zero function")
        factors = {}
        num = _attach_factor(_expand(self._den), factors, self._num, 1)
        return LaurentRational._make(num, factors)

    def __truediv__(self, other):
        try:
            other = LaurentRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return LaurentRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_monomial:
            coef, mono = self.as_monomial()
            return LaurentRational._make(LaurentPoly({mono ** k: _coef_pow(coef, k)}), {})
        factors = {f: m * k for f, m in self._den.items()} if k else {}
        return LaurentRational._make(self._num ** k, factors)

    def __eq__(self, other):
        try:
            other = LaurentRational.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    # -- substitution / evaluation ---------------------------------------

    def substitute(self, bindings: Mapping) -> 'LaurentRational':
        return substitute(self, bindings)

    def evaluate(self, assignment: Mapping) -> complex:
        return evaluate_numeric(self, assignment)

    # -- presentation -----------------------------------------------------

    def text(self) -> str:
        """Каноническая запись: числитель и развёрнутый знаменатель."""
        if not self._den:
            return self._num.text()
        return f'({self._num.text()}) / ({self.denominator.text()})'

    def factored_text(self) -> str:
        if not self._den:
            return self._num.text()
        den = '*'.join(f'({f.text()})' + (f'^{m}' if m > 1 else '') for f, m in self.factors())
        return f'({self._num.text()}) / {den}'

    def to_json(self) -> dict:
        return {'num': self._num.to_json(), 'den': self.denominator.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> 'LaurentRational':
        return cls(LaurentPoly.from_json(data['num']), LaurentPoly.from_json(data['den']))

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f'LaurentRational({self.factored_text()})'


Scalar = Union[int, Fraction, CyclotomicNumber]
RationalLike = Union[Scalar, Monomial, LaurentPoly, LaurentRational]


def var(name: str) -> LaurentRational:
    return LaurentRational.var(name)


def mono(coef=1, **powers) -> LaurentRational:
    return LaurentRational.monomial(coef, **powers)


def arith(lhs: RationalLike, rhs: RationalLike, op: str) -> LaurentRational:
    """
    Арифметика над рациональными функциями.

    Args:
        op: один из '+', '-', '*', '/'
    """
    lhs = LaurentRational.coerce(lhs)
    rhs = LaurentRational.coerce(rhs)
    if op == '+':
        return lhs + rhs
    if op == '-':
        return lhs - rhs
    if op == '*':
        return lhs * rhs
    if op == '/':
        return lhs / rhs
    raise ValueError(f"Unknown operation '{op}'")


def equal(lhs: RationalLike, rhs: RationalLike) -> bool:
    return LaurentRational.coerce(lhs) == LaurentRational.coerce(rhs)


def _substitute_poly(poly: LaurentPoly, values: dict) -> LaurentRational:
    total = LaurentRational(0)
    for mono_, c in poly.items():
        exps = list(mono_.exps)
        term = LaurentRational(c)
        for idx, value in values.items():
            e = exps[idx]
            if e:
                exps[idx] = 0
                term = term * value ** e
        total = total + term * LaurentRational.coerce(Monomial._from_tuple(tuple(exps)))
    return total


def substitute(f: RationalLike, bindings: Mapping) -> LaurentRational:
    """
    Подстановка переменных.

    Args:
        f: рациональная функция
        bindings: {имя переменной: значение (скаляр, моном, многочлен, рациональная функция)}
    Raises:
        BindingError: неизвестная переменная или 0 вместо переменной в отрицательной степени
        DivisionByZeroFunction: множитель знаменателя обращается в ноль
    """
    f = LaurentRational.coerce(f)
    if not bindings:
        return f
    values = {variable_index(name): LaurentRational.coerce(value) for name, value in bindings.items()}
    negative = f.used_variables(negative_only=True)
    for idx, value in values.items():
        if value.is_zero and idx in negative:
            raise BindingError(f"Variable {VARIABLES[idx]} occurs with negative exponent and is bound to 0")

    if all(v.is_zero or v.is_monomial for v in values.values()):
        mapping = {
            idx: (Fraction(0), Monomial()) if v.is_zero else v.as_monomial()
            for idx, v in values.items()
        }
        num = f._num.substitute_monomials(mapping)
        factors = {}
        for factor, mult in f._den.items():
            image = factor.substitute_monomials(mapping)
            if image.is_zero:
                raise DivisionByZeroFunction(f"Factor {factor.text()} vanishes after substitution")
            num = _attach_factor(num, factors, image, mult)
        return LaurentRational._make(num, factors)

    result = _substitute_poly(f._num, values)
    for factor, mult in f._den.items():
        image = _substitute_poly(factor, values)
        if image.is_zero:
            raise DivisionByZeroFunction(f"Factor {factor.text()} vanishes after substitution")
        result = result / image ** mult
    return result


def evaluate_numeric(f: RationalLike, assignment: Mapping) -> complex:
    """
    Численное значение f в точке.

    Raises:
        BindingError: не задана используемая переменная
        NumericPoleError: знаменатель численно неотличим от нуля
    """
    f = LaurentRational.coerce(f)
    vec = np.ones(_NVARS, dtype=complex)
    provided = set()
    for name, value in assignment.items():
        idx = variable_index(name)
        vec[idx] = complex(value)
        provided.add(idx)
    missing = f.used_variables() - provided
    if missing:
        raise BindingError(f"No value for variables: {', '.join(VARIABLES[i] for i in sorted(missing))}")

    eps = _numeric_eps()
    num, _ = f._num.evaluate(vec)
    den, den_scale = complex(1), 1.0
    for factor, mult in f._den.items():
        value, scale = factor.evaluate(vec)
        den *= value ** mult
        den_scale *= scale ** mult
    if not np.isfinite(num) or not np.isfinite(den) or abs(den) <= eps * max(1.0, den_scale):
        logger.debug(f"Numeric pole: |den|={abs(den)!r}, scale={den_scale!r}")
        raise NumericPoleError(f"Denominator vanishes numerically (|den|={abs(den):.3e})")
    return num / den


def geometric_sum(first: RationalLike, ratio: RationalLike) -> LaurentRational:
    """
    Σ_{n>=0} first * ratio^n = first / (1 - ratio) как формальное тождество.

    Raises:
        DivergentSeriesError: ratio тождественно равно 1
    """
    first = LaurentRational.coerce(first)
    one_minus = 1 - LaurentRational.coerce(ratio)
    if one_minus.is_zero:
        raise DivergentSeriesError("Geometric ratio is identically 1")
    return first / one_minus


def _ratio_key(ratio: LaurentRational):
    if ratio.is_monomial:
        coef, mono_ = ratio.as_monomial()
        if isinstance(coef, Fraction):
            return coef, mono_
    return None


class GeometricSequence:
    """
    Конечная сумма геометрических последовательностей n -> first * ratio^n, n >= 0.
    Компоненты с одинаковым мономиальным отношением объединяются.
    """

    __slots__ = ('components',)

    def __init__(self, components: Iterable = ()):
        merged = []
        index = {}
        for first, ratio in components:
            first = LaurentRational.coerce(first)
            ratio = LaurentRational.coerce(ratio)
            if first.is_zero:
                continue
            key = _ratio_key(ratio)
            if key is not None and key in index:
                slot = merged[index[key]]
                slot[0] = slot[0] + first
            else:
                if key is not None:
                    index[key] = len(merged)
                merged.append([first, ratio])
        self.components = tuple((f, r) for f, r in merged if not f.is_zero)

    @classmethod
    def geometric(cls, first: RationalLike, ratio: RationalLike) -> 'GeometricSequence':
        return cls([(first, ratio)])

    @classmethod
    def constant(cls, value: RationalLike) -> 'GeometricSequence':
        return cls([(value, 1)])

    def __add__(self, other):
        if not isinstance(other, GeometricSequence):
            return NotImplemented
        return GeometricSequence(self.components + other.components)

    def __mul__(self, other):
        if isinstance(other, GeometricSequence):
            return GeometricSequence(
                (f1 * f2, r1 * r2) for f1, r1 in self.components for f2, r2 in other.components
            )
        try:
            other = LaurentRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GeometricSequence((f * other, r) for f, r in self.components)

    __rmul__ = __mul__

    def ratios(self) -> list:
        return [r for _, r in self.components]

    def term(self, n: int) -> LaurentRational:
        total = LaurentRational(0)
        for first, ratio in self.components:
            total = total + first * ratio ** n
        return total

    def partial_sum(self, count: int) -> LaurentRational:
        total = LaurentRational(0)
        for n in range(count):
            total = total + self.term(n)
        return total

    def total(self) -> LaurentRational:
        total = LaurentRational(0)
        for first, ratio in self.components:
            total = total + geometric_sum(first, ratio)
        return total

    def __repr__(self):
        inner = ', '.join(f'({f.factored_text()}; {r.factored_text()})' for f, r in self.components)
        return f'GeometricSequence[{inner}]'
