"""
Значения p-адических характеров: аддитивный характер ψ (точные корни из единицы),
неразветвлённые мультипликативные характеры, символ Гильберта
и квадратичный характер дискриминантной алгебры.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from sympy import multiplicity
from sympy.ntheory import is_quad_residue

from ..exceptions import UnsupportedPrimeError, ZeroElementError
from .cyclotomic import CyclotomicNumber
from .symbolic_core import LaurentRational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldTag:
    """
    Конечное расширение F с индексом ветвления e и степенью инерции f.
    """
    e: int = 1
    f: int = 1
    name: str = 'F'

    def __post_init__(self):
        if self.e < 1 or self.f < 1:
            raise ValueError(f"Invalid ramification data e={self.e}, f={self.f}")

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def is_base(self) -> bool:
        return self.e == 1 and self.f == 1


BASE_FIELD = FieldTag()


@dataclass(frozen=True)
class LocalFieldElement:
    """
    Элемент локального поля: ϖ^valuation · unit.

    Args:
        valuation: порядок в нормировке своего поля
        unit: рациональный представитель единицы (0 для нулевого элемента)
        field: поле, в котором задан порядок
    """
    valuation: int = 0
    unit: Fraction = Fraction(1)
    field: FieldTag = BASE_FIELD

    def __post_init__(self):
        object.__setattr__(self, 'unit', Fraction(self.unit))
        object.__setattr__(self, 'valuation', int(self.valuation))

    @classmethod
    def zero(cls, field: FieldTag = BASE_FIELD) -> 'LocalFieldElement':
        return cls(0, Fraction(0), field)

    @classmethod
    def uniformizer(cls, field: FieldTag = BASE_FIELD) -> 'LocalFieldElement':
        return cls(1, Fraction(1), field)

    @classmethod
    def from_rational(cls, value, p: int) -> 'LocalFieldElement':
        """Элемент Q_p, заданный рациональным числом."""
        value = Fraction(value)
        if value == 0:
            return cls.zero()
        num_val = multiplicity(p, abs(value.numerator))
        den_val = multiplicity(p, value.denominator)
        unit = value / Fraction(p) ** (num_val - den_val)
        return cls(num_val - den_val, unit)

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def is_unit(self) -> bool:
        return not self.is_zero and self.valuation == 0

    def _require_nonzero(self):
        if self.is_zero:
            raise ZeroElementError("Operation undefined at 0")

    def in_field(self, target: FieldTag) -> 'LocalFieldElement':
        """Вложение элемента базового поля F в расширение target."""
        if self.field == target:
            return self
        if not self.field.is_base:
            raise ValueError(f"Cannot move an element of {self.field.name} to {target.name}")
        return LocalFieldElement(self.valuation * target.e, self.unit, target)

    def __mul__(self, other: 'LocalFieldElement') -> 'LocalFieldElement':
        if not isinstance(other, LocalFieldElement):
            return NotImplemented
        if self.field != other.field:
            if self.field.is_base:
                return self.in_field(other.field) * other
            return self * other.in_field(self.field)
        if self.is_zero or other.is_zero:
            return LocalFieldElement.zero(self.field)
        return LocalFieldElement(self.valuation + other.valuation, self.unit * other.unit, self.field)

    def inverse(self) -> 'LocalFieldElement':
        self._require_nonzero()
        return LocalFieldElement(-self.valuation, 1 / self.unit, self.field)

    def __truediv__(self, other: 'LocalFieldElement') -> 'LocalFieldElement':
        return self * other.inverse()

    def __pow__(self, k: int) -> 'LocalFieldElement':
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_zero:
            return LocalFieldElement(0, Fraction(1 if k == 0 else 0), self.field)
        return LocalFieldElement(self.valuation * k, self.unit ** k, self.field)

    def __neg__(self) -> 'LocalFieldElement':
        return LocalFieldElement(self.valuation, -self.unit, self.field)

    def to_fraction(self, p: int) -> Fraction:
        """Значение элемента Q_p как рационального числа (ϖ = p)."""
        if not self.field.is_base:
            raise ValueError("Only elements of the base field have a rational value")
        if self.is_zero:
            return Fraction(0)
        return self.unit * Fraction(p) ** self.valuation

    def abs_exponent(self) -> int:
        """|x| = q_field^{-abs_exponent}; абсолютное значение в нормировке поля элемента."""
        self._require_nonzero()
        return self.valuation

    def to_json(self) -> dict:
        return {'valuation': self.valuation, 'unit': str(self.unit), 'e': self.field.e, 'f': self.field.f}


@dataclass(frozen=True)
class UnramChar:
    """
    Неразветвлённый характер поля field, заданный значением на униформизаторе.
    """
    value: LaurentRational
    field: FieldTag = BASE_FIELD

    def __post_init__(self):
        value = LaurentRational.coerce(self.value)
        if value.is_zero:
            raise ZeroElementError("Unramified character value at the uniformizer must be nonzero")
        object.__setattr__(self, 'value', value)

    def __call__(self, x: LocalFieldElement) -> LaurentRational:
        return unram_char_eval(self, x)

    def __mul__(self, other: 'UnramChar') -> 'UnramChar':
        if self.field != other.field:
            raise ValueError("Characters of different fields")
        return UnramChar(self.value * other.value, self.field)

    def __pow__(self, k: int) -> 'UnramChar':
        return UnramChar(self.value ** k, self.field)

    def inverse(self) -> 'UnramChar':
        return UnramChar(self.value.inverse(), self.field)

    def restrict(self) -> 'UnramChar':
        """Ограничение на F^×: ϖ_F = ϖ_E^e · единица."""
        return UnramChar(self.value ** self.field.e, BASE_FIELD)

    def __eq__(self, other):
        return isinstance(other, UnramChar) and self.field == other.field and self.value == other.value

    __hash__ = None


def unram_char_eval(chi: UnramChar, x: LocalFieldElement) -> LaurentRational:
    """
    χ(x) = v^{ord(x)}, где v = χ(ϖ); единичная часть даёт 1.

    Raises:
        ZeroElementError: x = 0
    """
    if x.is_zero:
        raise ZeroElementError("Character evaluated at 0")
    return chi.value ** x.in_field(chi.field).valuation


def _check_odd(p: int):
    if p == 2:
        raise UnsupportedPrimeError("Residue characteristic 2 is not supported")


def psi_eval(x: Union[LocalFieldElement, Fraction, int], p: int) -> CyclotomicNumber:
    """
    Стандартный аддитивный характер Q_p с кондуктором Z_p: ψ(x) = ζ_{p^k}^c, где c/p^k
    главная часть x.

    Args:
        x: элемент Q_p (LocalFieldElement базового поля или рациональное число)
        p: нечётное простое
    Returns:
        CyclotomicNumber: точное значение ψ(x)
    """
    _check_odd(p)
    value = x.to_fraction(p) if isinstance(x, LocalFieldElement) else Fraction(x)
    k, c = psi_exponent(value, p)
    if k == 0:
        return CyclotomicNumber.rational(1, p)
    return CyclotomicNumber.zeta(p, k, c)


def psi_exponent(value: Fraction, p: int) -> tuple:
    """
    Главная часть value в виде c / p^k, 0 <= c < p^k.

    Returns:
        (k, c): ψ(value) = ζ_{p^k}^c
    """
    if value == 0:
        return 0, 0
    den = value.denominator
    k = multiplicity(p, den)
    if k == 0:
        return 0, 0
    level = p ** k
    c = (value.numerator * pow(den // level, -1, level)) % level
    return k, c


def valuation(value: Fraction, p: int):
    """ord_p(value); +inf для нуля."""
    if value == 0:
        return math.inf
    return multiplicity(p, abs(value.numerator)) - multiplicity(p, value.denominator)


def _residue_unit(unit: Fraction, p: int) -> int:
    num, den = unit.numerator % p, unit.denominator % p
    if num == 0 or den == 0:
        raise ValueError(f"{unit} is not a {p}-adic unit")
    return (num * pow(den, -1, p)) % p


def _split(x: LocalFieldElement, p: int):
    if x.is_zero:
        raise ZeroElementError("Hilbert symbol of 0")
    if not x.field.is_base:
        raise ValueError("Hilbert symbol is taken over the base field")
    extra = multiplicity(p, abs(x.unit.numerator)) - multiplicity(p, x.unit.denominator)
    unit = x.unit / Fraction(p) ** extra
    return x.valuation + extra, unit


def total_valuation(x: LocalFieldElement, p: int) -> int:
    """ord_F(x) с учётом степеней p в рациональной единичной части."""
    return _split(x, p)[0]


def residue_character(unit: Fraction, p: int, f: int = 1) -> int:
    """
    Квадратичный характер единицы над полем вычетов F_{p^f}: u^{(q-1)/2}.
    Для рациональной единицы равен символу Лежандра в степени f.
    """
    _check_odd(p)
    if is_quad_residue(_residue_unit(Fraction(unit), p), p):
        return 1
    return -1 if f % 2 else 1


def hilbert_symbol(a: LocalFieldElement, b: LocalFieldElement, p: int, f: int = 1) -> int:
    """
    Квадратичный символ Гильберта (a, b) над неразветвлённым расширением Q_p степени f.

    Args:
        a: ненулевой элемент
        b: ненулевой элемент
        p: нечётное простое
        f: степень поля вычетов
    Returns:
        int: +1 или -1
    """
    _check_odd(p)
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    q = p ** f
    sign = -1 if (alpha * beta * ((q - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= residue_character(u, p, f)
    if alpha % 2:
        sign *= residue_character(v, p, f)
    return sign


def smallest_nonresidue(p: int) -> int:
    _check_odd(p)
    for n in range(2, p):
        if not is_quad_residue(n, p):
            return n
    raise ValueError(f"No quadratic nonresidue modulo {p}")


@dataclass(frozen=True)
class DiscriminantClass:
    """
    Класс Δ в F^×/(F^×)^2: чётность порядка и квадратичность единичной части.
    Представитель используется для вычисления символов.
    """
    representative: LocalFieldElement
    p: int
    f: int = 1
    parity: int = field(init=False)
    unit_square: bool = field(init=False)

    def __post_init__(self):
        valuation, unit = _split(self.representative, self.p)
        object.__setattr__(self, 'parity', valuation % 2)
        object.__setattr__(self, 'unit_square', residue_character(unit, self.p, self.f) == 1)

    @classmethod
    def of(cls, value, p: int, f: int = 1) -> 'DiscriminantClass':
        if not isinstance(value, LocalFieldElement):
            value = LocalFieldElement.from_rational(value, p)
        return cls(value, p, f)

    @property
    def is_trivial(self) -> bool:
        return self.parity == 0 and self.unit_square

    def __eq__(self, other):
        return (
            isinstance(other, DiscriminantClass)
            and (self.p, self.f, self.parity, self.unit_square) == (other.p, other.f, other.parity, other.unit_square)
        )

    def __hash__(self):
        return hash((self.p, self.f, self.parity, self.unit_square))


def quad_char_eval(d: DiscriminantClass, x: LocalFieldElement) -> int:
    """ω_{K/F}(x) = (d, x)_p; тривиален для расщеплённого K."""
    if d.is_trivial:
        return 1
    return hilbert_symbol(d.representative, x, d.p, d.f)


def minus_one() -> LocalFieldElement:
    return LocalFieldElement(0, Fraction(-1))
