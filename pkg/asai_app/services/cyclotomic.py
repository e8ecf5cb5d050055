"""
Точные числа из круговых полей Q(ζ_{p^k}).

Элемент хранится вектором рациональных коэффициентов в базисе
1, ζ, ..., ζ^{φ(p^k)-1} после редукции по Φ_{p^k}. Уровень всегда
минимальный: число, лежащее в Q(ζ_{p^{k-1}}), хранится на уровне p^{k-1}.
"""
from fractions import Fraction

import numpy as np
import sympy


def _phi(prime: int, exponent: int) -> int:
    if exponent == 0:
        return 1
    return prime ** (exponent - 1) * (prime - 1)


def _reduce(dense: list, prime: int, exponent: int) -> list:
    """Сводит плотный вектор длины p^k (показатели mod p^k) к длине φ(p^k)."""
    if exponent == 0:
        return [dense[0]]
    n = prime ** exponent
    phi = _phi(prime, exponent)
    step = n // prime
    # ζ^φ = -(1 + ζ^step + ... + ζ^{(p-2)step})
    for e in range(n - 1, phi - 1, -1):
        c = dense[e]
        if c:
            dense[e] = 0
            base = e - phi
            for t in range(prime - 1):
                dense[base + t * step] -= c
    return dense[:phi]


def _descend(prime: int, exponent: int, coeffs: list) -> tuple:
    while exponent > 0 and all(c == 0 for e, c in enumerate(coeffs) if e % prime):
        coeffs = coeffs[::prime][:_phi(prime, exponent - 1)]
        exponent -= 1
    return exponent, coeffs


class CyclotomicNumber:
    """
    Элемент Q(ζ_{p^k}); неизменяемый.

    Args:
        prime: простое p (для рациональных чисел роли не играет)
        exponent: k, уровень p^k
        coeffs: коэффициенты при ζ^0, ζ^1, ... (любая длина, редуцируются)
    """

    __slots__ = ('prime', 'exponent', 'coeffs', '_hash')

    def __init__(self, prime: int, exponent: int, coeffs):
        if exponent < 0:
            raise ValueError("Cyclotomic exponent must be non-negative")
        n = prime ** exponent
        dense = [Fraction(0)] * n
        for e, c in enumerate(coeffs):
            dense[e % n] += Fraction(c)
        reduced = _reduce(dense, prime, exponent)
        self._set(prime, *_descend(prime, exponent, reduced))

    def _set(self, prime, exponent, coeffs):
        self.prime = prime
        self.exponent = exponent
        self.coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def _make(cls, prime, exponent, coeffs):
        obj = object.__new__(cls)
        obj._set(prime, *_descend(prime, exponent, list(coeffs)))
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, value, prime: int = 2) -> 'CyclotomicNumber':
        return cls._make(prime, 0, [Fraction(value)])

    @classmethod
    def zeta(cls, prime: int, exponent: int, power: int = 1) -> 'CyclotomicNumber':
        """ζ_{p^k}^power"""
        n = prime ** exponent
        dense = [Fraction(0)] * n
        dense[power % n] = Fraction(1)
        return cls._make(prime, exponent, _reduce(dense, prime, exponent))

    # -- structure --------------------------------------------------------

    @property
    def level(self) -> int:
        return self.prime ** self.exponent

    @property
    def is_rational(self) -> bool:
        return self.exponent == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return self.exponent == 0 and self.coeffs[0] == 0

    def __bool__(self):
        return not self.is_zero()

    def _lift(self, exponent: int) -> list:
        phi = _phi(self.prime, exponent)
        out = [Fraction(0)] * phi
        mult = self.prime ** (exponent - self.exponent)
        for e, c in enumerate(self.coeffs):
            if c:
                out[e * mult] = c
        return out

    @staticmethod
    def coerce(value) -> 'CyclotomicNumber':
        if isinstance(value, CyclotomicNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return CyclotomicNumber.rational(value)
        raise TypeError(f"Cannot coerce {value!r} to a cyclotomic number")

    def _common(self, other: 'CyclotomicNumber'):
        if self.exponent and other.exponent and self.prime != other.prime:
            raise ValueError(f"Mixed cyclotomic primes {self.prime} and {other.prime}")
        prime = self.prime if self.exponent else other.prime
        return prime, max(self.exponent, other.exponent)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            other = CyclotomicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        prime, exponent = self._common(other)
        if self.exponent == 0 and other.exponent == 0:
            return CyclotomicNumber._make(prime, 0, [self.coeffs[0] + other.coeffs[0]])
        left = _with_prime(self, prime)._lift(exponent)
        right = _with_prime(other, prime)._lift(exponent)
        return CyclotomicNumber._make(prime, exponent, [a + b for a, b in zip(left, right)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._make(self.prime, self.exponent, [-c for c in self.coeffs])

    def __sub__(self, other):
        try:
            other = CyclotomicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = CyclotomicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if other.exponent == 0:
            c = other.coeffs[0]
            return CyclotomicNumber._make(self.prime, self.exponent, [x * c for x in self.coeffs])
        if self.exponent == 0:
            return other * self
        prime, exponent = self._common(other)
        n = prime ** exponent
        left = self._lift(exponent)
        right = other._lift(exponent)
        dense = [Fraction(0)] * n
        for i, a in enumerate(left):
            if not a:
                continue
            for j, b in enumerate(right):
                if b:
                    dense[(i + j) % n] += a * b
        return CyclotomicNumber._make(prime, exponent, _reduce(dense, prime, exponent))

    __rmul__ = __mul__

    def galois(self, t: int) -> 'CyclotomicNumber':
        """Автоморфизм ζ -> ζ^t (t взаимно просто с p)"""
        if self.exponent == 0:
            return self
        if t % self.prime == 0:
            raise ValueError(f"{t} is not a unit modulo {self.prime}")
        n = self.level
        dense = [Fraction(0)] * n
        for e, c in enumerate(self.coeffs):
            if c:
                dense[(e * t) % n] += c
        return CyclotomicNumber._make(self.prime, self.exponent, _reduce(dense, self.prime, self.exponent))

    def conjugate(self) -> 'CyclotomicNumber':
        return self.galois(-1)

    def _conjugate_product(self) -> 'CyclotomicNumber':
        product = CyclotomicNumber.rational(1, self.prime)
        for t in range(2, self.level):
            if t % self.prime:
                product = product * self.galois(t)
        return product

    def norm(self) -> Fraction:
        if self.exponent == 0:
            return self.coeffs[0]
        return (self * self._conjugate_product()).to_fraction()

    def inverse(self) -> 'CyclotomicNumber':
        if self.is_zero():
            raise ZeroDivisionError("Inverse of zero cyclotomic number")
        if self.exponent == 0:
            return CyclotomicNumber.rational(1 / self.coeffs[0], self.prime)
        rest = self._conjugate_product()
        return rest * (1 / (self * rest).to_fraction())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, CyclotomicNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return CyclotomicNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.rational(1, self.prime)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        try:
            other = CyclotomicNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if self.exponent != other.exponent:
            return False
        if self.exponent and self.prime != other.prime:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.exponent == 0:
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.prime, self.exponent, self.coeffs))
        return self._hash

    # -- numeric / serialization -----------------------------------------

    def to_complex(self) -> complex:
        if self.exponent == 0:
            return complex(float(self.coeffs[0]))
        phi = len(self.coeffs)
        roots = np.exp(2j * np.pi * np.arange(phi) / self.level)
        weights = np.array([float(c) for c in self.coeffs])
        return complex(np.dot(weights, roots))

    def to_json(self) -> dict:
        return {'level': self.level, 'coeffs': [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> 'CyclotomicNumber':
        level = int(data['level'])
        coeffs = [Fraction(c) for c in data['coeffs']]
        if level == 1:
            return cls.rational(coeffs[0] if coeffs else 0)
        factors = sympy.factorint(level)
        if len(factors) != 1:
            raise ValueError(f"Cyclotomic level {level} is not a prime power")
        (prime, exponent), = factors.items()
        return cls(int(prime), int(exponent), coeffs)

    def __str__(self):
        if self.exponent == 0:
            return str(self.coeffs[0])
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            power = 'zeta' + str(self.level) + ('' if e == 1 else f'^{e}')
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(power)
            elif c == -1:
                parts.append('-' + power)
            else:
                parts.append(f'{c}*{power}')
        return ' + '.join(parts).replace('+ -', '- ')

    def __repr__(self):
        return f'CyclotomicNumber({self})'


def _with_prime(x: CyclotomicNumber, prime: int) -> CyclotomicNumber:
    if x.exponent == 0 and x.prime != prime:
        return CyclotomicNumber._make(prime, 0, x.coeffs)
    return x
