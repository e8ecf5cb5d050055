"""
Локальные L-, ε- и γ-факторы Asai-cube на стороне Вейля-Делиня
для неразветвлённых представлений над этальными кубическими алгебрами.

Все факторы возвращаются как LaurentRational в переменных u = q^{-1/2}, T = q^{-s}.
Замена s -> 1-s реализуется подстановкой T -> u^2/T.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from ..exceptions import (
    BasisClassError,
    BindingError,
    RamifiedInputError,
    UnsupportedPrimeError,
    UnsupportedShapeError,
    ZeroElementError,
)
from .padic_values import (
    BASE_FIELD,
    DiscriminantClass,
    FieldTag,
    LocalFieldElement,
    UnramChar,
    minus_one,
    quad_char_eval,
    smallest_nonresidue,
    total_valuation,
)
from .symbolic_core import LaurentRational, mono, substitute, var

logger = logging.getLogger(__name__)

SPLIT = 'split'
QUAD_LINE = 'quad_line'
CUBIC_UNRAM = 'cubic_unram'
CUBIC_TAME = 'cubic_tame'
SHAPES = (SPLIT, QUAD_LINE, CUBIC_UNRAM, CUBIC_TAME)

T = var('T')
U = var('u')

# s -> 1 - s: q^{-(1-s)} = q^{-1} q^{s}
ONE_MINUS_S = {'T': U ** 2 / T}

# Степень знаменателя L-фактора по T (T^k учитывается с весом k)
DEGREE_BOUND = {SPLIT: 8, QUAD_LINE: 8, CUBIC_UNRAM: 8, CUBIC_TAME: 4}


def abelian_L(value, t_power: int = 1, u_shift: int = 0) -> LaurentRational:
    """
    Абелев L-фактор 1 / (1 - value · T^t_power · u^{2·u_shift}).

    Например L(2s+1, ω) = abelian_L(w, 2, 1), L(3-2s, ω^{-1}) = abelian_L(1/w, -2, 3).
    """
    value = LaurentRational.coerce(value)
    return 1 / (1 - value * T ** t_power * U ** (2 * u_shift))


@dataclass(frozen=True)
class EtaleCubicShape:
    """
    Этальная кубическая алгебра E над F с вычетной характеристикой p.

    Args:
        kind: split | quad_line | cubic_unram | cubic_tame
        p: нечётное простое (p != 3 для cubic_tame)
    """
    kind: str
    p: int
    factors: Tuple[FieldTag, ...] = field(init=False)

    def __post_init__(self):
        if self.kind not in SHAPES:
            raise UnsupportedShapeError(f"Unsupported shape '{self.kind}', expected one of {', '.join(SHAPES)}")
        if self.p == 2:
            raise UnsupportedPrimeError("Residue characteristic 2 is not supported")
        if self.kind == CUBIC_TAME and self.p == 3:
            raise UnsupportedPrimeError("Tame cubic shape requires p != 3")
        factors = {
            SPLIT: (BASE_FIELD, BASE_FIELD, BASE_FIELD),
            QUAD_LINE: (FieldTag(1, 2, 'E1'), BASE_FIELD),
            CUBIC_UNRAM: (FieldTag(1, 3, 'E'),),
            CUBIC_TAME: (FieldTag(3, 1, 'E'),),
        }[self.kind]
        object.__setattr__(self, 'factors', factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def discriminant_class(self) -> DiscriminantClass:
        """Класс дискриминантной алгебры K: -3 для ручного кубического, неквадрат для F'×F."""
        if self.kind == CUBIC_TAME:
            return DiscriminantClass.of(-3, self.p)
        if self.kind == QUAD_LINE:
            return DiscriminantClass.of(smallest_nonresidue(self.p), self.p)
        return DiscriminantClass.of(1, self.p)

    def omega_k_minus_one(self) -> int:
        return quad_char_eval(self.discriminant_class(), minus_one())

    def reference_discriminant(self) -> LocalFieldElement:
        """Δ_{E/F}(α) эталонного базиса: 3^{-3}ϖ^{-2} для ручного кубического, единица иначе."""
        if self.kind == CUBIC_TAME:
            return LocalFieldElement(-2, Fraction(1, 27))
        if self.kind == QUAD_LINE:
            return LocalFieldElement(0, Fraction(smallest_nonresidue(self.p)))
        return LocalFieldElement(0, Fraction(1))

    @classmethod
    def from_name(cls, name: str, p: int) -> 'EtaleCubicShape':
        return cls(name, p)


@dataclass(frozen=True)
class SatakeData:
    """Параметры Сатаке (α, β) главной серии одного множителя E_i."""
    alpha: LaurentRational
    beta: LaurentRational
    conductor: int = 0

    def __post_init__(self):
        alpha = LaurentRational.coerce(self.alpha)
        beta = LaurentRational.coerce(self.beta)
        if alpha.is_zero or beta.is_zero:
            raise ZeroElementError("Satake parameters must be nonzero")
        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'beta', beta)

    @classmethod
    def symbolic(cls, index: int) -> 'SatakeData':
        return cls(var(f'a{index}'), var(f'b{index}'))

    def contragredient(self) -> 'SatakeData':
        return SatakeData(self.alpha.inverse(), self.beta.inverse(), self.conductor)

    def central_value(self) -> LaurentRational:
        return self.alpha * self.beta

    def chars(self, tag: FieldTag) -> Tuple[UnramChar, UnramChar]:
        return UnramChar(self.alpha, tag), UnramChar(self.beta, tag)

    def __eq__(self, other):
        return (
            isinstance(other, SatakeData)
            and self.conductor == other.conductor
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    __hash__ = None


@dataclass(frozen=True)
class AsaiRepData:
    """Π = π_1 × ... × π_r над E = E_1 × ... × E_r и его параметры Сатаке."""
    shape: EtaleCubicShape
    satake: Tuple[SatakeData, ...]

    def __post_init__(self):
        satake = tuple(self.satake)
        if len(satake) != self.shape.rank:
            raise ValueError(
                f"Shape {self.shape.kind} needs {self.shape.rank} Satake pairs, got {len(satake)}"
            )
        object.__setattr__(self, 'satake', satake)

    @classmethod
    def symbolic(cls, shape: EtaleCubicShape) -> 'AsaiRepData':
        return cls(shape, tuple(SatakeData.symbolic(i + 1) for i in range(shape.rank)))

    @property
    def dimension(self) -> int:
        return 2 ** 3

    def omega_value(self) -> LaurentRational:
        """ω_Π(ϖ_F) = Π (α_i β_i)^{e_i}"""
        w = LaurentRational(1)
        for data, tag in zip(self.satake, self.shape.factors):
            w = w * data.central_value() ** tag.e
        return w

    def require_unramified(self):
        for i, data in enumerate(self.satake, start=1):
            if data.conductor:
                raise RamifiedInputError(f"Factor {i} has conductor exponent {data.conductor}; only unramified data is supported")


@dataclass(frozen=True)
class LocalFactorTriple:
    """(L, ε, γ) с инвариантом γ = ε · L(1-s, ∨) / L(s)"""
    L: LaurentRational
    eps: LaurentRational
    gamma: LaurentRational

    def __post_init__(self):
        if not self.eps.is_monomial:
            raise ValueError(f"ε-factor must be a monomial, got {self.eps.text()}")

    def to_json(self) -> dict:
        return {'L': self.L.to_json(), 'eps': self.eps.to_json(), 'gamma': self.gamma.to_json()}


def contragredient(rep: AsaiRepData) -> AsaiRepData:
    return AsaiRepData(rep.shape, tuple(data.contragredient() for data in rep.satake))


def at_one_minus_s(f: LaurentRational) -> LaurentRational:
    return substitute(f, ONE_MINUS_S)


def tate_factors(chi: UnramChar, psi_twist: Optional[LocalFieldElement] = None) -> LocalFactorTriple:
    """
    L-, ε- и γ-факторы Тейта неразветвлённого характера χ поля с данными (e, f).

    Args:
        chi: неразветвлённый характер, v = χ(ϖ)
        psi_twist: a в ψ^a (ψ кондуктора o); по умолчанию единица
    Returns:
        LocalFactorTriple: L = 1/(1 - v T^f), ε = χ(a)|a|^{s-1/2}
    """
    f = chi.field.f
    k = 0 if psi_twist is None else psi_twist.in_field(chi.field).valuation
    if psi_twist is not None and psi_twist.is_zero:
        raise ZeroElementError("ψ-twist by 0")
    v = chi.value
    L = abelian_L(v, f)
    eps = v ** k * mono(T=f * k, u=-f * k)
    dual = at_one_minus_s(abelian_L(v.inverse(), f))
    return LocalFactorTriple(L, eps, eps * dual / L)


def asai_eigen_factors(rep: AsaiRepData) -> List[Tuple[LaurentRational, int]]:
    """
    Множители L(s, As Π) = Π 1/(1 - c T^k) в виде списка (c, k).
    """
    rep.require_unramified()
    kind = rep.shape.kind
    if kind == SPLIT:
        pairs = [(d.alpha, d.beta) for d in rep.satake]
        factors = []
        for choice in itertools.product((0, 1), repeat=3):
            c = LaurentRational(1)
            for pair, pick in zip(pairs, choice):
                c = c * pair[pick]
            factors.append((c, 1))
        return factors
    if kind == QUAD_LINE:
        quad, line = rep.satake
        factors = []
        for g in (line.alpha, line.beta):
            factors.append((quad.alpha * g, 1))
            factors.append((quad.beta * g, 1))
            factors.append((quad.alpha * quad.beta * g ** 2, 2))
        return factors
    (data,) = rep.satake
    a, b = data.alpha, data.beta
    if kind == CUBIC_UNRAM:
        return [(a, 1), (b, 1), (a ** 2 * b, 3), (a * b ** 2, 3)]
    return [(a ** 3, 1), (b ** 3, 1), (a ** 2 * b, 1), (a * b ** 2, 1)]


def asai_cube_L(rep: AsaiRepData) -> LaurentRational:
    result = LaurentRational(1)
    for c, k in asai_eigen_factors(rep):
        result = result * abelian_L(c, k)
    logger.debug(f"asai_cube_L({rep.shape.kind}): {result.factored_text()}")
    return result


def degree_in_T(rep: AsaiRepData) -> int:
    """Взвешенная степень знаменателя L(s, As Π) по T."""
    degree = sum(k for _, k in asai_eigen_factors(rep))
    if degree > 8:
        raise ValueError(f"Degree {degree} exceeds the tensor dimension")
    return degree


def _psi_twist_multiplier(w: LaurentRational, k: int) -> LaurentRational:
    # ω(a)^4 |a|^{8(s-1/2)}
    return w ** (4 * k) * mono(T=8 * k, u=-8 * k)


def asai_cube_eps(
    rep: AsaiRepData,
    psi_twist: Optional[LocalFieldElement] = None,
    delta: Optional[LocalFieldElement] = None,
) -> LaurentRational:
    """
    ε(s, As Π, ψ^a) = ω_Π(Δ)^{-1} |Δ|^{-2s+1} ω_{K/F}(-1) для ψ кондуктора o,
    затем закон ψ^a: множитель ω(a)^4 |a|^{8(s-1/2)}.

    Для расщеплённых и неразветвлённых форм Δ единица и ε = 1.

    Args:
        rep: данные представления
        psi_twist: a; по умолчанию единица
        delta: Δ_{E/F}(α) эталонного базиса; по умолчанию shape.reference_discriminant()
    """
    rep.require_unramified()
    delta = delta if delta is not None else rep.shape.reference_discriminant()
    if delta.is_zero:
        raise ZeroElementError("Discriminant Δ = 0")
    w = rep.omega_value()
    v = delta.valuation
    eps = w ** (-v) * mono(T=-2 * v, u=2 * v) * rep.shape.omega_k_minus_one()
    if psi_twist is not None:
        if psi_twist.is_zero:
            raise ZeroElementError("ψ-twist by 0")
        eps = eps * _psi_twist_multiplier(w, psi_twist.valuation)
    return eps


def asai_cube_eps_inductive(rep: AsaiRepData, psi_twist: Optional[LocalFieldElement] = None) -> LaurentRational:
    """
    ε для ручного кубического E через индуктивность:
    As Π = χ1|F ⊕ χ2|F ⊕ Ind(χ1^2 χ2) ⊕ Ind(χ1 χ2^2), λ_{E/F}(ψ)^2 = ω_{K/F}(-1),
    ψ_E имеет кондуктор (3ϖ_E^2)^{-1} o_E.
    """
    if rep.shape.kind != CUBIC_TAME:
        raise UnsupportedShapeError("Inductive ε route is implemented for the tame cubic shape only")
    rep.require_unramified()
    (data,) = rep.satake
    tag = rep.shape.factors[0]
    chi1, chi2 = data.chars(tag)
    different = LocalFieldElement(2, Fraction(3), tag)
    eps = LaurentRational(rep.shape.omega_k_minus_one())
    for chi in (chi1.restrict(), chi2.restrict()):
        eps = eps * tate_factors(chi).eps
    for chi in (chi1 ** 2 * chi2, chi1 * chi2 ** 2):
        eps = eps * tate_factors(chi, different).eps
    if psi_twist is not None:
        eps = eps * _psi_twist_multiplier(rep.omega_value(), psi_twist.valuation)
    return eps


def asai_cube_gamma(rep: AsaiRepData, psi_twist: Optional[LocalFieldElement] = None) -> LocalFactorTriple:
    """γ = ε · L(1-s, As Π∨) / L(s, As Π)"""
    L = asai_cube_L(rep)
    dual = at_one_minus_s(asai_cube_L(contragredient(rep)))
    eps = asai_cube_eps(rep, psi_twist)
    return LocalFactorTriple(L, eps, eps * dual / L)


def correction_factor(rep: AsaiRepData, delta: Optional[LocalFieldElement] = None) -> LaurentRational:
    """
    ω_Π(Δ) |Δ|^{2s-1} ω_{K/F}(-1).

    Raises:
        ZeroElementError: Δ = 0
    """
    delta = delta if delta is not None else rep.shape.reference_discriminant()
    if delta.is_zero:
        raise ZeroElementError("Discriminant Δ = 0")
    if not delta.field.is_base:
        raise ValueError("Δ must be an element of F")
    v = total_valuation(delta, rep.shape.p)
    return rep.omega_value() ** v * mono(T=2 * v, u=-2 * v) * rep.shape.omega_k_minus_one()


@dataclass(frozen=True)
class BasisChange:
    """Замена базиса с матрицей перехода A; важен только det A."""
    det_a: LocalFieldElement

    def multiplier(self, w: LaurentRational) -> LaurentRational:
        # ω(det A)^2 |det A|^{4s-2}
        if self.det_a.is_zero:
            raise ZeroElementError("Transition matrix must be invertible")
        k = self.det_a.valuation
        return w ** (2 * k) * mono(T=4 * k, u=-4 * k)

    def compose(self, other: 'BasisChange') -> 'BasisChange':
        return BasisChange(self.det_a * other.det_a)

    def apply_to_discriminant(self, delta: LocalFieldElement) -> LocalFieldElement:
        return self.det_a ** 2 * delta


@dataclass(frozen=True)
class PsiTwist:
    """ψ -> ψ^a"""
    a: LocalFieldElement

    def multiplier(self, w: LaurentRational) -> LaurentRational:
        if self.a.is_zero:
            raise ZeroElementError("ψ-twist by 0")
        return _psi_twist_multiplier(w, self.a.valuation)

    def compose(self, other: 'PsiTwist') -> 'PsiTwist':
        return PsiTwist(self.a * other.a)


Change = Union[BasisChange, PsiTwist]


def transform_gamma_psr(gamma_psr: LaurentRational, change: Change, omega: LaurentRational) -> LaurentRational:
    """
    Переносит γ_PSR на другой базис или характер ψ^a.

    Args:
        gamma_psr: γ_PSR для исходных данных
        change: BasisChange(det A) или PsiTwist(a)
        omega: ω_Π(ϖ_F)
    """
    return gamma_psr * change.multiplier(LaurentRational.coerce(omega))


def basis_change_for(rep: AsaiRepData, delta: LocalFieldElement) -> BasisChange:
    """
    BasisChange, переводящая эталонный Δ_0 в Δ = det(A)^2 Δ_0.

    Raises:
        BasisClassError: Δ и Δ_0 различны по модулю (F^×)^2
    """
    p = rep.shape.p
    reference = rep.shape.reference_discriminant()
    if DiscriminantClass.of(delta, p) != DiscriminantClass.of(reference, p):
        raise BasisClassError(f"Δ = {delta} is not in the square class of the reference discriminant {reference}")
    shift = total_valuation(delta, p) - total_valuation(reference, p)
    return BasisChange(LocalFieldElement(shift // 2))


def pole_region_check(
    rep: AsaiRepData,
    weights: Sequence[Tuple[Fraction, Fraction]],
    shift: Union[Fraction, Sequence[Fraction]] = Fraction(0),
) -> dict:
    """
    Проверяет, что все полюса L(s, As Π_λ) лежат в Re s <= -L(Π_λ).

    Args:
        rep: символьные данные (параметры Сатаке - мономы от a_i, b_i)
        weights: (wt(χ1), wt(χ2)) для каждого множителя, |χ(ϖ_{E_i})| = q^{-f_i·wt}
        shift: λ_i (одно число для всех множителей или список)
    Returns:
        dict: {'poles': [Re s], 'L': L(Π_λ), 'bound': -L(Π_λ), 'passes': bool}
    """
    tags = rep.shape.factors
    shifts = [Fraction(shift)] * len(tags) if not isinstance(shift, (list, tuple)) else [Fraction(x) for x in shift]
    magnitude = {}
    level = Fraction(0)
    for i, (tag, (wa, wb), lam) in enumerate(zip(tags, weights, shifts), start=1):
        wa, wb = Fraction(wa) + lam, Fraction(wb) + lam
        magnitude[f'a{i}'] = tag.f * wa
        magnitude[f'b{i}'] = tag.f * wb
        level += tag.degree * min(wa, wb)

    poles = []
    for c, k in asai_eigen_factors(rep):
        if not c.is_monomial:
            raise BindingError(f"Pole regions need symbolic Satake monomials, got {c.text()}")
        coef, monomial = c.as_monomial()
        if coef != 1:
            raise BindingError(f"Pole regions need symbolic Satake monomials, got {c.text()}")
        exponent = sum(e * magnitude[name] for name, e in monomial.exponents().items())
        # |c| = q^{-exponent}, |T|^k = 1/|c|
        poles.append(Fraction(-exponent, k))
    passes = all(re_s <= -level for re_s in poles)
    if not passes:
        logger.warning(f"Pole region violated for {rep.shape.kind}: poles={poles}, L={level}")
    return {'poles': poles, 'L': level, 'bound': -level, 'passes': passes}
