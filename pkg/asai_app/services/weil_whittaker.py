"""
Функции Шварца-Брюа на F^2 (F = Q_p), представление Вейля ω_ψ группы GL_2(F),
голоморфные семейства функций Уиттекера и равномерные асимптотические оценки.

BoxTerm: (x, y) -> coef · ψ(γ1 x + γ2 y) · 1_{a1 + p^{m1} o}(x) · 1_{a2 + p^{m2} o}(y).
Меры du, dv самодвойственны относительно ψ, d^×t нормирована vol(o^×) = 1.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import WhittakerError
from .cyclotomic import CyclotomicNumber
from .local_factors import SatakeData
from .padic_values import FieldTag, psi_eval, psi_exponent, valuation
from .symbolic_core import LaurentPoly, LaurentRational, Monomial, evaluate_numeric, mono

logger = logging.getLogger(__name__)

Pair = Tuple[Fraction, Fraction]


def _u_power(k: int) -> Monomial:
    return Monomial(u=k)


@dataclass(frozen=True)
class BoxTerm:
    coef: LaurentPoly
    gamma: Pair
    center: Pair
    depth: Tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, 'coef', LaurentPoly.coerce(self.coef))
        object.__setattr__(self, 'gamma', tuple(Fraction(g) for g in self.gamma))
        object.__setattr__(self, 'center', tuple(Fraction(a) for a in self.center))
        object.__setattr__(self, 'depth', tuple(int(m) for m in self.depth))

    def contains(self, x: Fraction, y: Fraction, p: int) -> bool:
        (a1, a2), (m1, m2) = self.center, self.depth
        return valuation(x - a1, p) >= m1 and valuation(y - a2, p) >= m2

    def value(self, x: Fraction, y: Fraction, p: int) -> LaurentPoly:
        if not self.contains(x, y, p):
            return LaurentPoly()
        return self.coef * psi_eval(self.gamma[0] * x + self.gamma[1] * y, p)

    def support_exponent(self, p: int) -> int:
        """Наименьшее n >= 0 с носителем в p^{-n}o × p^{-n}o."""
        radius = 0
        for a, m in zip(self.center, self.depth):
            radius = max(radius, -min(valuation(a, p), m))
        return int(radius)

    def split(self, coordinate: int, p: int) -> List['BoxTerm']:
        """Разбиение ящика по одной координате на p подъящиков."""
        m = self.depth[coordinate]
        step = Fraction(p) ** m
        result = []
        for j in range(p):
            center = list(self.center)
            depth = list(self.depth)
            center[coordinate] += j * step
            depth[coordinate] = m + 1
            result.append(BoxTerm(self.coef, self.gamma, tuple(center), tuple(depth)))
        return result

    def to_json(self) -> dict:
        return {
            'coef': self.coef.to_json(),
            'twist': [str(g) for g in self.gamma],
            'center': [str(a) for a in self.center],
            'depth': list(self.depth),
        }


@dataclass(frozen=True)
class SchwartzFunction2D:
    """Конечная сумма BoxTerm над Q_p."""
    p: int
    terms: Tuple[BoxTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'terms', tuple(t for t in self.terms if not t.coef.is_zero))

    @classmethod
    def indicator(cls, p: int, center: Pair = (0, 0), depth: Tuple[int, int] = (0, 0), coef=1) -> 'SchwartzFunction2D':
        return cls(p, (BoxTerm(LaurentPoly.coerce(coef), (0, 0), center, depth),))

    @classmethod
    def unit_box(cls, p: int) -> 'SchwartzFunction2D':
        """1_{o × o}"""
        return cls.indicator(p)

    def __add__(self, other: 'SchwartzFunction2D') -> 'SchwartzFunction2D':
        if self.p != other.p:
            raise ValueError("Schwartz functions over different primes")
        return SchwartzFunction2D(self.p, self.terms + other.terms)

    def evaluate(self, x, y) -> LaurentPoly:
        x, y = Fraction(x), Fraction(y)
        total = LaurentPoly()
        for term in self.terms:
            total = total + term.value(x, y, self.p)
        return total

    def refine(self) -> 'SchwartzFunction2D':
        """Каждый ящик разбивается на p^2 подъящиков."""
        terms = []
        for term in self.terms:
            for half in term.split(0, self.p):
                terms.extend(half.split(1, self.p))
        return SchwartzFunction2D(self.p, tuple(terms))

    def support_exponent(self) -> int:
        return max((t.support_exponent(self.p) for t in self.terms), default=0)

    def sup_norm_bound(self, q: float) -> float:
        """Σ |coef| при u = q^{-1/2}; мажорирует sup |φ|."""
        return float(sum(abs(evaluate_numeric(t.coef, {'u': q ** -0.5})) for t in self.terms))

    def to_json(self) -> dict:
        return {'p': self.p, 'terms': [t.to_json() for t in self.terms]}


@dataclass(frozen=True)
class Generator:
    """
    Порождающие GL_2(F): m(t) = diag(t, t^{-1}), a(ν) = diag(ν, 1),
    n(b) = [[1, b], [0, 1]], w = [[0, 1], [-1, 0]].
    """
    kind: str
    value: Fraction = Fraction(0)

    def det_valuation(self, p: int) -> int:
        return int(valuation(self.value, p)) if self.kind == 'a' else 0

    def __str__(self):
        return 'w' if self.kind == 'w' else f'{self.kind}({self.value})'


def m(t) -> Generator:
    if Fraction(t) == 0:
        raise ValueError("m(t) needs t != 0")
    return Generator('m', Fraction(t))


def n(b) -> Generator:
    return Generator('n', Fraction(b))


def a(nu) -> Generator:
    if Fraction(nu) == 0:
        raise ValueError("a(ν) needs ν != 0")
    return Generator('a', Fraction(nu))


def w() -> Generator:
    return Generator('w')


def _act_m(term: BoxTerm, t: Fraction, p: int) -> List[BoxTerm]:
    # |t| φ(tx, ty)
    v = int(valuation(t, p))
    (a1, a2), (m1, m2), (g1, g2) = term.center, term.depth, term.gamma
    return [BoxTerm(term.coef.scale(1, _u_power(2 * v)), (g1 * t, g2 * t), (a1 / t, a2 / t), (m1 - v, m2 - v))]


def _act_a(term: BoxTerm, nu: Fraction, p: int) -> List[BoxTerm]:
    # φ(νx, y)
    v = int(valuation(nu, p))
    (a1, a2), (m1, m2), (g1, g2) = term.center, term.depth, term.gamma
    return [BoxTerm(term.coef, (g1 * nu, g2), (a1 / nu, a2), (m1 - v, m2))]


def _act_n(term: BoxTerm, b: Fraction, p: int) -> List[BoxTerm]:
    # ψ(bxy) φ(x, y); ящики дробятся, пока ψ(b(x-a1)(y-a2)) = 1 на ящике
    if b == 0:
        return [term]
    vb = int(valuation(b, p))
    pending = [term]
    coordinate = 0
    while pending[0].depth[0] + pending[0].depth[1] + vb < 0:
        pending = [piece for t in pending for piece in t.split(coordinate, p)]
        coordinate = 1 - coordinate
    result = []
    for t in pending:
        (a1, a2), (g1, g2) = t.center, t.gamma
        coef = t.coef * psi_eval(-b * a1 * a2, p)
        result.append(BoxTerm(coef, (g1 + b * a2, g2 + b * a1), t.center, t.depth))
    return result


def _act_w(term: BoxTerm, p: int) -> List[BoxTerm]:
    # ∫∫ φ(u, v) ψ(uy + vx) du dv
    (a1, a2), (m1, m2), (g1, g2) = term.center, term.depth, term.gamma
    coef = term.coef.scale(1, _u_power(2 * (m1 + m2))) * psi_eval(a1 * g1 + a2 * g2, p)
    return [BoxTerm(coef, (a2, a1), (-g2, -g1), (-m2, -m1))]


def weil_act(g: Generator, phi: SchwartzFunction2D) -> SchwartzFunction2D:
    """
    Действие порождающего g на φ по формулам представления Вейля.
    """
    p = phi.p
    terms = []
    for term in phi.terms:
        if g.kind == 'm':
            terms.extend(_act_m(term, g.value, p))
        elif g.kind == 'a':
            terms.extend(_act_a(term, g.value, p))
        elif g.kind == 'n':
            terms.extend(_act_n(term, g.value, p))
        elif g.kind == 'w':
            terms.extend(_act_w(term, p))
        else:
            raise ValueError(f"Unknown generator '{g.kind}'")
    return SchwartzFunction2D(p, tuple(terms))


def weil_act_word(word: Sequence[Generator], phi: SchwartzFunction2D) -> SchwartzFunction2D:
    """ω(g_1 ... g_k)φ = ω(g_1)(...(ω(g_k)φ))"""
    for g in reversed(list(word)):
        phi = weil_act(g, phi)
    return phi


def shintani(n: int, sp: SatakeData) -> LaurentRational:
    """
    u^n (α^{n+1} - β^{n+1}) / (α - β) = u^n Σ α^{n-k} β^k; 0 при n < 0.
    """
    if n < 0:
        return LaurentRational(0)
    total = LaurentRational(0)
    for k in range(n + 1):
        total = total + sp.alpha ** (n - k) * sp.beta ** k
    return total * mono(u=n)


@dataclass(frozen=True)
class WhittakerFamily:
    """
    Голоморфное семейство функций Уиттекера.

    PS: χ1, χ2 неразветвлённые (параметры Сатаке), φ - функция Шварца.
    DS: таблица значений W(a(ϖ^k)) с кручением |det|^λ.
    """
    kind: str
    satake: Optional[SatakeData] = None
    phi: Optional[SchwartzFunction2D] = None
    weights: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    table: Dict[int, LaurentPoly] = field(default_factory=dict)
    central_weight: Fraction = Fraction(0)
    prime: Optional[int] = None

    @classmethod
    def principal_series(cls, satake: SatakeData, phi: SchwartzFunction2D, weights=(0, 0)) -> 'WhittakerFamily':
        return cls('PS', satake=satake, phi=phi, weights=(Fraction(weights[0]), Fraction(weights[1])))

    @classmethod
    def discrete(cls, table: Dict[int, LaurentPoly], central_weight=0, prime: int = None) -> 'WhittakerFamily':
        return cls('DS', table={int(k): LaurentPoly.coerce(v) for k, v in table.items()},
                   central_weight=Fraction(central_weight), prime=prime)

    @property
    def p(self) -> Optional[int]:
        return self.phi.p if self.phi is not None else self.prime


def _require_half_integral(*values):
    for value in values:
        if (2 * Fraction(value)).denominator != 1:
            raise WhittakerError(f"Exact evaluation needs 2λ ∈ Z, got λ = {value}")


def _support_range(term: BoxTerm, p: int):
    """Множество k с t = p^k w в носителе (t, t^{-1}); конечный отрезок или None."""
    (a1, a2), (m1, m2) = term.center, term.depth
    v1, v2 = valuation(a1, p), valuation(a2, p)
    lo, hi = (m1, math.inf) if v1 >= m1 else (v1, v1)
    if v2 >= m2:
        hi = min(hi, -m2)
    else:
        lo, hi = max(lo, -v2), min(hi, -v2)
    if lo > hi or math.isinf(lo) or math.isinf(hi):
        if lo <= hi:
            raise WhittakerError("Unbounded support in t")
        return None
    return int(lo), int(hi)


def _shell_average(term: BoxTerm, k: int, p: int) -> LaurentPoly:
    """∫_{p^k o^×} φ_term(t, t^{-1}) d^×t как точное среднее по единицам mod p^M."""
    (a1, a2), (m1, m2), (g1, g2) = term.center, term.depth, term.gamma
    resolution = 1
    if valuation(a1, p) < m1:
        resolution = max(resolution, m1 - k)
    if valuation(a2, p) < m2:
        resolution = max(resolution, m2 + k)
    if g1 != 0:
        resolution = max(resolution, int(-valuation(g1, p)) - k)
    if g2 != 0:
        resolution = max(resolution, k - int(valuation(g2, p)))
    modulus = p ** resolution
    scale = Fraction(p) ** k

    counts = {}
    for unit in range(1, modulus):
        if unit % p == 0:
            continue
        x = scale * unit
        y = Fraction(pow(unit, -1, modulus)) / scale
        if not term.contains(x, y, p):
            continue
        key = psi_exponent(g1 * x + g2 * y, p)
        counts[key] = counts.get(key, 0) + 1
    if not counts:
        return LaurentPoly()
    top = max(e for e, _ in counts)
    level = p ** top
    dense = [0] * level
    for (e, c), count in counts.items():
        dense[(c * p ** (top - e)) % level] += count
    total = CyclotomicNumber(p, top, dense) if top else CyclotomicNumber.rational(dense[0], p)
    units = modulus - modulus // p
    return term.coef * (total / units)


def whittaker_eval(family: WhittakerFamily, lam: Sequence, word: Sequence[Generator]) -> LaurentPoly:
    """
    Значение W(φ, λ)(g) для g = слово из порождающих.

    Args:
        family: семейство PS или DS
        lam: (λ1, λ2) для PS, (λ,) для DS; 2λ ∈ Z
        word: g = g_1 ... g_k
    Returns:
        LaurentPoly: многочлен от a1, b1, u с круговыми коэффициентами
    """
    word = list(word)
    if family.kind == 'DS':
        return _whittaker_eval_ds(family, lam, word)
    p = family.p
    lam1, lam2 = (Fraction(x) for x in lam)
    _require_half_integral(lam1, lam2)
    alpha, beta = family.satake.alpha, family.satake.beta

    transformed = weil_act_word(word, family.phi)
    det_val = sum(g.det_valuation(p) for g in word)
    # χ1(det) |det|^{λ1 + 1/2}
    prefactor = alpha ** det_val * mono(u=int(det_val * (2 * lam1 + 1)))
    shift = int(2 * (lam1 - lam2))

    shells = {}
    for term in transformed.terms:
        support = _support_range(term, p)
        if support is None:
            continue
        for k in range(support[0], support[1] + 1):
            value = _shell_average(term, k, p)
            if not value.is_zero:
                shells[k] = shells.get(k, LaurentPoly()) + value

    total = LaurentRational(0)
    for k, value in sorted(shells.items()):
        # χ1 χ2^{-1}(t) |t|^{λ1 - λ2}
        total = total + (alpha / beta) ** k * mono(u=k * shift) * value
    logger.debug(f"Whittaker word {' '.join(map(str, word))}: shells {sorted(shells)}")
    return (prefactor * total).as_poly()


def _whittaker_eval_ds(family: WhittakerFamily, lam: Sequence, word: List[Generator]) -> LaurentPoly:
    if any(g.kind != 'a' for g in word):
        raise WhittakerError("Square-integrable families are tabulated on a(ν) only")
    (lam_value,) = [Fraction(x) for x in lam][:1]
    _require_half_integral(lam_value)
    p = family.p
    if p is None and word:
        raise WhittakerError("Square-integrable family needs a prime to read ord(ν)")
    order = sum(g.det_valuation(p) for g in word) if word else 0
    value = family.table.get(order, LaurentPoly())
    # |det|^λ
    return value.scale(1, _u_power(int(2 * lam_value * order)))


def l_and_lambda_params(factors: Sequence[dict], lam: Sequence) -> dict:
    """
    l(π_i), L(Π) = Σ d_i l(π_i) и |λ|_Π = Σ d_i |λ_i|_{π_i}.

    Args:
        factors: [{'kind': 'PS', 'weights': (wt1, wt2), 'degree': d}]
                 или [{'kind': 'DS', 'central_weight': wt(ω), 'degree': d}]
        lam: вещественные части λ_i
    """
    l_values, big_l, norm = [], Fraction(0), Fraction(0)
    for data, shift in zip(factors, lam):
        shift = Fraction(shift)
        degree = data.get('degree', 1)
        if data.get('kind', 'PS') == 'DS':
            l_value = Fraction(data['central_weight']) / 2 + shift
            size = abs(l_value)
        else:
            wt1, wt2 = (Fraction(x) + shift for x in data['weights'])
            l_value = min(wt1, wt2)
            size = max(abs(wt1), abs(wt2))
        l_values.append(l_value)
        big_l += degree * l_value
        norm += degree * size
    return {'l': l_values, 'L': big_l, 'lambda_norm': norm, 'tempered': norm == 0}


def shell_sup(n0: int, eps: float, q: float, scale: int = 1, offset: int = None) -> float:
    """sup_{v >= v0} (scale·v + offset) q^{-vε}, по умолчанию v0 = -2n0, offset = 2n0 + 1."""
    offset = 2 * n0 + 1 if offset is None else offset
    start = -2 * n0 if scale == 1 and offset == 2 * n0 + 1 else 0
    peak = 1 / (eps * math.log(q)) - offset / scale
    candidates = {start, max(start, math.floor(peak)), max(start, math.ceil(peak))}
    return max((scale * v + offset) * q ** (-v * eps) for v in candidates)


def analytic_family_constants(q: float, n: int, delta: float, nu_ord: int) -> dict:
    """
    C^{(1)}_λ = Σ_{m=-n}^{n} q^{-mδ} и C^{(2)}_λ(ν) (ord(ν) при δ = 0).
    """
    c1 = float(sum(q ** (-m * delta) for m in range(-n, n + 1)))
    if delta == 0:
        c2 = float(nu_ord)
    else:
        c2 = q ** (n * delta) * (1 - q ** (-nu_ord * delta)) / (1 - q ** (-delta))
    return {'C1': c1, 'C2': float(c2)}


def asymptotic_bound_check(
    family: WhittakerFamily,
    lambda_grid: Sequence[Tuple[float, float]],
    eps_values: Sequence[float],
    samples: Sequence[Tuple[int, Sequence[Generator]]],
    phases: Tuple[float, float] = (math.pi / 7, -math.pi / 3),
) -> dict:
    """
    Проверка |W_λ(a(ν)k)| <= C · 1_{ϖ^{-n}o}(ν) · |ν|^{l(π_λ)+1/2-ε}.

    Точное значение W_0 вычисляется один раз на (ord ν, k), затем λ вносится
    сдвигом параметров Сатаке a1 -> α q^{-λ1}, b1 -> β q^{-λ2}.

    Args:
        family: PS-семейство с символьными параметрами Сатаке (a1, b1)
        lambda_grid: точки λ = (λ1, λ2)
        eps_values: значения ε > 0
        samples: пары (ord ν, слово k из GL_2(o))
    Returns:
        dict: {'n', 'C', 'violations', 'checked', 'constants'}
    """
    p = family.p
    q = float(p)
    wt1, wt2 = (float(x) for x in family.weights)
    violations = []
    checked = 0
    n_max = 0
    c_max = 0.0
    constants = []

    for order, k_word in samples:
        k_word = list(k_word)
        moved = weil_act_word(k_word, family.phi)
        n0 = moved.support_exponent()
        n_max = max(n_max, n0)
        c_phi = moved.sup_norm_bound(q)
        exact = whittaker_eval(family, (0, 0), [a(Fraction(p) ** order)] + k_word)
        if order < -2 * n0 and not exact.is_zero:
            violations.append({'ord': order, 'word': ' '.join(map(str, k_word)), 'reason': 'support'})

        for lam1, lam2 in lambda_grid:
            s1, s2 = wt1 + lam1, wt2 + lam2
            delta = s1 - s2
            level = min(s1, s2)
            alpha = q ** (-s1) * np.exp(1j * phases[0])
            beta = q ** (-s2) * np.exp(1j * phases[1])
            value = abs(evaluate_numeric(exact, {'a1': alpha, 'b1': beta, 'u': q ** -0.5}))
            family_constants = analytic_family_constants(q, n0, delta, order)
            refined = c_phi * (
                family_constants['C1'] * q ** (-order * (s1 + 0.5))
                + family_constants['C2'] * q ** (-order * (s2 + 0.5))
            )
            constants.append({'ord': order, 'lambda': [lam1, lam2], **family_constants})
            for eps in eps_values:
                checked += 1
                c = c_phi * q ** (n0 * abs(delta)) * shell_sup(n0, eps, q)
                c_max = max(c_max, c)
                bound = 0.0 if order < -2 * n0 else c * q ** (-order * (level + 0.5 - eps))
                slack = 1e-9 * max(1.0, bound)
                if value > bound + slack or (order >= -2 * n0 and value > refined + 1e-9 * max(1.0, refined)):
                    violations.append({
                        'ord': order,
                        'word': ' '.join(map(str, k_word)),
                        'lambda': [lam1, lam2],
                        'eps': eps,
                        'value': value,
                        'bound': bound,
                    })
    if violations:
        logger.warning(f"Asymptotic bound: {len(violations)} violations out of {checked}")
    return {'n': 2 * n_max, 'C': c_max, 'violations': violations, 'checked': checked, 'constants': constants}


def coset_representatives(tags: Sequence[FieldTag]) -> List[Tuple[int, ...]]:
    """Представители (Π F_i^×)/(F^×)^r по порядку: ϖ_{F_i}^{j_i}, 0 <= j_i < e_i."""
    return list(itertools.product(*(range(tag.e) for tag in tags)))


def factorwise_spherical_bound(
    tags: Sequence[FieldTag],
    weights: Sequence[Tuple[float, float]],
    eps: float,
    p: int,
    max_ord: int = 12,
    phases: Tuple[float, float] = (math.pi / 7, -math.pi / 3),
) -> dict:
    """
    Многомножительная оценка для сферических W = Π W_i на a(ν) m(t),
    t пробегает представители по порядку:
    |W_i(a(ν) m(ϖ_i^j))| <= C_i(j) |ν|^{d_i(l_i+1/2) - ε},
    C_i(j) = |ω_i(ϖ_i)|^{-j} q_i^{-2j(l_i+1/2)} sup_v (e_i v + 2j + 1) q^{-vε}.
    """
    q = float(p)
    violations = []
    checked = 0
    for tag, (wa, wb) in zip(tags, weights):
        qi = q ** tag.f
        alpha = qi ** (-wa) * np.exp(1j * phases[0])
        beta = qi ** (-wb) * np.exp(1j * phases[1])
        level = min(wa, wb)
        omega_abs = abs(alpha * beta)
        for j in range(tag.e):
            c = omega_abs ** (-j) * qi ** (-2 * j * (level + 0.5)) * shell_sup(0, eps, q, scale=tag.e, offset=2 * j + 1)
            for order in range(0, max_ord + 1):
                # m(t) = z(t^{-1}) a(t^2): W(a(ν) m(ϖ^j)) = ω(ϖ)^{-j} W(a(ν ϖ^{2j}))
                n_total = tag.e * order + 2 * j
                value = abs((alpha * beta) ** (-j) * qi ** (-n_total / 2)
                            * sum(alpha ** (n_total - i) * beta ** i for i in range(n_total + 1)))
                bound = c * q ** (-order * (tag.degree * (level + 0.5) - eps))
                checked += 1
                if value > bound * (1 + 1e-9):
                    violations.append({'factor': tag.name, 'coset': j, 'ord': order, 'value': value, 'bound': bound})
    return {'violations': violations, 'checked': checked, 'cosets': coset_representatives(tags)}
