"""
Group law, dilations and left-invariant vector fields in exponential coordinates
"""
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, lcm
from typing import Dict, List, Sequence, Tuple

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.errors import DimensionMismatch, NonpositiveLambda

# Letters of BCH words
X, Y = 0, 1


@dataclass(frozen=True)
class GroupPoint:
    """Exponential coordinates of the first kind"""
    coords: Tuple

    def __len__(self) -> int:
        return len(self.coords)

    @classmethod
    def of(cls, values: Sequence) -> 'GroupPoint':
        return cls(tuple(_coerce(values)))


def _coerce(values: Sequence) -> List:
    """Floats stay floats; everything else becomes an exact rational"""
    if any(isinstance(v, float) for v in values):
        return [float(v) for v in values]
    return [sp.Rational(v) for v in values]


def _check_point(g: StratifiedLieAlgebra, p: GroupPoint):
    if len(p.coords) != g.n:
        raise DimensionMismatch(f"Point has {len(p.coords)} coordinates, {g.name} has dimension {g.n}")


def dilate(g: StratifiedLieAlgebra, lam, p: GroupPoint) -> GroupPoint:
    """delta_lambda: coordinate i is multiplied by lambda^layer(i)"""
    _check_point(g, p)
    if lam <= 0:
        raise NonpositiveLambda(f"Dilation factor must be positive, got {lam}")
    values = _coerce([lam, *p.coords])
    lam, coords = values[0], values[1:]
    return GroupPoint(tuple(c * lam ** s for c, s in zip(coords, g.layers)))


@lru_cache(maxsize=None)
def bch_terms(order: int) -> Tuple[Tuple[Tuple[int, ...], sp.Rational], ...]:
    """
    Dynkin's form of log(exp X exp Y) through total degree `order`.

    Returns (word, coefficient) pairs; a word w1..wN stands for the
    right-nested bracket [w1, [w2, [..., wN]]].
    """
    coefficients: Dict[Tuple[int, ...], sp.Rational] = {}

    def blocks(remaining: int):
        # nonempty (r, s) blocks with r + s <= remaining
        for r in range(remaining + 1):
            for s in range(remaining + 1 - r):
                if r + s:
                    yield r, s

    def expand(prefix: List[Tuple[int, int]], used: int):
        if prefix:
            count = len(prefix)
            denominator = count * used
            for r, s in prefix:
                denominator *= factorial(r) * factorial(s)
            word = tuple(letter for r, s in prefix for letter in [X] * r + [Y] * s)
            value = sp.Rational((-1) ** (count - 1), denominator)
            coefficients[word] = coefficients.get(word, sp.Integer(0)) + value
        for r, s in blocks(order - used):
            expand(prefix + [(r, s)], used + r + s)

    expand([], 0)
    return tuple(
        (word, c) for word, c in sorted(coefficients.items(), key=lambda item: (len(item[0]), item[0]))
        if c != 0 and (len(word) == 1 or word[-1] != word[-2])
    )


def _nested_bracket(g: StratifiedLieAlgebra, word: Sequence[int], letters: Dict[int, Sequence]) -> List:
    value = list(letters[word[-1]])
    for letter in reversed(word[:-1]):
        value = g.bracket_vectors(letters[letter], value)
    return value


def bch_vectors(g: StratifiedLieAlgebra, x: Sequence, y: Sequence) -> List:
    """Coordinates of exp(x) exp(y) over any commutative ring"""
    total = [a + b for a, b in zip(x, y)]
    for word, c in bch_terms(g.step):
        if len(word) < 2:
            continue
        term = _nested_bracket(g, word, {X: x, Y: y})
        total = [t + c * v for t, v in zip(total, term)]
    return total


def bch_multiply(g: StratifiedLieAlgebra, x: GroupPoint, y: GroupPoint) -> GroupPoint:
    """Group product; exact for rational points"""
    _check_point(g, x)
    _check_point(g, y)
    values = _coerce([*x.coords, *y.coords])
    product = bch_vectors(g, values[:g.n], values[g.n:])
    return GroupPoint.of([float(v) for v in product] if isinstance(values[0], float) else product)


@lru_cache(maxsize=None)
def coordinate_symbols(n: int) -> Tuple[sp.Symbol, ...]:
    return sp.symbols(f'x1:{n + 1}')


@dataclass(frozen=True)
class VectorField:
    """Derivation sum_k a_k d/dx_k with polynomial coefficients"""
    index: int
    coefficients: Tuple[sp.Poly, ...]

    def apply(self, f: sp.Poly) -> sp.Poly:
        result = sp.Poly(0, *f.gens, domain=sp.QQ)
        for k, a in enumerate(self.coefficients):
            if a.is_zero:
                continue
            derivative = f.diff(f.gens[k])
            if not derivative.is_zero:
                result += a * derivative
        return result

    def apply_expr(self, expr: sp.Expr) -> sp.Expr:
        """Action on an arbitrary sympy expression in the coordinates"""
        gens = self.coefficients[0].gens
        return sum((a.as_expr() * sp.diff(expr, gens[k])
                    for k, a in enumerate(self.coefficients) if not a.is_zero), sp.Integer(0))

    def commutator(self, other: 'VectorField') -> Tuple[sp.Poly, ...]:
        """Coefficients of [self, other]"""
        return tuple(self.apply(b) - other.apply(a) for a, b in zip(self.coefficients, other.coefficients))


@lru_cache(maxsize=None)
def left_invariant_fields(g: StratifiedLieAlgebra) -> Tuple[VectorField, ...]:
    """
    X_i(p) = d/dt p exp(t e_i) at t = 0, for every basis index i.

    Only BCH words with a single Y letter contribute to the derivative.
    """
    gens = coordinate_symbols(g.n)
    x = list(gens)
    fields = []
    for i in range(g.n):
        e_i = [sp.Integer(1) if k == i else sp.Integer(0) for k in range(g.n)]
        total = list(e_i)
        for word, c in bch_terms(g.step):
            if len(word) < 2 or word.count(Y) != 1:
                continue
            term = _nested_bracket(g, word, {X: x, Y: e_i})
            total = [t + c * v for t, v in zip(total, term)]
        fields.append(VectorField(i, tuple(sp.Poly(sp.expand(t), *gens, domain=sp.QQ) for t in total)))
    return tuple(fields)


def homogeneous_norm_exponent(g: StratifiedLieAlgebra) -> int:
    """N = lcm(1..step); the gauge polynomial is r^(2N)"""
    return lcm(*range(1, g.step + 1))


@lru_cache(maxsize=None)
def gauge_polynomial(g: StratifiedLieAlgebra) -> sp.Poly:
    """P = sum_s |x^(s)|^(2N/s), homogeneous of degree 2N"""
    gens = coordinate_symbols(g.n)
    N = homogeneous_norm_exponent(g)
    total = sp.Integer(0)
    for s in range(1, g.step + 1):
        block = sum(gens[i] ** 2 for i in g.layer_indices(s))
        total += block ** (N // s)
    return sp.Poly(sp.expand(total), *gens, domain=sp.QQ)
