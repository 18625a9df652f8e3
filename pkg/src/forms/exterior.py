"""
Exterior algebra of left-invariant forms
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.errors import DegreeOverflow, DimensionMismatch

Multi = Tuple[int, ...]


@lru_cache(maxsize=None)
def basis(n: int, k: int) -> Tuple[Multi, ...]:
    """Increasing index tuples of length k, lexicographic"""
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def basis_position(n: int, k: int) -> Dict[Multi, int]:
    return {J: position for position, J in enumerate(basis(n, k))}


def sort_sign(indices: Sequence[int]) -> Tuple[int, Optional[Multi]]:
    """Sign of the sorting permutation, or (0, None) on a repeated index"""
    if len(set(indices)) != len(indices):
        return 0, None
    values = list(indices)
    sign = 1
    # insertion sort, counting transpositions
    for a in range(1, len(values)):
        b = a
        while b > 0 and values[b - 1] > values[b]:
            values[b - 1], values[b] = values[b], values[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(values)


def merge_sign(I: Multi, J: Multi) -> Tuple[int, Optional[Multi]]:
    """theta^I ^ theta^J = sign * theta^K"""
    return sort_sign(I + J)


def multi_weight(g: StratifiedLieAlgebra, J: Multi) -> int:
    return sum(g.layers[j] for j in J)


def covector_text(J: Multi) -> str:
    return '^'.join(f"t[{j + 1}]" for j in J)


def rational_text(c: sp.Rational) -> str:
    return str(c.p) if c.q == 1 else f"{c.p}/{c.q}"


def join_signed(parts: Iterable[Tuple[sp.Rational, str]]) -> str:
    """Join (coefficient, monomial-text) pairs as 'a*m1 - b*m2'"""
    pieces: List[str] = []
    for c, body in parts:
        magnitude = abs(c)
        if body and magnitude == 1:
            text = body
        elif body:
            text = f"{rational_text(magnitude)}*{body}"
        else:
            text = rational_text(magnitude)
        if not pieces:
            pieces.append(f"-{text}" if c < 0 else text)
        else:
            pieces.append(f"{'-' if c < 0 else '+'} {text}")
    return ' '.join(pieces) if pieces else '0'


@dataclass(frozen=True)
class InvariantForm:
    """Constant-coefficient k-form; only nonzero coefficients are stored"""
    n: int
    degree: int
    terms: Tuple[Tuple[Multi, sp.Rational], ...] = ()

    @classmethod
    def from_dict(cls, n: int, degree: int, coefficients: Mapping[Multi, object]) -> 'InvariantForm':
        if not 0 <= degree <= n:
            raise DegreeOverflow(f"Degree {degree} outside 0..{n}")
        terms = []
        for J, c in coefficients.items():
            c = sp.Rational(c)
            if c == 0:
                continue
            if len(J) != degree or list(J) != sorted(set(J)) or any(not 0 <= j < n for j in J):
                raise DimensionMismatch(f"Index tuple {J} is not a degree-{degree} basis covector")
            terms.append((tuple(J), c))
        return cls(n, degree, tuple(sorted(terms)))

    @classmethod
    def monomial(cls, n: int, J: Multi, c=1) -> 'InvariantForm':
        sign, K = sort_sign(J)
        if sign == 0:
            return cls(n, len(J))
        return cls.from_dict(n, len(J), {K: sign * sp.Rational(c)})

    @classmethod
    def from_vector(cls, n: int, degree: int, vector: Sequence) -> 'InvariantForm':
        return cls.from_dict(n, degree, dict(zip(basis(n, degree), vector)))

    def as_dict(self) -> Dict[Multi, sp.Rational]:
        return dict(self.terms)

    def vector(self) -> sp.Matrix:
        """Coordinates in the lexicographic monomial basis"""
        column = sp.zeros(len(basis(self.n, self.degree)), 1)
        positions = basis_position(self.n, self.degree)
        for J, c in self.terms:
            column[positions[J]] = c
        return column

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: 'InvariantForm', sign: int) -> 'InvariantForm':
        if (self.n, self.degree) != (other.n, other.degree):
            raise DimensionMismatch(f"Cannot add a {self.degree}-form and a {other.degree}-form")
        total = self.as_dict()
        for J, c in other.terms:
            total[J] = total.get(J, sp.Integer(0)) + sign * c
        return InvariantForm.from_dict(self.n, self.degree, total)

    def __add__(self, other: 'InvariantForm') -> 'InvariantForm':
        return self._combine(other, 1)

    def __sub__(self, other: 'InvariantForm') -> 'InvariantForm':
        return self._combine(other, -1)

    def __neg__(self) -> 'InvariantForm':
        return self.scale(-1)

    def scale(self, c) -> 'InvariantForm':
        c = sp.Rational(c)
        return InvariantForm.from_dict(self.n, self.degree, {J: c * v for J, v in self.terms})

    def wedge(self, other: 'InvariantForm') -> 'InvariantForm':
        return wedge(self, other)

    def inner(self, other: 'InvariantForm') -> sp.Rational:
        """Inner product for which the monomials are orthonormal"""
        if self.degree != other.degree:
            return sp.Integer(0)
        mine = self.as_dict()
        return sum((mine.get(J, 0) * c for J, c in other.terms), sp.Integer(0))

    def weight_components(self, g: StratifiedLieAlgebra) -> Dict[int, 'InvariantForm']:
        """Unique decomposition into pure-weight pieces"""
        grouped: Dict[int, Dict[Multi, sp.Rational]] = {}
        for J, c in self.terms:
            grouped.setdefault(multi_weight(g, J), {})[J] = c
        return {w: InvariantForm.from_dict(self.n, self.degree, part) for w, part in sorted(grouped.items())}

    def weights(self, g: StratifiedLieAlgebra) -> Tuple[int, ...]:
        return tuple(sorted({multi_weight(g, J) for J, _ in self.terms}))

    def to_text(self) -> str:
        return join_signed((c, covector_text(J)) for J, c in self.terms)

    def __str__(self) -> str:
        return self.to_text()


def wedge(a: InvariantForm, b: InvariantForm) -> InvariantForm:
    """Exterior product with shuffle signs"""
    if a.n != b.n:
        raise DimensionMismatch(f"Forms live on different dimensions {a.n} and {b.n}")
    if a.degree + b.degree > a.n:
        raise DegreeOverflow(f"Degree {a.degree} + {b.degree} exceeds dimension {a.n}")
    total: Dict[Multi, sp.Rational] = {}
    for I, c in a.terms:
        for J, d in b.terms:
            sign, K = merge_sign(I, J)
            if sign:
                total[K] = total.get(K, sp.Integer(0)) + sign * c * d
    return InvariantForm.from_dict(a.n, a.degree + b.degree, total)


def volume_form(n: int) -> InvariantForm:
    return InvariantForm.monomial(n, tuple(range(n)))


def complement(n: int, J: Multi) -> Multi:
    return tuple(j for j in range(n) if j not in J)


def star_monomial(n: int, J: Multi) -> Tuple[int, Multi]:
    """*theta^J = sign(J, J^c) theta^(J^c)"""
    rest = complement(n, J)
    sign, _ = merge_sign(J, rest)
    return sign, rest


def hodge_star(g: StratifiedLieAlgebra, a: InvariantForm) -> InvariantForm:
    """b ^ *a = <b, a> vol for the orthonormal, positively oriented coframe"""
    if a.n != g.n:
        raise DimensionMismatch(f"Form has dimension {a.n}, {g.name} has {g.n}")
    total: Dict[Multi, sp.Rational] = {}
    for J, c in a.terms:
        sign, rest = star_monomial(a.n, J)
        total[rest] = sign * c
    return InvariantForm.from_dict(a.n, a.n - a.degree, total)
