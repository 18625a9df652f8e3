"""
Forms with polynomial coefficients in exponential coordinates
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, Mapping, Tuple

import sympy as sp

from src.algebra.group import coordinate_symbols, gauge_polynomial, left_invariant_fields
from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.errors import DegreeMismatch, DimensionMismatch, ProfileDepthExceeded
from src.forms.exterior import InvariantForm, Multi, covector_text, join_signed, merge_sign, multi_weight

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class CoordinateRing:
    """Polynomials in x1..xn with the left-invariant fields acting on them"""
    algebra: StratifiedLieAlgebra

    @cached_property
    def gens(self) -> Tuple[sp.Symbol, ...]:
        return coordinate_symbols(self.algebra.n)

    @cached_property
    def gen_names(self) -> Tuple[str, ...]:
        return tuple(str(s) for s in self.gens)

    @cached_property
    def field_coefficients(self) -> Tuple[Tuple[sp.Poly, ...], ...]:
        return tuple(tuple(self.poly(a.as_expr()) for a in field.coefficients)
                     for field in left_invariant_fields(self.algebra))

    def poly(self, expr) -> sp.Poly:
        return sp.Poly(expr, *self.gens, domain=sp.QQ)

    def zero(self) -> sp.Poly:
        return self.poly(0)

    def one(self) -> sp.Poly:
        return self.poly(1)

    def variable(self, i: int) -> sp.Poly:
        return self.poly(self.gens[i])

    def apply_field(self, i: int, f: sp.Poly) -> sp.Poly:
        """X_i f"""
        result = self.zero()
        for k, a in enumerate(self.field_coefficients[i]):
            if a.is_zero:
                continue
            derivative = f.diff(self.gens[k])
            if not derivative.is_zero:
                result += a * derivative
        return result

    def homogeneity(self, monomial: Monomial) -> int:
        """delta-homogeneity of x^alpha"""
        return sum(e * s for e, s in zip(monomial, self.algebra.layers))

    def dilate_poly(self, f: sp.Poly, lam) -> sp.Poly:
        """f o delta_lambda"""
        lam = sp.Rational(lam)
        return sp.Poly.from_dict({m: c * lam ** self.homogeneity(m) for m, c in f.terms()},
                                 *self.gens, domain=sp.QQ) if not f.is_zero else f


@dataclass(frozen=True)
class ProfileRing(CoordinateRing):
    """
    Coordinate polynomials extended by u_0..u_K, where u_j stands for
    b^(j)(P/s) / s^j for a radial profile b of the gauge polynomial P.

    X_i u_j = (X_i P) u_(j+1), so every operator stays polynomial.
    """
    depth: int = 8

    @cached_property
    def profile_gens(self) -> Tuple[sp.Symbol, ...]:
        return sp.symbols(f'u0:{self.depth + 1}')

    @cached_property
    def gens(self) -> Tuple[sp.Symbol, ...]:
        return coordinate_symbols(self.algebra.n) + self.profile_gens

    @cached_property
    def gauge_derivatives(self) -> Tuple[sp.Poly, ...]:
        """X_i P for every basis index"""
        base = CoordinateRing(self.algebra)
        P = base.poly(gauge_polynomial(self.algebra).as_expr())
        return tuple(self.poly(base.apply_field(i, P).as_expr()) for i in range(self.algebra.n))

    def profile(self, j: int = 0) -> sp.Poly:
        return self.poly(self.profile_gens[j])

    def apply_field(self, i: int, f: sp.Poly) -> sp.Poly:
        result = super().apply_field(i, f)
        chain = self.zero()
        for j, u in enumerate(self.profile_gens):
            derivative = f.diff(u)
            if derivative.is_zero:
                continue
            if j == self.depth:
                raise ProfileDepthExceeded(f"Profile derivative u{j + 1} beyond depth {self.depth}")
            chain += self.profile(j + 1) * derivative
        if not chain.is_zero:
            result += self.gauge_derivatives[i] * chain
        return result

    def homogeneity(self, monomial: Monomial) -> int:
        return sum(e * s for e, s in zip(monomial[:self.algebra.n], self.algebra.layers))


@dataclass(frozen=True)
class PolyForm:
    """
    sum_J f_J theta^J with polynomial coefficients; degree -1 and n+1 hold
    only the zero form. Terms are sorted by J and carry no zero coefficient.
    """
    ring: CoordinateRing
    degree: int
    terms: Tuple[Tuple[Multi, sp.Poly], ...] = ()

    @classmethod
    def from_dict(cls, ring: CoordinateRing, degree: int, coefficients: Mapping[Multi, object]) -> 'PolyForm':
        n = ring.algebra.n
        terms = []
        for J, f in coefficients.items():
            f = f if isinstance(f, sp.Poly) and f.gens == ring.gens else ring.poly(
                f.as_expr() if isinstance(f, sp.Poly) else f)
            if f.is_zero:
                continue
            if len(J) != degree or list(J) != sorted(set(J)) or any(not 0 <= j < n for j in J):
                raise DimensionMismatch(f"Index tuple {J} is not a degree-{degree} basis covector")
            terms.append((tuple(J), f))
        return cls(ring, degree, tuple(sorted(terms, key=lambda t: t[0])))

    @classmethod
    def zero(cls, ring: CoordinateRing, degree: int) -> 'PolyForm':
        return cls(ring, degree)

    @classmethod
    def from_invariant(cls, ring: CoordinateRing, a: InvariantForm, coefficient=1) -> 'PolyForm':
        if a.n != ring.algebra.n:
            raise DimensionMismatch(f"Form has dimension {a.n}, ring has {ring.algebra.n}")
        c = coefficient if isinstance(coefficient, sp.Poly) else ring.poly(coefficient)
        return cls.from_dict(ring, a.degree, {J: c * v for J, v in a.terms})

    @classmethod
    def function(cls, ring: CoordinateRing, f) -> 'PolyForm':
        return cls.from_dict(ring, 0, {(): f})

    def as_dict(self) -> Dict[Multi, sp.Poly]:
        return dict(self.terms)

    def coefficient(self, J: Multi) -> sp.Poly:
        return self.as_dict().get(tuple(J), self.ring.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: 'PolyForm'):
        if self.ring != other.ring:
            raise DimensionMismatch("Forms live over different coefficient rings")

    def _combine(self, other: 'PolyForm', sign: int) -> 'PolyForm':
        self._check_compatible(other)
        if self.degree != other.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other if sign > 0 else -other
            raise DegreeMismatch(f"Cannot add a {self.degree}-form and a {other.degree}-form")
        total = self.as_dict()
        for J, f in other.terms:
            f = f if sign > 0 else -f
            total[J] = total[J] + f if J in total else f
        return PolyForm.from_dict(self.ring, self.degree, total)

    def __add__(self, other: 'PolyForm') -> 'PolyForm':
        return self._combine(other, 1)

    def __sub__(self, other: 'PolyForm') -> 'PolyForm':
        return self._combine(other, -1)

    def __neg__(self) -> 'PolyForm':
        return self.map_coefficients(lambda f: -f)

    def scale(self, c) -> 'PolyForm':
        c = sp.Rational(c)
        return self.map_coefficients(lambda f: f * c)

    def multiply(self, f: sp.Poly) -> 'PolyForm':
        """Coefficient-wise product with a function"""
        return self.map_coefficients(lambda g: g * f)

    def map_coefficients(self, fn: Callable[[sp.Poly], sp.Poly]) -> 'PolyForm':
        return PolyForm.from_dict(self.ring, self.degree, {J: fn(f) for J, f in self.terms})

    def wedge(self, other: 'PolyForm') -> 'PolyForm':
        self._check_compatible(other)
        degree = self.degree + other.degree
        total: Dict[Multi, sp.Poly] = {}
        for I, f in self.terms:
            for J, g in other.terms:
                sign, K = merge_sign(I, J)
                if sign:
                    term = f * g if sign > 0 else -(f * g)
                    total[K] = total[K] + term if K in total else term
        return PolyForm.from_dict(self.ring, degree, total)

    def items(self) -> Iterator[Tuple[Tuple[Multi, Monomial], sp.Rational]]:
        """((J, monomial), rational coefficient) pairs"""
        for J, f in self.terms:
            for monomial, c in f.terms():
                yield (J, monomial), sp.Rational(c)

    def weights(self) -> Tuple[int, ...]:
        return tuple(sorted({multi_weight(self.ring.algebra, J) for J, _ in self.terms}))

    def weight_components(self) -> Dict[int, 'PolyForm']:
        grouped: Dict[int, Dict[Multi, sp.Poly]] = {}
        for J, f in self.terms:
            grouped.setdefault(multi_weight(self.ring.algebra, J), {})[J] = f
        return {w: PolyForm.from_dict(self.ring, self.degree, part) for w, part in sorted(grouped.items())}

    def bigrading(self) -> Tuple[Tuple[int, int], ...]:
        """(form weight, coefficient homogeneity) of every monomial"""
        g = self.ring.algebra
        return tuple(sorted({(multi_weight(g, J), self.ring.homogeneity(m)) for (J, m), _ in self.items()}))

    def total_homogeneities(self) -> Tuple[int, ...]:
        return tuple(sorted({w + h for w, h in self.bigrading()}))

    def coefficient_growth(self) -> int:
        """Largest coefficient homogeneity"""
        return max((h for _, h in self.bigrading()), default=0)

    def dilate(self, lam) -> 'PolyForm':
        """delta_lambda pullback"""
        lam = sp.Rational(lam)
        g = self.ring.algebra
        return PolyForm.from_dict(self.ring, self.degree, {
            J: self.ring.dilate_poly(f, lam) * lam ** multi_weight(g, J) for J, f in self.terms})

    def is_constant(self) -> bool:
        return all(f.is_ground for _, f in self.terms)

    def to_invariant(self) -> InvariantForm:
        if not self.is_constant():
            raise DegreeMismatch("Form has non-constant coefficients")
        return InvariantForm.from_dict(self.ring.algebra.n, self.degree,
                                       {J: f.as_expr() for J, f in self.terms})

    def to_text(self) -> str:
        """Canonical text, e.g. '1/2*x1**2*x3*t[1]^t[3] - t[2]'"""
        names = self.ring.gen_names

        def body(monomial: Monomial, J: Multi) -> str:
            factors = [names[i] if e == 1 else f"{names[i]}**{e}" for i, e in enumerate(monomial) if e]
            if J:
                factors.append(covector_text(J))
            return '*'.join(factors)

        return join_signed((sp.Rational(c), body(m, J)) for J, f in self.terms for m, c in f.terms())

    def __str__(self) -> str:
        return self.to_text()


def monomials_of_homogeneity(g: StratifiedLieAlgebra, h: int) -> Tuple[Monomial, ...]:
    """Exponent vectors alpha with sum alpha_i layer(i) = h, in lexicographic order"""
    ranges = [range(h // s + 1) for s in g.layers]
    return tuple(alpha for alpha in product(*ranges)
                 if sum(e * s for e, s in zip(alpha, g.layers)) == h)


def monomial_poly(ring: CoordinateRing, alpha: Iterable[int]) -> sp.Poly:
    alpha = tuple(alpha)
    exponents = alpha + (0,) * (len(ring.gens) - len(alpha))
    return sp.Poly.from_dict({exponents: 1}, *ring.gens, domain=sp.QQ)


def with_profile(form: PolyForm, ring: ProfileRing) -> PolyForm:
    """Multiply a coordinate form by the profile b(P/s), i.e. by u0"""
    if form.ring.algebra != ring.algebra:
        raise DimensionMismatch("Profile ring belongs to another algebra")
    u0 = ring.profile(0)
    return PolyForm.from_dict(ring, form.degree, {J: ring.poly(f.as_expr()) * u0 for J, f in form.terms})
