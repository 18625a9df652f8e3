"""
Weight jumps of d_c: the sets J(k, w), the exponents j(k) and q(G, k)
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.calculus.differential import dc_apply
from src.calculus.polyform import CoordinateRing, Monomial, PolyForm, monomial_poly, monomials_of_homogeneity
from src.config import Config
from src.errors import BoundTooSmall, InvariantViolation
from src.forms.rumin import rumin_basis
from src.utils.logger import CalcLogger

# (index of the E0 basis element, coordinate monomial)
ColumnKey = Tuple[int, Monomial]


def rumin_monomials(g: StratifiedLieAlgebra, k: int, homogeneities: Iterable[int]) -> List[Tuple[ColumnKey, int, PolyForm]]:
    """x^alpha e_b for every E0^k basis element e_b and every alpha of the given homogeneities"""
    ring = CoordinateRing(g)
    space = rumin_basis(g, k)
    inputs = []
    for h in sorted(set(homogeneities)):
        for alpha in monomials_of_homogeneity(g, h):
            x_alpha = monomial_poly(ring, alpha)
            for index, (element, w) in enumerate(zip(space.basis, space.basis_weights)):
                inputs.append(((index, alpha), w, PolyForm.from_invariant(ring, element, x_alpha)))
    return inputs


@dataclass(frozen=True)
class WeightGradedOperator:
    """
    The pieces d_(c,j) of d_c on the Rumin monomials of degree k.

    pieces[j] has one column per input monomial and one row per output
    (covector, coordinate monomial) pair; piece j raises form weight by j.
    """
    degree: int
    homogeneities: Tuple[int, ...]
    column_keys: Tuple[ColumnKey, ...]
    column_weights: Tuple[int, ...]
    row_keys: Tuple[tuple, ...]
    pieces: Dict[int, sp.SparseMatrix] = field(hash=False, compare=False)
    orders: Dict[int, FrozenSet[int]] = field(hash=False, compare=False)

    def full(self) -> sp.SparseMatrix:
        """Sum of the pieces, i.e. d_c on the scanned monomials"""
        total = sp.SparseMatrix(len(self.row_keys), len(self.column_keys), {})
        for piece in self.pieces.values():
            total += piece
        return total

    def jumps_from(self, w: int) -> FrozenSet[int]:
        """J(k, w) as observed on the scanned monomials"""
        columns = [c for c, cw in enumerate(self.column_weights) if cw == w]
        found = set()
        for j, piece in self.pieces.items():
            if any(piece[:, c].nnz() for c in columns):
                found.add(j)
        return frozenset(found)


@lru_cache(maxsize=None)
def weight_graded_operator(g: StratifiedLieAlgebra, k: int, homogeneities: Tuple[int, ...]) -> WeightGradedOperator:
    ring = CoordinateRing(g)
    inputs = rumin_monomials(g, k, homogeneities)
    row_index: Dict[tuple, int] = {}
    entries: Dict[int, Dict[Tuple[int, int], sp.Rational]] = {}
    orders: Dict[int, set] = {}
    for column, (_, w, form) in enumerate(inputs):
        h_in = form.bigrading()[0][1]
        for w_out, piece in dc_apply(g, form).weight_components().items():
            j = w_out - w
            for key, c in piece.items():
                row = row_index.setdefault(key, len(row_index))
                entries.setdefault(j, {})[(row, column)] = c
                orders.setdefault(j, set()).add(h_in - ring.homogeneity(key[1]))
    rows, cols = len(row_index), len(inputs)
    return WeightGradedOperator(
        degree=k,
        homogeneities=homogeneities,
        column_keys=tuple(key for key, _, _ in inputs),
        column_weights=tuple(w for _, w, _ in inputs),
        row_keys=tuple(sorted(row_index, key=row_index.get)),
        pieces={j: sp.SparseMatrix(rows, cols, data) for j, data in sorted(entries.items())},
        orders={j: frozenset(values) for j, values in sorted(orders.items())},
    )


@dataclass(frozen=True)
class JSetReport:
    """J(k, w) per weight of E0^k and the dual sets J*(k+1, w')"""
    degree: int
    homogeneities: Tuple[int, ...]
    jsets: Dict[int, Tuple[int, ...]]
    dual: Dict[int, Tuple[int, ...]]
    orders: Dict[int, Tuple[int, ...]]

    @property
    def jumps(self) -> Tuple[int, ...]:
        """J(k)"""
        return tuple(sorted({j for values in self.jsets.values() for j in values}))

    @property
    def dual_jumps(self) -> Tuple[int, ...]:
        """J*(k+1)"""
        return tuple(sorted({j for values in self.dual.values() for j in values}))

    @property
    def max_jump(self) -> int:
        return max(self.jumps, default=0)


def candidate_jumps(g: StratifiedLieAlgebra, k: int) -> Tuple[int, ...]:
    """Weight differences between E0^(k+1) and E0^k"""
    lower, upper = rumin_basis(g, k).weights, rumin_basis(g, k + 1).weights
    return tuple(sorted({b - a for a in lower for b in upper if b > a}))


def jset_scan(g: StratifiedLieAlgebra, k: int, D: Optional[int] = None,
              homogeneities: Optional[Iterable[int]] = None) -> JSetReport:
    """
    Apply d_c to every Rumin monomial of degree k and record the weight
    jumps of the nonzero output components.

    Scans coefficient homogeneities 0..D, or exactly `homogeneities`.
    """
    logger = CalcLogger()
    if homogeneities is None:
        D = Config.MAX_HOMOGENEITY if D is None else D
        lower, upper = rumin_basis(g, k).weights, rumin_basis(g, k + 1).weights
        needed = max(upper) - min(lower) if lower and upper else 0
        if D < 2 or D < needed:
            raise BoundTooSmall(f"Homogeneity bound {D} is below {max(2, needed)} for degree {k} on {g.name}")
        homogeneities = range(D + 1)
    homogeneities = tuple(sorted(set(homogeneities)))

    logger.log_operation('jset_scan', group=g.name, degree=k, homogeneities=homogeneities)
    if not 0 <= k < g.n:
        return JSetReport(k, homogeneities, {}, {}, {})

    operator = weight_graded_operator(g, k, homogeneities)
    weights = rumin_basis(g, k).weights
    jsets = {w: tuple(sorted(operator.jumps_from(w))) for w in weights}
    dual: Dict[int, set] = {}
    for w, values in jsets.items():
        for j in values:
            dual.setdefault(w + j, set()).add(j)
    report = JSetReport(
        degree=k,
        homogeneities=homogeneities,
        jsets=jsets,
        dual={w: tuple(sorted(values)) for w, values in sorted(dual.items())},
        orders={j: tuple(sorted(values)) for j, values in operator.orders.items()},
    )
    logger.log_result('jset_scan', group=g.name, degree=k, jsets=report.jsets)
    return report


@dataclass(frozen=True)
class JSetTable:
    group: str
    Q: int
    reports: Tuple[JSetReport, ...]

    @property
    def M(self) -> int:
        return max((r.max_jump for r in self.reports), default=0)

    def jumps(self, k: int) -> Tuple[int, ...]:
        return self.reports[k].jumps if 0 <= k < len(self.reports) else ()

    def weight_duality_holds(self) -> bool:
        """J*(n-k, Q-w) = J(k, w)"""
        n = len(self.reports)
        for k, report in enumerate(self.reports):
            mirror = self.reports[n - k - 1].dual
            for w, values in report.jsets.items():
                if tuple(mirror.get(self.Q - w, ())) != tuple(values):
                    return False
        return True

    def degree_symmetry_holds(self) -> bool:
        """J(k) = J(n-k-1)"""
        n = len(self.reports)
        return all(self.jumps(k) == self.jumps(n - k - 1) for k in range(n))


def jset_table(g: StratifiedLieAlgebra, D: Optional[int] = None) -> JSetTable:
    table = JSetTable(g.name, g.Q, tuple(jset_scan(g, k, D) for k in range(g.n)))
    if table.M >= g.Q:
        raise InvariantViolation(f"Largest weight jump {table.M} is not below Q = {g.Q} on {g.name}")
    return table


@dataclass(frozen=True)
class IntegrabilitySpec:
    """(w, Q/(Q-j)) for every j in J(k-1, w)"""
    degree: int
    requirements: Tuple[Tuple[int, sp.Rational], ...]


@dataclass(frozen=True)
class ExponentRow:
    degree: int
    j: int
    q: sp.Rational
    integrability: IntegrabilitySpec


def q_exponent(g: StratifiedLieAlgebra, D: Optional[int] = None) -> Tuple[ExponentRow, ...]:
    """
    j(k) = min J(k-1) and q(G, k) = Q / (Q - j(k)) for k = 1..n.

    Without D only the homogeneities equal to a candidate jump are
    scanned: a jump j is already visible on monomials of homogeneity j.
    """
    rows = []
    for k in range(1, g.n + 1):
        if D is None:
            report = jset_scan(g, k - 1, homogeneities=candidate_jumps(g, k - 1))
        else:
            report = jset_scan(g, k - 1, D)
        if not report.jumps:
            raise InvariantViolation(f"d_c has no weight jump out of degree {k - 1} on {g.name}")
        j = min(report.jumps)
        requirements = tuple((w, sp.Rational(g.Q, g.Q - jump))
                             for w, values in report.jsets.items() for jump in values)
        rows.append(ExponentRow(k, j, sp.Rational(g.Q, g.Q - j), IntegrabilitySpec(k, requirements)))
    return tuple(rows)
