"""
Rumin spaces E0^k, weight sets and the Heisenberg ideal construction
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import sympy as sp

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.errors import NotHeisenberg
from src.forms.exterior import InvariantForm, basis, multi_weight, wedge
from src.forms.invariant import adjoint_d0, betti_numbers, d0, d0_matrix, wedge_matrix
from src.forms.linalg import gram_schmidt, nullspace, rank
from src.utils.logger import CalcLogger


@dataclass(frozen=True)
class RuminSpace:
    """Orthogonal pure-weight basis of ker d0 and ker d0* in degree k"""
    degree: int
    basis: Tuple[InvariantForm, ...]
    basis_weights: Tuple[int, ...]

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.basis_weights)))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def of_weight(self, w: int) -> Tuple[InvariantForm, ...]:
        return tuple(b for b, bw in zip(self.basis, self.basis_weights) if bw == w)


@lru_cache(maxsize=None)
def rumin_basis(g: StratifiedLieAlgebra, k: int) -> RuminSpace:
    """
    E0^k = ker d0 and ker d0* in Lambda^k, one weight block at a time.

    d0 and its transpose preserve weight, so the kernel splits along the
    weights of the monomials theta^J.
    """
    if not 0 <= k <= g.n:
        return RuminSpace(k, (), ())
    monomials = basis(g.n, k)
    D_k = sp.Matrix(d0_matrix(g, k))
    D_adj = sp.Matrix(adjoint_d0(g, k)) if k >= 1 else sp.zeros(0, len(monomials))

    blocks: Dict[int, List[int]] = {}
    for position, J in enumerate(monomials):
        blocks.setdefault(multi_weight(g, J), []).append(position)

    forms: List[InvariantForm] = []
    weights: List[int] = []
    for w, columns in sorted(blocks.items()):
        stacked = D_k.extract(list(range(D_k.rows)), columns).col_join(
            D_adj.extract(list(range(D_adj.rows)), columns))
        kernel = nullspace(stacked)
        for vector in gram_schmidt(kernel):
            forms.append(InvariantForm.from_dict(g.n, k, {monomials[c]: vector[i] for i, c in enumerate(columns)}))
            weights.append(w)
    return RuminSpace(k, tuple(forms), tuple(weights))


def weights_table(g: StratifiedLieAlgebra) -> Dict[int, Tuple[int, ...]]:
    """k -> W(k) for every degree"""
    return {k: rumin_basis(g, k).weights for k in range(g.n + 1)}


@dataclass(frozen=True)
class HeisenbergIdealReport:
    """Dimensions of the ideal I^h, its annihilator J^h and the quotient, per degree"""
    m: int
    ideal_dims: Tuple[int, ...]
    annihilator_dims: Tuple[int, ...]
    quotient_dims: Tuple[int, ...]
    rumin_dims: Tuple[int, ...]

    @property
    def agrees_with_rumin(self) -> bool:
        """Quotient below the middle, annihilator above it"""
        return all(
            (self.quotient_dims[h] if h <= self.m else self.annihilator_dims[h]) == self.rumin_dims[h]
            for h in range(len(self.rumin_dims))
        )


def require_heisenberg(g: StratifiedLieAlgebra) -> int:
    m = g.heisenberg_rank()
    if m is None:
        raise NotHeisenberg(f"{g.name} is not a Heisenberg group (layers {list(g.layer_dims)})")
    return m


def contact_form(g: StratifiedLieAlgebra) -> InvariantForm:
    """tau, the coframe element dual to the vertical direction"""
    require_heisenberg(g)
    return InvariantForm.monomial(g.n, (g.n - 1,))


@lru_cache(maxsize=None)
def ideal_generators(g: StratifiedLieAlgebra, h: int) -> sp.Matrix:
    """Columns spanning I^h: gamma ^ tau and gamma ^ d tau"""
    tau = contact_form(g)
    dtau = d0(g, tau)
    columns = []
    if h >= 1:
        columns.append(wedge_matrix(g, tau, h - 1))
    if h >= 2:
        columns.append(wedge_matrix(g, dtau, h - 2))
    size = len(basis(g.n, h))
    spanning = sp.zeros(size, 0)
    for block in columns:
        spanning = spanning.row_join(block)
    return sp.ImmutableMatrix(spanning)


@lru_cache(maxsize=None)
def annihilator_basis(g: StratifiedLieAlgebra, h: int) -> Tuple[InvariantForm, ...]:
    """J^h = {beta : beta ^ tau = 0 and beta ^ d tau = 0}"""
    tau = contact_form(g)
    dtau = d0(g, tau)
    conditions = wedge_matrix(g, tau, h).col_join(wedge_matrix(g, dtau, h))
    return tuple(InvariantForm.from_vector(g.n, h, list(v)) for v in nullspace(conditions))


def heisenberg_ideal_dims(g: StratifiedLieAlgebra) -> HeisenbergIdealReport:
    m = require_heisenberg(g)
    logger = CalcLogger()
    logger.log_operation('heisenberg_ideal_dims', group=g.name)
    ideal = tuple(rank(sp.Matrix(ideal_generators(g, h))) for h in range(g.n + 1))
    report = HeisenbergIdealReport(
        m=m,
        ideal_dims=ideal,
        annihilator_dims=tuple(len(annihilator_basis(g, h)) for h in range(g.n + 1)),
        quotient_dims=tuple(len(basis(g.n, h)) - ideal[h] for h in range(g.n + 1)),
        rumin_dims=betti_numbers(g),
    )
    if not report.agrees_with_rumin:
        logger.warning(f"Ideal dimensions disagree with E0 on {g.name}: {report}")
    logger.log_result('heisenberg_ideal_dims', group=g.name, ideal=ideal, agrees=report.agrees_with_rumin)
    return report


@dataclass(frozen=True)
class AnnihilatorReport:
    pairs_checked: int
    failures: Tuple[Tuple[int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.failures


def annihilator_check(g: StratifiedLieAlgebra) -> AnnihilatorReport:
    """alpha ^ beta = 0 for alpha in J^a and beta in I^b, a + b <= n"""
    require_heisenberg(g)
    checked = 0
    failures: List[Tuple[int, int]] = []
    for a in range(g.n + 1):
        alphas = annihilator_basis(g, a)
        for b in range(g.n + 1 - a):
            generators = ideal_generators(g, b)
            for column in range(generators.cols):
                beta = InvariantForm.from_vector(g.n, b, list(generators[:, column]))
                for alpha in alphas:
                    checked += 1
                    if not wedge(alpha, beta).is_zero():
                        failures.append((a, b))
    return AnnihilatorReport(checked, tuple(sorted(set(failures))))
