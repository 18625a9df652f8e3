"""
Wedge products of Rumin forms and the Leibniz rule for d_c on Heisenberg groups
"""
from dataclasses import dataclass

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.calculus.differential import dc_apply, is_rumin, pi_E0
from src.calculus.polyform import PolyForm
from src.errors import DegreeOverflow, NotRumin
from src.forms.rumin import require_heisenberg
from src.utils.logger import CalcLogger


def leibniz_regime(m: int, h: int, k: int) -> bool:
    """Degrees for which d_c is a derivation on Heisenberg groups of rank m"""
    return h >= m + 1 or k >= m + 1 or h + k < m


@dataclass(frozen=True)
class RuminWedge:
    form: PolyForm
    representative_dependent: bool


def rumin_wedge(g: StratifiedLieAlgebra, a: PolyForm, b: PolyForm) -> RuminWedge:
    """E0 projection of a ^ b on the canonical representatives"""
    product = pi_E0(g, a.wedge(b))
    m = g.heisenberg_rank()
    dependent = m is None or not leibniz_regime(m, a.degree, b.degree)
    return RuminWedge(product, dependent)


@dataclass(frozen=True)
class LeibnizReport:
    degrees: tuple
    guaranteed: bool
    residual: PolyForm

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()


def leibniz_check(g: StratifiedLieAlgebra, a: PolyForm, b: PolyForm) -> LeibnizReport:
    """d_c(a ^ b) - d_c a ^ b - (-1)^h a ^ d_c b, products taken in E0"""
    m = require_heisenberg(g)
    h, k = a.degree, b.degree
    if h + k > g.n:
        raise DegreeOverflow(f"Degrees {h} + {k} exceed dimension {g.n}")
    for name, form in (('alpha', a), ('beta', b)):
        if not is_rumin(g, form):
            raise NotRumin(f"{name} is not fixed by the E0 projector: {form.to_text()}")

    logger = CalcLogger()
    logger.log_operation('leibniz_check', group=g.name, h=h, k=k)
    left = dc_apply(g, rumin_wedge(g, a, b).form)
    first = rumin_wedge(g, dc_apply(g, a), b).form
    second = rumin_wedge(g, a, dc_apply(g, b)).form
    residual = left - first - (second if h % 2 == 0 else -second)
    report = LeibnizReport((h, k), leibniz_regime(m, h, k), residual)
    if report.guaranteed and not report.holds:
        logger.warning(f"Leibniz rule fails inside its guaranteed regime: {residual.to_text()}")
    logger.log_result('leibniz_check', group=g.name, holds=report.holds, guaranteed=report.guaranteed)
    return report
