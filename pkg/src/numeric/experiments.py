"""
Numeric experiments: cut-off norm decay, dilation scaling and averaging pairings
"""
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import sympy as sp
from scipy import stats
from scipy.special import gamma

from src.algebra.lie_algebra import StratifiedLieAlgebra
from src.calculus.differential import dc_apply
from src.calculus.jsets import candidate_jumps, jset_scan
from src.calculus.polyform import PolyForm, ProfileRing, with_profile
from src.config import Config
from src.errors import DegreeMismatch, MixedWeight, OrderTooHigh, ValidationError
from src.forms.exterior import InvariantForm
from src.numeric.cutoff import Cutoff, derivative_norm_function
from src.numeric.evaluation import FormEvaluator
from src.numeric.profiles import Profile, bump_profile, get_profile
from src.numeric.sampling import ShellEstimate, ball_integral, shell_integral
from src.utils.logger import CalcLogger
from src.utils.validator import InputValidator


@dataclass
class ExperimentReport:
    """Estimates with standard errors, an optional fit and the configuration that produced them"""
    name: str
    group: str
    seed: int
    samples: int
    config: Dict[str, Any]
    estimates: List[Dict[str, float]] = field(default_factory=list)
    fit: Optional[Dict[str, float]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def fit_line(xs: Sequence[float], ys: Sequence[float]) -> Dict[str, float]:
    """Least-squares slope with a 95% confidence half-width"""
    result = stats.linregress(xs, ys)
    dof = len(xs) - 2
    width = float(stats.t.ppf(0.975, dof) * result.stderr) if dof > 0 else 0.0
    return {
        'slope': float(result.slope),
        'intercept': float(result.intercept),
        'stderr': float(result.stderr),
        'ci': width,
    }


def _sampling_config(samples: Optional[int], seed: Optional[int]):
    samples = Config.SAMPLES if samples is None else samples
    seed = Config.SEED if seed is None else seed
    errors = InputValidator.validate_sampling(samples, seed)
    if errors:
        raise ValidationError(f"Validation errors: {', '.join(errors)}")
    return samples, seed


def cutoff_norm_integral(g: StratifiedLieAlgebra, m: int, R: float, lam: float,
                         samples: int, seed: int) -> ShellEstimate:
    """Integral of |G_m|^(Q/m) over the shell R <= r <= lam R"""
    norm = derivative_norm_function(g, m)
    power = g.Q / m
    return shell_integral(g, lambda points, radii: norm(points) ** power, R, lam * R, samples, seed)


def cutoff_norm(g: StratifiedLieAlgebra, m: int, R: float, lam: float, samples: int, seed: int):
    """||nabla^m xi||_(Q/m) with its delta-method standard error"""
    integral = cutoff_norm_integral(g, m, R, lam, samples, seed)
    exponent = m / g.Q
    value = integral.estimate ** exponent / math.log(lam)
    stderr = exponent * integral.estimate ** (exponent - 1) * integral.stderr / math.log(lam)
    return value, stderr


def cutoff_norm_experiment(g: StratifiedLieAlgebra, m: int, lambdas: Sequence[float], R: float = 1.0,
                           samples: Optional[int] = None, seed: Optional[int] = None) -> ExperimentReport:
    """Slope of log ||nabla^m xi||_(Q/m) against log log lambda; expected -1 + m/Q"""
    samples, seed = _sampling_config(samples, seed)
    if m >= g.Q:
        raise OrderTooHigh(f"Derivative order {m} must be below Q = {g.Q}")
    errors = InputValidator.validate_cutoff_experiment(m, list(lambdas), R, samples, seed)
    if errors:
        raise ValidationError(f"Validation errors: {', '.join(errors)}")

    logger = CalcLogger()
    logger.log_experiment('cutoff_norm', seed, samples, group=g.name, m=m, lambdas=list(lambdas), R=R)
    report = ExperimentReport('cutoff_norm', g.name, seed, samples,
                              config={'m': m, 'lambdas': [float(v) for v in lambdas], 'R': float(R)})
    xs, ys = [], []
    for lam in lambdas:
        value, stderr = cutoff_norm(g, m, R, lam, samples, seed)
        report.estimates.append({'lambda': float(lam), 'norm': value, 'stderr': stderr})
        xs.append(math.log(math.log(lam)))
        ys.append(math.log(value))
    report.fit = fit_line(xs, ys)
    report.details['expected_slope'] = -1.0 + m / g.Q
    logger.log_result('cutoff_norm', group=g.name, fit=report.fit)
    return report


def _single_weight(form: PolyForm) -> int:
    weights = form.weights()
    if len(weights) != 1:
        raise MixedWeight(f"Form must have pure weight, found weights {list(weights)}")
    return weights[0]


def _scaling_estimates(g: StratifiedLieAlgebra, form: PolyForm, radii: Sequence[float], inner: float,
                       outer: float, samples: int, seed: int) -> List[Dict[str, float]]:
    evaluator = FormEvaluator(with_profile(form, ProfileRing(g, depth=0)), bump_profile(), scale=outer)
    estimates = []
    for R in radii:
        shell = shell_integral(g, lambda points, _, R=R: evaluator.pointwise_norm(points, dilation=R),
                               inner / R, outer / R, samples, seed)
        estimates.append({'R': float(R), 'l1': shell.estimate, 'stderr': shell.stderr})
    return estimates


def scaling_exponent_experiment(g: StratifiedLieAlgebra, omega: PolyForm, radii: Sequence[float],
                                samples: Optional[int] = None, seed: Optional[int] = None,
                                inner: float = 1.0, outer: float = 2.0,
                                compare: Optional[PolyForm] = None) -> ExperimentReport:
    """
    Exponent e in ||delta_R^* (b omega)||_L1 over the pulled-back shell, with b a bump.

    A change of variables gives e = w - Q; the report also records the
    offset from w - (Q - 1).
    """
    samples, seed = _sampling_config(samples, seed)
    errors = InputValidator.validate_radii(list(radii))
    if errors:
        raise ValidationError(f"Validation errors: {', '.join(errors)}")
    w = _single_weight(omega)

    logger = CalcLogger()
    logger.log_experiment('scaling', seed, samples, group=g.name, form=omega.to_text(), radii=list(radii))
    report = ExperimentReport('scaling', g.name, seed, samples,
                              config={'form': omega.to_text(), 'radii': [float(r) for r in radii],
                                      'inner': inner, 'outer': outer})
    report.estimates = _scaling_estimates(g, omega, radii, inner, outer, samples, seed)
    logs = [math.log(e['R']) for e in report.estimates]
    report.fit = fit_line(logs, [math.log(e['l1']) for e in report.estimates])
    exponent = report.fit['slope']
    report.details.update({
        'weight': w,
        'change_of_variables_exponent': w - g.Q,
        'shifted_exponent': w - (g.Q - 1),
        'offset_from_change_of_variables': exponent - (w - g.Q),
        'offset_from_shifted': exponent - (w - (g.Q - 1)),
    })

    if compare is not None:
        w_other = _single_weight(compare)
        other = _scaling_estimates(g, compare, radii, inner, outer, samples, seed)
        other_fit = fit_line(logs, [math.log(e['l1']) for e in other])
        report.details.update({
            'compare_form': compare.to_text(),
            'compare_weight': w_other,
            'compare_fit': other_fit,
            'exponent_difference': exponent - other_fit['slope'],
            'weight_difference': w - w_other,
        })
    logger.log_result('scaling', group=g.name, fit=report.fit)
    return report


def gaussian_volume_integral(g: StratifiedLieAlgebra) -> Optional[float]:
    """Integral of exp(-P) over the group; closed forms exist up to step 2"""
    if g.step == 1:
        return math.pi ** (g.n / 2)
    if g.step == 2:
        d1, d2 = g.layer_dims
        # |z|^4 in polar coordinates on the first layer, a Gaussian on the second
        sphere = 2 * math.pi ** (d1 / 2) / gamma(d1 / 2)
        return float(math.pi ** (d2 / 2) * sphere * gamma(d1 / 4) / 4)
    return None


def infinity_norm(beta: InvariantForm) -> float:
    return math.sqrt(sum(float(c) ** 2 for _, c in beta.terms))


def holder_bound(g: StratifiedLieAlgebra, phi: PolyForm, profile: Profile, scale: float, beta: InvariantForm,
                 R: float, lam: float, samples: int, seed: int) -> float:
    """
    sum_j ||phi||_(Q/(Q-j)) ||nabla^j xi||_(Q/j) ||beta||_inf over the jumps j of d_c
    out of the degree of phi, restricted to the shell R <= r <= lam R.
    """
    evaluator = FormEvaluator(with_profile(phi, ProfileRing(g, depth=0)), profile, scale)
    report = jset_scan(g, phi.degree, homogeneities=candidate_jumps(g, phi.degree))
    total = 0.0
    for j in report.jumps:
        if j >= g.Q:
            continue
        p = g.Q / (g.Q - j)
        phi_integral = shell_integral(g, lambda points, _: evaluator.pointwise_norm(points) ** p,
                                      R, lam * R, samples, seed)
        xi_norm, _ = cutoff_norm(g, j, R, lam, samples, seed)
        total += max(phi_integral.estimate, 0.0) ** (1 / p) * xi_norm * infinity_norm(beta)
    return total


def pairing_experiment(g: StratifiedLieAlgebra, beta: InvariantForm, radii: Sequence[float], lam: float,
                       phi: Optional[PolyForm] = None, omega: Optional[PolyForm] = None,
                       profile: str = 'bump', exponent=None, scale: float = 1.0,
                       samples: Optional[int] = None, seed: Optional[int] = None,
                       inner_ratio: Optional[float] = None) -> ExperimentReport:
    """
    Estimates of the integral of xi_R omega ^ beta along a ladder of radii,
    where omega = d_c(b phi) or omega = b times a supplied top-degree form.

    The log-radial shell covers inner_ratio R <= r <= lam R; the core ball
    r < inner_ratio R is integrated with Haar-uniform draws and added.
    """
    samples, seed = _sampling_config(samples, seed)
    inner_ratio = Config.INNER_RATIO if inner_ratio is None else inner_ratio
    errors = InputValidator.validate_radii(list(radii))
    if not InputValidator.validate_ratio(lam):
        errors.append(f"Invalid lambda: {lam}. Must be greater than 1")
    if (phi is None) == (omega is None):
        errors.append("Exactly one of phi and omega must be given")
    if errors:
        raise ValidationError(f"Validation errors: {', '.join(errors)}")

    chosen = get_profile(profile, exponent)
    source = phi if phi is not None else omega
    expected = g.n - beta.degree - (1 if phi is not None else 0)
    if source.degree != expected:
        raise DegreeMismatch(f"Form degree {source.degree} does not pair with a {beta.degree}-form "
                             f"(expected degree {expected})")

    logger = CalcLogger()
    logger.log_experiment('pairing', seed, samples, group=g.name, form=source.to_text(),
                          beta=beta.to_text(), profile=chosen.name, radii=list(radii), lam=lam)
    ring = ProfileRing(g, depth=2 * g.Q + 2)
    if phi is not None:
        form = dc_apply(g, with_profile(phi, ring))
    else:
        form = with_profile(omega, ring)
    density_form = form.wedge(PolyForm.from_invariant(ring, beta))
    evaluator = FormEvaluator(density_form, chosen, scale)

    report = ExperimentReport('pairing', g.name, seed, samples, config={
        'form': source.to_text(), 'beta': beta.to_text(), 'profile': chosen.name, 'scale': scale,
        'radii': [float(r) for r in radii], 'lambda': float(lam), 'inner_ratio': inner_ratio,
        'exact': phi is not None,
    })
    for R in radii:
        cutoff = Cutoff(R, lam)
        shell = shell_integral(g, lambda points, r, cutoff=cutoff: cutoff.profile(r) * evaluator.density(points),
                               inner_ratio * R, cutoff.outer, samples, seed)
        # xi_R = 1 on the core ball
        core = ball_integral(g, lambda points, _: evaluator.density(points), inner_ratio * R, samples, seed)
        entry = {'R': float(R), 'estimate': shell.estimate + core.estimate,
                 'stderr': math.hypot(shell.stderr, core.stderr), 'core': core.estimate}
        if phi is not None:
            entry['holder_bound'] = holder_bound(g, phi, chosen, scale, beta, R, lam, samples, seed)
        report.estimates.append(entry)

    if omega is not None and beta.degree == 0 and chosen.name == 'gaussian' and omega.is_constant():
        closed = gaussian_volume_integral(g)
        if closed is not None:
            coefficient = float(sp.Rational(omega.coefficient(tuple(range(g.n))).as_expr())) * float(
                beta.as_dict().get((), 0))
            report.details['closed_form'] = coefficient * closed * scale ** g.Q
    logger.log_result('pairing', group=g.name, estimates=report.estimates)
    return report
