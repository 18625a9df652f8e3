import math

import numpy as np
import pytest
from hypothesis import given, settings

from src.algebra.lie_algebra import builtin_group
from src.cli.form_parser import parse_form, parse_invariant_form
from src.errors import (
    DegenerateShell,
    DegreeMismatch,
    DimensionMismatch,
    MixedWeight,
    NonpositiveLambda,
    OrderTooHigh,
    ValidationError,
)
from src.numeric.cutoff import Cutoff, cutoff_derivative_norm, cutoff_eval
from src.numeric.evaluation import FormEvaluator
from src.numeric.experiments import (
    cutoff_norm_experiment,
    fit_line,
    gaussian_volume_integral,
    pairing_experiment,
    scaling_exponent_experiment,
)
from src.numeric.gauge import dilate_points, gauge_eval
from src.numeric.profiles import bump_profile, gaussian_profile, get_profile, power_profile
from src.numeric.sampling import ball_integral, shell_integral
from tests.strategies import positive_floats

H3 = builtin_group('heisenberg', 1)
ENGEL = builtin_group('engel')


def test_gauge_on_axes(h3):
    assert gauge_eval(h3, [1.0, 0.0, 0.0]) == pytest.approx(1.0)
    assert gauge_eval(h3, [0.0, 0.0, 1.0]) == pytest.approx(1.0)
    assert gauge_eval(h3, [0.0, 0.0, 16.0]) == pytest.approx(4.0)


@settings(max_examples=30, deadline=None)
@given(positive_floats())
def test_gauge_is_homogeneous(lam):
    points = np.array([[0.3, -1.2, 0.7, 2.0], [1.0, 0.0, -0.5, 0.1]])
    scaled = dilate_points(ENGEL, lam, points)
    np.testing.assert_allclose(gauge_eval(ENGEL, scaled), lam * gauge_eval(ENGEL, points), rtol=1e-9)


def test_gauge_checks_dimension(h3):
    with pytest.raises(DimensionMismatch):
        gauge_eval(h3, [1.0, 2.0])
    with pytest.raises(NonpositiveLambda):
        dilate_points(h3, -1.0, [1.0, 2.0, 3.0])


def test_cutoff_profile():
    cutoff = Cutoff(1.0, 4.0)
    values = cutoff.profile([0.5, 1.0, 2.0, 4.0, 8.0])
    np.testing.assert_allclose(values, [1.0, 1.0, 0.5, 0.0, 0.0])
    assert cutoff.outer == 4.0


def test_cutoff_eval_uses_gauge(h3):
    assert cutoff_eval(h3, 1.0, 4.0, [[0.0, 0.0, 4.0]]) == pytest.approx([0.5])


def test_cutoff_rejects_bad_parameters():
    with pytest.raises(NonpositiveLambda):
        Cutoff(1.0, 1.0)
    with pytest.raises(ValidationError):
        Cutoff(0.0, 2.0)


def test_cutoff_derivative_scales_inversely(h3):
    cutoff = Cutoff(0.1, 100.0)
    point = np.array([[0.5, 0.2, 0.3]])
    near = cutoff_derivative_norm(h3, cutoff, 1, point)
    far = cutoff_derivative_norm(h3, cutoff, 1, dilate_points(h3, 2.0, point))
    assert far == pytest.approx(near / 2.0)
    assert cutoff_derivative_norm(h3, cutoff, 1, [[100.0, 0.0, 0.0]])[0] == 0.0


def test_profiles():
    bump = bump_profile()
    assert bump.derivative(0)(np.array([0.0, 0.5, 1.0, 2.0])) == pytest.approx([1.0, math.exp(-1.0), 0.0, 0.0])
    assert gaussian_profile().derivative(1)(np.array([0.0])) == pytest.approx([-1.0])
    assert power_profile().name == 'power:7/8'
    assert get_profile('power', '1/2').derivative(0)(np.array([3.0])) == pytest.approx([0.5])
    with pytest.raises(ValidationError):
        get_profile('square')


def test_shell_volume_of_the_plane():
    plane = builtin_group('abelian', 2)
    result = shell_integral(plane, lambda points, radii: np.ones(len(radii)), 1.0, 2.0, samples=20000, seed=3)
    assert abs(result.estimate - 3 * math.pi) < 3 * result.stderr
    assert 0.7 < result.acceptance < 0.85


def test_shell_integral_is_reproducible_across_workers(h3):
    def integrand(points, radii):
        return np.exp(-radii)

    one = shell_integral(h3, integrand, 0.5, 3.0, samples=8000, seed=11, block_size=1000, workers=1)
    four = shell_integral(h3, integrand, 0.5, 3.0, samples=8000, seed=11, block_size=1000, workers=4)
    assert one == four


def test_shell_integral_rejects_degenerate_shell(h3):
    with pytest.raises(DegenerateShell):
        shell_integral(h3, lambda points, radii: radii, 2.0, 1.0, samples=1000)
    with pytest.raises(ValidationError):
        shell_integral(h3, lambda points, radii: radii, 1.0, 2.0, samples=10)


def test_form_evaluator(h3):
    evaluator = FormEvaluator(parse_form("x1*t[1] - 2*x3*t[2]", h3))
    values = evaluator.coefficients(np.array([[1.0, 5.0, 3.0]]))
    assert values[(0,)] == pytest.approx([1.0])
    assert values[(1,)] == pytest.approx([-6.0])
    assert evaluator.pointwise_norm(np.array([[1.0, 5.0, 3.0]])) == pytest.approx([math.sqrt(37.0)])


def test_form_evaluator_pullback(h3):
    evaluator = FormEvaluator(parse_form("x3*t[1]", h3))
    point = np.array([[1.0, 1.0, 1.0]])
    assert evaluator.coefficients(point, dilation=2.0)[(0,)] == pytest.approx([8.0])


def test_fit_line_recovers_slope():
    fit = fit_line([0.0, 1.0, 2.0, 3.0], [1.0, 3.0, 5.0, 7.0])
    assert fit['slope'] == pytest.approx(2.0)
    assert fit['intercept'] == pytest.approx(1.0)


def test_cutoff_norm_slope(h3):
    report = cutoff_norm_experiment(h3, 1, [4.0, 16.0, 64.0], samples=5000, seed=1)
    assert report.fit['slope'] == pytest.approx(-1.0 + 1 / h3.Q, abs=1e-6)
    assert report.details['expected_slope'] == pytest.approx(-0.75)
    assert all(entry['stderr'] > 0 for entry in report.estimates)


def test_cutoff_order_must_be_below_Q(h3):
    with pytest.raises(OrderTooHigh):
        cutoff_norm_experiment(h3, 4, [2.0, 4.0], samples=1000)


def test_scaling_exponent(h3):
    report = scaling_exponent_experiment(h3, parse_form("t[1]", h3), [1.0, 2.0, 4.0], samples=4000, seed=2,
                                         compare=parse_form("t[3]", h3))
    assert report.fit['slope'] == pytest.approx(1 - h3.Q, abs=1e-6)
    assert report.details['change_of_variables_exponent'] == -3
    assert report.details['shifted_exponent'] == -2
    assert report.details['exponent_difference'] == pytest.approx(-1.0, abs=1e-6)
    assert report.details['weight_difference'] == -1


def test_scaling_needs_pure_weight(h3):
    with pytest.raises(MixedWeight):
        scaling_exponent_experiment(h3, parse_form("t[1] + t[3]", h3), [1.0, 2.0], samples=1000)


def test_gaussian_volume_integrals():
    assert gaussian_volume_integral(builtin_group('abelian', 2)) == pytest.approx(math.pi)
    assert gaussian_volume_integral(H3) == pytest.approx(math.pi ** 2 / 2)
    assert gaussian_volume_integral(ENGEL) is None


def test_gaussian_pairing_matches_closed_form():
    plane = builtin_group('abelian', 2)
    report = pairing_experiment(plane, parse_invariant_form("1", plane), [4.0, 5.0], 4.0,
                                omega=parse_form("t[1]^t[2]", plane), profile='gaussian',
                                samples=20000, seed=5)
    closed = report.details['closed_form']
    assert closed == pytest.approx(math.pi)
    for entry in report.estimates:
        assert abs(entry['estimate'] - closed) < 3 * entry['stderr']
        # e^(-r^2) is 1 to first order on the core ball
        assert entry['core'] == pytest.approx(math.pi * (report.config['inner_ratio'] * entry['R']) ** 2, rel=0.05)


def test_pairing_degree_mismatch(h3):
    with pytest.raises(DegreeMismatch):
        pairing_experiment(h3, parse_invariant_form("t[1]", h3), [1.0, 2.0], 2.0,
                           phi=parse_form("t[2]^t[3]", h3), samples=1000)


def test_pairing_needs_exactly_one_source(h3):
    with pytest.raises(ValidationError):
        pairing_experiment(h3, parse_invariant_form("t[1]", h3), [1.0, 2.0], 2.0, samples=1000)


@pytest.mark.slow
def test_compactly_supported_exact_form_pairs_to_zero(h3):
    report = pairing_experiment(h3, parse_invariant_form("t[1]^t[3]", h3), [1.5, 2.0], 4.0,
                                phi=parse_form("x2", h3), samples=4000, seed=7)
    assert report.config['exact'] is True
    assert len(report.estimates) == 2
    for entry in report.estimates:
        assert entry['holder_bound'] >= 0.0
        assert abs(entry['estimate']) < 3 * entry['stderr']


@pytest.mark.slow
def test_slowly_decaying_primitive_pairing_decays(h3):
    # b x1 with b = (1 + P)^(-9/8) decays like r^(-7/2): not integrable, its d_c is
    report = pairing_experiment(h3, parse_invariant_form("t[2]^t[3]", h3), [1.0, 2.0, 4.0, 8.0], 4.0,
                                phi=parse_form("x1", h3), profile='power', exponent='9/8',
                                samples=8000, seed=13)
    estimates = report.estimates
    for before, after in zip(estimates, estimates[1:]):
        noise = 3 * math.hypot(before['stderr'], after['stderr'])
        assert after['estimate'] < before['estimate'] + noise
        assert after['holder_bound'] < before['holder_bound']
    for entry in estimates:
        assert abs(entry['estimate']) <= entry['holder_bound'] + 3 * entry['stderr']


def test_homogeneous_shell_integral_grows_like_log(h3):
    def integrand(points, radii):
        return radii ** (-float(h3.Q))

    ratios = []
    for lam in (4.0, 16.0, 64.0):
        result = shell_integral(h3, integrand, 1.0, lam, samples=5000, seed=4)
        ratios.append(result.estimate / math.log(lam))
    assert ratios[1] == pytest.approx(ratios[0], rel=1e-9)
    assert ratios[2] == pytest.approx(ratios[0], rel=1e-9)


def test_log_growth_constant_on_the_plane():
    plane = builtin_group('abelian', 2)
    for lam in (4.0, 16.0, 64.0):
        result = shell_integral(plane, lambda points, radii: radii ** -2.0, 1.0, lam, samples=20000, seed=6)
        # Q |B(1)| = 2 pi
        assert abs(result.estimate - 2 * math.pi * math.log(lam)) < 3 * result.stderr


def test_dyadic_shell_of_homogeneous_integrand_is_radius_free(h3):
    def integrand(points, radii):
        return radii ** (-float(h3.Q)) * (points[:, 0] / radii) ** 2

    near = shell_integral(h3, integrand, 1.0, 2.0, samples=5000, seed=8)
    far = shell_integral(h3, integrand, 7.0, 14.0, samples=5000, seed=8)
    assert far.estimate == pytest.approx(near.estimate, rel=1e-9)
    independent = shell_integral(h3, integrand, 7.0, 14.0, samples=5000, seed=9)
    assert abs(independent.estimate - near.estimate) < 3 * math.hypot(near.stderr, independent.stderr)


def test_ball_volume_of_the_plane():
    plane = builtin_group('abelian', 2)
    unit = ball_integral(plane, lambda points, radii: np.ones(len(radii)), 1.0, samples=20000, seed=3)
    assert abs(unit.estimate - math.pi) < 3 * unit.stderr
    double = ball_integral(plane, lambda points, radii: np.ones(len(radii)), 2.0, samples=20000, seed=3)
    assert double.estimate == pytest.approx(4 * unit.estimate)


def test_ball_and_shell_add_up(h3):
    def integrand(points, radii):
        return np.exp(-radii ** 2)

    ball = ball_integral(h3, integrand, 1.0, samples=20000, seed=2)
    shell = shell_integral(h3, integrand, 1.0, 2.0, samples=20000, seed=2)
    whole = ball_integral(h3, integrand, 2.0, samples=20000, seed=2)
    combined = math.hypot(ball.stderr, shell.stderr, whole.stderr)
    assert abs(ball.estimate + shell.estimate - whole.estimate) < 3 * combined


def test_ball_integral_is_reproducible_across_workers(h3):
    def integrand(points, radii):
        return 1.0 + points[:, 2] ** 2

    one = ball_integral(h3, integrand, 0.5, samples=8000, seed=11, block_size=1000, workers=1)
    four = ball_integral(h3, integrand, 0.5, samples=8000, seed=11, block_size=1000, workers=4)
    assert one == four
    with pytest.raises(DegenerateShell):
        ball_integral(h3, integrand, 0.0, samples=1000)
