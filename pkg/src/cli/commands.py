"""
Verbs of the rumin-calc command line
"""
import argparse
from typing import Any, Dict, List, Optional, Sequence

from src.algebra.lie_algebra import StratifiedLieAlgebra, load_group
from src.calculus.differential import dc_apply, dc_pieces
from src.calculus.heisenberg import ideal_dc
from src.calculus.jsets import jset_table, q_exponent
from src.calculus.leibniz import leibniz_check, rumin_wedge
from src.calculus.primitives import linear_growth_primitive
from src.calculus.polyform import CoordinateRing, PolyForm
from src.cli.form_parser import GRAMMAR, parse_form, parse_invariant_form
from src.cli.report import JSON, TEXT, CommandResult, Table, emit_report, error_document, render_json
from src.config import Config
from src.errors import USAGE_ERRORS, DegreeMismatch, FormParseError, RuminError
from src.forms.invariant import betti_numbers
from src.forms.rumin import rumin_basis, weights_table
from src.numeric.experiments import (
    ExperimentReport,
    cutoff_norm_experiment,
    pairing_experiment,
    scaling_exponent_experiment,
)
from src.utils.formatter import OutputFormatter
from src.utils.logger import CalcLogger
from src.utils.validator import InputValidator

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def number_list(text: str) -> List[float]:
    try:
        return InputValidator.parse_number_list(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _rational(value) -> str:
    return OutputFormatter.format_rational(value)


class RuminCalculator:
    """Runs one verb against a loaded group and packages the outcome"""

    def __init__(self, group: StratifiedLieAlgebra):
        self.group = group
        self.ring = CoordinateRing(group)
        self.logger = CalcLogger()
        self.formatter = OutputFormatter()

    def _result(self, command: str, parameters: Dict[str, Any], data: Dict[str, Any], **extra) -> CommandResult:
        return CommandResult(command, self.group.name, parameters, data, **extra)

    def group_info(self) -> CommandResult:
        g = self.group
        brackets = [{'i': i + 1, 'j': j + 1, 'k': k + 1, 'c': _rational(c)} for i, j, k, c in g.brackets]
        data = {
            'name': g.name,
            'layer_dims': list(g.layer_dims),
            'dimension': g.n,
            'step': g.step,
            'homogeneous_dimension': g.Q,
            'basis_layers': list(g.layers),
            'brackets': brackets,
            'heisenberg_rank': g.heisenberg_rank(),
        }
        table = Table('Brackets [X_i, X_j] = c X_k', ['i', 'j', 'k', 'c'],
                      [[b['i'], b['j'], b['k'], b['c']] for b in brackets])
        summary = [('dimension', g.n), ('step', g.step), ('Q', g.Q), ('layers', list(g.layer_dims))]
        return self._result('group', {}, data, tables=[table], summary=summary,
                            message=g.to_document().rstrip())

    def betti(self) -> CommandResult:
        numbers = betti_numbers(self.group)
        rows = [[k, b] for k, b in enumerate(numbers)]
        return self._result('betti', {}, {'betti': list(numbers), 'euler_characteristic':
                                          sum((-1) ** k * b for k, b in enumerate(numbers))},
                            tables=[Table('dim H^k = dim E0^k', ['k', 'dim'], rows)])

    def weights(self) -> CommandResult:
        table = weights_table(self.group)
        rows = []
        entries = []
        for k, values in table.items():
            dimension = rumin_basis(self.group, k).dimension
            rows.append([k, self.formatter.format_set(values), dimension])
            entries.append({'k': k, 'weights': list(values), 'dimension': dimension})
        return self._result('weights', {}, {'weights': entries},
                            tables=[Table('Weights of E0^k', ['k', 'W(k)', 'dim'], rows)])

    def jsets(self, max_homogeneity: Optional[int]) -> CommandResult:
        D = Config.MAX_HOMOGENEITY if max_homogeneity is None else max_homogeneity
        table = jset_table(self.group, D)
        rows, entries = [], []
        for report in table.reports:
            for w, values in report.jsets.items():
                rows.append([report.degree, w, self.formatter.format_set(values)])
            entries.append({
                'k': report.degree,
                'jsets': {str(w): list(values) for w, values in report.jsets.items()},
                'dual': {str(w): list(values) for w, values in report.dual.items()},
                'jumps': list(report.jumps),
            })
        checks = {
            'M': table.M,
            'Q': table.Q,
            'weight_duality': table.weight_duality_holds(),
            'degree_symmetry': table.degree_symmetry_holds(),
        }
        return self._result('jsets', {'max_homogeneity': D}, {'degrees': entries, 'checks': checks},
                            tables=[Table('J(k, w)', ['k', 'w', 'J(k,w)'], rows)],
                            summary=[(key, value) for key, value in checks.items()])

    def exponents(self, max_homogeneity: Optional[int]) -> CommandResult:
        rows = q_exponent(self.group, max_homogeneity)
        entries = [{
            'k': row.degree,
            'j': row.j,
            'q': _rational(row.q),
            'integrability': [{'w': w, 'q': _rational(q)} for w, q in row.integrability.requirements],
        } for row in rows]
        return self._result('exponents', {'max_homogeneity': max_homogeneity}, {'exponents': entries},
                            tables=[Table('Exponents q(G, k) = Q / (Q - j(k))', ['k', 'j(k)', 'q'],
                                          [[e['k'], e['j'], e['q']] for e in entries])])

    def _form(self, text: str, degree: Optional[int] = None) -> PolyForm:
        form = parse_form(text, self.ring)
        if degree is not None and form.degree != degree:
            if not form.is_zero():
                raise DegreeMismatch(f"{text!r} has degree {form.degree}, expected {degree}")
            form = PolyForm.zero(self.ring, degree)
        return form

    def dc(self, text: str, degree: Optional[int]) -> CommandResult:
        form = self._form(text, degree)
        self.logger.log_operation('dc', group=self.group.name, form=form.to_text())
        image = dc_apply(self.group, form)
        pieces = {str(j): piece.to_text() for j, piece in dc_pieces(self.group, form).items()}
        data = {'form': form.to_text(), 'degree': form.degree, 'dc': image.to_text(), 'pieces': pieces}
        summary = [('form', form.to_text()), ('d_c', image.to_text())]
        if self.group.heisenberg_rank() is not None:
            through_ideal = ideal_dc(self.group, form)
            data['ideal_dc'] = through_ideal.to_text()
            data['ideal_agrees'] = through_ideal == image
            summary.append(('ideal d_c agrees', data['ideal_agrees']))
        table = Table('Pieces d_(c,j)', ['j', 'image'], [[j, text] for j, text in pieces.items()])
        self.logger.log_result('dc', group=self.group.name, image=image.to_text())
        return self._result('dc', {'form': text, 'degree': degree}, data, tables=[table], summary=summary)

    def leibniz(self, alpha_text: str, beta_text: str) -> CommandResult:
        alpha, beta = self._form(alpha_text), self._form(beta_text)
        report = leibniz_check(self.group, alpha, beta)
        product = rumin_wedge(self.group, alpha, beta)
        data = {
            'degrees': list(report.degrees),
            'guaranteed': report.guaranteed,
            'holds': report.holds,
            'residual': report.residual.to_text(),
            'wedge': product.form.to_text(),
            'representative_dependent': product.representative_dependent,
        }
        summary = [('degrees', list(report.degrees)), ('guaranteed', report.guaranteed),
                   ('holds', report.holds), ('residual', data['residual'])]
        return self._result('leibniz', {'alpha': alpha_text, 'beta': beta_text}, data, summary=summary)

    def primitive(self, text: str) -> CommandResult:
        beta = parse_invariant_form(text, self.group)
        primitive = linear_growth_primitive(self.group, beta)
        verified = dc_apply(self.group, primitive) == PolyForm.from_invariant(self.ring, beta)
        data = {'form': beta.to_text(), 'primitive': primitive.to_text(),
                'growth': primitive.coefficient_growth(), 'verified': verified}
        summary = [('form', data['form']), ('primitive', data['primitive']),
                   ('growth', data['growth']), ('d_c primitive = form', verified)]
        return self._result('primitive', {'form': text}, data, summary=summary)

    def _experiment(self, command: str, parameters: Dict[str, Any], report: ExperimentReport,
                    columns: Sequence[str]) -> CommandResult:
        rows = [[self._cell(entry.get(column)) for column in columns] for entry in report.estimates]
        summary = []
        if report.fit is not None:
            summary.append(('slope', f"{self.formatter.format_float(report.fit['slope'])} "
                                     f"+/- {self.formatter.format_float(report.fit['ci'])}"))
        summary += [(key, self._cell(value)) for key, value in sorted(report.details.items())
                    if not isinstance(value, dict)]
        summary += [('seed', report.seed), ('samples', report.samples)]
        return self._result(command, parameters, report.to_dict(),
                            tables=[Table('Estimates', columns, rows)], summary=summary)

    def _cell(self, value) -> str:
        if isinstance(value, float):
            return self.formatter.format_float(value)
        return str(value)

    def verify_cutoff(self, m: int, lambdas: List[float], radius: float, samples: Optional[int],
                      seed: Optional[int]) -> CommandResult:
        report = cutoff_norm_experiment(self.group, m, lambdas, radius, samples, seed)
        parameters = {'m': m, 'lambdas': lambdas, 'radius': radius, 'samples': report.samples,
                      'seed': report.seed}
        return self._experiment('verify-cutoff', parameters, report, ['lambda', 'norm', 'stderr'])

    def verify_scaling(self, text: str, radii: List[float], compare: Optional[str], samples: Optional[int],
                       seed: Optional[int]) -> CommandResult:
        omega = self._form(text)
        other = self._form(compare) if compare is not None else None
        report = scaling_exponent_experiment(self.group, omega, radii, samples, seed, compare=other)
        parameters = {'form': text, 'radii': radii, 'compare': compare, 'samples': report.samples,
                      'seed': report.seed}
        return self._experiment('verify-scaling', parameters, report, ['R', 'l1', 'stderr'])

    def verify_pairing(self, phi: Optional[str], omega: Optional[str], beta_text: str, radii: List[float],
                       lam: float, profile: str, exponent: Optional[str], scale: float,
                       samples: Optional[int], seed: Optional[int]) -> CommandResult:
        beta = parse_invariant_form(beta_text, self.group)
        phi_form = self._form(phi) if phi is not None else None
        omega_form = self._form(omega) if omega is not None else None
        report = pairing_experiment(self.group, beta, radii, lam, phi=phi_form, omega=omega_form,
                                    profile=profile, exponent=exponent, scale=scale,
                                    samples=samples, seed=seed)
        parameters = {'phi': phi, 'omega': omega, 'beta': beta_text, 'radii': radii, 'lambda': lam,
                      'profile': profile, 'exponent': exponent, 'scale': scale,
                      'samples': report.samples, 'seed': report.seed}
        columns = ['R', 'estimate', 'stderr'] + (['holder_bound'] if phi is not None else [])
        return self._experiment('verify-pairing', parameters, report, columns)


def _common_options(top_level: bool) -> argparse.ArgumentParser:
    """--group, --json and --seed, accepted before or after the verb"""
    # verb-level copies must not overwrite a value given before the verb
    unset = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--group', default=None if top_level else unset,
                        help="family[:param] (abelian:n, heisenberg:m, engel) or a file")
    common.add_argument('--json', action='store_true', default=False if top_level else unset,
                        help="emit one structured JSON document")
    common.add_argument('--seed', type=int, default=None if top_level else unset,
                        help=f"RNG seed (default {Config.SEED})")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options(top_level=False)
    parser = argparse.ArgumentParser(prog='rumin-calc', description="Exact Rumin complex calculator on Carnot groups",
                                     parents=[_common_options(top_level=True)])
    verbs = parser.add_subparsers(dest='verb', required=True, metavar='verb')

    verbs.add_parser('group', parents=[common], help="show and validate a group")
    verbs.add_parser('betti', parents=[common], help="dimensions of the Lie algebra cohomology")
    verbs.add_parser('weights', parents=[common], help="weights of E0 in every degree")

    jsets = verbs.add_parser('jsets', parents=[common], help="weight jumps J(k, w) of d_c")
    jsets.add_argument('--max-homogeneity', type=int, default=None)

    exponents = verbs.add_parser('exponents', parents=[common], help="j(k) and q(G, k)")
    exponents.add_argument('--max-homogeneity', type=int, default=None)

    dc = verbs.add_parser('dc', parents=[common], help="apply d_c to a Rumin form")
    dc.add_argument('--form', required=True)
    dc.add_argument('--degree', type=int, default=None)

    leibniz = verbs.add_parser('leibniz', parents=[common], help="check the Leibniz rule on Heisenberg groups")
    leibniz.add_argument('--alpha', required=True)
    leibniz.add_argument('--beta', required=True)

    primitive = verbs.add_parser('primitive', parents=[common], help="linear-growth primitive of a closed form")
    primitive.add_argument('--form', required=True)

    cutoff = verbs.add_parser('verify-cutoff', parents=[common], help="decay of the log cut-off norms")
    cutoff.add_argument('--m', type=int, required=True)
    cutoff.add_argument('--lambdas', type=number_list, required=True)
    cutoff.add_argument('--radius', type=float, default=1.0)
    cutoff.add_argument('--samples', type=int, default=None)

    scaling = verbs.add_parser('verify-scaling', parents=[common], help="dilation exponent of shell L1 norms")
    scaling.add_argument('--form', required=True)
    scaling.add_argument('--radii', type=number_list, required=True)
    scaling.add_argument('--compare', default=None)
    scaling.add_argument('--samples', type=int, default=None)

    pairing = verbs.add_parser('verify-pairing', parents=[common], help="averaged pairing with a cut-off")
    source = pairing.add_mutually_exclusive_group(required=True)
    source.add_argument('--phi', default=None)
    source.add_argument('--omega', default=None)
    pairing.add_argument('--beta', required=True)
    pairing.add_argument('--radii', type=number_list, required=True)
    pairing.add_argument('--lambda', dest='lam', type=float, default=4.0)
    pairing.add_argument('--profile', choices=['bump', 'gaussian', 'power'], default='bump')
    pairing.add_argument('--exponent', default=None, help="decay exponent of the power profile, e.g. 7/8")
    pairing.add_argument('--scale', type=float, default=1.0)
    pairing.add_argument('--samples', type=int, default=None)
    return parser


def dispatch(calculator: RuminCalculator, args: argparse.Namespace) -> CommandResult:
    verb = args.verb
    if verb == 'group':
        return calculator.group_info()
    if verb == 'betti':
        return calculator.betti()
    if verb == 'weights':
        return calculator.weights()
    if verb == 'jsets':
        return calculator.jsets(args.max_homogeneity)
    if verb == 'exponents':
        return calculator.exponents(args.max_homogeneity)
    if verb == 'dc':
        return calculator.dc(args.form, args.degree)
    if verb == 'leibniz':
        return calculator.leibniz(args.alpha, args.beta)
    if verb == 'primitive':
        return calculator.primitive(args.form)
    if verb == 'verify-cutoff':
        return calculator.verify_cutoff(args.m, args.lambdas, args.radius, args.samples, args.seed)
    if verb == 'verify-scaling':
        return calculator.verify_scaling(args.form, args.radii, args.compare, args.samples, args.seed)
    return calculator.verify_pairing(args.phi, args.omega, args.beta, args.radii, args.lam, args.profile,
                                     args.exponent, args.scale, args.samples, args.seed)


def _report_error(error: Exception, args: argparse.Namespace, code: int):
    if args.json:
        print(render_json(error_document(error, args.verb, code)), end="")
        return
    OutputFormatter.print_error(str(error))
    if isinstance(error, FormParseError):
        print(error.pointer())
        print(f"expected grammar: {GRAMMAR}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the verb and print the report; returns the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.group is None:
            parser.error("the following arguments are required: --group")
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logger = CalcLogger()
    mode = JSON if args.json else TEXT
    try:
        calculator = RuminCalculator(load_group(args.group))
        result = dispatch(calculator, args)
    except USAGE_ERRORS as e:
        logger.log_error(e, {'verb': args.verb, 'group': args.group})
        _report_error(e, args, EXIT_USAGE)
        return EXIT_USAGE
    except RuminError as e:
        logger.log_error(e, {'verb': args.verb, 'group': args.group})
        _report_error(e, args, EXIT_DOMAIN)
        return EXIT_DOMAIN

    print(emit_report(result, mode), end="")
    return EXIT_OK
