#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
gradus command-line tool
Main Program Entry

Reports are single JSON documents on standard output; logging and the
human-readable summary go to standard error.
"""

import argparse
import json
import logging
import os
import sys
import time
from typing import Any, Callable, Dict, List, Optional

# Add a project path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from core import __version__
from core.catalog import (CATALOG, build_catalog, catalog_listing, compact_form_conjugation, complexify,
                          theta_automorphism)
from core.config_manager import get_config_manager
from core.exceptions import (EXIT_COMPUTATION, EXIT_OK, ErrorHandler, GradusError, InputError, UndecidedError,
                             exit_code_for, safe_operation)
from core.involutions import (check_compatibility, compact_direction, improve_compact_form, is_r_compatible,
                              permutation_map, perturbed_conjugation)
from core.jordan import is_nilpotent, is_semisimple, jmv_triple, jordan_decompose, scaling_diagnostic
from core.kvectors import analyze_kvector, model_for
from core.lie import GradedAlgebra, element_from_dict, verify_axioms
from core.nilclass import (EXACT, characteristic_fingerprint, classify_nilpotent_orbits, slice_commutant,
                           slice_decomposition, support)
from core.performance_monitor import RunMonitor
from core.z2_orbits import UNDECIDED, cartan_decomposition, mixed_conjugacy, mixed_normal_form
from database.storage import RunArchive
from utils.export import ReportExporter, RunManifest, dumps_report, text_digest
from utils.validators import validate_document

logger = logging.getLogger("gradus")

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
MODELS = {'e7': (8, 4), 'e8': (9, 3)}
# 不进入运行清单的全局参数
GLOBAL_OPTIONS = {'config', 'archive', 'timing', 'no_log_file', 'verbose', 'quiet', 'strict',
                  'threads', 'output', 'handler', 'command', 'action'}


def setup_logging(level: str = "INFO", log_dir: str = "logs", log_file: bool = True):
    """Setup logging configuration"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        os.makedirs(log_dir, exist_ok=True)
        handlers.insert(0, logging.FileHandler(os.path.join(log_dir, 'gradus.log'), encoding='utf-8'))
    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), format=LOG_FORMAT,
                        handlers=handlers, force=True)


class RunContext:
    """一次命令运行的共享状态"""

    def __init__(self, args: argparse.Namespace, command: str):
        self.args = args
        self.config = get_config_manager(args.config)
        if args.threads:
            self.config.set_config('workers', 'threads', max(1, args.threads))
        self.exporter = ReportExporter()
        self.monitor = RunMonitor()
        arguments = {k: v for k, v in vars(args).items() if k not in GLOBAL_OPTIONS and v is not None}
        self.manifest = RunManifest(command, arguments, seed=getattr(args, 'seed', None))
        self.undecided: Optional[str] = None
        self.summary = ""
        self.raw_output = False
        self.failed = False

    # ---------- 输入 ----------

    def algebra(self, reference: str) -> GradedAlgebra:
        """ALGEBRA 参数：JSON 文件或目录名"""
        if os.path.exists(reference):
            self.manifest.add_input(reference)
            return self.exporter.load_algebra(reference)
        if reference in CATALOG:
            return build_catalog(reference)
        raise InputError(f"{reference!r} is neither a file nor a catalog algebra; known: {sorted(CATALOG)}")

    def element(self, algebra: GradedAlgebra, reference: str):
        """ELEMENT 参数：JSON 文件或内联 JSON"""
        if reference.lstrip().startswith('{'):
            try:
                doc = json.loads(reference)
            except json.JSONDecodeError as e:
                raise InputError(f"inline element is not valid JSON: {e}", original_error=e)
            validate_document('element', doc)
            return element_from_dict(algebra, doc)
        self.manifest.add_input(reference)
        return self.exporter.load_element(algebra, reference)

    def sampling(self) -> Dict[str, Any]:
        args = self.args
        return self.config.sampling_options(seed=getattr(args, 'seed', None),
                                            samples=getattr(args, 'samples', None),
                                            box=getattr(args, 'box', None),
                                            grid_bits=getattr(args, 'grid_bits', None))


# ==================== 命令实现 ====================

def cmd_catalog(ctx: RunContext) -> Dict[str, Any]:
    args = ctx.args
    if args.action == 'list':
        ctx.summary = f"{len(CATALOG)} catalog algebras"
        return {'algebras': catalog_listing()}
    with ctx.monitor.stage('build'):
        algebra = build_catalog(args.name)
    document = algebra.to_dict()
    validate_document('algebra', document)
    ctx.raw_output = True
    ctx.summary = f"{algebra.name}: dim {algebra.dim}, degree dims {algebra.degree_dims()}"
    return document


def cmd_verify(ctx: RunContext) -> Dict[str, Any]:
    algebra = ctx.algebra(ctx.args.algebra)
    with ctx.monitor.stage('verify'):
        report = verify_axioms(algebra, threads=ctx.config.get('workers.threads', 1))
    ctx.summary = f"{algebra.name}: axioms {'pass' if report.passed else 'FAIL'}"
    if not report.passed:
        ctx.failed = True
    return report.to_dict()


def cmd_element(ctx: RunContext) -> Dict[str, Any]:
    args = ctx.args
    algebra = ctx.algebra(args.algebra)
    x = ctx.element(algebra, args.element)
    with ctx.monitor.stage('jordan'):
        pair = jordan_decompose(x)
    result = {
        'element': ctx.exporter.element_document(x),
        'degree': x.degree(),
        'nilpotent': is_nilpotent(x),
        'semisimple': is_semisimple(x),
        'jordan': pair.to_dict(),
    }
    if result['nilpotent'] and x.degree() == 1 and not x.is_zero():
        with ctx.monitor.stage('jmv'):
            h = jmv_triple(x).h
        result['characteristic'] = ctx.exporter.element_document(h)
        result['fingerprint'] = characteristic_fingerprint(h).to_dict()
    if args.h:
        h = ctx.element(algebra, args.h)
        result['scaling'] = scaling_diagnostic(x, h).to_dict()
    kind = 'nilpotent' if result['nilpotent'] else 'semisimple' if result['semisimple'] else 'mixed'
    ctx.summary = f"{x.describe()}: {kind}"
    return result


def cmd_jmv(ctx: RunContext) -> Dict[str, Any]:
    algebra = ctx.algebra(ctx.args.algebra)
    e = ctx.element(algebra, ctx.args.element)
    with ctx.monitor.stage('jmv'):
        triple = jmv_triple(e)
    ctx.summary = f"h = {triple.h.describe()}, f = {triple.f.describe()}"
    return dict(triple.to_dict(), uniqueness_dim=triple.uniqueness_dim)


def cmd_slice(ctx: RunContext) -> Dict[str, Any]:
    args = ctx.args
    algebra = ctx.algebra(args.algebra)
    h = ctx.element(algebra, args.h)
    with ctx.monitor.stage('slice'):
        decomposition = slice_decomposition(h)
        commutant = slice_commutant(decomposition)
    result = {'slice': decomposition.to_dict(), 'commutant': commutant.to_dict()}
    if args.from_element:
        e = ctx.element(algebra, args.from_element)
        with ctx.monitor.stage('support'):
            data = support(e, seed=ctx.sampling()['seed'])
        result['support'] = data.to_dict()
    ctx.summary = f"slice dims {decomposition.dims()}"
    return result


def cmd_nilorbits(ctx: RunContext) -> Dict[str, Any]:
    args = ctx.args
    algebra = ctx.algebra(args.algebra)
    h = ctx.element(algebra, args.h)
    options = ctx.sampling()
    ctx.manifest.seed = options['seed']
    with ctx.monitor.stage('nilorbits'):
        classification = classify_nilpotent_orbits(algebra, h, **options)
    if classification.components.mode != EXACT:
        ctx.undecided = "; ".join(classification.components.caveats) or "orbit count is heuristic"
    ctx.summary = f"{classification.orbit_count} orbit(s), {classification.components.mode} mode"
    return classification.to_dict()


def cmd_z2(ctx: RunContext) -> Dict[str, Any]:
    args = ctx.args
    algebra = ctx.algebra(args.algebra)
    with ctx.monitor.stage('cartan'):
        decomposition = cartan_decomposition(algebra)
    x = ctx.element(algebra, args.x)
    if args.action == 'describe':
        form = mixed_normal_form(x, decomposition)
        ctx.summary = f"{x.describe()}: standard position {form.standard_position}"
        return {'cartan_decomposition': decomposition.to_dict(), 'normal_form': form.to_dict()}
    y = ctx.element(algebra, args.y)
    options = dict(ctx.sampling(), max_group_order=ctx.config.get('weyl.max_group_order', 1000000))
    ctx.manifest.seed = options['seed']
    with ctx.monitor.stage('compare'):
        verdict = mixed_conjugacy(x, y, decomposition, **options)
    if verdict.verdict == UNDECIDED:
        ctx.undecided = f"undecided at stage {verdict.stage}"
    ctx.summary = f"{verdict.verdict} ({verdict.stage})"
    return verdict.to_dict()


def cmd_kform(ctx: RunContext) -> Dict[str, Any]:
    args = ctx.args
    ctx.manifest.add_input(args.form)
    w = ctx.exporter.load_multivector(args.form)
    with ctx.monitor.stage('kform'):
        report = analyze_kvector(w, dualize=args.dualize)
    if report.model != model_for(*MODELS[args.model]):
        raise InputError(f"input becomes a {report.multivector.k}-vector on R^{report.multivector.n}, "
                         f"which is modelled by {report.model}, not {args.model}")
    ctx.summary = f"{w.describe()}: {report.kind}"
    return report.to_dict()


def cmd_involution(ctx: RunContext) -> Dict[str, Any]:
    args = ctx.args
    algebra = ctx.algebra(args.algebra)
    complex_algebra, tau_g = complexify(algebra)
    theta = theta_automorphism(algebra)
    if args.action == 'check':
        tau_u = compact_form_conjugation(complex_algebra)
        result = {
            'tau_g': check_compatibility(complex_algebra, tau_g, theta).to_dict(),
            'tau_u': is_r_compatible(complex_algebra, tau_u, theta).to_dict(),
        }
        if args.break_grading:
            result['broken'] = check_compatibility(complex_algebra, _grading_breaker(algebra), theta).to_dict()
        ctx.summary = f"{algebra.name}: tau_g compatible {result['tau_g']['comp_holds']}"
        return result
    tau_u = compact_form_conjugation(complex_algebra)
    direction = compact_direction(algebra, complex_algebra)
    perturbed = perturbed_conjugation(complex_algebra, tau_u, direction, args.epsilon)
    with ctx.monitor.stage('improve'):
        improved = improve_compact_form(complex_algebra, tau_g, perturbed, theta,
                                        tolerance=ctx.config.get('numeric.tolerance', 1e-9))
    ctx.summary = f"residuals {improved.residuals}"
    return improved.to_dict()


def _grading_breaker(algebra: GradedAlgebra):
    """交换一个 0 次与一个非 0 次基向量的共轭线性置换"""
    zero = algebra.degree_indices(0)
    other = [j for j in range(algebra.dim) if algebra.degrees[j] % algebra.modulus]
    if not zero or not other:
        raise InputError(f"{algebra.name} has no pair of basis vectors in different degrees")
    permutation = list(range(algebra.dim))
    a, b = zero[0], other[0]
    permutation[a], permutation[b] = b, a
    return permutation_map(algebra.dim, permutation, conjugates=True)


def cmd_history(ctx: RunContext) -> Dict[str, Any]:
    archive = RunArchive.open(_archive_url(ctx))
    try:
        runs = archive.list_runs(ctx.args.limit)
    finally:
        archive.close()
    ctx.summary = f"{len(runs)} archived run(s)"
    return {'runs': runs}


def _archive_url(ctx: RunContext) -> str:
    return ctx.args.archive or ctx.config.get('archive.url', 'sqlite:///gradus_runs.db')


# ==================== 参数解析 ====================

def _add_sampling(parser: argparse.ArgumentParser):
    parser.add_argument('--samples', type=int)
    parser.add_argument('--seed', type=int)
    parser.add_argument('--box', type=int)
    parser.add_argument('--grid-bits', type=int, dest='grid_bits')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='gradus', description="Exact computations in graded Lie algebras")
    parser.add_argument('--version', action='version', version=f"gradus {__version__}")
    parser.add_argument('--config', help="configuration file (default config/gradus.json)")
    parser.add_argument('--archive', nargs='?', const='', default=None, metavar='URL',
                        help="store the report in the run archive")
    parser.add_argument('--timing', action='store_true', help="embed stage timings in the manifest")
    parser.add_argument('--no-log-file', action='store_true', dest='no_log_file')
    parser.add_argument('--threads', type=int)
    parser.add_argument('--output', '-o', help="write the report to a file")
    parser.add_argument('--strict', action='store_true', help="exit 4 on heuristic or undecided results")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true')
    verbosity.add_argument('-q', '--quiet', action='store_true')
    commands = parser.add_subparsers(dest='command', required=True)

    catalog = commands.add_parser('catalog', help="list or build catalog algebras")
    catalog_actions = catalog.add_subparsers(dest='action', required=True)
    catalog_actions.add_parser('list')
    build = catalog_actions.add_parser('build')
    build.add_argument('name', choices=sorted(CATALOG))
    catalog.set_defaults(handler=cmd_catalog)

    verify = commands.add_parser('verify', help="check the Lie algebra axioms")
    verify.add_argument('algebra')
    verify.set_defaults(handler=cmd_verify)

    element = commands.add_parser('element', help="Jordan decomposition and predicates")
    element_actions = element.add_subparsers(dest='action', required=True)
    analyze = element_actions.add_parser('analyze')
    analyze.add_argument('algebra')
    analyze.add_argument('element')
    analyze.add_argument('--h', help="characteristic for the scaling diagnostic")
    element.set_defaults(handler=cmd_element)

    jmv = commands.add_parser('jmv', help="graded sl2-triple through a nilpotent element")
    jmv.add_argument('algebra')
    jmv.add_argument('element')
    jmv.set_defaults(handler=cmd_jmv)

    slice_ = commands.add_parser('slice', help="slice g(h/2) and its commutant")
    slice_.add_argument('algebra')
    slice_.add_argument('--h', required=True)
    slice_.add_argument('--from-element', dest='from_element', help="also compute the support of e")
    slice_.add_argument('--seed', type=int)
    slice_.set_defaults(handler=cmd_slice)

    nilorbits = commands.add_parser('nilorbits', help="nilpotent orbits with characteristic h")
    nilorbits.add_argument('algebra')
    nilorbits.add_argument('--h', required=True)
    _add_sampling(nilorbits)
    nilorbits.set_defaults(handler=cmd_nilorbits)

    z2 = commands.add_parser('z2', help="Z_2-graded orbit tools")
    z2_actions = z2.add_subparsers(dest='action', required=True)
    describe = z2_actions.add_parser('describe')
    describe.add_argument('algebra')
    describe.add_argument('x')
    compare = z2_actions.add_parser('compare')
    compare.add_argument('algebra')
    compare.add_argument('x')
    compare.add_argument('y')
    _add_sampling(compare)
    z2.set_defaults(handler=cmd_z2)

    kform = commands.add_parser('kform', help="k-vector and k-form analysis")
    kform_actions = kform.add_subparsers(dest='action', required=True)
    kanalyze = kform_actions.add_parser('analyze')
    kanalyze.add_argument('--model', required=True, choices=sorted(MODELS))
    kanalyze.add_argument('form')
    kanalyze.add_argument('--dualize', action='store_true')
    kform.set_defaults(handler=cmd_kform)

    involution = commands.add_parser('involution', help="real-form compatibility")
    involution_actions = involution.add_subparsers(dest='action', required=True)
    check = involution_actions.add_parser('check')
    check.add_argument('algebra')
    check.add_argument('--break-grading', action='store_true', dest='break_grading')
    improve = involution_actions.add_parser('improve')
    improve.add_argument('algebra')
    improve.add_argument('--epsilon', type=float, default=0.25)
    involution.set_defaults(handler=cmd_involution)

    history = commands.add_parser('history', help="list archived runs")
    history.add_argument('--limit', type=int, default=20)
    history.set_defaults(handler=cmd_history)
    return parser


# ==================== 主流程 ====================

def run(args: argparse.Namespace) -> int:
    command = args.command + (f" {args.action}" if getattr(args, 'action', None) else "")
    ctx = RunContext(args, command)
    handler: Callable[[RunContext], Dict[str, Any]] = args.handler
    started = time.time()
    with safe_operation(command):
        result = handler(ctx)
    if args.timing:
        ctx.manifest.wall_seconds = time.time() - started
        ctx.manifest.timing = ctx.monitor.get_run_report()

    document = result if ctx.raw_output else ctx.exporter.report(ctx.manifest, result)
    text = ctx.exporter.write(document, args.output)
    logger.info(ctx.summary)

    if (args.archive is not None or ctx.config.get('archive.enabled', False)) and args.command != 'history':
        archive = RunArchive.open(_archive_url(ctx))
        try:
            archive.save_run(ctx.manifest.to_dict(), document, text_digest(text))
        finally:
            archive.close()

    if ctx.failed:
        return EXIT_COMPUTATION
    if ctx.undecided and args.strict:
        raise UndecidedError(ctx.undecided)
    return EXIT_OK


def _failure(error: Exception, command: Optional[str]) -> int:
    ErrorHandler.log_error(error, command)
    if not isinstance(error, UndecidedError):
        sys.stdout.write(dumps_report(ErrorHandler.create_error_response(error, command)))
    return exit_code_for(error)


def main(argv: Optional[List[str]] = None) -> int:
    """Main function"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    level = 'DEBUG' if args.verbose else 'WARNING' if args.quiet else None
    try:
        config = get_config_manager(args.config)
    except GradusError as e:
        # 配置不可用时按默认级别记录日志
        setup_logging(level or 'INFO', 'logs', not args.no_log_file)
        return _failure(e, args.command)
    setup_logging(level or config.get('logging.level', 'INFO'), config.get('logging.directory', 'logs'),
                  not args.no_log_file)

    try:
        return run(args)
    except Exception as e:
        return _failure(e, args.command)


if __name__ == "__main__":
    sys.exit(main())
