# cli.py

"""
Command-line surface. Every subcommand writes its table atomically to --out
(or to stdout), prints a one-line summary and returns an exit code:
0 ok, 1 usage, 2 parse error, 3 data error, 4 numeric failure.
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from core.config import (AGGREGATION_POLICIES, CODE_METRICS, CODE_METRICS_HEADER,
                         CORRELATION_HEADER, DEFAULT_OUTPUT_DIR, DEFAULT_SELFCHECK_RUNS,
                         DEFAULT_TARGETS, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, OUTPUT_FORMATS,
                         PAIRS_HEADER, PREDICTION_HEADER, REFERENCE_MODEL_PREFIX, SPEC_METRICS,
                         SPEC_METRICS_HEADER)
from core.errors import DataError, SuiteError, UsageError
from core.exporters import ExporterFactory, read_csv_records, write_json
from core.run_config import RunConfig
from core.utils import configure_logging, split_csv_list
from metrics_study import MetricsStudy, code_files, code_rows, read_source, spec_rows
from pairing import metric_columns, observations_from_records
from regression import (emit_formula, model_from_dict, model_to_dict, predict, reference_model,
                        resolve_model_name, self_check)
from stats import summarize_table
from zspec import build_srn, measure_specification

logger = logging.getLogger(__name__)

RECOVERY_TOLERANCE = 1e-6
MIN_RETENTION = 0.95


def _emit(config: RunConfig, header: Sequence[str], rows: Sequence[Sequence[Any]], summary: str,
          extra: Optional[Dict[str, Any]] = None) -> None:
    exporter = ExporterFactory.create(config.format, header)
    if config.output:
        exporter.write(config.output, rows, extra)
        print(f"{summary} -> {config.output}")
    else:
        sys.stdout.write(exporter.render(rows, extra))
        logger.info(summary)


def _check_metric(name: str, allowed: Sequence[str]) -> str:
    if name not in allowed:
        raise UsageError(f"unknown metric {name!r}; expected one of {', '.join(allowed)}")
    return name


def _load_observations(path: str):
    records = read_csv_records(read_source(path))
    observations = observations_from_records(records)
    return observations, metric_columns(observations, SPEC_METRICS + CODE_METRICS)


# Subcommands

def _measure(study: MetricsStudy, config: RunConfig, args: argparse.Namespace) -> int:
    if args.kind == 'spec':
        if len(args.paths) != 1:
            raise UsageError("measure spec takes exactly one specification file")
        table = study.measure_spec(args.paths[0])
        _emit(config, SPEC_METRICS_HEADER, spec_rows(table), f"measured {len(table)} schema(s)")
    else:
        table = study.measure_code(study.load_code(args.paths))
        _emit(config, CODE_METRICS_HEADER, code_rows(table), f"measured {len(table)} unit(s)")
    return EXIT_OK


def _pair(study: MetricsStudy, config: RunConfig, args: argparse.Namespace) -> int:
    spec = study.load_specification(args.spec)
    spec_table = measure_specification(spec)
    corpus = study.load_code(args.code)
    report, observations = study.pair(spec, corpus, spec_table, study.measure_code(corpus))
    if args.report:
        write_json(args.report, report.as_dict())
    _emit(config, PAIRS_HEADER, [obs.as_row() for obs in observations], report.summary())
    return EXIT_OK


def _correlate(study: MetricsStudy, config: RunConfig, args: argparse.Namespace) -> int:
    observations, _ = _load_observations(args.pairs)
    cells = study.correlate(observations)
    summary = summarize_table(cells)
    extra = {'summary': summary} if config.format == 'json' else None
    _emit(config, CORRELATION_HEADER, [cell.as_row() for cell in cells],
          f"{len(cells)} correlations over {len(observations)} pairs", extra)
    return EXIT_OK


def _fit(study: MetricsStudy, config: RunConfig, args: argparse.Namespace) -> int:
    target = _check_metric(args.target, CODE_METRICS + SPEC_METRICS)
    predictors = split_csv_list(args.predictors) if args.predictors else list(SPEC_METRICS)
    for name in predictors:
        _check_metric(name, CODE_METRICS + SPEC_METRICS)
    _, columns = _load_observations(args.pairs)
    model = study.fit(columns, target, predictors, screen=args.screen,
                      one_at_a_time=args.one_at_a_time)
    formula = emit_formula(model)
    if config.output:
        write_json(config.output, model_to_dict(model))
        print(formula)
    else:
        sys.stdout.write(json.dumps(model_to_dict(model), indent=2) + '\n')
        logger.info(formula)
    return EXIT_OK


def _predict(study: MetricsStudy, config: RunConfig, args: argparse.Namespace) -> int:
    if args.model.startswith(REFERENCE_MODEL_PREFIX):
        model = reference_model(resolve_model_name(args.model))
    else:
        try:
            model = model_from_dict(json.loads(read_source(args.model)))
        except json.JSONDecodeError as error:
            raise DataError(f"{args.model} is not a model document: {error}")
    table = study.measure_spec(args.spec)
    rows = [(name, predict(model, metrics.as_dict())) for name, metrics in table.items()]
    _emit(config, PREDICTION_HEADER, rows, f"predicted {model.target} for {len(rows)} schema(s)")
    return EXIT_OK


def _run_all(study: MetricsStudy, config: RunConfig, args: argparse.Namespace) -> int:
    targets = split_csv_list(args.targets) if args.targets else list(DEFAULT_TARGETS)
    for target in targets:
        _check_metric(target, CODE_METRICS)
    bundle = study.end_to_end(args.spec, code_files(args.codedir), targets)
    directory = config.output or DEFAULT_OUTPUT_DIR
    written = study.write_bundle(bundle, directory)
    print(f"{len(bundle.observations)} pairs, {len(bundle.cells)} correlations, "
          f"{len(bundle.models)} models; {len(written)} files -> {directory}")
    return EXIT_OK


def _srn(study: MetricsStudy, config: RunConfig, args: argparse.Namespace) -> int:
    srn = build_srn(study.load_specification(args.spec))
    summary = (f"{len(srn.primes)} primes, {len(srn.control_arcs)} control, "
               f"{len(srn.data_arcs)} data, {len(srn.interschema_arcs)} inter-schema arcs")
    if args.dump:
        srn.dump(args.dump)
        summary += f" -> {args.dump}"
    print(summary)
    return EXIT_OK


def _selfcheck(study: MetricsStudy, config: RunConfig, args: argparse.Namespace) -> int:
    report = self_check(config.seed, args.runs)
    print(f"coefficient error {report.coefficient_error:.3g}, R2 {report.r2:.12f}, "
          f"retention {report.retained}/{report.runs}, at most {report.max_rounds} round(s)")
    if report.coefficient_error > RECOVERY_TOLERANCE or report.retention_rate < MIN_RETENTION:
        return EXIT_NUMERIC
    return EXIT_OK


COMMANDS: Dict[str, Callable[[MetricsStudy, RunConfig, argparse.Namespace], int]] = {
    'measure': _measure,
    'pair': _pair,
    'correlate': _correlate,
    'fit': _fit,
    'predict': _predict,
    'run-all': _run_all,
    'srn': _srn,
    'selfcheck': _selfcheck,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OUTPUT_FORMATS, default=None, help='table format')
    common.add_argument('--out', default=None, help='output file (directory for run-all)')
    common.add_argument('--seed', type=int, default=None, help='random seed')
    common.add_argument('-v', '--verbose', action='count', default=0)
    common.add_argument('-q', '--quiet', action='store_true')

    parser = argparse.ArgumentParser(
        prog='launch.py',
        description='Specification and code metrics, their correlation and prediction models.')
    commands = parser.add_subparsers(dest='command', required=True)

    measure = commands.add_parser('measure', parents=[common], help='measure a specification or code')
    measure.add_argument('kind', choices=('spec', 'code'))
    measure.add_argument('paths', nargs='+')

    pair = commands.add_parser('pair', parents=[common], help='pair schemas with code units')
    pair.add_argument('spec')
    pair.add_argument('code', nargs='+')
    pair.add_argument('--edit-distance', type=int, default=None)
    pair.add_argument('--aggregate', choices=AGGREGATION_POLICIES, default=None)
    pair.add_argument('--report', default=None, help='write the pairing report as JSON')

    correlate = commands.add_parser('correlate', parents=[common], help='correlation table')
    correlate.add_argument('pairs')

    fit = commands.add_parser('fit', parents=[common], help='backward elimination fit')
    fit.add_argument('pairs')
    fit.add_argument('--target', required=True)
    fit.add_argument('--threshold', type=float, default=None)
    fit.add_argument('--predictors', default=None, help='comma separated predictor names')
    fit.add_argument('--one-at-a-time', action='store_true')
    fit.add_argument('--screen', action='store_true', help='limit predictors to one fifth of n')

    predict_parser = commands.add_parser('predict', parents=[common], help='apply a model')
    predict_parser.add_argument('--model', required=True,
                                help=f'model JSON file or {REFERENCE_MODEL_PREFIX}<target>')
    predict_parser.add_argument('spec')

    run_all = commands.add_parser('run-all', parents=[common], help='the whole pipeline')
    run_all.add_argument('spec')
    run_all.add_argument('codedir')
    run_all.add_argument('--targets', default=None)
    run_all.add_argument('--threshold', type=float, default=None)
    run_all.add_argument('--edit-distance', type=int, default=None)
    run_all.add_argument('--aggregate', choices=AGGREGATION_POLICIES, default=None)

    srn = commands.add_parser('srn', parents=[common], help='build and dump the SRN')
    srn.add_argument('spec')
    srn.add_argument('--dump', default=None, help='GraphML output file')

    selfcheck = commands.add_parser('selfcheck', parents=[common], help='regression self check')
    selfcheck.add_argument('--runs', type=int, default=DEFAULT_SELFCHECK_RUNS)
    return parser


def _inputs(args: argparse.Namespace) -> List[str]:
    inputs = []
    for name in ('paths', 'spec', 'code', 'pairs', 'codedir'):
        value = getattr(args, name, None)
        if value:
            inputs.extend(value if isinstance(value, list) else [value])
    return inputs


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_OK if exit_.code in (0, None) else EXIT_USAGE

    configure_logging(-1 if args.quiet else args.verbose)
    try:
        config = RunConfig.build(
            args.command, _inputs(args), args.out,
            format=args.format,
            threshold=getattr(args, 'threshold', None),
            edit_distance=getattr(args, 'edit_distance', None),
            aggregation=getattr(args, 'aggregate', None),
            seed=args.seed,
        )
        return COMMANDS[args.command](MetricsStudy(config), config, args)
    except SuiteError as error:
        print(f"Error: {error}", file=sys.stderr)
        return error.exit_code
