# metrics_study.py

import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core.config import (CODE_FILE_SUFFIX, CODE_METRICS, CODE_METRICS_HEADER, CORRELATION_HEADER,
                         DEFAULT_TARGETS, PAIRS_HEADER, SPEC_METRICS, SPEC_METRICS_HEADER)
from core.errors import EmptyCorpus, StageError, SuiteError, UsageError
from core.exporters import ExporterFactory, write_json
from core.run_config import RunConfig
from core.utils import PathLike, atomic_write_text, read_text
from mil import CodeMetrics, CodeUnit, measure_code, parse_code
from pairing import (PairedObservation, PairingReport, TraceLink, assemble_observations,
                     extract_trace_units, match_pairs, metric_columns)
from regression import (ObservationMatrix, RegressionModel, backward_eliminate, emit_formula,
                        model_to_dict, screen_predictors)
from stats import CorrelationCell, correlation_matrix, summarize_table
from zspec import SpecMetrics, Specification, measure_specification, parse_specification

logger = logging.getLogger(__name__)


@dataclass
class CodeCorpus:
    units: List[CodeUnit] = field(default_factory=list)
    traces: List[TraceLink] = field(default_factory=list)
    files: List[str] = field(default_factory=list)


@dataclass
class StudyBundle:
    """Everything one end-to-end run produces."""
    spec_table: Dict[str, SpecMetrics]
    code_table: Dict[str, CodeMetrics]
    report: PairingReport
    observations: List[PairedObservation]
    cells: List[CorrelationCell]
    summary: List[dict]
    models: Dict[str, RegressionModel]


def read_source(path: PathLike) -> str:
    try:
        return read_text(path)
    except OSError as error:
        raise UsageError(f"cannot read {path}: {error.strerror or error}")


def code_files(directory: PathLike) -> List[str]:
    root = Path(directory)
    if not root.is_dir():
        raise UsageError(f"{directory} is not a directory")
    return [str(path) for path in sorted(root.rglob(f'*{CODE_FILE_SUFFIX}'))]


def spec_rows(table: Dict[str, SpecMetrics]) -> List[Tuple]:
    return [(name,) + metrics.as_row() for name, metrics in table.items()]


def code_rows(table: Dict[str, CodeMetrics]) -> List[Tuple]:
    return [(name,) + metrics.as_row() for name, metrics in table.items()]


class MetricsStudy:
    """
    Runs the study pipeline: measure both sides, pair schemas with units,
    correlate the measures and fit prediction models.
    """
    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig.build('run-all', [])

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        try:
            yield
        except StageError:
            raise
        except SuiteError as error:
            raise StageError(name, error) from error

    # Measuring

    def load_specification(self, path: PathLike) -> Specification:
        return parse_specification(read_source(path), str(path))

    def measure_spec(self, path: PathLike) -> Dict[str, SpecMetrics]:
        table = measure_specification(self.load_specification(path))
        logger.info("measured %d schema(s) in %s", len(table), path)
        return table

    def load_code(self, paths: Sequence[PathLike]) -> CodeCorpus:
        corpus = CodeCorpus()
        for path in paths:
            source = read_source(path)
            units = parse_code(source, str(path))
            corpus.units.extend(units)
            corpus.traces.extend(extract_trace_units(units, source, str(path)))
            corpus.files.append(str(path))
        return corpus

    def measure_code(self, corpus: CodeCorpus) -> Dict[str, CodeMetrics]:
        table = measure_code(corpus.units)
        logger.info("measured %d unit(s) in %d file(s)", len(table), len(corpus.files))
        return table

    # Pairing, correlating, fitting

    def pair(self, spec: Specification, corpus: CodeCorpus, spec_table: Dict[str, SpecMetrics],
             code_table: Dict[str, CodeMetrics]) -> Tuple[PairingReport, List[PairedObservation]]:
        if not corpus.units:
            raise EmptyCorpus("no code units to pair with")
        report = match_pairs(spec, corpus.traces, self.config.edit_distance)
        observations = assemble_observations(report, spec_table, code_table, self.config.aggregation)
        return report, observations

    @staticmethod
    def correlate(observations: Sequence[PairedObservation]) -> List[CorrelationCell]:
        columns = metric_columns(observations, SPEC_METRICS + CODE_METRICS)
        return correlation_matrix(columns)

    def fit(self, columns: Dict[str, List[float]], target: str,
            predictors: Sequence[str] = SPEC_METRICS, screen: bool = False,
            one_at_a_time: bool = False) -> RegressionModel:
        if screen:
            predictors = screen_predictors(columns, predictors, target)
        data = ObservationMatrix.from_columns(columns, predictors, target)
        return backward_eliminate(data, self.config.threshold, one_at_a_time)

    def end_to_end(self, spec_path: PathLike, code_paths: Sequence[PathLike],
                   targets: Sequence[str] = DEFAULT_TARGETS) -> StudyBundle:
        with self.stage('measure'):
            spec = self.load_specification(spec_path)
            spec_table = measure_specification(spec)
            corpus = self.load_code(code_paths)
            code_table = self.measure_code(corpus)
        with self.stage('pair'):
            report, observations = self.pair(spec, corpus, spec_table, code_table)
        with self.stage('correlate'):
            cells = self.correlate(observations)
            summary = summarize_table(cells)
        models = {}
        columns = metric_columns(observations, SPEC_METRICS + CODE_METRICS)
        for target in targets:
            with self.stage('fit'):
                models[target] = self.fit(columns, target, screen=True)
        return StudyBundle(spec_table, code_table, report, observations, cells, summary, models)

    # Output

    def write_bundle(self, bundle: StudyBundle, directory: PathLike) -> List[Path]:
        """Write every artifact of a run; file contents depend only on the bundle."""
        root = Path(directory)
        output_format = self.config.format
        written = []

        def table(name: str, header, rows, extra=None):
            exporter = ExporterFactory.create(output_format, header)
            path = root / f"{name}{exporter.suffix}"
            exporter.write(path, rows, extra)
            written.append(path)

        table('spec_metrics', SPEC_METRICS_HEADER, spec_rows(bundle.spec_table))
        table('code_metrics', CODE_METRICS_HEADER, code_rows(bundle.code_table))
        table('pairs', PAIRS_HEADER, [obs.as_row() for obs in bundle.observations])
        table('correlations', CORRELATION_HEADER, [cell.as_row() for cell in bundle.cells],
              {'summary': bundle.summary} if output_format == 'json' else None)

        report_path = root / 'pairing_report.json'
        write_json(report_path, bundle.report.as_dict())
        written.append(report_path)

        for target, model in bundle.models.items():
            model_path = root / 'models' / f'{target}.json'
            write_json(model_path, model_to_dict(model))
            written.append(model_path)

        formulas_path = root / 'formulas.txt'
        atomic_write_text(formulas_path, ''.join(f"{emit_formula(model)}\n" for model in bundle.models.values()))
        written.append(formulas_path)
        return written
