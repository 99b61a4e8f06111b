# core/exporters.py

import csv
import io
import json
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Type

from .errors import UsageError
from .utils import PathLike, atomic_write_text, format_value, json_safe


class TableExporter(ABC):
    """
    Base class for table renderers. A table is a header plus rows of cells.
    """
    suffix = ''

    def __init__(self, header: Sequence[str]):
        self.header = tuple(header)

    @abstractmethod
    def render(self, rows: Sequence[Sequence[Any]], extra: Optional[Dict[str, Any]] = None) -> str:
        """Render the rows to text."""
        pass

    def write(self, path: PathLike, rows: Sequence[Sequence[Any]],
              extra: Optional[Dict[str, Any]] = None) -> None:
        atomic_write_text(path, self.render(rows, extra))


class CsvExporter(TableExporter):
    suffix = '.csv'

    def render(self, rows, extra=None) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.header)
        for row in rows:
            writer.writerow([format_value(cell) for cell in row])
        return buffer.getvalue()


class JsonExporter(TableExporter):
    """Renders one object per row with the CSV header as field names."""
    suffix = '.json'

    def render(self, rows, extra=None) -> str:
        records = [dict(zip(self.header, row)) for row in rows]
        if extra:
            document: Any = dict(extra)
            document['rows'] = records
        else:
            document = records
        return json.dumps(json_safe(document), indent=2) + '\n'


class ExporterFactory:
    """
    Factory for table exporters keyed by output format.
    """
    _exporters: Dict[str, Type[TableExporter]] = {
        'csv': CsvExporter,
        'json': JsonExporter,
    }

    @classmethod
    def create(cls, output_format: str, header: Sequence[str]) -> TableExporter:
        if output_format not in cls._exporters:
            raise UsageError(f"Unknown output format: {output_format}")
        return cls._exporters[output_format](header)

    @classmethod
    def get_available_formats(cls) -> List[str]:
        return list(cls._exporters.keys())

    @classmethod
    def register_exporter(cls, name: str, exporter_class: Type[TableExporter]) -> None:
        cls._exporters[name] = exporter_class


def write_json(path: PathLike, document: Any) -> None:
    atomic_write_text(path, json.dumps(json_safe(document), indent=2) + '\n')


def read_csv_records(text: str) -> List[Dict[str, str]]:
    """Parse CSV text into dicts keyed by the header row."""
    return list(csv.DictReader(io.StringIO(text)))
