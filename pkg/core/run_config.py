# core/run_config.py

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .config import (AGGREGATION_POLICIES, DEFAULT_EDIT_DISTANCE, DEFAULT_FORMAT,
                     DEFAULT_SEED, DEFAULT_THRESHOLD, OUTPUT_FORMATS)
from .errors import UsageError


class Parameter:
    """
    A single tunable run setting with type and range checking.
    """
    def __init__(self,
                 name: str,
                 default_value: Any,
                 min_value: Optional[float] = None,
                 max_value: Optional[float] = None,
                 value_type: type = float,
                 choices: Optional[Sequence[Any]] = None,
                 exclusive: bool = False):
        self.name = name
        self.default_value = default_value
        self.min_value = min_value
        self.max_value = max_value
        self.value_type = value_type
        self.choices = tuple(choices) if choices else None
        self.exclusive = exclusive

    def validate(self, value: Any) -> Any:
        """Coerce and check a value; out-of-range values raise UsageError."""
        if value is None:
            return self.default_value
        try:
            value = self.value_type(value)
        except (TypeError, ValueError):
            raise UsageError(f"{self.name}: cannot interpret {value!r} as {self.value_type.__name__}")
        if self.choices is not None and value not in self.choices:
            raise UsageError(f"{self.name}: {value!r} is not one of {', '.join(map(str, self.choices))}")
        if self.min_value is not None:
            if value < self.min_value or (self.exclusive and value == self.min_value):
                raise UsageError(f"{self.name}: {value} is below the allowed range")
        if self.max_value is not None:
            if value > self.max_value or (self.exclusive and value == self.max_value):
                raise UsageError(f"{self.name}: {value} is above the allowed range")
        return value


PARAMETERS: Dict[str, Parameter] = {
    'threshold': Parameter('threshold', DEFAULT_THRESHOLD, 0.0, 1.0, float, exclusive=True),
    'edit_distance': Parameter('edit_distance', DEFAULT_EDIT_DISTANCE, 0, None, int),
    'format': Parameter('format', DEFAULT_FORMAT, value_type=str, choices=OUTPUT_FORMATS),
    'aggregation': Parameter('aggregation', 'strict', value_type=str, choices=AGGREGATION_POLICIES),
    'seed': Parameter('seed', DEFAULT_SEED, None, None, int),
}


@dataclass
class RunConfig:
    """Validated settings of one CLI invocation."""
    command: str
    inputs: List[str] = field(default_factory=list)
    output: Optional[str] = None
    format: str = DEFAULT_FORMAT
    threshold: float = DEFAULT_THRESHOLD
    edit_distance: int = DEFAULT_EDIT_DISTANCE
    aggregation: str = 'strict'
    seed: int = DEFAULT_SEED

    @classmethod
    def build(cls, command: str, inputs: Sequence[str], output: Optional[str] = None,
              **settings: Any) -> 'RunConfig':
        values = {name: parameter.validate(settings.get(name))
                  for name, parameter in PARAMETERS.items()}
        return cls(command=command, inputs=list(inputs), output=output, **values)
