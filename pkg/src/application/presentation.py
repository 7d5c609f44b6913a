"""UI-independent rendering of data products as CSV or JSON text."""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence, Union

from src.core.config import SCHEMA_VERSION, NumericType

OUTPUT_FORMATS = ("csv", "json")
FLOAT_FORMAT = ".17g"

Cell = Union[int, float]


def _as_cell(value: Any) -> Cell:
    """Normalize numpy scalars and bools to plain int/float."""
    if isinstance(value, (bool, int)) or (hasattr(value, "dtype") and value.dtype.kind in "iu"):
        return int(value)
    return float(value)


@dataclass(frozen=True)
class OutputRecord:
    """A table of numbers plus the parameters that produced it."""

    command: str
    parameters: Mapping[str, Any]
    columns: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self) -> None:
        columns = tuple(self.columns)
        rows = tuple(tuple(_as_cell(value) for value in row) for row in self.rows)
        for row in rows:
            if len(row) != len(columns):
                raise ValueError(f"Row {row} does not match columns {columns}")
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "rows", rows)

    def header(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": dict(self.parameters),
            "metadata": dict(self.metadata),
        }


def format_number(value: NumericType) -> str:
    """Format a cell: integers verbatim, floats at 17 significant digits."""
    if isinstance(value, int):
        return str(value)
    if not math.isfinite(value):
        raise ValueError(f"Cannot serialize non-finite value {value!r}")
    return format(value, FLOAT_FORMAT)


def format_row(row: Sequence[Cell]) -> str:
    return ",".join(format_number(value) for value in row)


def render_csv(record: OutputRecord) -> str:
    """One '# {json header}' line, the column names, then one line per row."""
    lines = ["# " + json.dumps(record.header(), allow_nan=False, sort_keys=True)]
    lines.append(",".join(record.columns))
    lines.extend(format_row(row) for row in record.rows)
    return "\n".join(lines) + "\n"


def render_json(record: OutputRecord) -> str:
    """JSON document; floats use the shortest representation that parses back bit for bit."""
    document = record.header()
    document["columns"] = list(record.columns)
    document["rows"] = [list(row) for row in record.rows]
    return json.dumps(document, allow_nan=False, indent=2, sort_keys=True) + "\n"


def render(record: OutputRecord, output_format: str = "csv") -> str:
    if output_format == "csv":
        return render_csv(record)
    if output_format == "json":
        return render_json(record)
    raise ValueError(f"Unknown output format {output_format!r}; expected one of {OUTPUT_FORMATS}")
