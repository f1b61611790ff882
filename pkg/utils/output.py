"""Tabular writers with round-trip float formatting"""

import csv
import io
import json
import math
from typing import Any, Dict, List, Optional, Sequence, TextIO

Row = Dict[str, Any]


def format_value(value: Any) -> str:
    """17 significant digits for floats, empty string for None"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (int, str)):
        return str(value)
    return format(float(value), '.17g')


def _json_value(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, str)):
        return value
    number = float(value)
    if not math.isfinite(number):
        return None
    return number


class Table:
    """Rows with a fixed column list

    Args:
        columns: Header, in output order
    """

    def __init__(self, columns: Sequence[str]):
        self.columns = list(columns)
        self.rows: List[Row] = []

    def add(self, **values: Any) -> None:
        unknown = set(values) - set(self.columns)
        if unknown:
            raise KeyError(f"Unknown columns {sorted(unknown)}; expected {self.columns}")
        self.rows.append({column: values.get(column) for column in self.columns})

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> List[Any]:
        return [row[name] for row in self.rows]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(row[column]) for column in self.columns])
        return buffer.getvalue()

    def to_json(self) -> str:
        records = [{column: _json_value(row[column]) for column in self.columns}
                   for row in self.rows]
        return json.dumps(records, indent=2) + '\n'

    def render(self, output_format: str) -> str:
        if output_format == 'csv':
            return self.to_csv()
        if output_format == 'json':
            return self.to_json()
        raise ValueError(f"Unsupported output format: {output_format}")


def write_table(table: Table, path: Optional[str], output_format: str = 'csv',
                stream: Optional[TextIO] = None) -> str:
    """Write ``table`` to ``path`` (LF line endings) or to ``stream`` when no path is given

    Returns:
        The rendered text
    """
    text = table.render(output_format)
    if path:
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
    elif stream is not None:
        stream.write(text)
    return text
