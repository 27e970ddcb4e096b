"""
Rendering of exact results as aligned text, CSV or JSON
"""
import csv
import io
import json
from typing import Any, Dict, List, Sequence

from .series_engine import format_rational


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, int):
        return str(value)
    try:
        return format_rational(value)
    except (TypeError, ValueError):
        return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return format_rational(value)


def render(header: Sequence[str], rows: Sequence[Sequence[Any]], output_format: str,
           meta: Dict[str, Any] = None) -> str:
    """
    Render rows in the requested format

    Args:
        header: column names (mandatory CSV header row)
        rows: row values; rationals are written as "p/q" or "p"
        output_format: 'table', 'csv' or 'json'
        meta: extra top-level fields for the JSON document

    Returns:
        str: the rendered text, newline terminated
    """
    if output_format == 'table':
        return _render_table(header, rows)
    if output_format == 'csv':
        return _render_csv(header, rows)
    if output_format == 'json':
        document = dict(meta or {})
        document['rows'] = [{name: _json_value(v) for name, v in zip(header, row)} for row in rows]
        return json.dumps(document, indent=2, sort_keys=True) + "\n"
    raise ValueError(f"Unsupported output format: {output_format}")


def _render_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    text_rows: List[List[str]] = [list(header)] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in text_rows) for i in range(len(header))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() for r in text_rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _render_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()
