"""CSV ingestion with column type inference.

The first row is a header. A column is inferred Numeric when every
non-missing cell parses as a finite number, Nominal otherwise (domain =
distinct values in first-seen order). Missing cells are empty or ``?``.
Specific columns can be forced to String (typical for a grouping key or a
record id) or to Nominal (required for a class column whose values look
numeric). Quoting follows RFC-4180 conventions via the csv module.
"""

from __future__ import annotations

import csv
import io
import math

from .arff import ParseError
from .model import AttributeSpec, Cell, Dataset, format_number

_MISSING_TEXTS = ("", "?")


def parse_csv(
    text: str,
    string_columns=(),
    nominal_columns=(),
    relation_name: str = "unnamed",
) -> Dataset:
    """Parse CSV text into a Dataset, inferring a schema from the cells."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError(1, "empty CSV input") from None
    names = [h.strip() for h in header]
    if any(name == "" for name in names):
        raise ParseError(1, "empty header name")
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise ParseError(1, f"duplicate header names: {dupes}")
    for forced in (*string_columns, *nominal_columns):
        if forced not in names:
            raise ParseError(1, f"forced column {forced!r} is not in the header")

    rows: list[list[str | None]] = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(names):
            raise ParseError(
                reader.line_num,
                f"row has {len(row)} values, header has {len(names)} columns",
            )
        rows.append([None if c.strip() in _MISSING_TEXTS else c.strip() for c in row])

    schema = tuple(
        _infer_column(name, [row[j] for row in rows], string_columns, nominal_columns)
        for j, name in enumerate(names)
    )
    records = []
    for row in rows:
        cells: list[Cell] = []
        for attr, raw in zip(schema, row):
            if raw is None:
                cells.append(None)
            elif attr.kind == "numeric":
                cells.append(float(raw))
            elif attr.kind == "nominal":
                cells.append(attr.values.index(raw))
            else:
                cells.append(raw)
        records.append(tuple(cells))
    return Dataset(relation_name, schema, tuple(records))


def _infer_column(name, cells, string_columns, nominal_columns) -> AttributeSpec:
    if name in string_columns:
        return AttributeSpec.string(name)
    present = [c for c in cells if c is not None]
    if name not in nominal_columns and all(_is_number(c) for c in present):
        return AttributeSpec.numeric(name)
    domain: list[str] = []
    seen = set()
    for c in present:
        if c not in seen:
            seen.add(c)
            domain.append(c)
    if not domain:
        raise ParseError(1, f"column {name!r} has no observed values to build a nominal domain")
    return AttributeSpec.nominal(name, domain)


def _is_number(text: str) -> bool:
    try:
        return math.isfinite(float(text))
    except ValueError:
        return False


def write_csv(dataset: Dataset, decimals: int | None = None) -> str:
    """Serialize a Dataset as CSV with a header row; missing renders as ?."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(dataset.attribute_names)
    for record in dataset.records:
        row = []
        for attr, cell in zip(dataset.schema, record):
            if cell is None:
                row.append("?")
            elif attr.kind == "numeric":
                row.append(format_number(cell, decimals))
            elif attr.kind == "nominal":
                row.append(attr.values[cell])
            else:
                row.append(cell)
        writer.writerow(row)
    return out.getvalue()
