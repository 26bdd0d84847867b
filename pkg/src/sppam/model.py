"""In-memory representation of tabular datasets.

A dataset is an ordered schema of typed attributes plus an ordered list of
records. Cell values are stored as plain Python objects:

* numeric attribute  -> finite ``float``
* nominal attribute  -> ``int`` index into the attribute's declared domain
* string attribute   -> ``str``
* missing value      -> ``None``

Record order is preserved verbatim from the source and is semantically
meaningful: "last" aggregates are defined by it. Datasets and attribute
specs are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

NUMERIC = "numeric"
NOMINAL = "nominal"
STRING = "string"

Cell = float | int | str | None


class SppamError(Exception):
    """Base class for errors raised by this package."""


class DatasetError(SppamError):
    """A dataset or schema violates a structural invariant."""


@dataclass(frozen=True)
class AttributeSpec:
    """One column: a name plus a kind (numeric, nominal or string).

    Nominal attributes carry their value domain in declaration order; the
    domain order is what fixes the order of derived frequency columns.
    """

    name: str
    kind: str
    values: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (NUMERIC, NOMINAL, STRING):
            raise DatasetError(f"unknown attribute kind: {self.kind!r}")
        object.__setattr__(self, "values", tuple(self.values))
        if self.kind == NOMINAL:
            if not self.values:
                raise DatasetError(f"nominal attribute {self.name!r} has an empty domain")
            if len(set(self.values)) != len(self.values):
                raise DatasetError(f"nominal attribute {self.name!r} has duplicate domain values")
        elif self.values:
            raise DatasetError(f"{self.kind} attribute {self.name!r} cannot declare a value domain")

    @classmethod
    def numeric(cls, name: str) -> AttributeSpec:
        return cls(name, NUMERIC)

    @classmethod
    def nominal(cls, name: str, values) -> AttributeSpec:
        return cls(name, NOMINAL, tuple(values))

    @classmethod
    def string(cls, name: str) -> AttributeSpec:
        return cls(name, STRING)

    def index_of(self, value_text: str) -> int:
        """Domain index of ``value_text``; raises DatasetError if absent."""
        try:
            return self.values.index(value_text)
        except ValueError:
            raise DatasetError(
                f"value {value_text!r} is not in the domain of attribute {self.name!r}"
            ) from None


@dataclass(frozen=True)
class Dataset:
    """An ordered schema plus ordered records of typed cell values."""

    relation_name: str
    schema: tuple[AttributeSpec, ...]
    records: tuple[tuple[Cell, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "schema", tuple(self.schema))
        object.__setattr__(self, "records", tuple(tuple(r) for r in self.records))
        names = [a.name for a in self.schema]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise DatasetError(f"duplicate attribute names in schema: {dupes}")
        width = len(self.schema)
        for i, record in enumerate(self.records):
            if len(record) != width:
                raise DatasetError(
                    f"record {i} has {len(record)} values, schema has {width} attributes"
                )

    @property
    def attribute_names(self) -> list[str]:
        return [a.name for a in self.schema]

    def attribute_index(self, name: str) -> int:
        for i, attr in enumerate(self.schema):
            if attr.name == name:
                return i
        raise DatasetError(f"no attribute named {name!r}")

    def attribute(self, name: str) -> AttributeSpec:
        return self.schema[self.attribute_index(name)]

    def column(self, name: str) -> list[Cell]:
        j = self.attribute_index(name)
        return [record[j] for record in self.records]

    def validate(self) -> None:
        """Deep per-cell type/domain check.

        Construction only checks record arity (cheap); parsers emit typed
        cells already, so the full check is opt-in for untrusted inputs.
        """
        for i, record in enumerate(self.records):
            for j, attr in enumerate(self.schema):
                check_cell(attr, record[j], where=f"record {i}")

    def replace_records(self, records) -> Dataset:
        return Dataset(self.relation_name, self.schema, tuple(records))


def check_cell(attr: AttributeSpec, cell: Cell, where: str = "cell") -> None:
    """Raise DatasetError unless ``cell`` is type-compatible with ``attr``."""
    if cell is None:
        return
    if attr.kind == NUMERIC:
        # bool is an int subclass; reject it explicitly
        if isinstance(cell, bool) or not isinstance(cell, (int, float)):
            raise DatasetError(f"{where}: numeric attribute {attr.name!r} holds {cell!r}")
        if not math.isfinite(cell):
            raise DatasetError(f"{where}: non-finite value in numeric attribute {attr.name!r}")
    elif attr.kind == NOMINAL:
        if isinstance(cell, bool) or not isinstance(cell, int):
            raise DatasetError(f"{where}: nominal attribute {attr.name!r} holds {cell!r}")
        if not 0 <= cell < len(attr.values):
            raise DatasetError(
                f"{where}: nominal index {cell} out of range for attribute {attr.name!r}"
            )
    else:
        if not isinstance(cell, str):
            raise DatasetError(f"{where}: string attribute {attr.name!r} holds {cell!r}")


def cell_text(attr: AttributeSpec, cell: Cell) -> str | None:
    """Render a cell as plain text; None stays None (missing)."""
    if cell is None:
        return None
    if attr.kind == NOMINAL:
        return attr.values[cell]
    if attr.kind == NUMERIC:
        return format_number(float(cell))
    return cell


def format_number(x: float, decimals: int | None = None) -> str:
    """Decimal rendering of a float.

    With ``decimals`` unset, the shortest decimal text that parses back to
    the same float. With ``decimals`` set, the value is rounded half-up at
    that many fractional digits and trailing zeros are trimmed, always
    keeping at least one fractional digit (so 25 renders as "25.0" and
    14.125 at two decimals as "14.13").
    """
    if decimals is None:
        return repr(float(x))
    from decimal import ROUND_HALF_UP, Decimal

    quantum = Decimal(1).scaleb(-decimals)
    text = format(Decimal(repr(float(x))).quantize(quantum, rounding=ROUND_HALF_UP), "f")
    if "." in text:
        text = text.rstrip("0")
        if text.endswith("."):
            text += "0"
    else:
        text += ".0"
    return text
