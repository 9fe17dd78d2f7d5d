"""CSV ingestion and emission for the command line tool.

Dialect: comma separated, decimal point only, lines starting with '#'
are comments, and the first non-comment row is treated as a header when
any of its fields fails to parse as a number. Columns are addressed by
0-based index or, when a header exists, by name.

Everything numeric inside the package is SI (radians, newton metres,
pascals); unit conversion happens here and only here. Output floats are
written with ``repr``, the shortest decimal that round-trips, so a
rerun with identical inputs produces byte-identical files.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import EmptyInputError, InvalidSpecError, ParseError
from .series import Series, from_columns

__all__ = [
    "ColumnSpec",
    "X_UNITS",
    "Y_UNITS",
    "read_pairs",
    "write_csv",
]

# scale factors into internal units, keyed by unit token
X_UNITS = {
    "radians": 1.0,
    "degrees": math.pi / 180.0,
    "seconds": 1.0,
    "dimensionless": 1.0,
}
Y_UNITS = {
    "newton-meter": 1.0,
    "newton-millimeter": 1.0e-3,
    "pascal": 1.0,
    "dimensionless": 1.0,
}


@dataclass(frozen=True)
class ColumnSpec:
    """Which two columns to read and what units they carry."""

    x_col: Union[int, str] = 0
    y_col: Union[int, str] = 1
    x_unit: str = "dimensionless"
    y_unit: str = "dimensionless"

    def __post_init__(self):
        for name in ("x_col", "y_col"):
            c = getattr(self, name)
            if isinstance(c, bool) or not isinstance(c, (int, np.integer, str)):
                raise InvalidSpecError(
                    f"{name} must be a column index or header name, got {c!r}"
                )
            if isinstance(c, (int, np.integer)) and c < 0:
                raise InvalidSpecError(f"{name} must be nonnegative, got {c}")
        if self.x_col == self.y_col:
            raise InvalidSpecError(
                f"x_col and y_col must differ, both are {self.x_col!r}"
            )
        if self.x_unit not in X_UNITS:
            raise InvalidSpecError(
                f"x_unit must be one of {sorted(X_UNITS)}, got {self.x_unit!r}"
            )
        if self.y_unit not in Y_UNITS:
            raise InvalidSpecError(
                f"y_unit must be one of {sorted(Y_UNITS)}, got {self.y_unit!r}"
            )


def _is_number(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def _resolve(col, header, what):
    """Map a column selector to a 0-based index."""
    if isinstance(col, str):
        if header is None:
            raise ParseError(
                f"{what} column {col!r} was requested by name but the file "
                "has no header row"
            )
        try:
            return header.index(col)
        except ValueError:
            raise ParseError(
                f"{what} column {col!r} not found in header {header}"
            ) from None
    return int(col)


def read_pairs(path, cols: ColumnSpec) -> Series:
    """Read two columns of a CSV file into a Series in internal units.

    Rows are sorted by x; duplicate abscissas are mean-collapsed and
    non-finite pairs dropped (see ``series.from_columns``).

    Raises
    ------
    ParseError
        Unreadable rows, with line number and offending field; unknown
        column names; or no usable data.
    """
    header = None
    xs, ys = [], []
    ix = iy = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",")]
            if ix is None:
                # first content row decides whether a header exists
                if header is None and not all(map(_is_number, fields)):
                    header = fields
                    continue
                ix = _resolve(cols.x_col, header, "x")
                iy = _resolve(cols.y_col, header, "y")
            need = max(ix, iy)
            if need >= len(fields):
                raise ParseError(
                    f"line {lineno}: need column {need} but the row has "
                    f"only {len(fields)} fields"
                )
            pair = []
            for idx in (ix, iy):
                tok = fields[idx]
                try:
                    pair.append(float(tok))
                except ValueError:
                    raise ParseError(
                        f"line {lineno}: field {idx} is not numeric: {tok!r}"
                    ) from None
            xs.append(pair[0])
            ys.append(pair[1])
    if header is not None and ix is None:
        # header-only file: resolve anyway so bad names still get reported
        _resolve(cols.x_col, header, "x")
        _resolve(cols.y_col, header, "y")
    if not xs:
        raise ParseError(f"{path}: no data rows")
    try:
        return from_columns(
            np.asarray(xs) * X_UNITS[cols.x_unit],
            np.asarray(ys) * Y_UNITS[cols.y_unit],
        )
    except EmptyInputError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_csv(path, names, columns, comments=()) -> None:
    """Write aligned columns as CSV with '#' provenance comments.

    Floats are formatted with ``repr`` (shortest round-tripping
    decimal), so identical data produces identical bytes.
    """
    # integer columns (indices, counts) keep integer formatting
    columns = [
        a if a.dtype.kind in "iu" else a.astype(float)
        for a in map(np.asarray, columns)
    ]
    if len(names) != len(columns):
        raise ValueError(
            f"{len(names)} names for {len(columns)} columns"
        )
    n = columns[0].size if columns else 0
    for c in columns:
        if c.size != n:
            raise ValueError("columns differ in length")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(",".join(names) + "\n")
        # tolist() yields Python floats, whose repr is the shortest
        # round-tripping decimal
        for row in zip(*(c.tolist() for c in columns)):
            fh.write(",".join(map(repr, row)) + "\n")
