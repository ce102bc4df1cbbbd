"""The gnuplot-compatible ASCII field format.

'#'-prefixed header (format version, case id, parameters, column names),
then one space-separated data line per cell with 15 significant digits,
'.' decimal separator and LF line endings. 2D fields are written in
x-blocks separated by blank lines so gnuplot can splot them directly.
No timestamps: output is byte-identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import G, H_DRY, FlowField, FlowField2D, Grid1D, critical_height

FORMAT_VERSION = 1

COLUMNS_1D = ("x", "h", "u", "z", "q", "z+h", "Fr", "h_c")
COLUMNS_1D_COMPAT = ("x", "h", "u", "z")
COLUMNS_2D = ("x", "y", "h", "u", "v", "z", "z+h")


def _fmt(value: float) -> str:
    return format(float(value), ".15g")


def _header(case_label: str, params: dict, columns: tuple[str, ...], nonstandard: bool) -> list[str]:
    lines = [f"# swbench field format v{FORMAT_VERSION}"]
    if nonstandard:
        lines.append("# NONSTANDARD parameters (catalog values overridden)")
    lines.append(f"# case: {case_label}")
    lines.append(f"# param g = {_fmt(G)}")
    for key in sorted(params):
        lines.append(f"# param {key} = {params[key]}")
    lines.append("# columns: " + " ".join(columns))
    return lines


def froude_column(h: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Froude per cell with the dry convention Fr = 0."""
    h = np.asarray(h, dtype=float)
    fr = np.zeros_like(h)
    wet = h > H_DRY
    fr[wet] = np.abs(np.asarray(u)[wet]) / np.sqrt(G * h[wet])
    return fr


def write_field_1d(
    ff: FlowField,
    case_label: str,
    params: dict | None = None,
    compat: bool = False,
    nonstandard: bool = False,
    froude: np.ndarray | None = None,
    h_crit: np.ndarray | None = None,
    trailer: list[str] | None = None,
) -> str:
    """Render a 1D field; `froude`/`h_crit` override the plain-channel
    diagnostics (the pseudo-2D profiles use section-aware values)."""
    columns = COLUMNS_1D_COMPAT if compat else COLUMNS_1D
    lines = _header(case_label, params or {}, columns, nonstandard)
    x = ff.grid.centers
    if not compat:
        fr = froude_column(ff.h, ff.u) if froude is None else np.asarray(froude)
        hc = critical_height(np.abs(ff.q)) if h_crit is None else np.asarray(h_crit)
    for i in range(ff.grid.n_cells):
        row = [x[i], ff.h[i], ff.u[i], ff.z[i]]
        if not compat:
            row += [ff.q[i], ff.z[i] + ff.h[i], fr[i], hc[i]]
        lines.append(" ".join(_fmt(v) for v in row))
    if trailer:
        lines.extend(trailer)
    return "\n".join(lines) + "\n"


def write_field_2d(
    ff: FlowField2D,
    case_label: str,
    params: dict | None = None,
    nonstandard: bool = False,
) -> str:
    lines = _header(case_label, params or {}, COLUMNS_2D, nonstandard)
    x = ff.grid.x_centers
    y = ff.grid.y_centers
    for i in range(ff.grid.nx):
        for j in range(ff.grid.ny):
            row = (x[i], y[j], ff.h[i, j], ff.u[i, j], ff.v[i, j],
                   ff.z[i, j], ff.z[i, j] + ff.h[i, j])
            lines.append(" ".join(_fmt(v) for v in row))
        lines.append("")  # gnuplot scan-line separator
    return "\n".join(lines) + "\n"


class FieldParseError(ValueError):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class ParsedField:
    columns: tuple[str, ...]
    data: np.ndarray           # (n_rows, n_columns)
    case_label: str | None

    def column(self, name: str) -> np.ndarray:
        try:
            return self.data[:, self.columns.index(name)]
        except ValueError:
            raise KeyError(f"column {name!r} not in {self.columns}") from None


def parse_field(text: str) -> ParsedField:
    """Parse the documented format back into column arrays."""
    columns: tuple[str, ...] | None = None
    case_label = None
    rows: list[list[float]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("columns:"):
                columns = tuple(body[len("columns:"):].split())
            elif body.startswith("case:"):
                case_label = body[len("case:"):].strip()
            continue
        parts = line.split()
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise FieldParseError(f"non-numeric value ({exc})", line_no) from None
        if columns is None:
            raise FieldParseError("data before '# columns:' header", line_no)
        if len(values) != len(columns):
            raise FieldParseError(
                f"expected {len(columns)} columns, got {len(values)}", line_no
            )
        rows.append(values)
    if columns is None:
        raise FieldParseError("missing '# columns:' header", 0)
    if not rows:
        raise FieldParseError("no data rows", 0)
    return ParsedField(columns, np.asarray(rows), case_label)


def parsed_to_field(parsed: ParsedField, grid: Grid1D) -> FlowField:
    """Reinterpret a parsed 1D document on the expected grid."""
    x = parsed.column("x")
    if len(x) != grid.n_cells:
        raise ValueError(f"file has {len(x)} rows, expected {grid.n_cells} cells")
    if not np.allclose(x, grid.centers, rtol=0.0, atol=1e-9 * max(grid.length, 1.0)):
        raise ValueError("file cell centers do not match the requested grid")
    return FlowField(grid, parsed.column("h").copy(), parsed.column("u").copy(),
                     parsed.column("z").copy())
