"""CSV ingestion, report generation and scree emission.

The report mirrors the reference table set: summary statistics, correlation
and determination matrices, eigenvalues, explained variance, loadings,
cumulative communality shares, the retention ledger, criteria comparison
and truncated/rotated loadings.  Machine payloads carry 12 significant
digits (so a written correlation matrix re-ingests to within 1e-9);
percentage tables are printed with 2 decimals.

All outputs are deterministic functions of the input bytes and the config:
fixed number formatting, fixed table order, no timestamps.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .eigen import eigen_symmetric
from .errors import DataError, ParseError, SizeError, ThresholdError
from .factors import (
    LoadingMatrix,
    communalities,
    cumulative_communalities,
    full_loadings,
    truncate,
)
from .retention import (
    half_count,
    kaiser_count,
    minvar_count,
    percentage_count,
    scree_data,
    variance_table,
)
from .stats import (
    CorrelationMatrix,
    DataMatrix,
    correlation_matrix,
    determination_matrix,
    summarize,
)
from .varimax import varimax

__all__ = [
    "RAW_CSV",
    "CORRELATION_CSV",
    "RunConfig",
    "IngestResult",
    "ReportTable",
    "ingest",
    "read_data_csv",
    "read_correlation_csv",
    "run_report",
    "emit_scree",
    "format_number",
    "format_pct",
    "summary_table",
    "matrix_table",
    "loading_table",
    "common_variance_table",
    "cumulative_table",
]

RAW_CSV = "raw_csv"
CORRELATION_CSV = "correlation_csv"

INGEST_SYMMETRY_TOL = 1e-6  # accepted asymmetry/diagonal slack in a correlation CSV


def _default_output_dir() -> str:
    return os.environ.get("FACPCA_OUT", ".")


@dataclass
class RunConfig:
    """Everything a report run needs; flags override the FACPCA_OUT env var."""

    input_path: str
    input_kind: str
    epsilon: float = 0.51
    factor_count_override: int | None = None
    rotate: str = "varimax"
    kaiser_normalize: bool = True
    output_dir: str = field(default_factory=_default_output_dir)
    output_format: str = "csv"
    seed: int | None = None
    percent_threshold: float = 80.0

    def __post_init__(self) -> None:
        if self.input_kind not in (RAW_CSV, CORRELATION_CSV):
            raise DataError(f"unknown input kind {self.input_kind!r}")
        if not 0.5 < self.epsilon <= 1.0:
            raise ThresholdError(f"epsilon must lie in (0.5, 1], got {self.epsilon}")
        if not 0.0 < self.percent_threshold <= 100.0:
            raise ThresholdError(
                f"percent threshold must lie in (0, 100], got {self.percent_threshold}"
            )
        if self.factor_count_override is not None and self.factor_count_override < 1:
            raise SizeError("factor count override must be at least 1")
        if self.rotate not in ("varimax", "none"):
            raise DataError(f"unknown rotation {self.rotate!r}")
        if self.output_format not in ("csv", "json"):
            raise DataError(f"unknown output format {self.output_format!r}")


@dataclass(frozen=True)
class IngestResult:
    """Parsed input plus the number of rows dropped for missing values."""

    data: DataMatrix | CorrelationMatrix
    dropped_rows: int = 0


@dataclass
class ReportTable:
    """One named table of the report bundle; cells are formatted strings."""

    header: list[str]
    rows: list[list[str]]


def format_number(value) -> str:
    return format(float(value), ".12g")


def format_pct(fraction) -> str:
    return f"{float(fraction) * 100.0:.2f}"


def _read_csv_rows(path) -> list[tuple[int, list[str]]]:
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            raw = list(csv.reader(handle))
    except FileNotFoundError:
        raise ParseError(f"{path}: file not found") from None
    rows = [
        (line_no, [cell.strip() for cell in row])
        for line_no, row in enumerate(raw, start=1)
        if any(cell.strip() for cell in row)
    ]
    if not rows:
        raise ParseError(f"{path}: file is empty")
    return rows


def read_data_csv(path) -> tuple[DataMatrix, int]:
    """Read a raw observation CSV: a header of labels, then numeric rows.

    Any row containing a missing, non-numeric or non-finite cell is dropped;
    the count of dropped rows is returned alongside the matrix.  A row with
    the wrong number of fields is a parse error, not a droppable row.
    """
    rows = _read_csv_rows(path)
    _, header = rows[0]
    labels = tuple(header)
    n = len(labels)
    kept: list[list[float]] = []
    dropped = 0
    for line_no, row in rows[1:]:
        if len(row) != n:
            raise ParseError(f"{path}: line {line_no}: expected {n} fields, got {len(row)}")
        values: list[float] = []
        usable = True
        for cell in row:
            try:
                value = float(cell)
            except ValueError:
                usable = False
                break
            if not np.isfinite(value):
                usable = False
                break
            values.append(value)
        if usable:
            kept.append(values)
        else:
            dropped += 1
    if len(kept) < 2:
        raise SizeError(
            f"{path}: only {len(kept)} usable rows remain after dropping {dropped}"
        )
    return DataMatrix(np.array(kept), labels), dropped


def read_correlation_csv(path) -> CorrelationMatrix:
    """Read a labeled square correlation matrix CSV.

    Layout: a header row (corner cell plus n labels) and n rows, each a
    label followed by n values.  Asymmetry up to 1e-6 is repaired by
    averaging; the diagonal must be within 1e-6 of 1 and is then forced to
    exactly 1.
    """
    rows = _read_csv_rows(path)
    _, header = rows[0]
    if len(header) < 2:
        raise ParseError(f"{path}: header must hold a corner cell and the labels")
    labels = tuple(header[1:])
    n = len(labels)
    if len(rows) - 1 != n:
        raise DataError(f"{path}: expected {n} matrix rows, found {len(rows) - 1}")
    entries = np.zeros((n, n))
    for k, (line_no, row) in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise ParseError(
                f"{path}: line {line_no}: expected a label and {n} values, got {len(row)} fields"
            )
        if row[0] != labels[k]:
            raise DataError(
                f"{path}: row label {row[0]!r} does not match header label {labels[k]!r}"
            )
        for c, cell in enumerate(row[1:]):
            try:
                entries[k, c] = float(cell)
            except ValueError:
                raise ParseError(f"{path}: line {line_no}: {cell!r} is not a number") from None
    if not np.all(np.isfinite(entries)):
        raise DataError(f"{path}: matrix contains non-finite values")
    asymmetry = float(np.max(np.abs(entries - entries.T)))
    if asymmetry > INGEST_SYMMETRY_TOL:
        raise DataError(f"{path}: matrix asymmetric by {asymmetry:.3e} (limit 1e-06)")
    entries = (entries + entries.T) / 2.0
    diag_error = float(np.max(np.abs(np.diag(entries) - 1.0)))
    if diag_error > INGEST_SYMMETRY_TOL:
        raise DataError(f"{path}: diagonal deviates from 1 by {diag_error:.3e} (limit 1e-06)")
    np.fill_diagonal(entries, 1.0)
    overshoot = float(np.max(np.abs(entries))) - 1.0
    if overshoot > INGEST_SYMMETRY_TOL:
        raise DataError(f"{path}: entry magnitude exceeds 1 by {overshoot:.3e}")
    np.clip(entries, -1.0, 1.0, out=entries)
    return CorrelationMatrix(entries, labels)


def ingest(path, kind: str) -> IngestResult:
    """Read either input flavor; see ``read_data_csv``/``read_correlation_csv``."""
    if kind == RAW_CSV:
        data, dropped = read_data_csv(path)
        return IngestResult(data, dropped)
    if kind == CORRELATION_CSV:
        return IngestResult(read_correlation_csv(path), 0)
    raise DataError(f"unknown input kind {kind!r}")


# ---------------------------------------------------------------------------
# table builders


def summary_table(data: DataMatrix) -> ReportTable:
    stats = [summarize(data.column(i)) for i in range(data.n_variables)]
    rows = [
        ["Mean"] + [format_number(s.mean) for s in stats],
        ["Median"] + [format_number(s.median) for s in stats],
        ["Mode"] + [format_number(s.mode) for s in stats],
        ["Standard deviation"] + [format_number(s.std_dev) for s in stats],
        ["Minimum"] + [format_number(s.minimum) for s in stats],
        ["Maximum"] + [format_number(s.maximum) for s in stats],
    ]
    return ReportTable(["statistic", *data.labels], rows)


def matrix_table(labels, matrix, cell) -> ReportTable:
    rows = [
        [label, *(cell(value) for value in matrix[i])] for i, label in enumerate(labels)
    ]
    return ReportTable(["", *labels], rows)


def _factor_header(k: int) -> list[str]:
    return [f"F{j + 1}" for j in range(k)]


def loading_table(loadings: LoadingMatrix, with_communality: bool) -> ReportTable:
    header = ["", *_factor_header(loadings.k)]
    common = communalities(loadings)
    if with_communality:
        header.append("communality_pct")
    rows = []
    for i, label in enumerate(loadings.variable_labels):
        row = [label, *(format_number(v) for v in loadings.entries[i])]
        if with_communality:
            row.append(format_pct(common[i]))
        rows.append(row)
    return ReportTable(header, rows)


def common_variance_table(loadings: LoadingMatrix) -> ReportTable:
    header = ["", *_factor_header(loadings.k), "communality_pct"]
    common = communalities(loadings)
    rows = []
    for i, label in enumerate(loadings.variable_labels):
        rows.append(
            [label, *(format_pct(v**2) for v in loadings.entries[i]), format_pct(common[i])]
        )
    return ReportTable(header, rows)


def cumulative_table(loadings: LoadingMatrix) -> ReportTable:
    cumulative = cumulative_communalities(loadings)
    header = ["", *_factor_header(loadings.k)]
    rows = [
        [label, *(format_pct(v) for v in cumulative[i])]
        for i, label in enumerate(loadings.variable_labels)
    ]
    rows.append(["Average", *(format_pct(v) for v in cumulative.mean(axis=0))])
    return ReportTable(header, rows)


def run_report(config: RunConfig) -> dict[str, ReportTable]:
    """Produce the full report bundle and write it into the output directory.

    Returns the bundle keyed by table name.  The scree series is written as
    ``scree.txt``/``scree.svg`` next to the tables.
    """
    result = ingest(config.input_path, config.input_kind)
    bundle: dict[str, ReportTable] = {}
    if isinstance(result.data, DataMatrix):
        data = result.data
        bundle["summary_statistics"] = summary_table(data)
        corr = correlation_matrix(data)
    else:
        corr = result.data
    labels = corr.labels
    n = corr.size
    bundle["correlation_matrix"] = matrix_table(labels, corr.entries, format_number)
    bundle["determination_matrix"] = matrix_table(
        labels, determination_matrix(corr), format_pct
    )
    eig = eigen_symmetric(corr.entries, correlation_input=True)
    bundle["eigenvalues"] = ReportTable(
        ["component", "eigenvalue"],
        [[str(i + 1), format_number(v)] for i, v in enumerate(eig.eigenvalues)],
    )
    table = variance_table(eig.eigenvalues)
    bundle["explained_variance"] = ReportTable(
        ["component", "eigenvalue", "cumulative_eigenvalue", "pct", "cumulative_pct"],
        [
            [
                str(i + 1),
                format_number(table.eigenvalue[i]),
                format_number(table.cumulative_eigenvalue[i]),
                f"{table.pct[i]:.2f}",
                f"{table.cumulative_pct[i]:.2f}",
            ]
            for i in range(n)
        ],
    )
    loadings = full_loadings(eig, labels)
    bundle["loadings_full"] = loading_table(loadings, with_communality=False)
    bundle["cumulative_communality_pct"] = cumulative_table(loadings)
    report = minvar_count(eig, config.epsilon)
    bundle["retention"] = ReportTable(
        ["", *(str(i + 1) for i in range(n))],
        [
            ["EigVal", *(format_pct(v) for v in report.eig_pct)],
            ["MinVar", *(format_pct(v) for v in report.min_var)],
            ["AverVar", *(format_pct(v) for v in report.aver_var)],
            ["NrMinVar", *(str(v) for v in report.nr_min_var)],
        ],
    )
    bundle["criteria_comparison"] = ReportTable(
        ["criterion", "factors"],
        [
            ["kaiser", str(kaiser_count(eig.eigenvalues))],
            ["half_of_variables", str(half_count(n))],
            [
                f"explained_variance({config.percent_threshold:g}%)",
                str(percentage_count(eig.eigenvalues, config.percent_threshold)),
            ],
            [f"min_variance(epsilon={config.epsilon:g})", str(report.chosen)],
        ],
    )
    k = config.factor_count_override or report.chosen
    if k > n:
        raise SizeError(f"factor count override {k} exceeds the {n} variables")
    truncated = truncate(loadings, k)
    bundle["loadings_truncated"] = loading_table(truncated, with_communality=True)
    bundle["common_variances_truncated"] = common_variance_table(truncated)
    if config.rotate == "varimax" and k >= 2:
        rotation = varimax(truncated, normalize=config.kaiser_normalize)
        bundle["loadings_rotated"] = loading_table(
            rotation.rotated, with_communality=True
        )
        bundle["common_variances_rotated"] = common_variance_table(rotation.rotated)
    output_dir = Path(config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    _write_bundle(bundle, output_dir, config.output_format)
    emit_scree(eig.eigenvalues, output_dir / "scree.svg")
    return bundle


def _write_bundle(
    bundle: dict[str, ReportTable], output_dir: Path, output_format: str
) -> None:
    if output_format == "csv":
        for name, table in bundle.items():
            with open(output_dir / f"{name}.csv", "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(table.header)
                writer.writerows(table.rows)
    else:
        payload = {
            name: {"header": table.header, "rows": table.rows}
            for name, table in bundle.items()
        }
        with open(output_dir / "report.json", "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2)
            f.write("\n")


# ---------------------------------------------------------------------------
# scree emission


def emit_scree(eigenvalues, path) -> tuple[Path, Path]:
    """Write the scree series as an SVG line plot plus a plain-text sibling.

    ``path`` names the SVG file; the two-column text series is written next
    to it with a ``.txt`` suffix.  Output bytes depend only on the
    eigenvalues, so regeneration is byte-identical.
    """
    points = scree_data(eigenvalues)
    svg_path = Path(path)
    txt_path = svg_path.with_suffix(".txt")
    with open(txt_path, "w", encoding="utf-8") as f:
        for index, value in points:
            f.write(f"{index} {format_number(value)}\n")
    with open(svg_path, "w", encoding="utf-8") as f:
        f.write(_scree_svg(points))
    return svg_path, txt_path


def _scree_svg(points: list[tuple[int, float]]) -> str:
    width, height = 640.0, 400.0
    left, right, top, bottom = 64.0, 20.0, 20.0, 52.0
    plot_w = width - left - right
    plot_h = height - top - bottom
    n = len(points)
    y_max = max(value for _, value in points)
    y_max = y_max * 1.05 if y_max > 0 else 1.0

    def sx(index: float) -> float:
        if n == 1:
            return left + plot_w / 2.0
        return left + (index - 1.0) / (n - 1.0) * plot_w

    def sy(value: float) -> float:
        return top + plot_h - value / y_max * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<line x1="{left:.2f}" y1="{top:.2f}" x2="{left:.2f}" y2="{top + plot_h:.2f}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{left:.2f}" y1="{top + plot_h:.2f}" x2="{left + plot_w:.2f}" '
        f'y2="{top + plot_h:.2f}" stroke="black" stroke-width="1"/>',
    ]
    for tick in range(5):
        value = y_max * tick / 4.0
        y = sy(value)
        parts.append(
            f'<line x1="{left - 4:.2f}" y1="{y:.2f}" x2="{left:.2f}" y2="{y:.2f}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{left - 8:.2f}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{value:.3g}</text>'
        )
    stride = max(1, (n - 1) // 12 + 1) if n > 1 else 1
    for index, _ in points:
        if (index - 1) % stride:
            continue
        x = sx(index)
        parts.append(
            f'<line x1="{x:.2f}" y1="{top + plot_h:.2f}" x2="{x:.2f}" '
            f'y2="{top + plot_h + 4:.2f}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{top + plot_h + 18:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{index}</text>'
        )
    coords = " ".join(f"{sx(i):.2f},{sy(v):.2f}" for i, v in points)
    parts.append(
        f'<polyline points="{coords}" fill="none" stroke="#1f6fb2" stroke-width="2"/>'
    )
    for index, value in points:
        parts.append(
            f'<circle cx="{sx(index):.2f}" cy="{sy(value):.2f}" r="3" fill="#1f6fb2"/>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 12:.2f}" text-anchor="middle" '
        'font-family="sans-serif" font-size="13">Component number</text>'
    )
    parts.append(
        f'<text x="16" y="{top + plot_h / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 16 {top + plot_h / 2:.2f})">Eigenvalue</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
