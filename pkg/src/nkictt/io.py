"""CSV schemas and hand-written SVG line charts.

Numbers are written with 12 significant digits, rows are ``\\n``
terminated and a header is always present.
"""
from __future__ import annotations

import csv
import dataclasses
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .harness import ReplicateRecord, SummaryRow, SweepSummary

SUMMARY_COLUMNS = ("algorithm", "k", "mean_fitness", "se_fitness", "mean_hamming",
                   "se_hamming", "mean_steps", "early_term_rate", "iterations")
TRACE_COLUMNS = ("k", "step", "mean_moves_available")
RECORD_COLUMNS = tuple(f.name for f in dataclasses.fields(ReplicateRecord))


class SchemaError(ValueError):
    """A CSV file does not match any known schema or has no data rows."""


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    return str(value)


def _write(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def write_summary(path, summary: SweepSummary) -> None:
    rows = sorted(summary.rows, key=lambda r: (r.algorithm, r.k))
    _write(path, SUMMARY_COLUMNS, (dataclasses.astuple(r) for r in rows))


def write_records(path, records: Sequence[ReplicateRecord]) -> None:
    rows = sorted(records, key=lambda r: (r.algorithm, r.k, r.replicate_index))
    _write(path, RECORD_COLUMNS, (dataclasses.astuple(r) for r in rows))


def write_trace(path, traces: dict[int, np.ndarray]) -> None:
    rows = ((k, t + 1, v) for k in sorted(traces) for t, v in enumerate(traces[k]))
    _write(path, TRACE_COLUMNS, rows)


def _read(path) -> tuple[list[str], list[dict[str, str]]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return list(reader.fieldnames or []), list(reader)


def read_records(path) -> list[ReplicateRecord]:
    header, rows = _read(path)
    if tuple(header) != RECORD_COLUMNS:
        raise SchemaError(f"{path}: not a records file")
    return [ReplicateRecord(
        algorithm=r["algorithm"], k=int(r["k"]), replicate_index=int(r["replicate_index"]),
        best_fitness=float(r["best_fitness"]), hamming=int(r["hamming"]),
        steps_executed=int(r["steps_executed"]), terminated_early=r["terminated_early"] == "1",
        seed_used=int(r["seed_used"]), initial=r["initial"], best=r["best"],
    ) for r in rows]


def read_summary(path) -> SweepSummary:
    header, rows = _read(path)
    if tuple(header) != SUMMARY_COLUMNS:
        raise SchemaError(f"{path}: not a summary file")
    return SweepSummary([SummaryRow(
        algorithm=r["algorithm"], k=int(r["k"]),
        mean_fitness=float(r["mean_fitness"]), se_fitness=float(r["se_fitness"]),
        mean_hamming=float(r["mean_hamming"]), se_hamming=float(r["se_hamming"]),
        mean_steps=float(r["mean_steps"]), early_term_rate=float(r["early_term_rate"]),
        iterations=int(r["iterations"]),
    ) for r in rows])


# --- SVG -------------------------------------------------------------------

WIDTH, HEIGHT = 960, 600
MARGIN = dict(left=80, right=180, top=50, bottom=70)
COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / count for i in range(count + 1)]


def line_chart_svg(series: dict[str, tuple[Sequence[float], Sequence[float]]],
                   title: str, xlabel: str, ylabel: str) -> str:
    """Render named ``(x, y)`` series as polylines on a shared pair of axes."""
    xs = [x for xv, _ in series.values() for x in xv]
    ys = [y for _, yv in series.values() for y in yv]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    left, top = MARGIN["left"], MARGIN["top"]
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="13">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{left + pw / 2:.1f}" y="28" text-anchor="middle" font-size="16">{_esc(title)}</text>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{sx(t):.1f}" y="{top + ph + 20}" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{left - 8}" y="{sy(t) + 4:.1f}" text-anchor="end">{t:.4g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{HEIGHT - 20}" text-anchor="middle">{_esc(xlabel)}</text>')
    out.append(f'<text transform="translate(20,{top + ph / 2:.1f}) rotate(-90)" '
               f'text-anchor="middle">{_esc(ylabel)}</text>')
    for i, (name, (xv, yv)) in enumerate(series.items()):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xv, yv))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}"/>')
        ly = top + 20 + 22 * i
        lx = left + pw + 20
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}">{_esc(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_line_chart(csv_path, out_dir) -> list[Path]:
    """Write one SVG per metric for a summary or trace CSV; returns the paths.

    Raises :class:`SchemaError` for an unknown header or an empty file, in
    which case nothing is written.
    """
    header, rows = _read(csv_path)
    if not rows:
        raise SchemaError(f"{csv_path}: no data rows")
    out_dir = Path(out_dir)
    stem = Path(csv_path).stem
    charts: dict[str, str] = {}
    if tuple(header) == SUMMARY_COLUMNS:
        metrics = (("mean_fitness", "Mean best fitness"), ("mean_hamming", "Mean hamming distance"))
        for col, label in metrics:
            series: dict[str, tuple[list, list]] = {}
            for r in sorted(rows, key=lambda r: (r["algorithm"], int(r["k"]))):
                xs, ys = series.setdefault(r["algorithm"], ([], []))
                xs.append(int(r["k"]))
                ys.append(float(r[col]))
            charts[f"{stem}_{col}.svg"] = line_chart_svg(series, f"{label} vs K", "K", label)
    elif tuple(header) == TRACE_COLUMNS:
        series = {}
        for r in sorted(rows, key=lambda r: (int(r["k"]), int(r["step"]))):
            xs, ys = series.setdefault(f"K={r['k']}", ([], []))
            xs.append(int(r["step"]))
            ys.append(float(r["mean_moves_available"]))
        charts[f"{stem}_mean_moves_available.svg"] = line_chart_svg(
            series, "Moves available (ICTT1)", "time step", "mean moves available")
    else:
        raise SchemaError(f"{csv_path}: unrecognised header {header}")
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in charts.items():
        path = out_dir / name
        path.write_text(text)
        paths.append(path)
    return paths
