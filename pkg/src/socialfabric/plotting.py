"""Minimal SVG line charts for result CSVs (no plotting library needed)."""

import csv
from pathlib import Path
from xml.sax.saxutils import escape

from ._validation import ValidationError

WIDTH, HEIGHT = 640, 400
MARGIN = 60
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def _read_columns(csv_path, names):
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for name in names:
            if name not in header:
                raise ValidationError(f"{csv_path}: no column {name!r} (have {', '.join(header)})")
        rows = list(reader)
    if not rows:
        raise ValidationError(f"{csv_path}: no data rows")
    try:
        return {name: [float(r[name]) for r in rows] for name in names}
    except ValueError as exc:
        raise ValidationError(f"{csv_path}: non-numeric value: {exc}") from None


def _scale(values, lo_px, hi_px):
    lo, hi = min(values), max(values)
    span = hi - lo or 1.0
    return [lo_px + (v - lo) / span * (hi_px - lo_px) for v in values], lo, hi


def emit_plot(csv_path, x, ys, out_path):
    """Write an SVG with one polyline per column in ``ys`` against column ``x``.

    Validation happens before anything is written, so a bad request leaves no file.
    """
    if isinstance(ys, str):
        ys = [c for c in ys.split(",") if c]
    if not ys:
        raise ValidationError("need at least one y column")
    data = _read_columns(csv_path, [x, *ys])
    xs_px, x_lo, x_hi = _scale(data[x], MARGIN, WIDTH - MARGIN)
    all_y = [v for c in ys for v in data[c]]
    y_lo, y_hi = min(all_y), max(all_y)
    span = y_hi - y_lo or 1.0

    def ypx(v):
        # SVG y grows downward
        return HEIGHT - MARGIN - (v - y_lo) / span * (HEIGHT - 2 * MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line class="axis" x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line class="axis" x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<text class="xlabel" x="{WIDTH / 2}" y="{HEIGHT - 15}" text-anchor="middle">{escape(x)}</text>',
        f'<text class="ylabel" x="15" y="{HEIGHT / 2}" text-anchor="middle" '
        f'transform="rotate(-90 15 {HEIGHT / 2})">{escape(", ".join(ys))}</text>',
        f'<text x="{MARGIN}" y="{HEIGHT - MARGIN + 18}" text-anchor="middle">{x_lo:.4g}</text>',
        f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - MARGIN + 18}" text-anchor="middle">{x_hi:.4g}</text>',
        f'<text x="{MARGIN - 6}" y="{HEIGHT - MARGIN}" text-anchor="end">{y_lo:.4g}</text>',
        f'<text x="{MARGIN - 6}" y="{MARGIN}" text-anchor="end">{y_hi:.4g}</text>',
    ]
    for k, col in enumerate(ys):
        color = COLORS[k % len(COLORS)]
        points = " ".join(f"{px:.3f},{ypx(v):.3f}" for px, v in zip(xs_px, data[col]))
        parts.append(
            f'<polyline data-column="{escape(col)}" fill="none" stroke="{color}" points="{points}"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN + 4}" y="{MARGIN + 16 * k}" fill="{color}">{escape(col)}</text>'
        )
    parts.append("</svg>")
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(parts) + "\n")
    return out
