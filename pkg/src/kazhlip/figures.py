"""Grid data and SVG rendering for the two bound-function graphs.

Each table holds, per grid point, both branches and their max (for phi) or
min (for phi_inv). The SVG renderer is self-contained: fixed 800x600
viewport, linear axes, two polyline curves, the crossover marked.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import List, Tuple

import mpmath
from mpmath import mpf

from .bounds import phi_crossover
from .errors import DomainError
from .precision import real_str, to_real

WIDTH, HEIGHT = 800, 600
MARGIN = 60


@dataclass(frozen=True)
class BranchTable:
    which: str                      # "phi-branches" or "phi-inv-branches"
    header: Tuple[str, ...]
    rows: Tuple[Tuple[mpf, mpf, mpf, mpf], ...]  # (t, branch1, branch2, combined)
    crossover_t: mpf
    crossover_value: mpf

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([real_str(v) for v in row])
        return buf.getvalue()


def _grid(start, end, step) -> List[mpf]:
    start, end, step = to_real(start), to_real(end), to_real(step)
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    if end < start:
        raise DomainError(f"grid end {end} below start {start}")
    out = []
    t = start
    while t <= end + step / 2:
        out.append(t)
        t += step
    return out


def phi_branch_table(start=0, end="1.4", step="0.01") -> BranchTable:
    """e^{2t} and 4(2-t^2)^{-2} with their max, on a grid in [0, sqrt2)."""
    grid = _grid(start, end, step)
    s2 = mpmath.sqrt(2)
    if grid[0] < 0 or grid[-1] >= s2:
        raise DomainError("phi grid must stay inside [0, sqrt(2))")
    rows = []
    for t in grid:
        b1 = mpmath.e ** (2 * t)
        b2 = 4 / (2 - t * t) ** 2
        rows.append((t, b1, b2, max(b1, b2)))
    tstar = phi_crossover()
    return BranchTable(
        which="phi-branches",
        header=("t", "exp_branch", "rational_branch", "max"),
        rows=tuple(rows),
        crossover_t=tstar,
        crossover_value=mpmath.e ** (2 * tstar),
    )


def phi_inv_branch_table(start=1, end=23, step="0.1") -> BranchTable:
    """(1/2) log t and sqrt2 (1 - t^{-1/2})^{1/2} with their min, on a grid
    in [1, oo)."""
    grid = _grid(start, end, step)
    if grid[0] < 1:
        raise DomainError("phi_inv grid must stay inside [1, oo)")
    rows = []
    for t in grid:
        b1 = mpmath.log(t) / 2
        b2 = mpmath.sqrt(2) * mpmath.sqrt(1 - t ** mpf("-0.5"))
        rows.append((t, b1, b2, min(b1, b2)))
    tstar = phi_crossover()
    return BranchTable(
        which="phi-inv-branches",
        header=("t", "log_branch", "sqrt_branch", "min"),
        rows=tuple(rows),
        crossover_t=mpmath.e ** (2 * tstar),  # abscissa where the min switches
        crossover_value=tstar,
    )


def _polyline(points: List[Tuple[float, float]], color: str) -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>'


def render_svg(table: BranchTable) -> str:
    """Two curves, axes, legend, and the crossover point."""
    ts = [float(r[0]) for r in table.rows]
    b1 = [float(r[1]) for r in table.rows]
    b2 = [float(r[2]) for r in table.rows]
    tmin, tmax = min(ts), max(ts)
    vmin = min(min(b1), min(b2))
    vmax = max(max(b1), max(b2))
    if tmax == tmin or vmax == vmin:
        raise DomainError("degenerate grid; nothing to draw")

    def sx(t):
        return MARGIN + (t - tmin) / (tmax - tmin) * (WIDTH - 2 * MARGIN)

    def sy(v):
        return HEIGHT - MARGIN - (v - vmin) / (vmax - vmin) * (HEIGHT - 2 * MARGIN)

    if table.which == "phi-branches":
        legend = ("exp(2t)", "4(2-t^2)^-2")
        cx, cy = float(table.crossover_t), float(table.crossover_value)
    else:
        legend = ("log(t)/2", "sqrt(2)(1-t^-1/2)^1/2")
        cx, cy = float(table.crossover_t), float(table.crossover_value)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" '
        'stroke="black"/>',
        _polyline([(sx(t), sy(v)) for t, v in zip(ts, b1)], "green"),
        _polyline([(sx(t), sy(v)) for t, v in zip(ts, b2)], "blue"),
        f'<text x="{MARGIN}" y="{MARGIN - 30}" font-size="14" fill="green">'
        f"{legend[0]}</text>",
        f'<text x="{MARGIN}" y="{MARGIN - 12}" font-size="14" fill="blue">'
        f"{legend[1]}</text>",
        f'<text x="{MARGIN}" y="{HEIGHT - 20}" font-size="12">'
        f"t in [{tmin:g}, {tmax:g}]</text>",
    ]
    if tmin <= cx <= tmax and vmin <= cy <= vmax:
        parts.append(
            f'<circle cx="{sx(cx):.2f}" cy="{sy(cy):.2f}" r="4" fill="red"/>'
            f'<text x="{sx(cx) + 8:.2f}" y="{sy(cy) - 8:.2f}" font-size="12" '
            f'fill="red">crossover ({cx:.4f}, {cy:.4f})</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
