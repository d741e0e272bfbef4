# figures.py
"""
SVG pictures of one covering case: the fundamental parallelogram of an ideal
C, the disks of radius sqrt(Nm C) around lattice points that meet it, and the
uncovered deep hole when there is one.

Geometry is exact until the final write, where every coordinate is turned
into a Decimal with EUCLID_SVG_DIGITS significant digits. The same input
always gives the same bytes.
"""

import os
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import List, Tuple

from dotenv import load_dotenv

from ideals import FracIdeal, ideal_norm
from lattice import CoverKind, covering_verdict, lattice_of_ideal, points_in_disk
from quadfield import PlanePoint, make_field

load_dotenv()

# --- Config ---
SVG_SCALE = int(os.getenv("EUCLID_SVG_SCALE", "80"))
SVG_DIGITS = int(os.getenv("EUCLID_SVG_DIGITS", "12"))

DISK_FILL = "rgb(120, 170, 230)"
EDGE_COLOR = "rgb(0, 0, 0)"
HOLE_COLOR = "rgb(220, 30, 30)"


def _decimal(x: Fraction) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = SVG_DIGITS + 10
        return Decimal(x.numerator) / Decimal(x.denominator)


def _sqrt(x: Fraction) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = SVG_DIGITS + 10
        return _decimal(x).sqrt()


def _num(x: Decimal) -> str:
    with localcontext() as ctx:
        ctx.prec = SVG_DIGITS
        x = +x
    if x == 0:
        return "0"
    s = format(x, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s


class SvgFigure:
    """Accumulates SVG elements in user units; y grows downwards."""

    def __init__(self, view: Tuple[Decimal, Decimal, Decimal, Decimal]):
        self._view = view
        self._output: List[str] = []

    def print_output(self, output: str) -> None:
        self._output.append(output)

    def print_circle(self, x: Decimal, y: Decimal, r: Decimal, fill: str, opacity: str = "1", stroke: str = "none") -> None:
        self.print_output(
            f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(r)}" '
            f'style="fill:{fill}; fill-opacity:{opacity}; stroke:{stroke};" />'
        )

    def print_polygon(self, pts: List[Tuple[Decimal, Decimal]], stroke: str, width: Decimal) -> None:
        coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
        self.print_output(
            f'<polygon points="{coords}" style="fill:none; stroke:{stroke}; stroke-width:{_num(width)};" />'
        )

    def print_text(self, x: Decimal, y: Decimal, text: str, size: Decimal) -> None:
        self.print_output(
            f'<text x="{_num(x)}" y="{_num(y)}" font-family="sans-serif" font-size="{_num(size)}">{text}</text>'
        )

    def __str__(self) -> str:
        x, y, w, h = self._view
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" '
            f'width="{_num(w)}" height="{_num(h)}" viewBox="{_num(x)} {_num(y)} {_num(w)} {_num(h)}">'
        )
        return "\n".join([head, *self._output, "</svg>"]) + "\n"

    def to_file(self, path: Path) -> None:
        Path(path).write_text(str(self), encoding="utf-8", newline="\n")


def _segment_dist_sq(z: PlanePoint, a: PlanePoint, b: PlanePoint) -> Fraction:
    ab = b - a
    t = (z - a).dot(ab) / ab.norm_sq()
    t = min(max(t, Fraction(0)), Fraction(1))
    return (z - a - ab.scale(t)).norm_sq()


def _meets_parallelogram(z: PlanePoint, v1: PlanePoint, v2: PlanePoint, r2: Fraction) -> bool:
    det = v1.cross(v2)
    x, y = z.cross(v2) / det, v1.cross(z) / det
    if 0 <= x <= 1 and 0 <= y <= 1:
        return True
    origin = v1 - v1
    corners = [origin, v1, v1 + v2, v2]
    return any(
        _segment_dist_sq(z, corners[k], corners[(k + 1) % 4]) < r2 for k in range(4)
    )


def disks_meeting_domain(C: FracIdeal) -> List[PlanePoint]:
    """Lattice points of C whose closed disk of radius sqrt(Nm C) meets the parallelogram."""
    L = lattice_of_ideal(C)
    v1, v2 = L.v1, L.v2
    r2 = ideal_norm(C)
    center = (v1 + v2).scale(Fraction(1, 2))
    rho2 = max((v1 + v2).norm_sq(), (v1 - v2).norm_sq()) / 4
    # (rho + r)^2 <= 2 rho^2 + 2 r^2
    return [w for w in points_in_disk(L, center, 2 * rho2 + 2 * r2) if _meets_parallelogram(w, v1, v2, r2)]


def render_case_svg(D: int, C: FracIdeal, path: Path) -> None:
    field = make_field(D)
    if C.field != field:
        raise ValueError(f"{C} is not an ideal of {field}")

    L = lattice_of_ideal(C)
    v1, v2 = L.v1, L.v2
    r2 = ideal_norm(C)
    sqrt_D = _sqrt(Fraction(D))
    scale = Decimal(SVG_SCALE)

    def xy(z: PlanePoint) -> Tuple[Decimal, Decimal]:
        return _decimal(z.p) * scale, -_decimal(z.q) * sqrt_D * scale

    radius = _sqrt(r2) * scale
    corners = [xy(z) for z in (v1 - v1, v1, v1 + v2, v2)]
    xs = [x for x, _ in corners]
    ys = [y for _, y in corners]
    pad = radius + scale / 4
    view = (min(xs) - pad, min(ys) - pad, max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad)

    fig = SvgFigure(view)
    for w in disks_meeting_domain(C):
        x, y = xy(w)
        fig.print_circle(x, y, radius, DISK_FILL, opacity="0.35", stroke=DISK_FILL)
    fig.print_polygon(corners, EDGE_COLOR, scale / 40)

    verdict = covering_verdict(C)
    if verdict.kind is not CoverKind.COVERED:
        hx, hy = xy(verdict.witness)
        fig.print_circle(hx, hy, scale / 25, HOLE_COLOR)

    fig.print_text(
        view[0] + scale / 10,
        view[1] + scale / 4,
        f"D={D}, C={C}, {verdict.kind.value}",
        scale / 6,
    )
    fig.to_file(path)
