# lattice.py
"""
Exact planar lattices coming from fractional ideals.

All coordinates are (p, q) pairs meaning p + q*sqrt(D)*i, so inner products,
squared lengths, circumcenters and squared covering radii stay rational and
every comparison below is exact.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import floor, isqrt
from typing import List, Optional, Tuple

from errors import DegenerateLattice
from ideals import FracIdeal, ideal_norm
from quadfield import PlanePoint, QuadField, embed, plane_point

logger = logging.getLogger("lattice")


@dataclass(frozen=True)
class PlanarLattice:
    field: QuadField
    v1: PlanePoint
    v2: PlanePoint

    def __post_init__(self):
        if self.v1.cross(self.v2) == 0:
            raise DegenerateLattice(f"basis {self.v1}, {self.v2} is linearly dependent")

    @property
    def D(self) -> int:
        return self.field.D

    def point(self, x: int, y: int) -> PlanePoint:
        return self.v1.scale(x) + self.v2.scale(y)

    def coords(self, z: PlanePoint) -> Tuple[Fraction, Fraction]:
        """Real coordinates (x, y) with z = x*v1 + y*v2."""
        det = self.v1.cross(self.v2)
        return z.cross(self.v2) / det, self.v1.cross(z) / det

    def det_sq(self) -> Fraction:
        """Squared covolume."""
        c = self.v1.cross(self.v2)
        return self.D * c * c


class CoverKind(str, Enum):
    COVERED = "Covered"
    BOUNDARY_TOUCH = "BoundaryTouch"
    OPEN_GAP = "OpenGap"


@dataclass(frozen=True)
class CoverVerdict:
    kind: CoverKind
    witness: Optional[PlanePoint]
    covering_radius_sq: Fraction
    disk_radius_sq: Fraction


def lattice_of_ideal(I: FracIdeal) -> PlanarLattice:
    e1, e2 = I.basis()
    return PlanarLattice(I.field, embed(e1), embed(e2))


def points_in_disk(L: PlanarLattice, center: PlanePoint, radius_sq: Fraction) -> List[PlanePoint]:
    """Lattice points w with |w - center|^2 <= radius_sq, sorted by (p, q)."""
    if radius_sq < 0:
        return []
    alpha, beta = L.coords(center)
    det_sq = L.det_sq()
    # |y - beta| * |det| = |v1 x (w - center)| <= |v1| * r, same for x with v2
    kx = isqrt(floor(L.v2.norm_sq() * radius_sq / det_sq))
    ky = isqrt(floor(L.v1.norm_sq() * radius_sq / det_sq))
    x0, y0 = floor(alpha), floor(beta)

    found: List[PlanePoint] = []
    for x in range(x0 - kx - 1, x0 + kx + 3):
        for y in range(y0 - ky - 1, y0 + ky + 3):
            w = L.point(x, y)
            if (w - center).norm_sq() <= radius_sq:
                found.append(w)
    found.sort(key=PlanePoint.key)
    return found


def _round(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def closest_vector(L: PlanarLattice, z: PlanePoint) -> Tuple[PlanePoint, Fraction]:
    """Closest lattice point to z; ties go to the smallest (p, q)."""
    alpha, beta = L.coords(z)
    babai = L.point(_round(alpha), _round(beta))
    bound = (babai - z).norm_sq()
    best = min(points_in_disk(L, z, bound), key=lambda w: ((w - z).norm_sq(), w.p, w.q))
    return best, (best - z).norm_sq()


def _gauss_reduce(L: PlanarLattice) -> PlanarLattice:
    v1, v2 = L.v1, L.v2
    if v1.norm_sq() > v2.norm_sq():
        v1, v2 = v2, v1
    while True:
        mu = _round(v1.dot(v2) / v1.norm_sq())
        v2 = v2 - v1.scale(mu)
        if v2.norm_sq() >= v1.norm_sq():
            break
        v1, v2 = v2, v1
    return PlanarLattice(L.field, v1, v2)


def reduce_basis(L: PlanarLattice) -> PlanarLattice:
    """
    Lagrange-reduced basis in canonical form: v1 is the largest (p, q) among
    the shortest vectors, v2 the largest (p, q) among second-minimum vectors
    completing a basis with dot(v1, v2) <= 0.
    """
    g = _gauss_reduce(L)
    origin = plane_point(0, 0, L.D)
    n1, n2 = g.v1.norm_sq(), g.v2.norm_sq()
    det = abs(g.v1.cross(g.v2))

    shortest = [w for w in points_in_disk(g, origin, n1) if w.norm_sq() == n1]
    v1 = max(shortest, key=PlanePoint.key)
    second = [
        w
        for w in points_in_disk(g, origin, n2)
        if w.norm_sq() == n2 and abs(v1.cross(w)) == det and v1.dot(w) <= 0
    ]
    v2 = max(second, key=PlanePoint.key)
    return PlanarLattice(L.field, v1, v2)


def circumcenter(a: PlanePoint, b: PlanePoint) -> PlanePoint:
    """Circumcenter of the triangle (0, a, b)."""
    D = a.D
    det = D * a.cross(b)
    if det == 0:
        raise DegenerateLattice(f"triangle (0, {a}, {b}) is degenerate")
    ha, hb = a.norm_sq() / 2, b.norm_sq() / 2
    # a.p*cp + D*a.q*cq = |a|^2/2 ; b.p*cp + D*b.q*cq = |b|^2/2
    cp = (ha * D * b.q - D * a.q * hb) / det
    cq = (a.p * hb - b.p * ha) / det
    return PlanePoint(cp, cq, D)


def covering_radius_sq(L: PlanarLattice) -> Tuple[Fraction, PlanePoint]:
    """
    Squared covering radius and a deep hole. With the reduced basis satisfying
    dot(v1, v2) <= 0, (v1, v2, -v1-v2) is an obtuse superbase and the deep
    holes are circumcenters of the triangles (0, v1, v1+v2), (0, v2, v1+v2).
    """
    R = reduce_basis(L)
    v1, v2 = R.v1, R.v2
    if v1.dot(v2) > 0:
        v2 = -v2
    s = v1 + v2
    best: Optional[Tuple[Fraction, PlanePoint]] = None
    for a in (v1, v2):
        c = circumcenter(a, s)
        r2 = c.norm_sq()
        if best is None or r2 > best[0]:
            best = (r2, c)
    return best


def to_fundamental_domain(L: PlanarLattice, z: PlanePoint) -> PlanePoint:
    """The translate of z lying in {x*v1 + y*v2 : 0 <= x, y < 1}."""
    alpha, beta = L.coords(z)
    return z - L.point(floor(alpha), floor(beta))


def covering_verdict(C: FracIdeal) -> CoverVerdict:
    L = lattice_of_ideal(C)
    mu2, hole = covering_radius_sq(L)
    disk = ideal_norm(C)
    if mu2 < disk:
        kind = CoverKind.COVERED
    elif mu2 == disk:
        kind = CoverKind.BOUNDARY_TOUCH
        logger.warning("D=%s ideal %s: covering radius equals disk radius", C.field.D, C)
    else:
        kind = CoverKind.OPEN_GAP
    witness = None if kind is CoverKind.COVERED else to_fundamental_domain(L, hole)
    return CoverVerdict(kind, witness, mu2, disk)
