# quadfield.py
"""
Exact arithmetic in K = Q(sqrt(-D)) and its ring of integers.

Elements are stored over the integral basis (1, w), where w = sqrt(-D) when
D = 1, 2 (mod 4) and w = (1 + sqrt(-D)) / 2 when D = 3 (mod 4). Both cases
share one code path through the minimal polynomial w^2 = t*w - n
(t = Tr(w), n = Nm(w)).

The plane embedding writes an element as p + q*sqrt(D)*i with p, q rational,
so squared lengths stay rational: |(p, q)|^2 = p^2 + D*q^2.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Union

from sympy import factorint

from errors import FieldMismatch, NotSquarefree

Rational = Union[int, Fraction]


class OmegaKind(str, Enum):
    SQRT_D = "SqrtD"
    HALF_ONE_PLUS_SQRT_D = "HalfOnePlusSqrtD"


class ElemOp(str, Enum):
    ADD = "Add"
    SUB = "Sub"
    MUL = "Mul"
    NEG = "Neg"
    CONJ = "Conj"


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    return all(e == 1 for e in factorint(n).values())


def squarefree_up_to(d_max: int) -> List[int]:
    """All squarefree D with 1 <= D <= d_max, ascending."""
    return [d for d in range(1, d_max + 1) if is_squarefree(d)]


@dataclass(frozen=True)
class QuadField:
    D: int
    disc: int
    omega_kind: OmegaKind
    unit_count: int

    @property
    def half(self) -> bool:
        return self.omega_kind is OmegaKind.HALF_ONE_PLUS_SQRT_D

    @property
    def trace_omega(self) -> int:
        return 1 if self.half else 0

    @property
    def norm_omega(self) -> int:
        return (1 + self.D) // 4 if self.half else self.D

    @property
    def omega_label(self) -> str:
        return f"(1+sqrt(-{self.D}))/2" if self.half else f"sqrt(-{self.D})"

    def element(self, u: Rational = 0, v: Rational = 0) -> "FieldElement":
        return FieldElement(self, Fraction(u), Fraction(v))

    @property
    def zero(self) -> "FieldElement":
        return self.element(0, 0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1, 0)

    @property
    def omega(self) -> "FieldElement":
        return self.element(0, 1)

    def __str__(self) -> str:
        return f"Q(sqrt(-{self.D}))"


@lru_cache(maxsize=None)
def make_field(D: int) -> QuadField:
    if D < 1:
        raise ValueError(f"D must be a positive integer, got {D}")
    if not is_squarefree(D):
        square_part = [p for p, e in factorint(D).items() if e >= 2]
        raise NotSquarefree(f"D={D} is divisible by {square_part[0]}^2")

    if D % 4 == 3:
        kind = OmegaKind.HALF_ONE_PLUS_SQRT_D
        disc = -D
    else:
        kind = OmegaKind.SQRT_D
        disc = -4 * D

    unit_count = {1: 4, 3: 6}.get(D, 2)
    return QuadField(D=D, disc=disc, omega_kind=kind, unit_count=unit_count)


@dataclass(frozen=True)
class PlanePoint:
    """The point p + q*sqrt(D)*i of the complex plane."""

    p: Fraction
    q: Fraction
    D: int

    def __add__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.p + other.p, self.q + other.q, self.D)

    def __sub__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.p - other.p, self.q - other.q, self.D)

    def __neg__(self) -> "PlanePoint":
        return PlanePoint(-self.p, -self.q, self.D)

    def scale(self, k: Rational) -> "PlanePoint":
        return PlanePoint(self.p * k, self.q * k, self.D)

    def dot(self, other: "PlanePoint") -> Fraction:
        return self.p * other.p + self.D * self.q * other.q

    def norm_sq(self) -> Fraction:
        return self.dot(self)

    def cross(self, other: "PlanePoint") -> Fraction:
        """Signed area p1*q2 - p2*q1, in units of sqrt(D)."""
        return self.p * other.q - other.p * self.q

    def key(self):
        return (self.p, self.q)

    def __str__(self) -> str:
        return f"({self.p}, {self.q})"


def plane_point(p: Rational, q: Rational, D: int) -> PlanePoint:
    return PlanePoint(Fraction(p), Fraction(q), D)


@dataclass(frozen=True)
class FieldElement:
    field: QuadField
    u: Fraction
    v: Fraction

    def _check(self, other: "FieldElement") -> None:
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.u - other.u, self.v - other.v)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, -self.u, -self.v)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t, n = self.field.trace_omega, self.field.norm_omega
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        # w^2 = t*w - n
        return FieldElement(
            self.field,
            u1 * u2 - n * v1 * v2,
            u1 * v2 + u2 * v1 + t * v1 * v2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * elem_inverse(other)

    def conj(self) -> "FieldElement":
        t = self.field.trace_omega
        return FieldElement(self.field, self.u + t * self.v, -self.v)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_integral(self) -> bool:
        return self.u.denominator == 1 and self.v.denominator == 1

    def __str__(self) -> str:
        if self.v == 0:
            return str(self.u)
        return f"{self.u} + {self.v}*w"


def elem_arith(a: FieldElement, b: Optional[FieldElement], op: ElemOp) -> FieldElement:
    op = ElemOp(op)
    if op is ElemOp.NEG:
        return -a
    if op is ElemOp.CONJ:
        return a.conj()
    if b is None:
        raise ValueError(f"{op.value} needs two operands")
    a._check(b)
    if op is ElemOp.ADD:
        return a + b
    if op is ElemOp.SUB:
        return a - b
    return a * b


def elem_norm(e: FieldElement) -> Fraction:
    f = e.field
    return e.u * e.u + f.trace_omega * e.u * e.v + f.norm_omega * e.v * e.v


def elem_inverse(e: FieldElement) -> FieldElement:
    n = elem_norm(e)
    if n == 0:
        raise ZeroDivisionError("zero has no inverse")
    c = e.conj()
    return FieldElement(e.field, c.u / n, c.v / n)


def embed(e: FieldElement) -> PlanePoint:
    if e.field.half:
        half_v = e.v / 2
        return PlanePoint(e.u + half_v, half_v, e.field.D)
    return PlanePoint(e.u, e.v, e.field.D)


def from_plane(field: QuadField, z: PlanePoint) -> FieldElement:
    """Inverse of embed."""
    if field.half:
        v = 2 * z.q
        return FieldElement(field, z.p - z.q, v)
    return FieldElement(field, z.p, z.q)


def units(field: QuadField) -> List[FieldElement]:
    """The roots of unity of O_K, starting with 1 and -1."""
    one, w = field.one, field.omega
    if field.D == 1:
        return [one, -one, w, -w]
    if field.D == 3:
        # w = (1+sqrt(-3))/2 is a primitive sixth root of unity
        w2 = w * w
        return [one, -one, w, -w, w2, -w2]
    return [one, -one]
