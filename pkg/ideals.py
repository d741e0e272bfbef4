# ideals.py
"""
Fractional ideals of an imaginary quadratic order O_K = Z[w].

Every nonzero fractional ideal is stored as

    scale * (a*Z + (b + w)*Z),   scale > 0 rational, a >= 1, 0 <= b < a,

where a divides Nm(b + w). That normal form is unique, so ideals compare and
hash by their fields. The set E of the Euclidean-ideal theory (fractional
ideals containing O_K) is exactly {I : 1 in I}.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, isqrt, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from gmpy2 import gcdext
from sympy import Poly, isprime, symbols

from errors import FieldMismatch, NotPrime, NotSubmodule, ZeroIdeal
from forms import BinaryQF, reduced_forms
from quadfield import FieldElement, QuadField, Rational

_X = symbols("x")


@dataclass(frozen=True)
class FracIdeal:
    field: QuadField
    scale: Fraction
    a: int
    b: int

    def basis(self) -> Tuple[FieldElement, FieldElement]:
        """Z-basis (scale*a, scale*(b + w))."""
        f = self.field
        return (
            f.element(self.scale * self.a, 0),
            f.element(self.scale * self.b, self.scale),
        )

    def scaled(self, k: Rational) -> "FracIdeal":
        k = abs(Fraction(k))
        if k == 0:
            raise ZeroIdeal("scaling an ideal by zero")
        return FracIdeal(self.field, self.scale * k, self.a, self.b)

    def is_integral(self) -> bool:
        return self.scale.denominator == 1

    def key(self):
        return (self.scale, self.a, self.b)

    def __str__(self) -> str:
        return f"{self.scale}*({self.a}, {self.b}+w)"


def unit_ideal(field: QuadField) -> FracIdeal:
    return FracIdeal(field, Fraction(1), 1, 0)


def _module_from_zgens(field: QuadField, gens: Iterable[FieldElement]) -> FracIdeal:
    """
    Normal form of the Z-module spanned by gens, which must already be an
    O_K-module. Works on the integer matrix of (u, v) coordinates.
    """
    gens = list(gens)
    den = reduce(lcm, (x.denominator for g in gens for x in (g.u, g.v)), 1)

    pivot: Optional[Tuple[int, int]] = None  # (u0, g) with g > 0
    modulus = 0  # generator of the module's intersection with Z
    for g in gens:
        u, v = int(g.u * den), int(g.v * den)
        if v == 0:
            modulus = gcd(modulus, u)
            continue
        if pivot is None:
            pivot = (u, v) if v > 0 else (-u, -v)
            continue
        u1, v1 = pivot
        d, s, t = (int(x) for x in gcdext(v1, v))
        # kernel vector (v/d)*pivot - (v1/d)*(u, v) has zero w-coordinate
        modulus = gcd(modulus, (v // d) * u1 - (v1 // d) * u)
        pivot = (s * u1 + t * u, d)
        if pivot[1] < 0:
            pivot = (-pivot[0], -pivot[1])

    if pivot is None or modulus == 0:
        raise ZeroIdeal("generators span no full-rank module")

    u0, g = pivot
    if modulus % g or u0 % g:
        raise ValueError("generators do not span an O_K-module")
    a = modulus // g
    b = (u0 // g) % a
    return FracIdeal(field, Fraction(g, den), a, b)


def ideal_from_generators(field: QuadField, gens: Sequence[FieldElement]) -> FracIdeal:
    gens = list(gens)
    if not gens or all(g.is_zero() for g in gens):
        raise ZeroIdeal("all generators are zero")
    for g in gens:
        if g.field != field:
            raise FieldMismatch(f"generator {g} is not in {field}")
    w = field.omega
    zgens = [x for g in gens for x in (g, g * w)]
    return _module_from_zgens(field, zgens)


def principal_ideal(g: FieldElement) -> FracIdeal:
    return ideal_from_generators(g.field, [g])


def ideal_norm(I: FracIdeal) -> Fraction:
    return I.scale * I.scale * I.a


def ideal_product(I: FracIdeal, J: FracIdeal) -> FracIdeal:
    if I.field != J.field:
        raise FieldMismatch(f"cannot multiply ideals of {I.field} and {J.field}")
    f = I.field
    p1 = (f.element(I.a), f.element(I.b, 1))
    p2 = (f.element(J.a), f.element(J.b, 1))
    prim = _module_from_zgens(f, [x * y for x in p1 for y in p2])
    return prim.scaled(I.scale * J.scale)


def ideal_times_element(I: FracIdeal, g: FieldElement) -> FracIdeal:
    """The ideal g*I."""
    if g.is_zero():
        raise ZeroIdeal("multiplying an ideal by zero")
    return _module_from_zgens(I.field, [g * x for x in I.basis()])


def ideal_conjugate(I: FracIdeal) -> FracIdeal:
    f = I.field
    prim = _module_from_zgens(f, [f.element(I.a), f.element(I.b, 1).conj()])
    return prim.scaled(I.scale)


def ideal_inverse(I: FracIdeal) -> FracIdeal:
    # P * conj(P) = (a) for the primitive part P of norm a
    return ideal_conjugate(I).scaled(Fraction(1) / (I.scale * I.scale * I.a))


def ideal_power(I: FracIdeal, n: int) -> FracIdeal:
    base = I if n >= 0 else ideal_inverse(I)
    result = unit_ideal(I.field)
    for _ in range(abs(n)):
        result = ideal_product(result, base)
    return result


def _coords(I: FracIdeal, e: FieldElement) -> Tuple[Fraction, Fraction]:
    """Coordinates (x, y) of e in the basis (scale*a, scale*(b + w))."""
    y = e.v / I.scale
    x = (e.u / I.scale - I.b * y) / I.a
    return x, y


def ideal_contains(I: FracIdeal, e: FieldElement) -> bool:
    if e.field != I.field:
        raise FieldMismatch(f"{e} is not in {I.field}")
    x, y = _coords(I, e)
    return x.denominator == 1 and y.denominator == 1


def ideal_subset(C: FracIdeal, I: FracIdeal) -> bool:
    return all(ideal_contains(I, e) for e in C.basis())


def in_E(I: FracIdeal) -> bool:
    return ideal_contains(I, I.field.one)


def inverse_norm(I: FracIdeal) -> Fraction:
    """Nm(I^{-1})."""
    return 1 / ideal_norm(I)


def quotient_reps(I: FracIdeal, C: FracIdeal) -> List[FieldElement]:
    """Coset representatives of I/C, zero coset first."""
    if not ideal_subset(C, I):
        raise NotSubmodule(f"{C} is not contained in {I}")
    c1, c2 = C.basis()
    n1, _ = _coords(I, c1)
    _, n2 = _coords(I, c2)
    n1, n2 = int(n1), int(n2)
    e1, e2 = I.basis()
    return [e1 * i + e2 * j for j in range(n2) for i in range(n1)]


def primes_above(field: QuadField, p: int) -> List[Tuple[FracIdeal, int]]:
    """
    Primes of O_K over p with their residue degrees, from the factorization of
    the minimal polynomial of w mod p. Split primes are ordered by b of the
    normal form (p, b + w), i.e. by -root mod p.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    t, n = field.trace_omega, field.norm_omega
    poly = Poly(_X**2 - t * _X + n, _X, modulus=p)
    _, factors = poly.factor_list()

    if len(factors) == 1 and factors[0][0].degree() == 2:
        return [(principal_ideal(field.element(p)), 2)]

    offsets = sorted(int(f.all_coeffs()[1]) % p for f, _ in factors)
    return [
        (ideal_from_generators(field, [field.element(p), field.element(b, 1)]), 1)
        for b in offsets
    ]


def is_principal(I: FracIdeal) -> Optional[FieldElement]:
    """
    A generator of I, or None. Searches the elements s*(U + y*w) of I with
    Nm = Nm(I), using 4*Nm(U + y*w) = (2U + t*y)^2 + |disc|*y^2.
    """
    f = I.field
    t, absdisc = f.trace_omega, -f.disc
    target = 4 * I.a
    found: List[FieldElement] = []
    y_max = isqrt(target // absdisc)
    for y in range(-y_max, y_max + 1):
        rest = target - absdisc * y * y
        r = isqrt(rest)
        if r * r != rest:
            continue
        for sr in {r, -r}:
            twice_u = sr - t * y
            if twice_u % 2:
                continue
            u = twice_u // 2
            if (u - y * I.b) % I.a:
                continue
            found.append(f.element(I.scale * u, I.scale * y))
    if not found:
        return None
    # canonical choice: largest (u, v)
    return max(found, key=lambda g: (g.u, g.v))


@lru_cache(maxsize=None)
def integral_ideals_up_to(field: QuadField, norm_bound: int) -> Tuple[FracIdeal, ...]:
    """All integral ideals c*(aZ + (b+w)Z) of norm c^2*a <= norm_bound."""
    t, n = field.trace_omega, field.norm_omega
    out: List[FracIdeal] = []
    c = 1
    while c * c <= norm_bound:
        for a in range(1, norm_bound // (c * c) + 1):
            for b in range(a):
                if (b * b + t * b + n) % a == 0:
                    out.append(FracIdeal(field, Fraction(c), a, b))
        c += 1
    out.sort(key=lambda I: (ideal_norm(I), I.key()))
    return tuple(out)


def ideal_class(I: FracIdeal) -> BinaryQF:
    f = I.field
    t, n = f.trace_omega, f.norm_omega
    b = I.b
    nm = b * b + t * b + n
    return BinaryQF(I.a, 2 * b + t, nm // I.a).reduced()


def principal_form(field: QuadField) -> BinaryQF:
    return BinaryQF.identity(field.disc)


def class_group(field: QuadField) -> List[BinaryQF]:
    return reduced_forms(field.disc)


def class_number(field: QuadField) -> int:
    return len(class_group(field))


def class_order(I: FracIdeal) -> int:
    return ideal_class(I).order()
