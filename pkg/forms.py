# forms.py
"""
Binary quadratic forms A x^2 + B xy + C y^2 of negative discriminant.

Reduced forms label ideal classes: |B| <= A <= C, with B >= 0 whenever
|B| = A or A = C. Composition follows Shanks' formulation of Gauss
composition (the same steps the Chia class-group code uses).
"""

from dataclasses import dataclass
from math import gcd, isqrt
from typing import List, Tuple

from gmpy2 import gcdext


def solve_linmod(a: int, b: int, m: int) -> Tuple[int, int]:
    """Solve a*x = b (mod m). Returns (u, v) with x = u + v*n for all n."""
    g, d, _ = gcdext(a, m)
    g, d = int(g), int(d)
    if b % g != 0:
        raise ValueError(f"{a}*x = {b} (mod {m}) has no solution")
    v = m // g
    u = (b // g) * d % v if v else 0
    return u, v


@dataclass(frozen=True)
class BinaryQF:
    A: int
    B: int
    C: int

    def __iter__(self):
        yield self.A
        yield self.B
        yield self.C

    def __str__(self) -> str:
        return f"({self.A}, {self.B}, {self.C})"

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @classmethod
    def identity(cls, disc: int) -> "BinaryQF":
        k = disc % 2
        return cls(1, k, (k * k - disc) // 4)

    def normalized(self) -> "BinaryQF":
        a, b, c = self
        if -a < b <= a:
            return self
        r = (a - b) // (2 * a)
        return BinaryQF(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced(self) -> "BinaryQF":
        f = self.normalized()
        while f.A > f.C or (f.A == f.C and f.B < 0):
            if f.A > f.C:
                f = BinaryQF(f.C, -f.B, f.A).normalized()
            else:
                f = BinaryQF(f.A, -f.B, f.C)
        return f

    def is_reduced(self) -> bool:
        a, b, c = self
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def inverse(self) -> "BinaryQF":
        return BinaryQF(self.A, -self.B, self.C).reduced()

    def compose(self, other: "BinaryQF") -> "BinaryQF":
        if self.discriminant != other.discriminant:
            raise ValueError(f"cannot compose {self} and {other}: discriminants differ")
        a1, b1, c1 = self.reduced()
        a2, b2, c2 = other.reduced()

        g = (b1 + b2) // 2
        h = (b2 - b1) // 2
        w = gcd(gcd(a1, a2), g)

        j = w
        s = a1 // w
        t = a2 // w
        u = g // w

        # k*t - l*s = h, k*u - m*s = c2, l*u - m*t = c1
        mu, nu = solve_linmod(t * u, h * u + s * c1, s * t)
        lam, _ = solve_linmod(t * nu, h - t * mu, s)
        k = mu + nu * lam
        l = (k * t - h) // s
        m = (t * u * k - h * u - s * c1) // (s * t)

        return BinaryQF(s * t, j * u - (k * t + l * s), k * l - j * m).reduced()

    def __mul__(self, other: "BinaryQF") -> "BinaryQF":
        return self.compose(other)

    def __pow__(self, n: int) -> "BinaryQF":
        base = self.reduced() if n >= 0 else self.inverse()
        n = abs(n)
        result = BinaryQF.identity(self.discriminant)
        while n > 0:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result

    def order(self) -> int:
        ident = BinaryQF.identity(self.discriminant)
        f, n = self.reduced(), 1
        while f != ident:
            f = f.compose(self)
            n += 1
        return n


def reduced_forms(disc: int) -> List[BinaryQF]:
    """All primitive reduced forms of the given negative discriminant."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    forms: List[BinaryQF] = []
    a_max = isqrt(-disc // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(BinaryQF(a, b, c))
    return forms
