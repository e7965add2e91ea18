"""Rank two lattices in Q^2 kept in row Hermite normal form.

A full rank lattice L in Q^2 has a unique basis

    (a, b)
    (0, d)        a > 0, d > 0, 0 <= b < d,

which is what :func:`hermite_basis` returns.  Everything is exact.
"""

from fractions import Fraction
from math import gcd, lcm


def _ext_gcd(a, b):
    # returns (g, s, t) with s*a + t*b = g >= 0
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def integer_hermite(rows):
    """Row Hermite form of the Z-span of integer row vectors in Z^2.

    Raises ValueError if the rows do not span a rank two lattice.
    """
    rows = [(int(r[0]), int(r[1])) for r in rows]
    a, b = 0, 0
    rest = []
    # fold the first column into a single pivot row
    for x, y in rows:
        if x == 0:
            rest.append(y)
            continue
        if a == 0:
            a, b = x, y
            continue
        g, s, t = _ext_gcd(a, x)
        # (a,b),(x,y) -> (g, s b + t y), (0, (a y - x b)/g)
        rest.append((a * y - x * b) // g)
        a, b = g, s * b + t * y
    d = 0
    for y in rest:
        d = gcd(d, y)
    if a == 0 or d == 0:
        raise ValueError("rows do not span a rank two lattice")
    if a < 0:
        a, b = -a, -b
    d = abs(d)
    b %= d
    return ((a, b), (0, d))


class Lattice2:
    """Full rank lattice in Q^2 given by its row Hermite basis."""

    __slots__ = ("basis",)

    def __init__(self, basis):
        (a, b), (c, d) = basis
        self.basis = ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))

    @classmethod
    def standard(cls):
        return cls(((1, 0), (0, 1)))

    @classmethod
    def span(cls, vectors):
        vectors = [(Fraction(v[0]), Fraction(v[1])) for v in vectors]
        den = 1
        for v in vectors:
            den = lcm(den, v[0].denominator, v[1].denominator)
        ints = [(int(v[0] * den), int(v[1] * den)) for v in vectors]
        (a, b), (_, d) = integer_hermite(ints)
        return cls(((Fraction(a, den), Fraction(b, den)), (0, Fraction(d, den))))

    def extend(self, v):
        """The lattice spanned by ``self`` and the vector ``v``."""
        return Lattice2.span([self.basis[0], self.basis[1], v])

    def covolume(self):
        return self.basis[0][0] * self.basis[1][1]

    def coordinates(self, v):
        (a, b), (_, d) = self.basis
        c1 = Fraction(v[0]) / a
        c2 = (Fraction(v[1]) - c1 * b) / d
        return c1, c2

    def __contains__(self, v):
        c1, c2 = self.coordinates(v)
        return c1.denominator == 1 and c2.denominator == 1

    def index_in(self, other):
        """[other : self] for a sublattice ``self`` of ``other``."""
        q = self.covolume() / other.covolume()
        if q.denominator != 1:
            raise ValueError("not a sublattice")
        return int(q)

    def __eq__(self, other):
        return isinstance(other, Lattice2) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        (a, b), (c, d) = self.basis
        return f"Lattice2(({a}, {b}), ({c}, {d}))"
