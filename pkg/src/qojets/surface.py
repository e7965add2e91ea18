"""Characteristic data of a quasi-ordinary surface and its static invariants.

The input is the list of characteristic exponents ``lambda_1 <= ... <=
lambda_g`` (or the semigroup generators ``gamma_j``).  From it we derive the
lattice chain ``M_0 = Z^2 <= M_1 <= ... <= M_g``, the indices ``n_j``, the
cofactors ``e_j``, the equisingular dimension, the integers ``g1, g2``, the
type of the singular locus, the table of regular fans and the canonical tower
of semiroots ``f_0 = z, f_1, ..., f_g = f``.

All arithmetic is exact (``fractions.Fraction``).
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import lcm

from .errors import (
    InLattice,
    LexOrderViolated,
    NonRational,
    NotIncreasing,
    NotNormalized,
    ReductionFailed,
    SchemaError,
)
from .lattice import Lattice2
from .polynomial import X1, X2, Z, Polynomial


class SingularLocus(Enum):
    Z12 = "Z12"
    Z1 = "Z1"
    Z1_and_Z2 = "Z1_and_Z2"


class RegFan(Enum):
    """Regular part of the first quadrant over a truncation of the surface."""

    Rho1Rho2 = "Rho1Rho2"
    Rho2 = "Rho2"
    OriginOnly = "OriginOnly"

    def contains(self, d):
        """Whether the lattice vector ``d`` (a nonnegative pair) lies in the fan."""
        if self is RegFan.OriginOnly:
            return d[0] == 0 and d[1] == 0
        if self is RegFan.Rho2:
            return d[0] == 0
        return d[0] == 0 or d[1] == 0


# rationals -------------------------------------------------------------

def parse_rational(x):
    """Parse ``"p/q"`` strings, integer strings and ints into a Fraction >= 0."""
    if isinstance(x, bool):
        raise NonRational(repr(x))
    if isinstance(x, int):
        q = Fraction(x)
    elif isinstance(x, Fraction):
        q = x
    elif isinstance(x, str):
        s = x.strip()
        num, sep, den = s.partition("/")
        try:
            if not _is_int_text(num) or (sep and not _is_int_text(den)):
                raise ValueError
            q = Fraction(int(num), int(den)) if sep else Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise NonRational(repr(x)) from None
    else:
        raise NonRational(repr(x))
    if q < 0:
        raise NonRational(f"negative entry {q}")
    return q


def _is_int_text(s):
    s = s.strip()
    if s[:1] in "+-":
        s = s[1:]
    return s.isdigit()


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_pair(v):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise SchemaError(f"expected a pair of rationals, got {v!r}")
    return (parse_rational(v[0]), parse_rational(v[1]))


def pairing(nu, v):
    return nu[0] * v[0] + nu[1] * v[1]


# lattice chain ---------------------------------------------------------

@dataclass(frozen=True)
class LatticeChain:
    bases: tuple   # M_0, ..., M_g as Lattice2
    n: tuple       # n_1, ..., n_g
    e: tuple       # e_0, ..., e_g

    @property
    def degree(self):
        return self.e[0]


def _order_mod(v, lattice):
    cap = lcm(Fraction(v[0]).denominator, Fraction(v[1]).denominator)
    for k in range(1, cap + 1):
        if (k * v[0], k * v[1]) in lattice:
            return k
    raise AssertionError("order exceeds denominator bound")


def lattice_indices(exponents):
    """Lattice chain spanned by ``Z^2`` and successive exponents.

    Works for the characteristic exponents and for the semigroup generators,
    which span the same chain.
    """
    bases = [Lattice2.standard()]
    n = []
    for j, v in enumerate(exponents, start=1):
        k = _order_mod(v, bases[-1])
        if k == 1:
            raise InLattice(f"exponent {j} lies in the lattice of the previous ones")
        nxt = bases[-1].extend(v)
        if bases[-1].index_in(nxt) != k:
            raise AssertionError("index and order disagree")
        bases.append(nxt)
        n.append(k)
    e = [1]
    for k in reversed(n):
        e.append(e[-1] * k)
    return LatticeChain(tuple(bases), tuple(n), tuple(reversed(e)))


def gamma_from_lambda(lam, n=None):
    lam = [tuple(map(Fraction, v)) for v in lam]
    if n is None:
        n = lattice_indices(lam).n
    gam = [lam[0]]
    for j in range(1, len(lam)):
        gam.append(tuple(n[j - 1] * gam[-1][k] + lam[j][k] - lam[j - 1][k] for k in (0, 1)))
    return gam


def lambda_from_gamma(gam, n=None):
    gam = [tuple(map(Fraction, v)) for v in gam]
    if n is None:
        n = lattice_indices(gam).n
    lam = [gam[0]]
    for j in range(1, len(gam)):
        lam.append(tuple(lam[-1][k] + gam[j][k] - n[j - 1] * gam[j - 1][k] for k in (0, 1)))
    return lam


def _validate_lambda(lam):
    for j in range(1, len(lam)):
        if lam[j][0] < lam[j - 1][0] or lam[j][1] < lam[j - 1][1]:
            raise NotIncreasing(f"exponent {j + 1} is not >= exponent {j}")
    chain = lattice_indices(lam)
    first = [v[0] for v in lam]
    second = [v[1] for v in lam]
    if first < second:
        raise LexOrderViolated("first coordinates must dominate lexicographically")
    if lam[0][1] == 0 and lam[0][0] < 1:
        raise NotNormalized(f"first exponent ({lam[0][0]}, 0) has first entry < 1")
    return chain


# the surface -----------------------------------------------------------

@dataclass(frozen=True)
class SemirootTower:
    relations: tuple   # per level j: (alpha, (r_1, ..., r_{j-1}))
    n: tuple

    @cached_property
    def polys(self):
        fs = [Z]
        for j, (alpha, r) in enumerate(self.relations, start=1):
            tail = Polynomial.monomial({"x1": alpha[0], "x2": alpha[1]})
            for i, ri in enumerate(r, start=1):
                if ri:
                    tail = tail * fs[i - 1] ** ri
            fs.append(fs[-1] ** self.n[j - 1] - tail)
        return tuple(fs)


@dataclass(frozen=True)
class CharacteristicData:
    lam: tuple
    gamma: tuple
    chain: LatticeChain
    c: int
    g1: int
    g2: int
    singular_locus: SingularLocus
    sigma_reg: tuple   # entries for j = 1..g
    name: str = None

    @property
    def g(self):
        return len(self.lam)

    @property
    def n(self):
        return self.chain.n

    @property
    def e(self):
        return self.chain.e

    @property
    def degree(self):
        return self.chain.degree

    def gamma_at(self, i):
        """gamma_i with gamma_0 = 0."""
        if i == 0:
            return (Fraction(0), Fraction(0))
        return self.gamma[i - 1]

    def reg_fan(self, j):
        if j == 0:
            return RegFan.OriginOnly
        return self.sigma_reg[j - 1]

    def in_sigma_sing(self, nu):
        if self.singular_locus is SingularLocus.Z12:
            return nu[0] > 0 and nu[1] > 0
        if self.singular_locus is SingularLocus.Z1:
            return nu[0] > 0
        return nu[0] > 0 or nu[1] > 0

    @cached_property
    def tower(self):
        return canonical_tower(self)

    def key(self):
        """Canonical text identifying the datum (used for hashing)."""
        return ";".join(f"{format_rational(a)},{format_rational(b)}" for a, b in self.gamma)


def nu_in_lattice(data, nu, j):
    """Whether ``nu`` lies in the dual lattice ``N_j``."""
    if int(nu[0]) != nu[0] or int(nu[1]) != nu[1]:
        return False
    return all(pairing(nu, data.gamma[i]).denominator == 1 for i in range(j))


def _singular_locus(lam, n, c):
    g = len(lam)
    if g == 1 and lam[0] == (Fraction(1, n[0]), Fraction(1, n[0])):
        return SingularLocus.Z12
    if c == 1:
        return SingularLocus.Z1
    if all(v[1] == 0 for v in lam[:-1]) and lam[-1][1] == Fraction(1, n[-1]):
        return SingularLocus.Z1
    return SingularLocus.Z1_and_Z2


def _g1_g2(gam, n, c):
    g = len(gam)
    if c == 1:
        return g + 1, g + 1
    g1 = 0
    while gam[g1][1] == 0:
        g1 += 1
    g2 = g1 + 1 if gam[g1][1] == Fraction(1, n[g1]) else g1
    return g1, g2


def _sigma_reg(gam, n, g2):
    table = []
    for j in range(1, len(gam) + 1):
        if j <= g2:
            special = j == 1 and gam[0] == (Fraction(1, n[0]), Fraction(1, n[0]))
            table.append(RegFan.Rho1Rho2 if special else RegFan.Rho2)
        else:
            table.append(RegFan.OriginOnly)
    return tuple(table)


def surface_from_lambda(lam, name=None):
    lam = tuple(as_pair(v) for v in lam)
    if not lam:
        raise SchemaError("empty exponent list")
    chain = _validate_lambda(lam)
    gam = tuple(tuple(v) for v in gamma_from_lambda(lam, chain.n))
    c = 1 if all(v[1] == 0 for v in lam) else 2
    g1, g2 = _g1_g2(gam, chain.n, c)
    return CharacteristicData(
        lam=lam,
        gamma=gam,
        chain=chain,
        c=c,
        g1=g1,
        g2=g2,
        singular_locus=_singular_locus(lam, chain.n, c),
        sigma_reg=_sigma_reg(gam, chain.n, g2),
        name=name,
    )


def surface_from_gamma(gam, name=None):
    gam = tuple(as_pair(v) for v in gam)
    if not gam:
        raise SchemaError("empty generator list")
    chain = lattice_indices(gam)
    lam = lambda_from_gamma(gam, chain.n)
    if any(x < 0 for v in lam for x in v):
        raise NotIncreasing("generators do not come from increasing exponents")
    data = surface_from_lambda(lam, name)
    if data.gamma != gam:
        raise AssertionError("generator round trip failed")
    return data


def parse_surface(raw):
    """Build :class:`CharacteristicData` from a decoded JSON document."""
    if not isinstance(raw, dict):
        raise SchemaError("document must be an object")
    has_l, has_g = "lambda" in raw, "gamma" in raw
    if has_l == has_g:
        raise SchemaError("exactly one of 'lambda' or 'gamma' must be given")
    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError("'name' must be a string")
    items = raw["lambda"] if has_l else raw["gamma"]
    if not isinstance(items, list) or not items:
        raise SchemaError("exponent list must be a nonempty list")
    return surface_from_lambda(items, name) if has_l else surface_from_gamma(items, name)


def canonical_tower(data):
    """Relations ``n_j gamma_j = alpha + sum r_i gamma_i`` and the semiroots."""
    relations = []
    bases = data.chain.bases
    for j in range(1, data.g + 1):
        v = tuple(data.n[j - 1] * x for x in data.gamma[j - 1])
        r = [0] * (j - 1)
        for i in range(j - 1, 0, -1):
            gi = data.gamma[i - 1]
            for k in range(data.n[i - 1]):
                w = (v[0] - k * gi[0], v[1] - k * gi[1])
                if w in bases[i - 1]:
                    r[i - 1] = k
                    v = w
                    break
            else:
                raise ReductionFailed(f"no relation for generator {j}")
        if v[0].denominator != 1 or v[1].denominator != 1:
            raise ReductionFailed(f"relation for generator {j} is not integral")
        alpha = (int(v[0]), int(v[1]))
        if alpha[0] < 0 or alpha[1] < 0:
            raise ReductionFailed(f"relation for generator {j} has negative monomial {alpha}")
        relations.append((alpha, tuple(r)))
    return SemirootTower(tuple(relations), data.n)


def describe(data):
    """JSON ready summary of the datum."""
    fmt = lambda v: [format_rational(v[0]), format_rational(v[1])]  # noqa: E731
    tower = data.tower
    return {
        "name": data.name,
        "g": data.g,
        "lambda": [fmt(v) for v in data.lam],
        "gamma": [fmt(v) for v in data.gamma],
        "n": list(data.n),
        "e": list(data.e),
        "degree": data.degree,
        "lattices": [
            [fmt(b.basis[0]), fmt(b.basis[1])] for b in data.chain.bases
        ],
        "equisingular_dimension": data.c,
        "g1": data.g1,
        "g2": data.g2,
        "singular_locus": data.singular_locus.value,
        "sigma_reg": [s.value for s in data.sigma_reg],
        "tower": [
            {"alpha": list(alpha), "r": list(r)} for alpha, r in tower.relations
        ],
        "semiroots": [repr(f) for f in tower.polys],
    }
