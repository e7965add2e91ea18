"""Irreducible components of the jet schemes through the singular locus.

For a lattice vector ``nu`` (the contact orders of an m-jet with the two
coordinate hyperplanes) we compute the thresholds

    l_i(nu) = e_{i-1} <nu, gamma_i>,   l_0 = 0,   l_{g+1} = infinity,

the stage indices i(nu), c(nu), m(nu), classify ``nu`` at level m as a
hyperplane or lattice vector, and reduce the candidate set by the product
order and by the finer order coming from the regular fans.  The result,
``component_set(data, m)``, indexes the irreducible components.
"""

from collections import OrderedDict, deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import floor, inf, lcm

import numpy as np

from .errors import EmptyComponent
from .surface import SingularLocus, pairing


class Kind(Enum):
    Hyperplane = "H"
    LatticeEq = "L="
    LatticeLess = "L<"
    Empty = "Empty"
    OutsideSingularFan = "Outside"

    @property
    def alive(self):
        return self in (Kind.Hyperplane, Kind.LatticeEq, Kind.LatticeLess)


@dataclass(frozen=True)
class NuProfile:
    nu: tuple
    l: tuple        # l_0, ..., l_g, l_{g+1} = inf
    in_n: tuple     # membership in N_0, ..., N_g
    i_nu: int
    c_nu: int
    m_nu: int

    def k(self, i, e):
        """(l_{i+1} - l_i) / e_i."""
        return (self.l[i + 1] - self.l[i]) / e[i]


@dataclass(frozen=True)
class Component:
    m: int
    nu: tuple
    kind: Kind
    j: int
    jprime: int
    codim: int
    embdim: int
    linear_gens: tuple   # (nu_1, nu_2, number of z hyperplanes)

    @property
    def dim(self):
        return 3 * (self.m + 1) - self.codim

    def as_dict(self):
        return {
            "nu": list(self.nu),
            "kind": self.kind.value,
            "j": self.j,
            "jprime": self.jprime,
            "codim": self.codim,
            "embdim": self.embdim,
            "dim": self.dim,
        }


class _Cache:
    # levels are large at high m; keep only the most recent ones
    max_levels = 16

    def __init__(self):
        self.profiles = {}
        self.levels = OrderedDict()
        self.grid = None


def _cache(data):
    # the datum is immutable, so memo tables can ride along with it
    try:
        return data.__dict__["_qojets_cache"]
    except KeyError:
        c = _Cache()
        data.__dict__["_qojets_cache"] = c
        return c


def profile(data, nu):
    nu = (int(nu[0]), int(nu[1]))
    memo = _cache(data).profiles
    if nu in memo:
        return memo[nu]
    g, e, n = data.g, data.e, data.n
    w = [pairing(nu, data.gamma_at(i)) for i in range(g + 1)]
    l = tuple([Fraction(0)] + [e[i - 1] * w[i] for i in range(1, g + 1)] + [inf])
    in_n = [True]
    for i in range(1, g + 1):
        in_n.append(in_n[-1] and w[i].denominator == 1)
    i_nu = g + 1 if in_n[g] else next(i for i in range(1, g + 1) if not in_n[i])
    c_nu = max(i for i in range(g + 1) if w[i] == 0)
    m_nu = g
    for i in range(1, g):
        if n[i - 1] * w[i] < w[i + 1]:
            m_nu = i
            break
    p = NuProfile(nu, l, tuple(in_n), i_nu, c_nu, m_nu)
    memo[nu] = p
    return p


def is_empty_at(data, nu, m):
    p = profile(data, nu)
    return p.i_nu <= data.g and m >= p.l[p.i_nu]


def j_indices(data, nu, m):
    """The stage indices (j(m, nu), j'(m, nu))."""
    p = profile(data, nu)
    if is_empty_at(data, nu, m):
        raise EmptyComponent(f"nu={nu} gives no component at m={m}")
    l, e, g = p.l, data.e, data.g
    top = min(p.i_nu - 1, g)
    j = max(k for k in range(top + 1) if l[k] <= m)
    jp = 0
    for k in range(j, -1, -1):
        if l[k] + e[k] <= m:
            jp = k
            break
    # the defining double inequalities
    assert l[j] <= m < l[j + 1], (nu, m, "j")
    upper = l[jp + 1] + e[jp + 1] if jp + 1 <= g else inf
    assert m < upper, (nu, m, "j'")
    return j, jp


def classify(data, nu, m):
    if not data.in_sigma_sing(nu):
        return Kind.OutsideSingularFan
    p = profile(data, nu)
    lm = p.l[p.m_nu]
    if lm >= m + 1:
        return Kind.Hyperplane
    if not p.in_n[1] or is_empty_at(data, nu, m):
        return Kind.Empty
    li = p.l[p.i_nu]
    if m < min(lm + data.e[p.m_nu], li):
        return Kind.LatticeEq
    return Kind.LatticeLess


def coordinate_generator_count(data, nu, m, kind=None):
    """Number of pure coordinate generators x_1^(k), x_2^(k), z^(k).

    This is the quantity subtracted from 3(m+1) to get the embedding
    dimension.
    """
    kind = kind or classify(data, nu, m)
    if kind is Kind.Hyperplane:
        zc = m // data.degree + 1
    elif kind.alive:
        p = profile(data, nu)
        zc = int(pairing(nu, data.gamma[0])) if p.c_nu == 0 else 0
    else:
        raise EmptyComponent(f"nu={nu} gives no component at m={m}")
    return nu[0], nu[1], zc


def codim_embdim(data, nu, m):
    kind = classify(data, nu, m)
    if not kind.alive:
        raise EmptyComponent(f"nu={nu} gives no component at m={m}")
    return _codim(data, nu, m), 3 * (m + 1) - sum(coordinate_generator_count(data, nu, m, kind))


def _codim(data, nu, m):
    j, _ = j_indices(data, nu, m)
    p = profile(data, nu)
    e = data.e
    total = nu[0] + nu[1]
    for k in range(j):
        total += p.k(k, e)
    total += floor((m - p.l[j]) / e[j]) + 1
    if Fraction(total).denominator != 1:
        raise AssertionError("non integral codimension")
    return int(total)


def component(data, nu, m):
    nu = (int(nu[0]), int(nu[1]))
    kind = classify(data, nu, m)
    if not kind.alive:
        raise EmptyComponent(f"nu={nu} gives no component at m={m}")
    j, jp = j_indices(data, nu, m)
    gens = coordinate_generator_count(data, nu, m, kind)
    return Component(
        m=m,
        nu=nu,
        kind=kind,
        j=j,
        jprime=jp,
        codim=_codim(data, nu, m),
        embdim=3 * (m + 1) - sum(gens),
        linear_gens=gens,
    )


_KIND_CODES = (Kind.OutsideSingularFan, Kind.Empty, Kind.Hyperplane,
               Kind.LatticeEq, Kind.LatticeLess)
_OUT, _EMPTY, _H, _LEQ, _LLESS = range(5)


class _Grid:
    """Profiles of every nu in the box ``[0, size)^2`` as integer arrays.

    All thresholds are multiplied by the common denominator ``D`` of the
    generators so that comparisons stay exact in int64.
    """

    def __init__(self, data, size):
        g, n, e = data.g, data.n, data.e
        D = lcm(*(x.denominator for v in data.gamma for x in v))
        a, b = np.meshgrid(np.arange(size, dtype=np.int64),
                           np.arange(size, dtype=np.int64), indexing="ij")
        # D * <nu, gamma_i>, i = 0..g
        w = [np.zeros_like(a)]
        for v in data.gamma:
            w.append(a * int(v[0] * D) + b * int(v[1] * D))
        big = np.iinfo(np.int64).max // 4
        L = [np.zeros_like(a)] + [e[i - 1] * w[i] for i in range(1, g + 1)]
        L.append(np.full_like(a, big))
        self.D, self.size, self.big = D, size, big
        self.L = np.stack(L)                       # (g+2, size, size)
        in_n = [np.ones(a.shape, dtype=bool)]
        for i in range(1, g + 1):
            in_n.append(in_n[-1] & (w[i] % D == 0))
        self.in_n1 = in_n[1] if g >= 1 else in_n[0]
        i_nu = np.full(a.shape, g + 1, dtype=np.int64)
        for i in range(g, 0, -1):
            i_nu[~in_n[i]] = i
        self.i_nu = i_nu
        m_nu = np.full(a.shape, g, dtype=np.int64)
        for i in range(g - 1, 0, -1):
            m_nu[n[i - 1] * w[i] < w[i + 1]] = i
        self.m_nu = m_nu
        loc = data.singular_locus
        if loc is SingularLocus.Z12:
            self.sing = (a > 0) & (b > 0)
        elif loc is SingularLocus.Z1:
            self.sing = a > 0
        else:
            self.sing = (a > 0) | (b > 0)
        self.e = np.array(list(e) + [1], dtype=np.int64)
        self.g = g

    def take(self, arr, idx):
        return np.take_along_axis(arr, idx[None], axis=0)[0]


def _grid(data, size):
    c = _cache(data)
    grid = c.grid
    if grid is None or grid.size < size:
        grid = _Grid(data, max(size, 2 * (grid.size if grid else 0)))
        c.grid = grid
    return grid


class Level:
    """Classification of the box ``[0, m]^2`` at a fixed level."""

    def __init__(self, data, m):
        self.data = data
        self.m = m
        size = m + 1
        grid = _grid(data, size)
        sl = (slice(None), slice(0, size), slice(0, size))
        L = grid.L[sl]
        D, g = grid.D, grid.g
        i_nu = grid.i_nu[:size, :size]
        m_nu = grid.m_nu[:size, :size]
        Dm = D * m
        l_m = grid.take(L, m_nu)
        l_i = grid.take(L, i_nu)
        e_m = grid.e[m_nu] * D
        codes = np.full((size, size), _LLESS, dtype=np.int8)
        codes[Dm < np.minimum(l_m + e_m, l_i)] = _LEQ
        empty = ~grid.in_n1[:size, :size] | ((i_nu <= g) & (Dm >= l_i))
        codes[empty] = _EMPTY
        codes[l_m >= D * (m + 1)] = _H
        codes[~grid.sing[:size, :size]] = _OUT
        self.codes = codes
        # j: largest k <= min(i_nu - 1, g) with l_k <= m
        top = np.minimum(i_nu - 1, g)
        ks = np.arange(g + 2)[:, None, None]
        ok = (L <= Dm) & (ks <= top[None])
        j = (g + 1) - np.argmax(ok[::-1], axis=0)
        j = np.where(ok.any(axis=0), j, 0)
        okp = (L + grid.e[:, None, None] * D <= Dm) & (ks <= j[None])
        jp = (g + 1) - np.argmax(okp[::-1], axis=0)
        self.j = j.astype(np.int8)
        self.jp_arr = np.where(okp.any(axis=0), jp, 0).astype(np.int8)

    @property
    def kinds(self):
        return {(a, b): _KIND_CODES[c] for (a, b), c in np.ndenumerate(self.codes)}

    def kind(self, nu):
        if 0 <= nu[0] <= self.m and 0 <= nu[1] <= self.m:
            return _KIND_CODES[self.codes[nu]]
        return classify(self.data, nu, self.m)

    def jp(self, nu):
        if 0 <= nu[0] <= self.m and 0 <= nu[1] <= self.m:
            return int(self.jp_arr[nu])
        return j_indices(self.data, nu, self.m)[1]

    def related(self, nu, nup):
        """One step of the containment relation C^{nup} in C^{nu}."""
        if nu == nup:
            return True
        if not (nu[0] <= nup[0] and nu[1] <= nup[1]):
            return False
        eq = (Kind.Hyperplane, Kind.LatticeEq)
        if self.kind(nu) in eq and self.kind(nup) in eq:
            return True
        d = (nup[0] - nu[0], nup[1] - nu[1])
        return self.data.reg_fan(self.jp(nu)).contains(d)

    @cached_property
    def minimal(self):
        """The set F_m, sorted."""
        codes = self.codes
        hl = (codes == _H) | (codes == _LEQ)
        # product order minima of H and L=: lowest entry per column, kept
        # only if it is strictly below every column to its left
        size = self.m + 1
        colmin = np.where(hl.any(axis=1), np.argmax(hl, axis=1), size)
        left = np.minimum.accumulate(np.concatenate([[size + 1], colmin[:-1]]))
        pmin = np.zeros_like(hl)
        cols = np.nonzero((colmin < size) & (left > colmin))[0]
        pmin[cols, colmin[cols]] = True
        pool = pmin | (codes == _LLESS)
        fans = [self.data.reg_fan(k) for k in range(self.data.g + 1)]
        col_ok = np.array([f.contains((0, 1)) for f in fans])[self.jp_arr]
        row_ok = np.array([f.contains((1, 0)) for f in fans])[self.jp_arr]
        # a pool member dominates everything above it in its column (resp.
        # to its right in its row) when its fan contains that direction
        dom_c = pool & col_ok
        dom_r = pool & row_ok
        below = np.zeros_like(pool)
        below[:, 1:] = np.logical_or.accumulate(dom_c, axis=1)[:, :-1]
        leftof = np.zeros_like(pool)
        leftof[1:, :] = np.logical_or.accumulate(dom_r, axis=0)[:-1, :]
        keep = pool & ~below & ~leftof
        return tuple((int(a), int(b)) for a, b in zip(*np.nonzero(keep)))

    def contains(self, nu, nup):
        """C_m^{nup} inside C_m^{nu}, closed under chaining."""
        if not (nu[0] <= nup[0] and nu[1] <= nup[1]):
            return False
        if not (self.kind(nu).alive and self.kind(nup).alive):
            return False
        if self.related(nu, nup):
            return True
        seen = {nu}
        queue = deque([nu])
        while queue:
            u = queue.popleft()
            for a in range(u[0], nup[0] + 1):
                for b in range(u[1], nup[1] + 1):
                    v = (a, b)
                    if v in seen or not self.kind(v).alive:
                        continue
                    if self.related(u, v):
                        if v == nup:
                            return True
                        seen.add(v)
                        queue.append(v)
        return False


def level(data, m):
    c = _cache(data)
    memo = c.levels
    if m in memo:
        memo.move_to_end(m)
        return memo[m]
    lev = memo[m] = Level(data, m)
    while len(memo) > c.max_levels:
        memo.popitem(last=False)
    return lev


def component_set(data, m):
    """The components of the m-jets through the singular locus."""
    if m < 1:
        raise ValueError("level must be >= 1")
    return [component(data, nu, m) for nu in level(data, m).minimal]


def contains(data, nu, nup, m):
    nu = (int(nu[0]), int(nu[1]))
    nup = (int(nup[0]), int(nup[1]))
    return level(data, m).contains(nu, nup)
