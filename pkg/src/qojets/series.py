"""Truncated power series in t with first order partials in (x1, x2, z).

A :class:`DualSeries` holds a ``(4, N)`` complex array: row 0 is the value
``h(t) mod t^N`` of some polynomial expression h evaluated on an arc, rows
1..3 are the series of dh/dx1, dh/dx2, dh/dz evaluated on the same arc.
The partials give the Jacobian of the jet coefficients, since

    d [t^q] h(arc) / d v^(k) = [t^(q-k)] (dh/dv)(arc).

A leading batch axis is allowed, so ``(B, 4, N)`` arrays evaluate many arcs
at once.
"""

import numpy as np


def _mul(a, b):
    # truncated Cauchy product along the last axis
    n = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    for i in range(n):
        ai = a[..., i:i + 1]
        if not np.any(ai):
            continue
        out[..., i:] += ai * b[..., : n - i]
    return out


class DualSeries:
    __slots__ = ("c",)

    def __init__(self, c):
        self.c = c

    @classmethod
    def variable(cls, coeffs, which):
        """The arc coordinate with index ``which`` (0=x1, 1=x2, 2=z)."""
        coeffs = np.asarray(coeffs, dtype=complex)
        shape = coeffs.shape[:-1] + (4, coeffs.shape[-1])
        c = np.zeros(shape, dtype=complex)
        c[..., 0, :] = coeffs
        c[..., 1 + which, 0] = 1.0
        return cls(c)

    @classmethod
    def one(cls, like):
        c = np.zeros_like(like.c)
        c[..., 0, 0] = 1.0
        return cls(c)

    @property
    def value(self):
        return self.c[..., 0, :]

    @property
    def partials(self):
        return self.c[..., 1:, :]

    def __add__(self, other):
        return DualSeries(self.c + other.c)

    def __sub__(self, other):
        return DualSeries(self.c - other.c)

    def __mul__(self, other):
        a, b = self.c, other.c
        v = _mul(a[..., 0:1, :], b[..., 0:1, :])
        d = _mul(a[..., 0:1, :], b[..., 1:, :]) + _mul(a[..., 1:, :], b[..., 0:1, :])
        return DualSeries(np.concatenate([v, d], axis=-2))

    def __pow__(self, k):
        result = DualSeries.one(self)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def _rmul(a, b):
    n = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
    for i in range(n):
        ai = a[..., i:i + 1]
        if not np.any(ai):
            continue
        out[..., i:] += ai * b[..., : n - i]
    return out


def _rpow(a, k):
    result = np.zeros_like(a)
    result[..., 0] = 1.0
    base = a
    while k:
        if k & 1:
            result = _rmul(result, base)
        k >>= 1
        if k:
            base = _rmul(base, base)
    return result


def tower_series(tower, x1, x2, z, upto=None):
    """Evaluate the semiroots f_0, ..., f_upto (default all) on the arc.

    Returns ``(values, majorants)``.  ``values[j]`` is the DualSeries of f_j.
    ``majorants[j]`` is the same recursion run on coefficient moduli with
    every subtraction turned into an addition; it bounds each coefficient of
    f_j termwise, so ``|[t^l] f_j| <= tol * majorants[j][l]`` is a rounding
    level test for vanishing.
    """
    X1 = DualSeries.variable(x1, 0)
    X2 = DualSeries.variable(x2, 1)
    Zs = DualSeries.variable(z, 2)
    a1, a2, az = (np.abs(np.asarray(v)) for v in (x1, x2, z))
    fs = [Zs]
    majorants = [az]
    pow_cache = {}

    def xpow(which, k):
        key = (which, k)
        if key not in pow_cache:
            pow_cache[key] = ((X1 if which == 0 else X2) ** k,
                              _rpow(a1 if which == 0 else a2, k))
        return pow_cache[key]

    relations = tower.relations if upto is None else tower.relations[:upto]
    for j, (alpha, r) in enumerate(relations, start=1):
        head = fs[-1] ** tower.n[j - 1]
        mhead = _rpow(majorants[-1], tower.n[j - 1])
        p1, q1 = xpow(0, alpha[0])
        p2, q2 = xpow(1, alpha[1])
        tail = p1 * p2
        mtail = _rmul(q1, q2)
        for i, ri in enumerate(r, start=1):
            if ri:
                tail = tail * fs[i - 1] ** ri
                mtail = _rmul(mtail, _rpow(majorants[i - 1], ri))
        majorants.append(mhead + mtail)
        fs.append(head - tail)
    return fs, majorants


def order(coeffs, tol, majorant=None):
    """Index of the first nonvanishing coefficient (len if none).

    A coefficient vanishes when its modulus is at most ``tol`` times the
    majorant coefficient (or ``tol`` itself when no majorant is given).
    """
    bound = tol if majorant is None else tol * np.asarray(majorant)
    big = np.nonzero(np.abs(coeffs) > bound)[0]
    return int(big[0]) if big.size else len(coeffs)
