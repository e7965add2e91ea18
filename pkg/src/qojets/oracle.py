"""Independent check of the predicted components against the jet equations.

Two layers:

* exact: :func:`jet_expand` writes ``f(x1(t), x2(t), z(t))`` with
  ``v(t) = sum_k v^(k) t^k`` and returns the coefficient polynomials
  ``F^(0), ..., F^(m)``; :func:`predicted_generators` builds the generator
  list of the ideal of a component from the tower of semiroots.
* numeric: :func:`sample_point` constructs a point of a predicted component
  by solving the triangular system of generators one z coefficient at a time,
  and :func:`verify_component` checks that the point is an m-jet of the
  surface, that the semiroots have the predicted orders along it, and that
  the Jacobian of the generators has rank equal to the predicted codimension.
"""

from dataclasses import dataclass, field
from math import floor, inf, prod

import numpy as np

from .components import Kind, classify, component, j_indices, profile
from .errors import EmptyComponent, SolveFailed
from .polynomial import Polynomial, jet_var
from .series import order, tower_series
from .surface import pairing

JetPolynomial = Polynomial


# exact layer -----------------------------------------------------------

def _series_mul(a, b, m):
    out = [Polynomial() for _ in range(m + 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for k in range(m + 1 - i):
            if not b[k].is_zero():
                out[i + k] = out[i + k] + ai * b[k]
    return out


def _series_pow(s, e, m):
    result = [Polynomial.const(1)] + [Polynomial() for _ in range(m)]
    base = s
    while e:
        if e & 1:
            result = _series_mul(result, base, m)
        e >>= 1
        if e:
            base = _series_mul(base, base, m)
    return result


def jet_expand(f, m, names=("x1", "x2", "z")):
    """Coefficients F^(0..m) of t^l in f evaluated on a generic m-jet."""
    arcs = {v: [jet_var(v, k) for k in range(m + 1)] for v in names}
    powers = {}
    out = [Polynomial() for _ in range(m + 1)]
    for mono, c in f.terms.items():
        s = [Polynomial.const(c)] + [Polynomial() for _ in range(m)]
        for v, e in mono:
            key = (v, e)
            if key not in powers:
                powers[key] = _series_pow(arcs[v], e, m)
            s = _series_mul(s, powers[key], m)
        out = [a + b for a, b in zip(out, s)]
    return out


def quasi_degree(p):
    """Weighted degree under weight(v^(k)) = k, or None if not homogeneous."""
    w = p.weights(lambda v: v[1])
    if len(w) == 1:
        return w.pop()
    return None if w else -1


def reduce_mod_nu(polys, nu):
    """Set x_i^(k) = 0 for k < nu_i."""
    def vanishing(v):
        name, k = v
        return (name == "x1" and k < nu[0]) or (name == "x2" and k < nu[1])
    return [p.drop(vanishing) for p in polys]


@dataclass(frozen=True)
class GeneratorSpec:
    """One generator of the ideal of a component.

    ``kind`` is ``"x1"``/``"x2"`` for a coordinate x_i^(index), ``"z"`` for a
    coordinate z^(index), ``"f"`` for the coefficient of t^index of the
    semiroot f_stage along the jet.
    """

    kind: str
    index: int
    stage: int = 0

    def label(self):
        if self.kind == "f":
            return f"F_{self.stage}^({self.index})"
        return f"{self.kind}^({self.index})"


def generator_specs(data, nu, m):
    kind = classify(data, nu, m)
    if not kind.alive:
        raise EmptyComponent(f"nu={nu} gives no component at m={m}")
    specs = [GeneratorSpec("x1", k) for k in range(nu[0])]
    specs += [GeneratorSpec("x2", k) for k in range(nu[1])]
    if kind is Kind.Hyperplane:
        specs += [GeneratorSpec("z", k) for k in range(m // data.degree + 1)]
        return specs
    p = profile(data, nu)
    j, _ = j_indices(data, nu, m)
    e = data.e
    for i in range(p.c_nu, j + 1):
        if i < j and p.l[i] == p.l[i + 1]:
            continue
        start = p.l[i] / e[i]
        count = p.k(i, e) if i < j else floor((m - p.l[j]) / e[j]) + 1
        assert start.denominator == 1 and int(count) == count
        for k in range(int(count)):
            q = int(start) + k
            specs.append(GeneratorSpec("z", q) if i == 0 else GeneratorSpec("f", q, i))
    return specs


def predicted_generators(data, nu, m):
    """Exact generator polynomials of the ideal of C_m^nu."""
    specs = generator_specs(data, nu, m)
    coords = {(s.kind, s.index) for s in specs if s.kind != "f"}
    out = []
    expansions = {}
    for s in specs:
        if s.kind != "f":
            out.append(jet_var(s.kind, s.index))
            continue
        if s.stage not in expansions:
            top = max(t.index for t in specs if t.kind == "f" and t.stage == s.stage)
            expansions[s.stage] = jet_expand(data.tower.polys[s.stage], top)
        poly = expansions[s.stage][s.index].drop(lambda v: v in coords)
        out.append(poly)
    return out


# numeric layer ---------------------------------------------------------

@dataclass
class NumericJet:
    x1: np.ndarray
    x2: np.ndarray
    z: np.ndarray
    nu: tuple
    m: int
    tol: float = 1e-9
    notes: dict = field(default_factory=dict)

    def truncate(self, m):
        return NumericJet(self.x1[: m + 1].copy(), self.x2[: m + 1].copy(),
                          self.z[: m + 1].copy(), self.nu, m, self.tol)

    def values(self):
        """Map jet variable -> value, for evaluating exact polynomials."""
        out = {}
        for name, arr in (("x1", self.x1), ("x2", self.x2), ("z", self.z)):
            for k, v in enumerate(arr):
                out[(name, k)] = complex(v)
        return out


def _random_complex(rng, lo, hi, size=None):
    r = rng.uniform(lo, hi, size)
    th = rng.uniform(0, 2 * np.pi, size)
    return r * np.exp(1j * th)


def _stage_shift(data, nu, i):
    # generic order of df_i/dz along a jet of the component
    return sum((data.n[k - 1] - 1) * pairing(nu, data.gamma[k - 1]) for k in range(1, i + 1))


def sample_point(data, nu, m, seed=0, tol=1e-9):
    """A numeric point on the predicted component C_m^nu."""
    nu = (int(nu[0]), int(nu[1]))
    specs = generator_specs(data, nu, m)
    rng = np.random.default_rng(seed)
    size = m + 1
    xs = []
    for k in (0, 1):
        arr = np.zeros(size, dtype=complex)
        lead = (0.3, 0.5) if nu[k] == 0 else (1.0, 1.0)
        arr[nu[k]] = _random_complex(rng, *lead)
        arr[nu[k] + 1:] = _random_complex(rng, 0.0, 0.5, size - nu[k] - 1)
        xs.append(arr)
    x1, x2 = xs
    z = _random_complex(rng, 0.0, 0.5, size)

    pivots = []
    taken = set()
    for s in specs:
        if s.kind == "z":
            z[s.index] = 0
            taken.add(s.index)
        elif s.kind == "f":
            p = s.index - _stage_shift(data, nu, s.stage)
            assert p.denominator == 1
            p = int(p)
            if p in taken or not 0 <= p <= m:
                raise SolveFailed(f"pivot clash at z^({p})")
            taken.add(p)
            pivots.append((p, s))
    starts = set()
    prof = profile(data, nu)
    for i in range(1, data.g + 1):
        starts.add((i, prof.l[i] / data.e[i]))
    for p, s in sorted(pivots, key=lambda t: t[0]):
        toric = (s.stage, s.index) in starts
        z[p] = _solve_pivot(data, x1, x2, z, p, s, toric, rng, tol)
    return NumericJet(x1, x2, z, nu, m, tol)


def _solve_pivot(data, x1, x2, z, p, spec, toric, rng, tol):
    q, i = spec.index, spec.stage
    deg = prod(data.n[:i])
    npts = deg + 1
    w = np.exp(2j * np.pi * np.arange(npts) / npts)
    zz = np.tile(z[: q + 1], (npts, 1))
    zz[:, p] = w
    bx1 = np.tile(x1[: q + 1], (npts, 1))
    bx2 = np.tile(x2[: q + 1], (npts, 1))
    fs, majorants = tower_series(data.tower, bx1, bx2, zz, upto=i)
    vals = fs[i].value[:, q]
    coeffs = np.fft.fft(vals) / npts          # coefficient of s^d at index d
    # every point of the batch has |z^(p)| = 1, so each majorant row bounds
    # the polynomial in s coefficientwise
    scale = max(float(np.max(majorants[i][:, q])), 1e-300)
    big = np.nonzero(np.abs(coeffs) > 1e-12 * scale)[0]
    if big.size == 0 or big[-1] == 0:
        raise SolveFailed(f"generator {spec.label()} does not involve z^({p})")
    top = big[-1]
    poly = coeffs[: top + 1][::-1]
    if toric:
        roots = np.roots(poly)
        roots = roots[np.abs(roots) > 1e-8]
        if roots.size == 0:
            raise SolveFailed("toric equation has only the zero root")
        s = roots[rng.integers(roots.size)]
    else:
        if abs(coeffs[1]) <= 1e-12 * scale:
            raise SolveFailed(f"linear pivot of {spec.label()} vanishes")
        s = -coeffs[0] / coeffs[1]
        if top > 1:
            roots = np.roots(poly)
            s = roots[np.argmin(np.abs(roots - s))]
    return _newton(data, x1, x2, z, p, q, i, complex(s))


def _newton(data, x1, x2, z, p, q, i, s, steps=12):
    # polish on the tower itself: d [t^q] f_i / d z^(p) = [t^(q-p)] df_i/dz
    zz = z[: q + 1].copy()
    best, best_res = s, inf
    for _ in range(steps):
        zz[p] = s
        fs, majorants = tower_series(data.tower, x1[: q + 1], x2[: q + 1], zz, upto=i)
        val = fs[i].value[q]
        res = abs(val) / max(float(majorants[i][q]), 1e-300)
        if res < best_res:
            best, best_res = s, res
        der = fs[i].partials[2, q - p]
        if der == 0 or res < 1e-15:
            break
        s = s - val / der
    return best


@dataclass
class PointReport:
    seed: int
    vanishing: bool
    orders: bool
    rank: int
    residual: float
    observed_orders: list
    expected_orders: list


@dataclass
class VerificationReport:
    nu: tuple
    m: int
    codim: int
    points: list

    @property
    def vanishing(self):
        return all(p.vanishing for p in self.points)

    @property
    def orders(self):
        return all(p.orders for p in self.points)

    @property
    def rank(self):
        ranks = {p.rank for p in self.points}
        return ranks.pop() if len(ranks) == 1 else min(ranks)

    @property
    def passed(self):
        return bool(self.points) and self.vanishing and self.orders and all(
            p.rank == self.codim for p in self.points)

    def as_dict(self):
        return {
            "nu": list(self.nu),
            "m": self.m,
            "codim": self.codim,
            "rank": self.rank,
            "vanishing": self.vanishing,
            "orders": self.orders,
            "passed": self.passed,
            "max_residual": max((p.residual for p in self.points), default=None),
            "seeds": [p.seed for p in self.points],
        }


def jacobian(data, jet, specs=None):
    """Jacobian of the predicted generators at ``jet`` (rows = generators)."""
    specs = specs or generator_specs(data, jet.nu, jet.m)
    size = jet.m + 1
    fs, _ = tower_series(data.tower, jet.x1, jet.x2, jet.z)
    rows = []
    offset = {"x1": 0, "x2": size, "z": 2 * size}
    for s in specs:
        row = np.zeros(3 * size, dtype=complex)
        if s.kind != "f":
            row[offset[s.kind] + s.index] = 1.0
        else:
            part = fs[s.stage].partials
            for v in range(3):
                for k in range(s.index + 1):
                    row[v * size + k] = part[v, s.index - k]
        rows.append(row)
    return np.array(rows)


def numeric_rank(mat, tol=1e-9):
    if mat.size == 0:
        return 0
    norms = np.linalg.norm(mat, axis=1)
    norms[norms == 0] = 1.0
    sv = np.linalg.svd(mat / norms[:, None], compute_uv=False)
    return int(np.sum(sv > tol * sv[0])) if sv.size and sv[0] > 0 else 0


def expected_orders(data, nu, m):
    """Per semiroot f_k: ('eq', value) or ('gt', bound)."""
    j, _ = j_indices(data, nu, m)
    out = []
    for k in range(data.g + 1):
        if k < j:
            out.append(("eq", int(pairing(nu, data.gamma[k]))))
        else:
            out.append(("gt", m // data.e[k]))
    return out


def check_point(data, jet, codim, seed=None, specs=None):
    tol = jet.tol
    fs, majorants = tower_series(data.tower, jet.x1, jet.x2, jet.z)
    f = np.abs(fs[-1].value)
    bound = majorants[-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(bound > 0, f / np.where(bound > 0, bound, 1.0), f)
    residual = float(np.max(rel))
    vanishing = residual < tol
    exp = expected_orders(data, jet.nu, jet.m)
    observed = []
    ok = True
    for k, (how, val) in enumerate(exp):
        o = order(fs[k].value, tol, majorants[k])
        observed.append(o)
        if how == "eq":
            ok = ok and o == val
        else:
            ok = ok and o > val
    # orders of x_1, x_2 themselves
    ok = ok and order(jet.x1, tol) == jet.nu[0] and order(jet.x2, tol) == jet.nu[1]
    rank = numeric_rank(jacobian(data, jet, specs), tol)
    return PointReport(seed, vanishing, ok, rank, residual, observed,
                       [list(e) for e in exp])


def verify_component(data, nu, m, trials=3, tol=1e-9, seed=0):
    nu = (int(nu[0]), int(nu[1]))
    comp = component(data, nu, m)
    specs = generator_specs(data, nu, m)
    points = []
    attempt = 0
    while len(points) < trials:
        s = seed + attempt
        attempt += 1
        try:
            jet = sample_point(data, nu, m, seed=s, tol=tol)
        except SolveFailed:
            if attempt > 10 * trials:
                raise
            continue
        points.append(check_point(data, jet, comp.codim, seed=s, specs=specs))
    return VerificationReport(nu, m, comp.codim, points)


def generator_residuals(data, jet, polys):
    """Moduli of exact generator polynomials at a numeric jet."""
    vals = jet.values()
    return [abs(p.evaluate(vals)) if not p.is_zero() else 0.0 for p in polys]


def jet_residuals(data, jet):
    """Moduli of F^(0..m) of the defining polynomial at the jet."""
    fs, _ = tower_series(data.tower, jet.x1, jet.x2, jet.z)
    return np.abs(fs[-1].value)


def chart_point(data, m, zeros, nu=None, seed=0):
    """A random jet near the origin with the coefficients in ``zeros`` set to 0.

    ``zeros`` lists ``(name, k)`` pairs such as ``("x1", 0)``.  Nothing is
    solved for, so this only lands on the jet scheme when the vanishing
    coefficients force every jet equation; callers check the residuals.
    """
    rng = np.random.default_rng(seed)
    arrs = {name: _random_complex(rng, 0.0, 0.5, m + 1) for name in ("x1", "x2", "z")}
    for name, k in zeros:
        if k <= m:
            arrs[name][k] = 0
    return NumericJet(arrs["x1"], arrs["x2"], arrs["z"], nu, m)
