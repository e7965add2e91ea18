"""Log canonical threshold of the surface in affine 3-space.

Two independent routes:

* :func:`lct_closed_form` evaluates the formula in the first (or, when the
  first exponent is ``(1/n_1, 1/n_1)``, the second) characteristic exponent;
* :func:`lct_mustata` minimizes ``Codim(X_m)/(m+1)`` over the computed
  components, where the codimension of X_m is the smaller of m+1 (the
  smooth part of a hypersurface) and the least codimension of a component
  through the singular locus.
"""

from dataclasses import dataclass
from fractions import Fraction

from .components import component_set, profile
from .errors import Inconclusive
from .surface import format_rational, nu_in_lattice


@dataclass(frozen=True)
class LctResult:
    value: Fraction
    witness_m: int
    witness_nu: tuple
    monomial_contributed: bool
    method: str = "closed_form"

    def as_dict(self):
        return {
            "value": format_rational(self.value),
            "witness_m": self.witness_m,
            "witness_nu": list(self.witness_nu) if self.witness_nu is not None else None,
            "monomial_contributed": self.monomial_contributed,
            "method": self.method,
        }


def _diagonal_start(data):
    n1 = data.n[0]
    return data.lam[0] == (Fraction(1, n1), Fraction(1, n1))


def monomial_contributed(data):
    """False exactly when g > 1 and lambda_1 = (1/n_1, 1/n_1)."""
    return not (data.g > 1 and _diagonal_start(data))


def _axis_witness(data, stage):
    # nu = (l, 0) with l minimal such that nu lies in N_stage
    l = 1
    while not nu_in_lattice(data, (l, 0), stage):
        l += 1
    nu = (l, 0)
    return nu, int(profile(data, nu).l[stage]) - 1


def lct_closed_form(data):
    lam1 = data.lam[0][0]
    contributed = monomial_contributed(data)
    if not _diagonal_start(data):
        value = (1 + lam1) / (data.e[0] * lam1)
        stage = 1
    elif data.g == 1:
        value = Fraction(1)
        stage = 1
    else:
        n1, lam2 = data.n[0], data.lam[1][0]
        value = n1 * (1 + lam2) / (data.e[1] * (n1 * (1 + lam2) - 1))
        stage = 2
    nu, m = _axis_witness(data, stage)
    return LctResult(Fraction(value), m, nu, contributed, "closed_form")


def _witness_level(data):
    stage = 2 if (_diagonal_start(data) and data.g > 1) else 1
    return _axis_witness(data, stage)[1]


def default_max_m(data):
    """Three times the threshold of the witness vector."""
    return 3 * (_witness_level(data) + 1)


def _scan(data, m_from, m_to, best, components):
    for m in range(m_from, m_to + 1):
        comps = components(data, m)
        low = min(comps, key=lambda c: (c.codim, c.nu[1], c.nu[0]))
        if low.codim < m + 1:
            ratio, nu = Fraction(low.codim, m + 1), low.nu
        else:
            ratio, nu = Fraction(1), None
        if best is None or ratio < best[0]:
            best = (ratio, m, nu)
    return best


def lct_mustata(data, m_max="auto", components=None):
    """Minimum of Codim(X_m)/(m+1) over 0 <= m <= m_max.

    With an explicit ``m_max`` the minimum must have been reached at least
    n - 1 levels before the end, otherwise :class:`Inconclusive` is raised.
    With ``m_max="auto"`` the scan starts at :func:`default_max_m` and is
    extended by n levels until the minimum has held for n more levels.
    ``components(data, m)`` supplies F_m (default: computed directly).
    """
    components = components or component_set
    n = data.degree
    # m = 0: X itself, whose singular locus has codimension >= 2
    best = (Fraction(1), 0, None)
    if m_max == "auto" or m_max is None:
        top = default_max_m(data)
        best = _scan(data, 1, top, best, components)
        while best[1] > top - n:
            best = _scan(data, top + 1, top + n, best, components)
            top += n
    else:
        m_max = int(m_max)
        best = _scan(data, 1, m_max, best, components)
        if m_max - best[1] < n - 1:
            raise Inconclusive(
                f"minimum {format_rational(best[0])} reached at m={best[1]}, "
                f"too close to m_max={m_max} to be trusted")
    value, m, nu = best
    return LctResult(value, m, nu, monomial_contributed(data), "mustata")


def lct_both(data, m_max="auto", components=None):
    """Both routes; the value is returned only when they agree."""
    closed = lct_closed_form(data)
    mus = lct_mustata(data, m_max, components)
    if closed.value != mus.value:
        raise Inconclusive(
            f"closed form {format_rational(closed.value)} differs from the "
            f"minimum {format_rational(mus.value)}")
    return LctResult(closed.value, mus.witness_m, mus.witness_nu,
                     closed.monomial_contributed, "both-agree")
