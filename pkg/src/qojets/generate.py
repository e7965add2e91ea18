"""Random valid characteristic data, for property tests and the random suite."""

from fractions import Fraction

import numpy as np

from .errors import InvalidSurface
from .surface import surface_from_lambda


def _small_rational(rng, max_den, max_step, allow_zero):
    den = int(rng.integers(1, max_den + 1))
    lo = 0 if allow_zero else 1
    return Fraction(int(rng.integers(lo, max_step * den + 1)), den)


def random_surface(rng, max_g=3, max_den=6, max_step=2, max_degree=None, tries=1000):
    """Rejection sample a valid datum with ``g <= max_g``.

    Every exponent has denominators at most ``max_den`` and each step
    ``lambda_j - lambda_{j-1}`` has entries at most ``max_step``.  ``rng`` is a
    numpy Generator or an integer seed.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    for _ in range(tries):
        g = int(rng.integers(1, max_g + 1))
        lam = []
        prev = (Fraction(0), Fraction(0))
        for j in range(g):
            step = (_small_rational(rng, max_den, max_step, j > 0),
                    _small_rational(rng, max_den, max_step, True))
            if rng.random() < 0.3:
                step = (step[0], Fraction(0))
            cur = (prev[0] + step[0], prev[1] + step[1])
            if max(cur[0].denominator, cur[1].denominator) > max_den:
                break
            lam.append(cur)
            prev = cur
        if len(lam) != g:
            continue
        try:
            data = surface_from_lambda(lam)
        except InvalidSurface:
            continue
        if max_degree is not None and data.degree > max_degree:
            continue
        return data
    raise RuntimeError("no valid datum found")


def random_surfaces(count, seed=0, **kw):
    rng = np.random.default_rng(seed)
    out, seen = [], set()
    while len(out) < count:
        data = random_surface(rng, **kw)
        if data.key() not in seen:
            seen.add(data.key())
            out.append(data)
    return out
