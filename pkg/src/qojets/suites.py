"""Named surfaces and the batches of oracle checks run by ``qojets verify``."""

from fractions import Fraction as F

from .components import component_set
from .errors import SolveFailed
from .generate import random_surfaces
from .oracle import verify_component
from .surface import surface_from_gamma, surface_from_lambda


def cusp_surface():
    """z^3 - x1^3 x2^2."""
    return surface_from_lambda([(1, F(2, 3))], name="z^3-x1^3x2^2")


def three_two_surface():
    """(z^2 - x1^3)^3 - x1^10 x2^4."""
    return surface_from_gamma([(F(3, 2), 0), (F(10, 3), F(4, 3))],
                              name="(z^2-x1^3)^3-x1^10x2^4")


def degree_eight_surface():
    """((z^2 - x1^3)^2 - x1^7 x2^3)^2 - x1^11 x2^5 (z^2 - x1^3)."""
    return surface_from_lambda([(F(3, 2), 0), (2, F(3, 2)), (F(9, 4), F(7, 4))],
                               name="degree-8 three-pair surface")


def worked_cases(max_m=None):
    """(data, nu, m) triples with known component structure."""
    cases = []
    cusp = cusp_surface()
    for m in (1, 2, 3):
        cases += [(cusp, c.nu, m) for c in component_set(cusp, m)]
    cases.append((three_two_surface(), (0, 1), 3))
    s8 = degree_eight_surface()
    for nu, m in [((0, 2), 12), ((0, 3), 13), ((0, 4), 26), ((0, 5), 26),
                  ((2, 0), 28), ((3, 0), 28)]:
        cases.append((s8, nu, m))
    if max_m is not None:
        cases = [c for c in cases if c[2] <= max_m]
    return cases


def random_cases(count=10, seed=0, max_m=15, components=None):
    components = components or component_set
    cases = []
    for data in random_surfaces(count, seed=seed):
        for m in range(1, max_m + 1):
            cases += [(data, c.nu, m) for c in components(data, m)]
    return cases


def surface_cases(data, max_m, components=None):
    components = components or component_set
    return [(data, c.nu, m) for m in range(1, max_m + 1) for c in components(data, m)]


def run_checks(cases, trials=3, seed=0, tol=1e-9):
    """One JSON ready record per case, and whether all of them passed."""
    records = []
    ok = True
    for data, nu, m in cases:
        rec = {"surface": data.key(), "name": data.name}
        try:
            rep = verify_component(data, nu, m, trials=trials, tol=tol, seed=seed)
            rec.update(rep.as_dict())
        except SolveFailed as exc:
            rec.update({"nu": list(nu), "m": m, "passed": False, "error": exc.line()})
        ok = ok and rec["passed"]
        records.append(rec)
    return records, ok
