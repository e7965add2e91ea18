"""Leveled weighted graphs of the jet scheme components.

Level m holds one vertex per element of F_m.  Edges join a vertex at level
m + 1 to vertices at level m through which its truncation passes.  Three
variants are built:

* ``gamma``: vertices weighted by dimension, edges by containment of the
  truncated component (coordinates of nu clipped at m);
* ``egamma``: same edges, vertices also carry the embedding dimension;
* ``gprime``: as ``egamma`` but a vertex of kind L< only keeps the edge to its
  prescribed successor, so that a lattice component can be followed along a
  unique path as m grows.
"""

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .components import Kind, component_set, level, profile
from .errors import GraphTooShallow, VariantMismatch
from .surface import nu_in_lattice


class Variant(Enum):
    Gamma = "gamma"
    EGamma = "egamma"
    GammaPrime = "gprime"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        for v in cls:
            if text in (v.value, v.name):
                return v
        raise ValueError(f"unknown graph variant {text!r}")


@dataclass(frozen=True)
class Vertex:
    m: int
    nu: tuple
    dim: int
    embdim: int = None
    kind: str = None
    stable: bool = False

    @property
    def key(self):
        return (self.m, self.nu)

    @property
    def codim(self):
        return 3 * (self.m + 1) - self.dim

    @property
    def is_hyperplane(self):
        # the components cut out by coordinate hyperplanes are exactly the
        # ones whose weights satisfy e + c = 3(m+1)
        return self.embdim == self.dim

    def label(self):
        return f"{self.m}:({self.nu[0]},{self.nu[1]})"


@dataclass
class LeveledGraph:
    variant: Variant
    m_max: int
    levels: dict                      # m -> list of Vertex, sorted by nu
    edges: list                       # ((m+1, nu'), (m, nu)), sorted
    name: str = None
    _index: dict = field(default=None, repr=False, compare=False)

    def vertex(self, key):
        if self._index is None:
            self._index = {v.key: v for vs in self.levels.values() for v in vs}
        return self._index[key]

    def vertices(self):
        for m in sorted(self.levels):
            yield from self.levels[m]

    def down(self, key):
        """Targets at level m-1 of the edges leaving ``key``."""
        return [b for a, b in self.edges if a == key]

    def up(self, key):
        return [a for a, b in self.edges if b == key]

    def children(self):
        out = {}
        for a, b in self.edges:
            out.setdefault(b, []).append(a)
        return out

    def parents(self):
        out = {}
        for a, b in self.edges:
            out.setdefault(a, []).append(b)
        return out


def _clip(nu, m):
    return (min(nu[0], m), min(nu[1], m))


def _gamma_targets(data, child, m, lower):
    # vertices of F_m whose component contains the truncation of C_{m+1}^child
    lev = level(data, m)
    c = _clip(child, m)
    if not lev.kind(c).alive:
        return []
    return [b for b in lower if lev.contains(b, c)]


def _prime_successor(data, nu, m, upper):
    """Prescribed successor at level m+1 of an L< vertex, or None."""
    lev = level(data, m)
    j = int(lev.j[nu])
    if j <= data.g2:
        column = [a for a in upper if a[0] == nu[0] and a[1] >= nu[1]]
        return min(column) if column else None
    return nu if nu in upper else None


def _is_stable(data, nu, m):
    if not nu_in_lattice(data, nu, data.g):
        return False
    return m >= profile(data, nu).l[data.g]


def build_graph(data, m_max, variant="gprime", components=None):
    """The leveled graph on levels 1..m_max.

    ``components(data, m)`` supplies F_m (default: computed directly), which
    lets a caller route the component sets through a cache.
    """
    components = components or component_set
    variant = Variant.parse(variant)
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    weighted = variant is not Variant.Gamma
    levels = {}
    for m in range(1, m_max + 1):
        levels[m] = [
            Vertex(m, c.nu, c.dim, c.embdim if weighted else None, c.kind.value,
                   _is_stable(data, c.nu, m))
            for c in components(data, m)
        ]
    edges = []
    for m in range(1, m_max):
        lower = [v.nu for v in levels[m]]
        upper = [v.nu for v in levels[m + 1]]
        if variant is Variant.GammaPrime:
            lev = level(data, m)
            for b in lower:
                succ = None
                if lev.kind(b) is Kind.LatticeLess:
                    succ = _prime_successor(data, b, m, upper)
                if succ is not None:
                    edges.append(((m + 1, succ), (m, b)))
                    continue
                # no prescribed successor: fall back to the containment rule
                for a in upper:
                    if b in _gamma_targets(data, a, m, [b]):
                        edges.append(((m + 1, a), (m, b)))
        else:
            for a in upper:
                for b in _gamma_targets(data, a, m, lower):
                    edges.append(((m + 1, a), (m, b)))
    edges.sort()
    return LeveledGraph(variant, m_max, levels, edges, name=data.name)


def new_vertex_events(graph):
    """Levels where a branch on a coordinate axis starts or splits off.

    A vertex at level m >= 2 with nu on an axis is new when it has no edge
    down to level m - 1, or when its parent there has two or more children.
    """
    children = graph.children()
    parents = graph.parents()
    events = set()
    for v in graph.vertices():
        if v.m < 2 or (v.nu[0] and v.nu[1]):
            continue
        ps = parents.get(v.key, [])
        if not ps or any(len(children[p]) >= 2 for p in ps):
            events.add(v.m)
    return sorted(events)


# export ----------------------------------------------------------------

def to_json_dict(graph):
    out = {
        "variant": graph.variant.value,
        "m_max": graph.m_max,
        "name": graph.name,
        "levels": [
            {
                "m": m,
                "vertices": [
                    {"nu": list(v.nu), "dim": v.dim, "embdim": v.embdim,
                     "kind": v.kind, "stable": v.stable}
                    for v in graph.levels[m]
                ],
            }
            for m in sorted(graph.levels)
        ],
        "edges": [
            {"from": [a[0], *a[1]], "to": [b[0], *b[1]]} for a, b in graph.edges
        ],
    }
    return out


def from_json_dict(doc):
    levels = {}
    for entry in doc["levels"]:
        m = int(entry["m"])
        levels[m] = [
            Vertex(m, tuple(v["nu"]), v["dim"], v.get("embdim"), v.get("kind"),
                   bool(v.get("stable", False)))
            for v in entry["vertices"]
        ]
    edges = [((e["from"][0], tuple(e["from"][1:])), (e["to"][0], tuple(e["to"][1:])))
             for e in doc["edges"]]
    return LeveledGraph(Variant.parse(doc["variant"]), int(doc["m_max"]), levels,
                        sorted(edges), name=doc.get("name"))


def to_dot(graph):
    def q(text):
        return '"' + text + '"'

    title = graph.name or "jets"
    lines = [f"digraph {q(title)} {{", "  rankdir=TB;", "  node [shape=circle];"]
    for m in sorted(graph.levels):
        vs = graph.levels[m]
        if vs:
            lines.append("  { rank=same; " + " ".join(q(v.label()) + ";" for v in vs) + " }")
    for v in graph.vertices():
        attrs = [f"label={q(v.label())}", f"dim={v.dim}"]
        if v.embdim is not None:
            attrs.append(f"embdim={v.embdim}")
        if v.stable:
            attrs.append("stable=true")
        lines.append(f"  {q(v.label())} [{', '.join(attrs)}];")
    for a, b in graph.edges:
        lines.append(f"  {q(graph.vertex(a).label())} -> {q(graph.vertex(b).label())};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(graph, fmt="json"):
    if fmt == "json":
        return json.dumps(to_json_dict(graph), indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        return to_dot(graph)
    raise ValueError(f"unknown format {fmt!r}")


def from_json(text):
    return from_json_dict(json.loads(text))


# comparison ------------------------------------------------------------

def _refine(graphs):
    """Leveled colour refinement on the disjoint union of ``graphs``."""
    colour = {}
    for gi, gr in enumerate(graphs):
        for v in gr.vertices():
            colour[(gi, v.key)] = (v.m, v.dim, v.embdim)
    adj_up, adj_down = {}, {}
    for gi, gr in enumerate(graphs):
        for a, b in gr.edges:
            adj_down.setdefault((gi, a), []).append((gi, b))
            adj_up.setdefault((gi, b), []).append((gi, a))
    classes = len(set(colour.values()))
    while True:
        sig = {
            x: (c,
                tuple(sorted(colour[y] for y in adj_up.get(x, ()))),
                tuple(sorted(colour[y] for y in adj_down.get(x, ()))))
            for x, c in colour.items()
        }
        # relabel by sorted signatures so that colours stay small and canonical
        names = {s: i for i, s in enumerate(sorted(set(sig.values()), key=repr))}
        new = {x: (colour[x][0], names[s]) for x, s in sig.items()}
        count = len(set(new.values()))
        colour = new
        if count == classes:
            return colour
        classes = count


def graphs_equal(a, b):
    """Whether two leveled weighted graphs are isomorphic (level by level)."""
    if a.variant is not b.variant:
        raise VariantMismatch(f"cannot compare {a.variant.value} with {b.variant.value}")
    if a.m_max != b.m_max or len(a.edges) != len(b.edges):
        return False
    if any(len(a.levels.get(m, ())) != len(b.levels.get(m, ())) for m in range(1, a.m_max + 1)):
        return False
    colour = _refine([a, b])
    hist = [Counter(), Counter()]
    for (gi, _), c in colour.items():
        hist[gi][c] += 1
    return hist[0] == hist[1]


# recovering the numerical data ------------------------------------------

def _branch(graph, start):
    """Walk down from ``start``, preferring the edge that keeps nu."""
    parents = graph.parents()
    path = [graph.vertex(start)]
    key = start
    while key in parents:
        targets = sorted(parents[key])
        same = [t for t in targets if t[1] == key[1]]
        key = same[0] if same else targets[0]
        path.append(graph.vertex(key))
    return path[::-1]     # increasing m


def _read_branch(path):
    """(n or None, list of codimension periods after m_0) along one branch."""
    top = path[-1]
    nu = top.nu
    # keep the part of the branch carrying the same lattice vector
    seg = [v for v in path if v.nu == nu]
    first = seg[0].m
    seg = [v for v in seg if v.m >= first]
    if len(seg) != top.m - first + 1:
        return None, []
    m0 = None
    for prev, cur in zip(seg, seg[1:]):
        if prev.is_hyperplane and not cur.is_hyperplane:
            m0 = cur.m
    if m0 is None:
        return None, []
    codim = {v.m: v.codim for v in seg}
    steps = [m for m in range(first + 1, top.m + 1) if codim[m] == codim[m - 1] + 1]
    if any(codim[m] - codim[m - 1] not in (0, 1) for m in range(first + 1, top.m + 1)):
        return None, []
    n = None
    before = [m for m in steps if m < m0]
    if before:
        n = m0 - before[-1]
    elif m0 - 1 >= first:
        # in the hyperplane regime codim = |nu| + floor(m/n) + 1
        r = codim[m0 - 1] - nu[0] - nu[1]
        if r > 0 and m0 % r == 0:
            n = m0 // r
    after = [m for m in steps if m >= m0]
    gaps = [b - a for a, b in zip(after, after[1:])]
    periods = []
    for d in gaps:
        if not periods or periods[-1] != d:
            periods.append(d)
    # the last period must be observed at least twice to be trusted
    if len(gaps) < 2 or gaps[-1] != 1 or gaps[-2] != 1:
        return n, None
    return n, periods


def _run_periods(graph):
    """Gaps between codimension increments along runs of the graph.

    Along a run carrying a fixed lattice vector the codimension grows by one
    exactly when e_{j(m-1, nu)} divides m, so every such gap is one of the
    e_i.  Runs may also step nu by one unit along an axis, in which case the
    codimension is measured net of |nu|: that is how the chains over Z_2
    keep their period.  Branches over Z_1 can hide an e_i when two
    thresholds coincide and these runs expose it.
    """
    steps = {(0, 0), (0, 1), (1, 0)}
    down = {}
    has_up = set()
    for a, b in graph.edges:
        if (a[1][0] - b[1][0], a[1][1] - b[1][1]) in steps:
            down.setdefault(a, []).append(b)
            has_up.add(b)

    def adjusted(key):
        v = graph.vertex(key)
        return v.codim - v.nu[0] - v.nu[1]

    out = set()
    for top in down:
        if top in has_up:
            continue
        path = [top]
        while path[-1] in down:
            cands = sorted(down[path[-1]])
            same = [c for c in cands if c[1] == path[-1][1]]
            path.append(same[0] if same else cands[0])
        path.reverse()
        last = None
        for prev, cur in zip(path, path[1:]):
            d = adjusted(cur) - adjusted(prev)
            if d == 1:
                if last is not None:
                    out.add(cur[0] - last)
                last = cur[0]
            elif d != 0:
                last = None
    return out


def recovery_depth(data):
    """2 l_g((q, 0)) for the least q with (q, 0) in N_g; enough for recovery."""
    q = 1
    while not nu_in_lattice(data, (q, 0), data.g):
        q += 1
    return max(int(2 * profile(data, (q, 0)).l[data.g]), 4)


def recover_invariants(graph):
    """Read (n, n_i, e_i, g) off a deep enough Gamma' graph.

    The multiplicity is read on an infinite branch over Z_1: it is the jump
    back from the last passage from a hyperplane component to a lattice
    component.  The cofactors e_1 > ... > e_g = 1 are the periods of the
    codimension growth.
    """
    if graph.variant is not Variant.GammaPrime:
        raise VariantMismatch("invariants are read off the gprime variant")
    level1 = graph.levels.get(1, [])
    if len(level1) == 1 and level1[0].codim == 3:
        # the only case where Z_1 is not a component of the singular locus
        for v in graph.vertices():
            if not v.is_hyperplane:
                return {"n": v.m, "n_i": [v.m], "e_i": [v.m, 1], "g": 1}
        raise GraphTooShallow("no lattice component yet")
    top = graph.levels[graph.m_max]
    starts = sorted((v for v in top if v.stable and v.nu[1] == 0), key=lambda v: v.nu)
    n = None
    for v in starts:
        bn, per = _read_branch(_branch(graph, v.key))
        if per is not None and bn is not None:
            n = bn
            break
    if n is None:
        raise GraphTooShallow(f"no complete infinite branch over Z_1 up to level {graph.m_max}")
    e = sorted({n, 1} | {d for d in _run_periods(graph) if d <= n}, reverse=True)
    if any(a % b for a, b in zip(e, e[1:])):
        raise GraphTooShallow("codimension periods are not a divisor chain")
    n_i = [a // b for a, b in zip(e, e[1:])]
    return {"n": n, "n_i": n_i, "e_i": e, "g": len(n_i)}
