"""On-disk memo of component sets.

One JSON file per (surface, level), named by a content hash of the datum.
Files are written to a temporary name and renamed into place, so a reader
never sees a partial file.  Entries are never expired: the key changes
whenever the datum does.
"""

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .components import Component, Kind, component_set

ENV_VAR = "QOJETS_CACHE_DIR"


def cache_dir():
    root = os.environ.get(ENV_VAR)
    if root:
        return Path(root)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "qojets"


def surface_hash(data):
    return hashlib.sha256(data.key().encode()).hexdigest()[:32]


def _encode(comps):
    return [
        {**c.as_dict(), "linear_gens": list(c.linear_gens)} for c in comps
    ]


def _decode(rows, m):
    return [
        Component(m=m, nu=tuple(r["nu"]), kind=Kind(r["kind"]), j=r["j"],
                  jprime=r["jprime"], codim=r["codim"], embdim=r["embdim"],
                  linear_gens=tuple(r["linear_gens"]))
        for r in rows
    ]


def _write_atomic(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class ComponentCache:
    def __init__(self, root=None, enabled=True):
        self.root = Path(root) if root is not None else cache_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def path(self, data, m):
        return self.root / surface_hash(data) / f"m{m:05d}.json"

    def component_set(self, data, m):
        if not self.enabled:
            return component_set(data, m)
        p = self.path(data, m)
        try:
            rows = json.loads(p.read_text())
        except (OSError, ValueError):
            rows = None
        if rows is not None:
            self.hits += 1
            return _decode(rows, m)
        self.misses += 1
        comps = component_set(data, m)
        try:
            _write_atomic(p, json.dumps(_encode(comps), sort_keys=True))
        except OSError:
            pass        # a read-only cache location only costs recomputation
        return comps
