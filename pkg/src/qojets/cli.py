"""Command line front end: ``qojets {analyze,components,graph,lct,verify}``.

Exit status is 0 on success, 2 for an invalid document or datum and 3 when
a verification does not pass.  Errors are reported as one ``Code: message``
line on stderr.
"""

import argparse
import json
import sys

from .cache import ComponentCache
from .errors import InvalidSurface, QojetsError, SchemaError
from .graph import Variant, build_graph, export
from .lct import lct_both, lct_closed_form, lct_mustata
from .surface import describe, parse_surface
from . import suites

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 2, 3

_TOP_KEYS = {"name", "lambda", "gamma", "options"}
_OPTION_KEYS = {"max_m", "variant", "format", "seed", "trials", "tolerance"}


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_document(text):
    """Parse a surface document; returns ``(data, options)``."""
    try:
        raw = json.loads(text)
    except ValueError as exc:
        raise SchemaError(f"not valid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(raw, dict):
        raise SchemaError("document must be an object")
    extra = set(raw) - _TOP_KEYS
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}")
    options = raw.get("options", {})
    if not isinstance(options, dict):
        raise SchemaError("'options' must be an object")
    extra = set(options) - _OPTION_KEYS
    if extra:
        raise SchemaError(f"unknown options {sorted(extra)}")
    _check_options(options)
    data = parse_surface({k: v for k, v in raw.items() if k != "options"})
    return data, options


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _check_options(opts):
    if "max_m" in opts and not (opts["max_m"] == "auto" or (_is_int(opts["max_m"]) and opts["max_m"] >= 0)):
        raise SchemaError("'max_m' must be a nonnegative integer or \"auto\"")
    for key in ("seed", "trials"):
        if key in opts and not _is_int(opts[key]):
            raise SchemaError(f"'{key}' must be an integer")
    if "trials" in opts and opts["trials"] < 1:
        raise SchemaError("'trials' must be positive")
    if "variant" in opts:
        try:
            Variant.parse(opts["variant"])
        except (ValueError, KeyError):
            raise SchemaError(f"unknown variant {opts['variant']!r}") from None
    if "format" in opts and opts["format"] not in ("json", "dot"):
        raise SchemaError("'format' must be \"json\" or \"dot\"")
    if "tolerance" in opts:
        tol = opts["tolerance"]
        if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
            raise SchemaError("'tolerance' must be a positive number")


def _max_m_arg(text):
    if text == "auto":
        return text
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer or 'auto'") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="surface document (default: stdin)")
    common.add_argument("-o", "--output", help="write the result here (default: stdout)")
    common.add_argument("--no-cache", action="store_true",
                        help="do not read or write the component cache")

    p = argparse.ArgumentParser(prog="qojets",
                                description="Jet schemes of quasi-ordinary surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common], help="invariants of the datum")

    c = sub.add_parser("components", parents=[common], help="components of the m-jets")
    c.add_argument("-m", "--max-m", type=_max_m_arg, help="jet level m")

    g = sub.add_parser("graph", parents=[common], help="leveled graph of components")
    g.add_argument("-m", "--max-m", type=_max_m_arg, help="deepest level")
    g.add_argument("--variant", choices=[v.value for v in Variant])
    g.add_argument("--format", choices=["json", "dot"])

    lc = sub.add_parser("lct", parents=[common], help="log canonical threshold")
    lc.add_argument("-m", "--max-m", type=_max_m_arg,
                    help="levels to scan for the minimum, or 'auto'")
    lc.add_argument("--method", choices=["both", "closed_form", "mustata"], default="both")

    v = sub.add_parser("verify", parents=[common], help="check predictions with the jet oracle")
    v.add_argument("--suite", choices=["paper", "random"],
                   help="built in batch instead of the input surface")
    v.add_argument("-m", "--max-m", type=_max_m_arg, help="deepest level checked")
    v.add_argument("--trials", type=int, help="sample points per component")
    v.add_argument("--seed", type=int, help="seed for sampling and for the random suite")
    v.add_argument("--count", type=int, default=10, help="surfaces in the random suite")
    v.add_argument("--tolerance", type=float, help="vanishing and rank tolerance")
    return p


def _read_input(path):
    if path is None:
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None


def _write_output(path, text):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _pick(args, opts, name, default):
    val = getattr(args, name, None)
    if val is not None:
        return val
    return opts.get(name, default)


def _need_int(value, what):
    if not _is_int(value):
        raise SchemaError(f"{what} must be an integer")
    return value


def _analyze(args, data, opts, cache):
    return dumps(describe(data)), EXIT_OK


def _components(args, data, opts, cache):
    m = _pick(args, opts, "max_m", None)
    if m is None:
        raise SchemaError("components needs a level (-m)")
    m = _need_int(m, "max_m")
    rows = [c.as_dict() for c in cache.component_set(data, m)]
    rows.sort(key=lambda r: tuple(r["nu"]))
    return dumps(rows), EXIT_OK


def _graph(args, data, opts, cache):
    m = _need_int(_pick(args, opts, "max_m", 20), "max_m")
    variant = _pick(args, opts, "variant", "gprime")
    fmt = _pick(args, opts, "format", "json")
    graph = build_graph(data, m, variant, components=cache.component_set)
    return export(graph, fmt), EXIT_OK


def _lct(args, data, opts, cache):
    m = _pick(args, opts, "max_m", "auto")
    if args.method == "closed_form":
        res = lct_closed_form(data)
    elif args.method == "mustata":
        res = lct_mustata(data, m, components=cache.component_set)
    else:
        res = lct_both(data, m, components=cache.component_set)
    return dumps(res.as_dict()), EXIT_OK


def _verify(args, data, opts, cache):
    trials = _pick(args, opts, "trials", 3)
    seed = _pick(args, opts, "seed", 0)
    tol = _pick(args, opts, "tolerance", 1e-9)
    m = _pick(args, opts, "max_m", None)
    if m == "auto":
        raise SchemaError("verify needs an integer level")
    if args.suite == "paper":
        cases = suites.worked_cases(m)
    elif args.suite == "random":
        cases = suites.random_cases(args.count, seed=seed, max_m=6 if m is None else m,
                                    components=cache.component_set)
    else:
        cases = suites.surface_cases(data, 6 if m is None else m, cache.component_set)
    records, ok = suites.run_checks(cases, trials=trials, seed=seed, tol=tol)
    report = {
        "suite": args.suite or "input",
        "checks": records,
        "total": len(records),
        "failures": sum(not r["passed"] for r in records),
        "passed": ok,
    }
    return dumps(report), EXIT_OK if ok else EXIT_FAILED


_COMMANDS = {
    "analyze": _analyze,
    "components": _components,
    "graph": _graph,
    "lct": _lct,
    "verify": _verify,
}


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify" and args.suite is not None:
            data, opts = None, {}
        else:
            data, opts = load_document(_read_input(args.input))
        cache = ComponentCache(enabled=not args.no_cache)
        text, code = _COMMANDS[args.command](args, data, opts, cache)
    except InvalidSurface as exc:
        print(exc.line(), file=sys.stderr)
        return EXIT_INVALID
    except QojetsError as exc:
        print(exc.line(), file=sys.stderr)
        return EXIT_FAILED
    _write_output(args.output, text)
    return code


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:        # argparse usage errors exit with 2
        code = exc.code
    sys.exit(code)
