"""Command-line front end.

    hktoolkit diagram --vertices "(2,0),(0,3)"
    hktoolkit resolve --ideal "x^2 - y^3" --mu 2
    hktoolkit suite

Every command prints one JSON document (``--json``) or a short text report.
JSON output starts with a versioned header and is byte-stable for a fixed
configuration.  Exit status: 0 success, 1 a check/criterion failed, 2 error
(the JSON body then carries the error's machine-readable code).
"""

import argparse
import ast
import json
import os
import sys
from dataclasses import dataclass, field as dc_field

from . import __version__
from .diagrams import Diagram
from .division import DivisionProblem, check_result, generalized_divide
from .errors import HKError, ParseError
from .exponents import parse_order
from .fields import QQ, parse_field
from .jacobians import JacobianProblem, check_conditions
from .series import DEFAULT_TRUNC, infer_names, parse_poly

SCHEMA = "hktoolkit/1"
U64 = 2**64


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    field: object = QQ
    trunc: int = DEFAULT_TRUNC
    seed: int = 0
    json: bool = False
    extra: dict = dc_field(default_factory=dict)


# --- input helpers -----------------------------------------------------------------

def split_list(text):
    """Split a list of polynomials on ';' or ','."""
    sep = ";" if ";" in text else ","
    return [t.strip() for t in text.split(sep) if t.strip()]


def parse_tuples(text, what="exponent list"):
    """"(2,0),(0,3)" -> [(2, 0), (0, 3)]; a single "2,0" is one tuple."""
    try:
        val = ast.literal_eval("[" + text + "]")
    except (SyntaxError, ValueError) as e:
        raise ParseError(f"bad {what}: {text!r}", column=getattr(e, "offset", 1) or 1) from None
    if val and all(isinstance(x, int) for x in val):
        val = [tuple(val)]
    out = []
    for v in val:
        v = (v,) if isinstance(v, int) else v
        if not isinstance(v, (tuple, list)) or not all(isinstance(x, int) for x in v):
            raise ParseError(f"bad {what}: {text!r}")
        out.append(tuple(v))
    return out


def parse_point(text, F):
    try:
        return tuple(F(t.strip()) for t in text.strip("() ").split(",") if t.strip())
    except HKError:
        raise
    except Exception:
        raise ParseError(f"bad point: {text!r}") from None


def names_for(texts, given=None):
    if given:
        return [t.strip() for t in given.split(",") if t.strip()]
    return infer_names(texts) or ["x"]


def polys(texts, names, cfg, n_param=0):
    return [parse_poly(t, names, cfg.field, cfg.trunc, n_param) for t in texts]


def read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# --- commands ----------------------------------------------------------------------

def cmd_diagram(cfg):
    a = cfg.args
    D = Diagram.from_exponents(parse_tuples(a.vertices))
    body = D.to_json(a.hs + 1 if a.hs is not None else None)
    text = [f"vertices: {body['vertices']}", f"HS: {body['HS']}"]
    if "A" in body:
        text.insert(1, f"A: {body['A']}")
        text.insert(2, f"d: {body['d']}")
    return body, True, "\n".join(text)


def cmd_divide(cfg):
    a = cfg.args
    params = [p.strip() for p in a.params.split(",")] if a.params else []
    divs = [t for d in a.divisor for t in split_list(d)]
    names = names_for(divs + [a.g], a.vars)
    names = [x for x in names if x not in params] + params
    fs = polys(divs, names, cfg, len(params))
    g = parse_poly(a.g, names, cfg.field, cfg.trunc, len(params))
    nm = len(names) - len(params)
    order = parse_order(a.order, nm) if a.order else None
    P = DivisionProblem.make(fs, order=order, trunc=cfg.trunc)
    res = generalized_divide(P, g, a.engine)
    ok, why = check_result(P, g, res)
    body = {
        "names": names,
        "alphas": [list(x) for x in P.alphas],
        "h": [q.to_str(names) for q in res.h],
        "r": res.r.to_str(names),
        "engine": res.engine,
        "contracts": {"passed": ok, "reason": why},
        "series": res.to_json(names),
    }
    text = [f"h{i + 1} = {q}" for i, q in enumerate(body["h"])] + [f"r = {body['r']}", f"contracts: {'ok' if ok else why}"]
    return body, ok, "\n".join(text)


def cmd_stdbasis(cfg):
    from .stdbasis import IdealPresentation, generic_coordinates, standard_basis

    a = cfg.args
    texts = split_list(a.ideal)
    names = names_for(texts, a.vars)
    gens = polys(texts, names, cfg)
    order = parse_order(a.order, len(names)) if a.order else None
    I = IdealPresentation(tuple(gens), order, cfg.trunc)
    change = None
    if a.generic:
        change, I, _ = generic_coordinates(I, seed=cfg.seed)
    rep = standard_basis(I, cfg.trunc)
    body = rep.to_json(names)
    if change is not None:
        body["coordinate_change"] = [[str(x) for x in row] for row in change]
    text = [f"diagram vertices: {body['diagram']['vertices']}"]
    text += [f"  {b['alpha']}: {b['f']}" for b in body["basis"]]
    text.append(f"HS: {body['diagram']['HS']}")
    return body, True, "\n".join(text)


def _module_from_json(text, cfg):
    from .stanley import GradedModule

    try:
        spec = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"module file is not JSON: {e.msg}", line=e.lineno, column=e.colno) from None
    rels = spec.get("relations")
    if not isinstance(rels, list) or "rank" not in spec:
        raise ParseError("module file needs 'rank' and 'relations'")
    M, names = GradedModule.from_text(int(spec["rank"]), rels, spec.get("names"), cfg.field, spec.get("gen_degrees"))
    return M, names


def cmd_stanley(cfg):
    from .stanley import GradedModule, hilbert_from_basis, stanley_decomposition

    a = cfg.args
    if a.module:
        M, names = _module_from_json(read_text(a.module), cfg)
    elif a.ideal:
        texts = split_list(a.ideal)
        names = names_for(texts, a.vars)
        M, names = GradedModule.from_text(1, [[t] for t in texts], names, cfg.field)
    else:
        raise ParseError("stanley needs --module FILE or --ideal TEXT")
    B = stanley_decomposition(M, seed=cfg.seed, bound=a.bound)
    body = B.to_json(names)
    text = [f"{e['element']} * R_{e['ring_index']} (degree {e['degree']})" for e in body["entries"]]
    text.append(f"Hilbert: {[hilbert_from_basis(B, s) for s in range(B.bound + 1)]}")
    return body, True, "\n".join(text)


def cmd_hilbert(cfg):
    from .stdbasis import IdealPresentation, hilbert_samuel_at, hs_rank_oracle

    a = cfg.args
    texts = split_list(a.ideal)
    names = names_for(texts, a.vars)
    I = IdealPresentation(tuple(polys(texts, names, cfg)))
    q = parse_point(a.point, cfg.field) if a.point else None
    H = hilbert_samuel_at(I, q, a.s_max)
    body = {"names": names, "point": [cfg.field.to_str(x) for x in (q or (0,) * len(names))], "H": H}
    ok = True
    if a.oracle:
        O = hs_rank_oracle(I, q, a.s_max)
        body["oracle"] = O
        ok = O == H
    return body, ok, f"H: {H}" + (f"\noracle agrees: {ok}" if a.oracle else "")


def cmd_jacobian(cfg):
    a = cfg.args
    texts = [t for f in a.f for t in split_list(f)]
    names = names_for(texts, a.vars)
    fs = polys(texts, names, cfg)
    alphas = parse_tuples(a.alphas)
    n = len(names)
    alphas = [tuple(x) + (0,) * (n - len(x)) for x in alphas]
    q = parse_point(a.point, cfg.field) if a.point else None
    P = JacobianProblem(tuple(fs), tuple(alphas), q)
    F = cfg.field
    if a.s_range:
        lo, _, hi = a.s_range.partition(":")
        rng = range(int(lo), int(hi or lo) + 1)
        rows = [{"s": s, "det": F.to_str(P.det(s))} for s in rng]
        first = next((r["s"] for r in rows if r["det"] == "0"), None)
    else:
        rows, first = check_conditions(P, reduced=a.reduced)
    body = {"names": names, "alphas": [list(x) for x in alphas], "table": rows, "first_failure": first}
    if a.matrices:
        mats = {}
        for r in rows:
            idx, M = P.matrix(r["s"])
            mats[str(r["s"])] = {"index": [list(b) for b in idx], "matrix": [[F.to_str(x) for x in row] for row in M]}
        body["matrices"] = mats
    text = [f"s={r['s']}{' ' + r['variant'] if 'variant' in r else ''}: det = {r['det']}" for r in rows]
    return body, first is None, "\n".join(text)


def _marked(cfg):
    from .resolution import MarkedIdeal

    a = cfg.args
    texts = split_list(a.ideal)
    names = names_for(texts, a.vars)
    E = [e.strip() for e in a.E.split(",") if e.strip()] if a.E else []
    bad = [e for e in E if e not in names]
    if bad:
        raise ParseError(f"exceptional coordinate {bad[0]!r} is not a variable")
    return MarkedIdeal.parse(";".join(texts), a.mu, names, E, cfg.field), names


def cmd_resolve(cfg):
    from .resolution import resolve_marked

    a = cfg.args
    M, names = _marked(cfg)
    T = resolve_marked(M, a.max_blowups, a.max_charts, names=names)
    body = T.to_json()
    text = f"status: {T.status}, blow-ups: {T.blowups}, charts: {len(T.charts)}\n" + T.summary()
    return body, T.status == "resolved", text


def cmd_verify(cfg):
    a = cfg.args
    if a.basis:
        from .stdbasis import check_samuel_basis

        texts = split_list(a.basis)
        names = names_for(texts, a.vars)
        fs = polys(texts, names, cfg)
        pts = [parse_point(p, cfg.field) for p in (a.points or "").split(";") if p.strip()] or [(0,) * len(names)]
        res = check_samuel_basis(fs, parse_tuples(a.alphas), pts, seed=cfg.seed)
        ok = all(r["passed"] for r in res)
        text = [f"point {r['point']}: " + ("pass" if r["passed"] else f"fails condition ({r['first_failure']})") for r in res]
        return {"names": names, "points": res}, ok, "\n".join(text)
    if not a.ideal:
        raise ParseError("verify needs --ideal (resolution) or --basis (standard basis)")
    from .resolution import resolve_marked, verify_resolution

    M, names = _marked(cfg)
    T = resolve_marked(M, a.max_blowups, a.max_charts, names=names)
    rep = verify_resolution(T, M)
    body = {"status": T.status, "blowups": T.blowups, **rep}
    text = [f"{k}: {'ok' if v else 'FAILED'}" for k, v in rep["checks"].items()]
    return body, rep["passed"] and T.status == "resolved", "\n".join(text)


def cmd_suite(cfg):
    from .suite import run_suite, table

    report, _ = run_suite(cfg.seed)
    return report, report["passed"], table(report)


COMMANDS = {
    "diagram": cmd_diagram,
    "divide": cmd_divide,
    "stdbasis": cmd_stdbasis,
    "stanley": cmd_stanley,
    "hilbert": cmd_hilbert,
    "jacobian": cmd_jacobian,
    "resolve": cmd_resolve,
    "verify": cmd_verify,
    "suite": cmd_suite,
}


# --- argument parsing --------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q or fp:<p>")
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNC, help="truncation degree D")
    common.add_argument("--seed", type=int, default=0, help="64-bit seed (HK_SEED overrides)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--vars", help="comma-separated variable names (default: inferred)")

    p = argparse.ArgumentParser(prog="hktoolkit", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"hktoolkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("diagram", parents=[common], help="staircase decompositions and HS profile")
    s.add_argument("--vertices", required=True)
    s.add_argument("--hs", type=int, help="last s of the HS profile")

    s = sub.add_parser("divide", parents=[common], help="division by a standard-basis-like family")
    s.add_argument("--divisor", action="append", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--order", help='e.g. "x1+x2; x2"')
    s.add_argument("--params", help="comma-separated parameter names")
    s.add_argument("--engine", default="auto", choices=["auto", "fixed", "graded", "batch", "single"])

    s = sub.add_parser("stdbasis", parents=[common], help="truncated standard basis")
    s.add_argument("--ideal", required=True)
    s.add_argument("--order")
    s.add_argument("--generic", action="store_true", help="seeded generic coordinate change first")

    s = sub.add_parser("stanley", parents=[common], help="Stanley decomposition of a graded module")
    s.add_argument("--module", help="JSON file: rank, relations (lists of polynomial strings)")
    s.add_argument("--ideal", help="quotient ring R/I instead of a module file")
    s.add_argument("--bound", type=int)

    s = sub.add_parser("hilbert", parents=[common], help="Hilbert-Samuel function at a point")
    s.add_argument("--ideal", required=True)
    s.add_argument("--point")
    s.add_argument("--s-max", type=int, default=8)
    s.add_argument("--oracle", action="store_true", help="compare with the rank oracle")

    s = sub.add_parser("jacobian", parents=[common], help="Jacobian determinant table")
    s.add_argument("--f", action="append", required=True)
    s.add_argument("--alphas", required=True)
    s.add_argument("--point")
    s.add_argument("--s-range", help="lo:hi")
    s.add_argument("--reduced", action="store_true")
    s.add_argument("--matrices", action="store_true")

    for name, hlp in (("resolve", "resolve a marked ideal"), ("verify", "replay a resolution or check a standard basis")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--ideal", required=(name == "resolve"))
        s.add_argument("--mu", type=int, default=None)
        s.add_argument("--E", default="", help="comma-separated exceptional coordinates")
        s.add_argument("--max-blowups", type=int, default=64)
        s.add_argument("--max-charts", type=int, default=256)
        if name == "verify":
            s.add_argument("--basis")
            s.add_argument("--alphas")
            s.add_argument("--points", help='";"-separated points')

    sub.add_parser("suite", parents=[common], help="acceptance suite")
    return p


def make_config(ns, environ=None):
    environ = os.environ if environ is None else environ
    seed = ns.seed
    if environ.get("HK_SEED"):
        try:
            seed = int(environ["HK_SEED"], 0)
        except ValueError:
            raise ParseError(f"HK_SEED is not an integer: {environ['HK_SEED']!r}") from None
    if not 0 <= seed < U64:
        raise ParseError("seed must be an unsigned 64-bit integer")
    if ns.trunc < 1:
        raise ParseError("--trunc must be >= 1")
    if ns.command in ("resolve", "verify") and getattr(ns, "ideal", None) and ns.mu is None:
        raise ParseError("--mu is required with --ideal")
    if ns.command == "verify" and getattr(ns, "basis", None) and not ns.alphas:
        raise ParseError("--alphas is required with --basis")
    return RunConfig(ns.command, ns, parse_field(ns.field), ns.trunc, seed, ns.json)


def header(cfg):
    return {"schema": SCHEMA, "version": __version__, "command": cfg.command,
            "field": str(cfg.field), "trunc": cfg.trunc, "seed": cfg.seed}


def dumps(obj):
    return json.dumps(obj, indent=2, default=str)


def run(cfg):
    """(exit status, report dict, text)."""
    try:
        body, ok, text = COMMANDS[cfg.command](cfg)
    except HKError as e:
        return 2, {**header(cfg), "ok": False, "error": e.to_dict()}, f"error [{e.code}]: {e}"
    return (0 if ok else 1), {**header(cfg), "ok": bool(ok), "result": body}, text


def main(argv=None, environ=None):
    ns = build_parser().parse_args(argv)
    try:
        cfg = make_config(ns, environ)
    except HKError as e:
        print(dumps({"schema": SCHEMA, "ok": False, "error": e.to_dict()}) if ns.json else f"error [{e.code}]: {e}")
        return 2
    status, report, text = run(cfg)
    print(dumps(report) if cfg.json else text)
    return status


if __name__ == "__main__":
    sys.exit(main())
