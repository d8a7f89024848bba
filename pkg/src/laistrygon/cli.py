"""Command-line entry point.

Every command prints JSON (``"schema": 1``) unless noted; ``nf`` and
``hilbert`` default to plain text.  Exit codes: 0 pass, 1 a check failed,
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from . import algebra_maps as am
from . import pbw_engine as pe
from . import point_modules as pm
from . import representations as rp
from .errors import CheckFailure, LaistrygonError, NotOnVariety, PreconditionError
from .report import Report
from .scalars import FieldElem, QSpec, parse_scalar, partial_fraction_identity, random_elem

SCHEMA = 1
THREADS_ENV = "LAISTRYGON_THREADS"


class UsageError(Exception):
    pass


def _emit(payload: dict, out) -> None:
    out.write(json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n")


def _params(args) -> pe.AlgebraParams:
    if args.ghost < 1:
        raise UsageError("--ghost must be a positive integer")
    return pe.AlgebraParams(args.ghost, QSpec.parse(args.q))


def _system(args, params):
    if getattr(args, "negative_control", False):
        return pe.RewriteSystem(params, jordan_linear=-1)
    return None


def _status(report: Report) -> int:
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_nf(args, out) -> int:
    params = _params(args)
    p = pe.parse_element(args.expr, params)
    nf = pe.normal_form(p, params, _system(args, params))
    if args.output == "json":
        _emit({"command": "nf", "input": args.expr, "ghost": params.ghost, "q": str(params.q),
               "normal_form": str(nf)}, out)
    else:
        out.write(str(nf) + "\n")
    return 0


def cmd_hilbert(args, out) -> int:
    if args.degree < 0:
        raise UsageError("--degree must be nonnegative")
    coeffs = pe.hilbert_coeffs(args.ghost, args.degree)
    oracle = pe.hilbert_series_oracle(args.ghost, args.degree)
    if args.output == "json":
        _emit({"command": "hilbert", "ghost": args.ghost, "coeffs": coeffs, "oracle_match": coeffs == oracle,
               "gk_dimension": pe.gk_dimension(args.ghost)}, out)
    else:
        out.write(json.dumps(coeffs, separators=(",", ":")) + "\n")
    return 0 if coeffs == oracle else 1


def cmd_confluence(args, out) -> int:
    params = _params(args)
    rep = pe.confluence_check(params, args.max_degree, _system(args, params))
    _emit({"command": "confluence", "report": rep.to_dict()}, out)
    return _status(rep)


def cmd_identities(args, out) -> int:
    params = _params(args)
    rep = pe.verify_derived_identities(params, args.jmax, system=_system(args, params))
    _emit({"command": "identities", "report": rep.to_dict()}, out)
    return _status(rep)


def _stage(text: str):
    if text in (am.TOP, am.JORDAN):
        return text
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"stage must be 'x2', 'top' or an integer, got {text!r}") from None


def cmd_ore(args, out) -> int:
    params = _params(args)
    stages = [_stage(args.stage)] if args.stage else am.ore_stages(params)
    reps = [am.ore_verify(s, params) for s in stages]
    _emit({"command": "ore", "reports": [r.to_dict() for r in reps]}, out)
    return 0 if all(r.passed for r in reps) else 1


def cmd_braiding(args, out) -> int:
    params = _params(args)
    bp = am.laistrygonian_braiding(params.ghost, params.q)
    ok = am.braid_equation_check(bp)
    entries = {f"c(x{i}(x)x{j})": am.braiding_entry(bp, i, j) for i in range(1, 4) for j in range(1, 4)}
    _emit({"command": "braiding", "params": bp.to_dict(), "matrix": [[str(x) for x in row]
           for row in am.braiding_matrix(bp)], "entries": entries, "braid_equation": ok}, out)
    return 0 if ok else 1


def cmd_twist(args, out) -> int:
    params = _params(args)
    mode = params.q
    q = params.qe
    bp = am.laistrygonian_braiding(params.ghost, q)
    target = parse_scalar(args.target, mode) if args.target else None
    if args.p12 is not None:
        p12 = parse_scalar(args.p12, mode)
    elif target is not None:
        p12 = target / q
    else:
        raise UsageError("give --target or --p12")
    p21 = parse_scalar(args.p21, mode) if args.p21 is not None else FieldElem.from_int(1, mode)
    twisted = am.twist_braiding(bp, am.TwistParams(p12, p21))
    payload = {"command": "twist", "original": bp.to_dict(), "p12": str(p12), "p21": str(p21),
               "twisted": twisted.to_dict(), "braid_equation": am.braid_equation_check(twisted)}
    ok = payload["braid_equation"]
    if target is not None:
        expect = am.laistrygonian_braiding(params.ghost, target)
        payload["target"] = expect.to_dict()
        payload["matches_target"] = twisted == expect
        ok = ok and twisted == expect
    _emit(payload, out)
    return 0 if ok else 1


def _qp_spec(args, mode):
    a = parse_scalar(args.a, mode)
    if args.kind == "cyclic":
        if args.b is None:
            raise UsageError("cyclic modules need --b")
        return rp.QPModuleSpec.cyclic(a, parse_scalar(args.b, mode), mode)
    if args.b is not None:
        raise UsageError("--b only applies to cyclic modules")
    return rp.QPModuleSpec.char_x(a, mode) if args.kind == "x" else rp.QPModuleSpec.char_y(a, mode)


def cmd_simples(args, out) -> int:
    params = _params(args)
    rep = rp.pullback(rp.build_qp_module(_qp_spec(args, params.q)), params)
    check = rp.rep_check(rep, params)
    simple = rp.is_simple(rep)
    _emit({"command": "simples", "kind": args.kind, "module": rep.to_dict(), "rep_check": check.to_dict(),
           "is_simple": simple, "fingerprints": {k: str(v) for k, v in rp.fingerprints(rep).items()}}, out)
    return 0 if check.passed and simple else 1


def cmd_characters(args, out) -> int:
    params = _params(args)
    fams = rp.solve_characters(params)
    expected = _expected_families(params)
    ok = rp.same_families(fams, expected)
    _emit({"command": "characters", "ghost": params.ghost, "q": str(params.q),
           "families": [f.to_dict() for f in fams], "matches_quantum_plane": ok}, out)
    return 0 if ok else 1


def _expected_families(params):
    if params.q.is_generic:
        return (rp.expected_character_families(params)
                + rp.expected_character_families(pe.AlgebraParams(params.ghost, QSpec.numeric(1))))
    return rp.expected_character_families(params)


def cmd_point(args, out) -> int:
    params = _params(args)
    depth = args.depth if args.depth is not None else params.ghost + 4
    if args.action == "propagate":
        if not args.p0:
            raise UsageError("point propagate needs --p0")
        p0 = pm.ProjPoint.parse(args.p0, params.q)
        try:
            seq = pm.propagate(p0, params, depth)
        except NotOnVariety as exc:
            forced = pm.forced_continuation(p0, params, depth)
            _emit({"command": "point propagate", "p0": p0.to_list(), "on_variety": False, "error": str(exc),
                   "failure_depth": pm.failure_depth(forced)}, out)
            return 1
        payload = {"command": "point propagate", "p0": p0.to_list(), "on_variety": True,
                   "points": [p.to_list() for p in seq.pts]}
        if len(seq) >= params.ghost + 3:
            rep = pm.verify_truncated(seq)
            payload["report"] = rep.to_dict()
            _emit(payload, out)
            return _status(rep)
        payload["report"] = None
        _emit(payload, out)
        return 0
    result = pm.classify_truncated(params, depth)
    _emit({"command": "point classify", **result.to_dict(), "matches_expected": result.matches_expected()}, out)
    return 0 if result.matches_expected() else 1


def cmd_system(args, out) -> int:
    rep = pm.system_check(args.g, args.J if args.J is not None else args.g + 4, args.mode, args.seed)
    ident = pm.elimination_identities(args.g)
    _emit({"command": "system", "report": rep.to_dict(), "elimination_identities": ident.to_dict()}, out)
    return 0 if rep.passed and ident.passed else 1


def cmd_obstruction(args, out) -> int:
    res = rp.topz_invertible_obstruction(args.n, args.block, random.Random(args.seed))
    _emit({"command": "obstruction", "N": res.N, "block": res.block, "lambda": str(res.lam),
           "feasible": res.feasible, "trace_residual": str(res.trace_residual),
           "expected_trace": str(res.expected_trace), "rep_check_passed": res.rep_check_passed,
           "certified": res.certified}, out)
    return 0 if res.certified else 1


# ---------------------------------------------------------------------------
# verify-all
# ---------------------------------------------------------------------------


def _suite_confluence(params, rng, system):
    return pe.confluence_check(params, system=system)


def _suite_identities(params, rng, system):
    return pe.verify_derived_identities(params, 5, system=system)


def _suite_hilbert(params, rng, system):
    r = Report("hilbert")
    r.add("oracle[15]", pe.hilbert_coeffs(params.ghost, 15) == pe.hilbert_series_oracle(params.ghost, 15))
    return r


def _suite_ore(params, rng, system):
    r = Report("ore")
    for st in am.ore_stages(params):
        sub = am.ore_verify(st, params)
        for c in sub.checks:
            r.add(f"{sub.name}:{c.label}", c.passed, c.detail)
    return r


def _suite_braiding(params, rng, system):
    r = Report("braiding")
    q = params.qe
    bp = am.laistrygonian_braiding(params.ghost, q)
    r.add("braid_equation", am.braid_equation_check(bp))
    target = q * q
    tw = am.twist_braiding(bp, am.TwistParams(target / q, FieldElem.from_int(1, params.q)))
    r.add("twist_to_q^2", tw == am.laistrygonian_braiding(params.ghost, target))
    r.add("twist_equivalent", am.twist_equivalent(bp, tw) == (bp.q12 * bp.q21 == tw.q12 * tw.q21))
    return r


def _suite_simples(params, rng, system):
    r = Report("simples")
    mode = params.q
    for kind in ("x", "y"):
        a = random_elem(rng, mode, nonzero=True)
        spec = rp.QPModuleSpec.char_x(a, mode) if kind == "x" else rp.QPModuleSpec.char_y(a, mode)
        rep = rp.pullback(rp.build_qp_module(spec), params)
        r.add(f"char_{kind}:rep_check", rp.rep_check(rep, params).passed)
    if mode.kind == "root":
        N = mode.order
        for t in range(3):
            a = random_elem(rng, mode, nonzero=True)
            b = random_elem(rng, mode, nonzero=True)
            rep = rp.pullback(rp.build_qp_module(rp.QPModuleSpec.cyclic(a, b, mode)), params)
            r.add(f"cyclic[{t}]:rep_check", rp.rep_check(rep, params).passed)
            r.add(f"cyclic[{t}]:is_simple", rp.is_simple(rep))
            fp = rp.fingerprints(rep)
            dets = rp.cyclic_det_formulas(a, b, N)
            r.add(f"cyclic[{t}]:determinants", fp["det_x2"] == dets["det_x2"] and fp["det_z0"] == dets["det_z0"])
            r.add(f"cyclic[{t}]:isomorphism_witness", rp.cyclic_isomorphism_witness(a, b, 1, params))
    return r


def _suite_characters(params, rng, system):
    r = Report("characters")
    r.add("families", rp.same_families(rp.solve_characters(params), _expected_families(params)))
    return r


def _suite_systems(params, rng, system):
    r = Report("systems")
    G = params.ghost
    r.add("closed_form", pm.system_check(G, G + 4).passed)
    r.add("numeric_uniqueness", pm.system_check(G, 2 * G + 2, "numeric_uniqueness", rng.randint(0, 10 ** 6)).passed)
    r.add("elimination_identities", pm.elimination_identities(G).passed)
    r.add("partial_fractions", all(partial_fraction_identity(n) for n in range(1, 9)))
    return r


def _suite_points(params, rng, system):
    r = Report("points")
    mode = params.q
    G = params.ghost
    D = G + 4
    samples = {
        "B": lambda: pm.ProjPoint(FieldElem.from_int(1, mode), random_elem(rng, mode), FieldElem.from_int(0, mode)),
        "C": lambda: pm.ProjPoint(FieldElem.from_int(0, mode), FieldElem.from_int(1, mode), random_elem(rng, mode)),
        "point": lambda: pm.ProjPoint.make(0, 0, 1, mode),
    }
    for name, draw in samples.items():
        for t in range(3):
            seq = pm.propagate(draw(), params, D)
            r.add(f"roundtrip[{name},{t}]", pm.verify_truncated(seq).passed)
    bad = pm.ProjPoint(FieldElem.from_int(1, mode), random_elem(rng, mode), random_elem(rng, mode, nonzero=True))
    r.add("off_variety_depth", pm.failure_depth(pm.forced_continuation(bad, params, D)) == G + 2)
    try:
        cls = pm.classify_truncated(params, D)
        r.add("classify", cls.matches_expected())
    except PreconditionError as exc:
        r.info["classify_skipped"] = str(exc)
    return r


SUITES = (
    ("confluence", _suite_confluence),
    ("identities", _suite_identities),
    ("hilbert", _suite_hilbert),
    ("ore", _suite_ore),
    ("braiding", _suite_braiding),
    ("simples", _suite_simples),
    ("characters", _suite_characters),
    ("systems", _suite_systems),
    ("points", _suite_points),
)


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def run_suites(params, seed: int = 0, negative_control: bool = False, threads: int = 1) -> dict[str, Report]:
    """Run every suite; results are keyed and ordered by suite name, not completion."""
    system = pe.RewriteSystem(params, jordan_linear=-1) if negative_control else None

    def run(item):
        idx, (name, fn) = item
        rng = random.Random(seed * 1000 + idx)
        try:
            return fn(params, rng, system)
        except LaistrygonError as exc:
            rep = Report(name)
            rep.add("error", False, f"{type(exc).__name__}: {exc}")
            return rep

    with ThreadPoolExecutor(max_workers=threads) as pool:
        reports = list(pool.map(run, enumerate(SUITES)))
    return {name: rep for (name, _), rep in zip(SUITES, reports)}


def cmd_verify_all(args, out) -> int:
    params = _params(args)
    threads = args.threads if args.threads is not None else default_threads()
    if threads < 1:
        raise UsageError("--threads must be positive")
    reports = run_suites(params, args.seed, args.negative_control, threads)
    first = None
    for name, rep in reports.items():
        if not rep.passed:
            first = f"{name}: {rep.failures()[0].label}"
            break
    if args.output == "text":
        for name, rep in reports.items():
            out.write(f"{'PASS' if rep.passed else 'FAIL'} {name} ({len(rep.checks)} checks)\n")
        if first:
            out.write(f"first failure: {first}\n")
    else:
        _emit({"command": "verify-all", "ghost": params.ghost, "q": str(params.q), "seed": args.seed,
               "negative_control": args.negative_control, "passed": first is None, "first_failure": first,
               "suites": {k: v.to_dict() for k, v in reports.items()}}, out)
    return 0 if first is None else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(p, q_default="generic", ghost=True):
    if ghost:
        p.add_argument("--ghost", type=int, default=1, help="the parameter G (number of z generators minus one)")
    p.add_argument("--q", default=q_default, help="generic, root:N or num:a/b")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="laistrygon", description="Exact computations in the graded algebras B_G.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="normal form of an element")
    p.add_argument("expr")
    _common(p)
    p.add_argument("--negative-control", action="store_true")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("hilbert", help="graded dimensions")
    p.add_argument("--ghost", type=int, default=1)
    p.add_argument("--degree", type=int, default=10)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("confluence", help="resolve all overlaps")
    _common(p)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--negative-control", action="store_true")
    p.set_defaults(func=cmd_confluence)

    p = sub.add_parser("identities", help="straighten the derived identities")
    _common(p)
    p.add_argument("--jmax", type=int, default=5)
    p.add_argument("--negative-control", action="store_true")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("ore", help="check the iterated Ore extension data")
    _common(p)
    p.add_argument("--stage", default=None)
    p.set_defaults(func=cmd_ore)

    p = sub.add_parser("braiding", help="the 9x9 braiding matrix")
    _common(p)
    p.set_defaults(func=cmd_braiding)

    p = sub.add_parser("twist", help="cocycle twist of the braiding")
    _common(p)
    p.add_argument("--target", default=None, help="twist towards the braiding at this q")
    p.add_argument("--p12", default=None)
    p.add_argument("--p21", default=None)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("simples", help="pull back a simple quantum-plane module")
    _common(p, "root:2")
    p.add_argument("--kind", choices=("cyclic", "x", "y"), default="cyclic")
    p.add_argument("--a", default="1")
    p.add_argument("--b", default=None)
    p.set_defaults(func=cmd_simples)

    p = sub.add_parser("characters", help="solve for one-dimensional modules")
    _common(p)
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("point", help="point modules")
    p.add_argument("action", choices=("propagate", "classify"))
    p.add_argument("--p0", default=None, help="a:b:c")
    _common(p)
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("system", help="the lambda systems")
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--J", type=int, default=None)
    p.add_argument("--mode", choices=("closed_form", "numeric_uniqueness"), default="closed_form")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("obstruction", help="no module with invertible top z (ghost 1)")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--block", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("verify-all", help="run every suite")
    _common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--negative-control", action="store_true", help="flip the sign of the x1*x2 rule")
    p.add_argument("--output", choices=("text", "json"), default="json")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, LaistrygonError, ValueError) as exc:
        if isinstance(exc, CheckFailure):
            code = 1
        else:
            code = 2
        err = {"type": type(exc).__name__, "message": str(exc)}
        for attr in ("text", "position"):
            if hasattr(exc, attr):
                err[attr] = getattr(exc, attr)
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": err}) + "\n")
        return code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
