"""Command line front door: ``ppaq <command> ...``.

Exit status is 0 exactly when every check the command ran passed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from . import generate as G
from . import io
from .budget import BudgetExceeded
from .errors import PreconditionError
from .gfpoly import PolynomialSystem, check_cw_lemma, cw_factors, parse_polynomial
from .problems import BisInstance, SisInstance, TotalityError

GEN_PROBLEMS = ("lonely", "mod", "leaf", "leafprime", "bipartite", "succbipartite", "twomatchings",
                "endofline", "chevalley", "generalchevalley", "chevsym", "bis", "sis", "lonely-circuit")


def _emit(args, report, text_lines):
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
    else:
        for ln in text_lines:
            print(ln)


def _write_or_print(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _modulus(args, default=3):
    return args.q or args.p or default


# ---------------------------------------------------------------- commands

def cmd_gen(args):
    r = G.rng_for(args.seed)
    q = _modulus(args)
    kind = args.problem
    if kind == "lonely":
        inst = G.random_lonely(r, q, n=args.n)
    elif kind == "lonely-circuit":
        inst = G.random_lonely_circuit(r, q, n=args.n)
    elif kind == "mod":
        inst = G.random_mod(r, q, n=args.n)
    elif kind == "leaf":
        inst = G.random_leaf(r, q)
    elif kind == "leafprime":
        inst = G.random_leafprime(r, q, k=args.k)
    elif kind == "bipartite":
        inst = G.random_bipartite(r, q, k=args.k)
    elif kind == "succbipartite":
        inst = G.random_succbipartite(r, q)
    elif kind == "twomatchings":
        inst = G.random_twomatchings(r, q)
    elif kind == "endofline":
        inst = G.random_endofline(r, n=args.n)
    elif kind == "chevalley":
        inst = G.random_chevalley(r, q, n=args.n, m=args.m)
    elif kind == "generalchevalley":
        inst = G.random_general(r, q, n=args.n, m=args.m)
    elif kind == "chevsym":
        inst = G.random_chevsym(r, q, n=args.n)
    elif kind == "bis":
        inst = G.random_bis(r, q, m=args.m, n=args.n)
    else:
        inst = G.random_sis(r, q, m=args.m, n=args.n)
    _write_or_print(args.out, io.dumps(inst) + "\n")
    return 0


def cmd_solve(args):
    inst = io.load(args.input)
    sol = inst.brute_solve(args.budget)
    data = io.solution_to_json(inst.problem, sol)
    _write_or_print(args.out, json.dumps(data) + "\n")
    return 0 if inst.verify(sol) else 1


def _load_solution(inst, path):
    with open(path) as fh:
        return io.solution_from_json(inst.problem, json.load(fh))


def cmd_verify(args):
    inst = io.load(args.input)
    sol = _load_solution(inst, args.solution)
    ok = inst.verify(sol)
    _emit(args, {"problem": inst.problem, "valid": ok},
          [f"{'valid' if ok else 'INVALID'} {inst.problem} solution"])
    return 0 if ok else 1


def _build(args, inst):
    from .reductions import get_reduction
    return get_reduction(args.id).build(inst)


def cmd_reduce(args):
    inst = io.load(args.input)
    red = _build(args, inst)
    _write_or_print(args.out, io.dumps(red.target) + "\n")
    if red.short_circuit:
        print(f"short circuit: {red.info.get('reason')}", file=sys.stderr)
    return 0


def cmd_backmap(args):
    inst = io.load(args.input)
    red = _build(args, inst)
    sol = _load_solution(red.target, args.solution)
    back = red.back_map(sol)
    ok = inst.verify(back)
    _emit(args, {"id": args.id, "source_solution": io.solution_to_json(inst.problem, back), "valid": ok},
          [json.dumps(io.solution_to_json(inst.problem, back)),
           f"{'valid' if ok else 'INVALID'} on the source instance"])
    return 0 if ok else 1


def cmd_roundtrip(args):
    from .reductions import REGISTRY
    from .suites import run_suite
    ids = sorted(REGISTRY) if args.id == "all" else [args.id]
    rows = [run_suite(rid, args.count, args.seed, args.budget, args.jobs) for rid in ids]
    if not args.timing:
        for r in rows:
            r.pop("seconds")
    lines = [f"{'PASS' if r['ok'] else 'FAIL'} {r['id']}: {r['passed']}/{r['count']} round-trips, "
             f"corruption caught on {r['corrupt_detected']}" for r in rows]
    _emit(args, {"version": __version__, "prng": G.PRNG_NAME, "results": rows}, lines)
    return 0 if all(r["ok"] for r in rows) else 1


def cmd_cw_check(args):
    if args.input:
        inst = io.load(args.input)
        S = inst.system if hasattr(inst, "system") else inst.g
    else:
        if not (args.poly and args.p and args.n):
            raise SystemExit("cw-check needs --in, or --poly (repeatable) with --p and --n")
        S = PolynomialSystem.of(args.n, args.p, [parse_polynomial(t, args.n, args.p) for t in args.poly])
    rep = check_cw_lemma(S, args.budget)
    sizes = [len(f) for f in cw_factors(S)]
    d = rep.as_dict()
    d["factor_sizes"] = sizes
    _emit(args, d, [f"p={rep.p} n={rep.n_vars} factor sizes {sizes}",
                    f"|V|={rep.count_V} |M|={rep.count_M} congruent={rep.congruent}"])
    return 0 if rep.congruent else 1


def _split_23(q):
    k = l = 0
    while q % 2 == 0:
        q //= 2
        k += 1
    while q % 3 == 0:
        q //= 3
        l += 1
    return k, l, q


def cmd_linsolve(args):
    from .modsolve import read_matrix, solve_bis_pow2, solve_sis_2k3l
    with open(args.input) as fh:
        A, q = read_matrix(fh.read())
    if args.q and args.q != q:
        raise SystemExit(f"--q {args.q} disagrees with the file's modulus {q}")
    k, l, rest = _split_23(q)
    if args.problem == "bis":
        inst = BisInstance(A, q, check=False)
        if rest == 1 and l == 0:
            x = solve_bis_pow2(A, k)
        else:
            x = _via_chevalley(inst)
    else:
        inst = SisInstance(A, q, check=False)
        if rest == 1:
            x = solve_sis_2k3l(A, k, l)
        else:
            x = _via_chevalley(inst)
    ok = inst.verify(x)
    _emit(args, {"problem": args.problem, "q": q, "x": list(x), "valid": ok},
          [" ".join(map(str, x)), f"{'verified' if ok else 'NOT verified'}: Ax = 0 mod {q}"])
    return 0 if ok else 1


def _via_chevalley(inst):
    from .gfpoly import is_prime
    from .reductions import get_reduction
    if not is_prime(inst.q):
        raise PreconditionError(f"q = {inst.q} is neither 2^k 3^l nor prime; no solver available")
    red = get_reduction(f"6:{inst.problem}->chevalley").build(inst)
    return red.back_map(red.target.brute_solve())


def cmd_list(args):
    from .reductions import REGISTRY
    rows = [{"id": s.id, "source": s.source, "target": s.target, "provenance": s.provenance}
            for s in REGISTRY.values()]
    _emit(args, {"reductions": rows}, [f"{r['id']:36s} {r['source']} -> {r['target']}  ({r['provenance']})"
                                       for r in rows])
    return 0


def cmd_acceptance(args):
    from .acceptance import run_all
    only = {int(x) for x in args.only.split(",")} if args.only else None
    kw = {6: {"jobs": args.jobs}} if args.jobs > 1 else {}
    res = run_all(only, **kw)
    _emit(args, {"version": __version__, "prng": G.PRNG_NAME, "criteria": [c.as_dict() for c in res]},
          [c.line() for c in res])
    return 0 if all(c.ok for c in res) else 1


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None, help="step cap (default: TFNP_BUDGET or 10^7)")
    common.add_argument("--report", help="also write the JSON report here")

    ap = argparse.ArgumentParser(prog="ppaq", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write a seeded random instance")
    g.add_argument("problem", choices=GEN_PROBLEMS)
    g.add_argument("--p", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(fn=cmd_gen)

    s = sub.add_parser("solve", parents=[common], help="brute-force a solution")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="check a solution")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--solution", required=True)
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("reduce", parents=[common], help="apply a reduction and write the target")
    r.add_argument("--id", required=True)
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--out")
    r.set_defaults(fn=cmd_reduce)

    b = sub.add_parser("backmap", parents=[common], help="map a target solution back to the source")
    b.add_argument("--id", required=True)
    b.add_argument("--in", dest="input", required=True, help="the source instance")
    b.add_argument("--solution", required=True, help="a solution of the target")
    b.set_defaults(fn=cmd_backmap)

    t = sub.add_parser("roundtrip", parents=[common], help="seeded soundness suite for a reduction id")
    t.add_argument("--id", required=True, help="a reduction id, or 'all'")
    t.add_argument("--count", type=int, default=200)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identity)")
    t.set_defaults(fn=cmd_roundtrip)

    c = sub.add_parser("cw-check", parents=[common], help="compare |V| and |M| modulo p")
    c.add_argument("--in", dest="input")
    c.add_argument("--poly", action="append")
    c.add_argument("--p", type=int)
    c.add_argument("--n", type=int)
    c.set_defaults(fn=cmd_cw_check)

    for name in ("sis", "bis"):
        ls = sub.add_parser(name, parents=[common], help=f"{name.upper()} tools")
        lsub = ls.add_subparsers(dest="action", required=True)
        solve = lsub.add_parser("solve", parents=[common], help="solve a matrix file (m n q header)")
        solve.add_argument("--q", type=int)
        solve.add_argument("--in", dest="input", required=True)
        solve.set_defaults(fn=cmd_linsolve, problem=name)

    li = sub.add_parser("list", parents=[common], help="list reduction ids")
    li.set_defaults(fn=cmd_list)

    a = sub.add_parser("acceptance", parents=[common], help="run the acceptance criteria")
    a.add_argument("--only", help="comma-separated criterion numbers")
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(fn=cmd_acceptance)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (PreconditionError, BudgetExceeded, TotalityError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
