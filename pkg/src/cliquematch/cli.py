"""Command-line interface: ``cliquematch {build,solve,editdist,verify,recheck}``.

Exit codes: 0 success, 1 certification failure, 2 usage or input error,
3 capacity or budget exhausted, 4 infeasible cardinality request.

Everything on stdout and in written files is a function of the inputs,
flags and seed; timings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .association import build_association
from .errors import CapacityError, CliqueMatchError, InputError
from .graph import complete_graph
from .io import (
    REPORT_TAG,
    format_fraction,
    pairs_label,
    parse_costs,
    parse_fraction,
    parse_graph,
    parse_instance,
    parse_kappa_table,
    parse_provenance,
    parse_relation,
    read_text,
    serialize_instance,
    serialize_provenance,
    write_text,
)
from .morphism import MorphismClass, PartialMorphism, standard_property
from .mwcp import Mode, SolveConfig, Status, clique_weight, enumerate_maximal, solve
from .problems import (
    ExactWeights,
    edit_distance,
    edit_distance_problem,
    exact_kappa,
    mcisp_kappa,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY, EXIT_INFEASIBLE = 0, 1, 2, 3, 4

VERIFY_PROBLEMS = ("mcisp", "mcs", "homo", "best-common", "probabilistic", "editdist", "nonclosure-demo")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _frac(v) -> str:
    return "none" if v is None else format_fraction(v)


def _positive_int(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _load_graph(path):
    return parse_graph(read_text(path), str(path))


# build


def _kappa_for(spec: str, x, y):
    kind, _, arg = spec.partition(":")
    if kind == "mcisp" and not arg:
        return mcisp_kappa(x, y)
    if kind == "exact":
        parts = arg.split(",")
        if len(parts) != 3:
            raise InputError("--kappa exact needs three weights: exact:vertex,edge,nonedge")
        return exact_kappa(ExactWeights(*(parse_fraction(p) for p in parts)), x, y)
    if kind == "table" and arg:
        return parse_kappa_table(read_text(arg), x, y, arg)
    raise InputError(f"unknown --kappa {spec!r}; use mcisp, exact:a,b,c, edit:FILE or table:FILE")


def cmd_build(args) -> int:
    x, y = _load_graph(args.x), _load_graph(args.y)
    if args.kappa.startswith("edit:"):
        if args.relation_file or (args.cls and args.cls != "mono"):
            raise InputError("edit compatibilities fix the relation (mono on the dummy extensions)")
        costs = parse_costs(read_text(args.kappa[5:]), args.kappa[5:])
        problem = edit_distance_problem(x, y, costs)
        z = problem.association(cap=args.cap)
        print(f"cardinality {problem.cardinality}")
    else:
        if bool(args.cls) == bool(args.relation_file):
            raise InputError("give exactly one of --class and --relation-file")
        if args.cls:
            rel = standard_property(MorphismClass(args.cls), x, y)
        else:
            rel = parse_relation(read_text(args.relation_file), x, y, args.relation_file)
        z = build_association(x, y, rel, _kappa_for(args.kappa, x, y), cap=args.cap)
    write_text(args.output, serialize_instance(z.instance))
    prov = args.provenance or args.output + ".prov"
    write_text(prov, serialize_provenance(z))
    print(f"vertices {z.n}")
    print(f"edges {z.edge_count}")
    return EXIT_OK


# solve


def _morphism_line(pairs_by_vertex, n, m, clique):
    images = [None] * n
    for v in clique:
        i, r = pairs_by_vertex[v]
        if images[i] is not None:
            raise InputError(f"clique maps source vertex {i} twice; provenance does not fit the instance")
        images[i] = r
    return str(PartialMorphism._trusted(n, m, tuple(images)))


def cmd_solve(args) -> int:
    inst = parse_instance(read_text(args.instance), args.instance)
    prov = None
    if args.provenance:
        prov = parse_provenance(read_text(args.provenance), args.provenance)
        if len(prov[2]) != inst.n:
            raise InputError(f"provenance lists {len(prov[2])} vertices, instance has {inst.n}")
    mode = Mode(args.mode)
    started = time.perf_counter()
    if mode is Mode.ENUMERATE_MAXIMAL:
        if args.cardinality is not None:
            raise InputError("--cardinality needs --mode exact")
        print("status maximal-only")
        count = 0
        try:
            for c in enumerate_maximal(inst, budget=args.budget or 1_000_000):
                count += 1
                line = f"clique {' '.join(map(str, c))} weight {_frac(clique_weight(inst, c))}"
                if prov:
                    line += f" pairs {pairs_label(prov[2][v] for v in c)}"
                print(line)
        except CapacityError as exc:
            print(f"status budget-exhausted after {count} cliques")
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CAPACITY
        print(f"count {count}")
        print(f"elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr)
        return EXIT_OK
    cfg = SolveConfig(mode, args.cardinality, args.budget, args.time_limit, args.seed, args.restarts, args.workers)
    sol = solve(inst, cfg)
    print(f"status {sol.status.value}")
    if sol.status is Status.INFEASIBLE:
        print(f"largest-clique {sol.largest_feasible}")
        return EXIT_INFEASIBLE
    print(f"weight {_frac(sol.weight)}")
    print(f"clique {' '.join(map(str, sol.vertices))}".rstrip())
    if prov:
        n, m, pairs = prov
        print(f"pairs {pairs_label(pairs[v] for v in sol.vertices)}")
        print(f"morphism {_morphism_line(pairs, n, m, sol.vertices)}")
    print(f"nodes {sol.nodes} elapsed {sol.elapsed:.3f}s", file=sys.stderr)
    return EXIT_CAPACITY if sol.status is Status.BUDGET_EXHAUSTED else EXIT_OK


# editdist


def cmd_editdist(args) -> int:
    x, y = _load_graph(args.x), _load_graph(args.y)
    costs = parse_costs(read_text(args.costs), args.costs)
    cfg = SolveConfig(node_limit=args.budget, time_limit=args.time_limit, workers=args.workers)
    res = edit_distance(x, y, costs, cfg)
    print(f"distance {_frac(res.distance)}")
    print(f"optimal {'yes' if res.optimal else 'no (upper bound)'}")
    print(f"morphism {res.morphism}")
    print("script")
    for op in res.script.operations:
        print(f"  {op}")
    print(f"nodes {res.solution.nodes} elapsed {res.solution.elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK if res.optimal else EXIT_CAPACITY


# verify


def _verify_trial(task):
    from .generate import random_problem, rng_for
    from .oracle import certify_equivalence

    name, seed, trial, max_order, budget = task
    problem = random_problem(name, rng_for(seed, name, trial), max_order)
    report = certify_equivalence(problem, budget=budget)
    z_n = z_e = None
    try:
        z = problem.association()
        z_n, z_e = z.n, z.edge_count
    except CliqueMatchError:
        pass
    return report.to_dict(), {
        "trial": trial,
        "order_x": problem.x.order,
        "order_y": problem.y.order,
        "z_vertices": z_n,
        "z_edges": z_e,
        "cliques": report.cliques_checked,
        "morphisms": report.morphisms_checked,
        "clique_optimum": report.clique_optimum,
        "morphism_optimum": report.morphism_optimum,
        "passed": report.passed,
    }


TSV_COLUMNS = ("trial", "order_x", "order_y", "z_vertices", "z_edges", "cliques", "morphisms",
               "clique_optimum", "morphism_optimum", "passed")


def _tsv(rows) -> str:
    def cell(v):
        if isinstance(v, Fraction):
            return format_fraction(v)
        if isinstance(v, bool):
            return "yes" if v else "no"
        return "" if v is None else str(v)

    lines = ["\t".join(TSV_COLUMNS)]
    lines += ["\t".join(cell(r[c]) for c in TSV_COLUMNS) for r in rows]
    return "\n".join(lines) + "\n"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _verify_nonclosure(args) -> int:
    from .oracle import demonstrate_non_closure
    from .plots import nonclosure_figure

    if args.graphs:
        x, y = _load_graph(args.graphs[0]), _load_graph(args.graphs[1])
        label = f"{args.graphs[0]} / {args.graphs[1]}"
    else:
        x = y = complete_graph(3)
        label = "K3 / K3"
    rep = demonstrate_non_closure(x, y, args.m, MorphismClass(args.base), budget=args.budget)
    doc = {"format": f"{REPORT_TAG} 1", "problem": "nonclosure-demo", "graphs": label,
           "base": args.base, "report": rep.to_dict()}
    stem = os.path.join(args.out, "verify-nonclosure-demo") if args.out else None
    if stem:
        os.makedirs(args.out, exist_ok=True)
        write_text(stem + ".json", _dump(doc))
        rows = ["size\tencoding\tother"] + [f"{k}\t{e}\t{o}" for k, (e, o) in sorted(rep.sizes.items())]
        write_text(stem + ".tsv", "\n".join(rows) + "\n")
        nonclosure_figure(rep.sizes, f"cliques of the generated association graph, m={args.m}", stem + ".png")
    print(f"problem nonclosure-demo graphs {label} m {args.m}")
    print(f"space {rep.space_size} encoding-cliques {rep.encoding_cliques} cliques {rep.cliques_total}")

    def fmt(cs):
        return pairs_label(tuple(p) for p in cs)

    if rep.pf1:
        print(f"pf1 subclique {fmt(rep.pf1['subclique'])} of {fmt(rep.pf1['encoding_clique'])}")
    else:
        print("pf1 none")
    if rep.pf2:
        parts = " ".join(fmt(c) for c in rep.pf2["union_of"])
        print(f"pf2 clique {fmt(rep.pf2['clique'])} union of {parts}")
    else:
        print("pf2 none")
    print("result " + ("inconclusive" if rep.inconclusive else "cliques differ from encoded members"))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.problem == "nonclosure-demo":
        return _verify_nonclosure(args)
    from .plots import verify_figure

    tasks = [(args.problem, args.seed, t, args.max_order, args.budget) for t in range(args.trials)]
    started = time.perf_counter()
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_verify_trial, tasks, chunksize=max(1, len(tasks) // (4 * args.workers))))
    else:
        results = [_verify_trial(t) for t in tasks]
    reports = [r for r, _ in results]
    rows = [row for _, row in results]
    failed = [r for r in reports if not r["passed"]]
    summary = {
        "format": f"{REPORT_TAG} 1",
        "problem": args.problem,
        "trials": args.trials,
        "max_order": args.max_order,
        "seed": args.seed,
        "passed": len(reports) - len(failed),
        "failed": len(failed),
        "cliques_checked": sum(r["cliques_checked"] for r in reports),
        "reports": reports,
    }
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        stem = os.path.join(args.out, f"verify-{args.problem}")
        write_text(stem + ".json", _dump(summary))
        write_text(stem + ".tsv", _tsv(rows))
        verify_figure(rows, f"{args.problem}: {args.trials} trials, max order {args.max_order}, seed {args.seed}",
                      stem + ".png")
    print(f"problem {args.problem} trials {args.trials} passed {summary['passed']} failed {summary['failed']} "
          f"cliques {summary['cliques_checked']}")
    print(f"elapsed {time.perf_counter() - started:.1f}s", file=sys.stderr)
    if failed:
        print("counterexample")
        print(_dump(failed[0]), end="")
        return EXIT_FAIL
    return EXIT_OK


def cmd_recheck(args) -> int:
    from .oracle import certify_equivalence, problem_from_description

    try:
        doc = json.loads(read_text(args.report))
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.report}: not JSON: {exc}") from None
    reports = doc.get("reports", [doc]) if isinstance(doc, dict) else None
    if not reports:
        raise InputError(f"{args.report}: no reports found")
    bad = 0
    for k, rep in enumerate(reports):
        if not isinstance(rep, dict) or "instance" not in rep:
            raise InputError(f"{args.report}: report {k} has no instance")
        problem = problem_from_description(rep["instance"], rep.get("problem", "recheck"))
        again = certify_equivalence(problem, budget=args.budget)
        same = again.passed == rep.get("passed")
        print(f"report {k} passed {'yes' if again.passed else 'no'} {'matches' if same else 'DIFFERS from'} record")
        bad += (not again.passed) or (not same)
    return EXIT_FAIL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cliquematch", description="Graph matching via maximum weight clique search.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="association graph of two graph files")
    b.add_argument("x")
    b.add_argument("y")
    b.add_argument("--class", dest="cls", choices=[c.value for c in MorphismClass])
    b.add_argument("--relation-file")
    b.add_argument("--kappa", default="mcisp", help="mcisp | exact:a,b,c | edit:FILE | table:FILE")
    b.add_argument("-o", "--output", required=True)
    b.add_argument("--provenance", help="sidecar path (default: OUTPUT.prov)")
    b.add_argument("--cap", type=_positive_int, default=10_000, help="max |V(X)|*|V(Y)|")
    b.set_defaults(fn=cmd_build)

    s = sub.add_parser("solve", help="maximum weight clique of an instance file")
    s.add_argument("instance")
    s.add_argument("--mode", choices=[m.value for m in Mode], default="exact")
    s.add_argument("--cardinality", type=_nonneg_int)
    s.add_argument("--seed", type=_nonneg_int, default=0)
    s.add_argument("--restarts", type=_positive_int, default=8)
    s.add_argument("--budget", type=_positive_int, help="search node limit")
    s.add_argument("--time-limit", type=float)
    s.add_argument("--workers", type=_positive_int, default=1)
    s.add_argument("--provenance")
    s.set_defaults(fn=cmd_solve)

    e = sub.add_parser("editdist", help="graph edit distance and edit script")
    e.add_argument("x")
    e.add_argument("y")
    e.add_argument("costs")
    e.add_argument("--budget", type=_positive_int)
    e.add_argument("--time-limit", type=float)
    e.add_argument("--workers", type=_positive_int, default=1)
    e.set_defaults(fn=cmd_editdist)

    v = sub.add_parser("verify", help="certify clique/morphism equivalence on random instances")
    v.add_argument("--problem", choices=VERIFY_PROBLEMS, required=True)
    v.add_argument("--trials", type=_positive_int, default=50)
    v.add_argument("--max-order", type=_positive_int, default=4)
    v.add_argument("--seed", type=_nonneg_int, default=1)
    v.add_argument("--m", type=int, default=2, help="domain size for nonclosure-demo")
    v.add_argument("--base", choices=[c.value for c in MorphismClass], default="iso",
                   help="morphism class for nonclosure-demo")
    v.add_argument("--graphs", nargs=2, metavar=("X", "Y"), help="graph files for nonclosure-demo (default K3, K3)")
    v.add_argument("--workers", type=_positive_int, default=1)
    v.add_argument("--budget", type=_positive_int, default=5_000_000, help="per-enumeration limit")
    v.add_argument("--out", help="directory for the JSON report, TSV and PNG figure")
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("recheck", help="re-certify the instances stored in a verify report")
    r.add_argument("report")
    r.add_argument("--budget", type=_positive_int, default=5_000_000)
    r.set_defaults(fn=cmd_recheck)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
