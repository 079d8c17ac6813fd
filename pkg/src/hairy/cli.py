"""Command line front end: ``hairy <subcommand> ...``.

Every report is deterministic: rows come out in a fixed order and JSON is
written with sorted keys, so the output of a run can be used as a golden
file.  Exit status is 0 on success, 1 when a cross-check fails, 2 on usage
errors and 3 when a resource bound is hit.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import complex as cx
from . import dihedral as dh
from .graph import loads
from .operad import OPERADS
from .rep import dims_from_decomposition, format_decomposition


class ResourceBound(RuntimeError):
    pass


def _emit(report, rows, columns, fmt, out):
    if fmt == "json":
        report = dict(report)
        report["rows"] = [dict(zip(columns, r)) for r in rows]
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        out.write("\t".join(columns) + "\n")
        for r in rows:
            out.write("\t".join(str(x) for x in r) + "\n")


def _slice_dims(task):
    op, d, r, labels, reduced, max_basis = task
    c = cx.build_reduced_slice(op, d, r, labels) if reduced else cx.build_slice(op, d, r, labels)
    if max_basis and any(c.dim(k) > max_basis for k in c.degrees()):
        raise ResourceBound(f"basis larger than {max_basis} in {(op, d, r, labels)}")
    return dict(cx.homology_dims(c))


def graph_dims(op, d, r, dim_v, reduced=False, jobs=1, max_basis=0):
    """{k: dim H_k} over all multiplicity patterns, optionally in parallel."""
    s = d + 2 - 2 * r
    if d <= 0 or s < 0:
        return {}
    pats = cx.partitions(s, dim_v)
    tasks = [(op, d, r, cx.generic_labels(p), reduced, max_basis) for p in pats]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_slice_dims, tasks))
    else:
        results = [_slice_dims(t) for t in tasks]
    total = {}
    for p, res in zip(pats, results):
        mult = cx.multiset_count(p, dim_v)
        for k, h in res.items():
            total[k] = total.get(k, 0) + mult * h
    return total


def _degrees(args):
    if args.degree is not None:
        return [args.degree] if args.degree > 0 else []
    top = args.g_max if args.g_max is not None else (args.k_max or 3) + 1
    return list(range(1, top + 1))


def _ks(args):
    if args.k is not None:
        return [args.k]
    return list(range(1, (args.k_max if args.k_max is not None else 3) + 1))


def cmd_homology(args, out):
    method = args.method
    if method == "auto":
        method = "dihedral" if args.rank == 1 else "graph"
    if method == "dihedral" and args.rank != 1:
        raise SystemExit("the dihedral method only computes rank one")
    ks = _ks(args)
    rows = []
    degrees = _degrees(args)
    if method == "dihedral" and degrees:
        table = dh.hd_dims(dh.factory(args.operad, max_grading=max(degrees)), dh.HD,
                           max(ks) - 1, max(degrees), args.dim_v)
        for d in degrees:
            for k in ks:
                rows.append((k, d, table.get((k - 1, d), 0)))
    else:
        for d in degrees:
            dims = graph_dims(args.operad, d, args.rank, args.dim_v,
                              reduced=args.reduced, jobs=args.jobs,
                              max_basis=args.max_basis)
            for k in ks:
                rows.append((k, d, dims.get(k, 0)))
    report = {"command": "homology", "operad": args.operad, "rank": args.rank,
              "dim_v": args.dim_v, "method": method, "reduced": args.reduced}
    _emit(report, rows, ("k", "degree", "dim"), args.format, out)
    return 0


def cmd_bo(args, out):
    labels = tuple(x for x in args.labels.split(",") if x) if args.labels else ()
    c = cx.build_BO(args.operad, args.ell, labels)
    rows = [(k, h) for k, h in cx.homology_dims(c)]
    report = {"command": "bo-homology", "operad": args.operad, "ell": args.ell,
              "labels": list(labels),
              "expected_h0": cx.bo_h0_expected(args.operad, args.ell, labels)}
    _emit(report, rows, ("k", "dim"), args.format, out)
    return 0


def crosscheck_rows(ops, k_max, g_max, dim_v, which):
    rows = []
    for op in ops:
        if which in ("dihedral", "all"):
            for k, g, a, b, ok in dh.crosscheck_graph_dihedral(op, k_max, g_max, dim_v):
                rows.append(("dihedral", op, k, g, a, b, ok))
        if which in ("reduced", "all"):
            for g in range(1, g_max + 1):
                full = graph_dims(op, g, 1, dim_v)
                red = graph_dims(op, g, 1, dim_v, reduced=True)
                for k in range(1, k_max + 1):
                    a, b = full.get(k, 0), red.get(k, 0)
                    rows.append(("reduced", op, k, g, a, b, a == b))
    return rows


def cmd_crosscheck(args, out):
    ops = OPERADS if args.operad == "all" else (args.operad,)
    rows = crosscheck_rows(ops, args.k_max, args.g_max, args.dim_v, args.check)
    ok = all(r[-1] for r in rows)
    report = {"command": "crosscheck", "operad": args.operad, "dim_v": args.dim_v,
              "check": args.check, "ok": ok}
    _emit(report, [r[:-1] + (int(r[-1]),) for r in rows],
          ("check", "operad", "k", "degree", "lhs", "rhs", "ok"), args.format, out)
    return 0 if ok else 1


def _load_cocycles(path):
    """Cocycle spec: JSON list of {operad, degree, rank, labels, k, graph}.

    Each entry is the cocycle on that slice which is 1 on the given graph
    (text format), which must span a one-dimensional homology.
    """
    from .maps import cocycle_from_slice
    with open(path) as fh:
        spec = json.load(fh)
    out = []
    for item in spec:
        _, g = loads(item["graph"])
        out.append(cocycle_from_slice(item["operad"], item["degree"], item["rank"],
                                      tuple(item["labels"]), item["k"], g))
    return out


def cmd_assembly(args, out):
    from .maps import evaluate_assembly, two_loops_three_edges
    from .symp import SymplecticSpace
    if args.example:
        g, zetas = two_loops_three_edges()
    else:
        if not args.graph:
            raise SystemExit("--graph or --example is required")
        with open(args.graph) as fh:
            _, g = loads(fh.read())
        zetas = _load_cocycles(args.cocycles) if args.cocycles else []
    rows = []
    for n in args.n:
        v = evaluate_assembly(zetas, g, SymplecticSpace(n))
        rows.append((n, str(Fraction(v))))
    report = {"command": "assembly", "cocycles": len(zetas)}
    _emit(report, rows, ("n", "value"), args.format, out)
    return 0


def cmd_decompose(args, out):
    if args.method == "dihedral":
        dec = dh.hd_decomposition(dh.factory(args.operad, max_grading=args.degree),
                                  dh.HD, args.k - 1, args.degree)
    else:
        dec = cx.hairy_decomposition(args.operad, args.degree, 1, args.k)
    rows = [(m, dims_from_decomposition(dec, m)) for m in args.dims]
    report = {"command": "decompose", "operad": args.operad, "k": args.k,
              "degree": args.degree, "method": args.method,
              "decomposition": format_decomposition(dec)}
    _emit(report, rows, ("dim_v", "dim"), args.format, out)
    return 0


def _positive(text):
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def parser():
    p = argparse.ArgumentParser(prog="hairy", description="Hairy graph homology workbench")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, operads=OPERADS):
        sp.add_argument("--operad", choices=operads, required=True)
        sp.add_argument("--format", choices=("json", "tsv"), default="tsv")

    h = sub.add_parser("homology", help="rank r hairy homology dims by degree")
    common(h)
    h.add_argument("--rank", type=int, default=1)
    h.add_argument("--dim-v", type=_positive, default=2)
    h.add_argument("--k", type=_positive)
    h.add_argument("--k-max", type=_positive)
    h.add_argument("--g-max", type=int)
    h.add_argument("--degree", type=int)
    h.add_argument("--method", choices=("auto", "graph", "dihedral"), default="auto")
    h.add_argument("--reduced", action="store_true")
    h.add_argument("--jobs", type=_positive, default=1)
    h.add_argument("--max-basis", type=int, default=0)
    h.set_defaults(func=cmd_homology)

    b = sub.add_parser("bo-homology", help="homology of the tree operad B.O")
    common(b)
    b.add_argument("--ell", type=int, required=True)
    b.add_argument("--labels", default="")
    b.set_defaults(func=cmd_bo)

    c = sub.add_parser("crosscheck", help="graph vs dihedral and full vs reduced")
    common(c, OPERADS + ("all",))
    c.add_argument("--dim-v", type=_positive, default=2)
    c.add_argument("--k-max", type=int, default=3)
    c.add_argument("--g-max", type=int, default=3)
    c.add_argument("--check", choices=("dihedral", "reduced", "all"), default="all")
    c.set_defaults(func=cmd_crosscheck)

    a = sub.add_parser("assembly", help="evaluate assembled cocycles on a graph")
    a.add_argument("--graph")
    a.add_argument("--cocycles")
    a.add_argument("--example", action="store_true",
                   help="two looped Lie vertices joined by three edges")
    a.add_argument("--n", type=_positive, nargs="+", default=[1])
    a.add_argument("--format", choices=("json", "tsv"), default="tsv")
    a.set_defaults(func=cmd_assembly)

    d = sub.add_parser("decompose", help="Schur functor decomposition of H_{k,1}")
    common(d)
    d.add_argument("--k", type=_positive, required=True)
    d.add_argument("--degree", type=_positive, required=True)
    d.add_argument("--method", choices=("dihedral", "graph"), default="dihedral")
    d.add_argument("--dims", type=_positive, nargs="+", default=[2, 4])
    d.set_defaults(func=cmd_decompose)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ResourceBound as e:
        sys.stderr.write(f"resource bound: {e}\n")
        return 3
    except (ValueError, KeyError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
