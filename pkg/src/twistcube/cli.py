"""``twistcube`` command line.

Exit codes: 0 pass, 1 a check failed (or a search exceeded its budget),
2 usage error.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path as FilePath

from . import __version__
from .audits import (
    adjacent_pair_identity_audit,
    book_lemma_check,
    local_structure_audit,
    neighborhood_bound_audit,
    p2_isolating_family_audit,
    star_family_edge_audit,
)
from .claims import CLAIMS, cells, parse_range, run_cells
from .core import Vertex, kappa
from .oracles import components_after_removal, structure_connectivity_exact
from .reports import VerificationReport, dump_json
from .structures import Shape, path_cut_p2, path_cut_pk, star_cut_k13, star_cut_k14, superscript
from .topology import DEFAULT_LIMIT, ImplicitTopology, build_recursive, edge_list, to_dot

log = logging.getLogger("twistcube")


class UsageError(Exception):
    pass


def _pick(positional, flag, name: str, required: bool = True):
    if positional is not None and flag is not None and positional != flag:
        raise UsageError(f"{name} given twice with different values")
    value = positional if positional is not None else flag
    if value is None and required:
        raise UsageError(f"missing {name}")
    return value


def _emit(reports: list[VerificationReport], json_path: str | None) -> None:
    for r in reports:
        print(r.to_line())
    if json_path:
        FilePath(json_path).write_text(dump_json([r.to_dict() for r in reports]))


def cmd_gen(args) -> int:
    n = int(_pick(args.n_pos, args.n, "n"))
    fmt = _pick(args.format_pos, args.format, "format", required=False) or "edgelist"
    topo = build_recursive(n, args.limit)
    sys.stdout.write(edge_list(topo) if fmt == "edgelist" else to_dot(topo))
    return 0


def cmd_nbr(args) -> int:
    print(superscript(Vertex.parse(args.u), args.chain))
    return 0


def cmd_cut(args) -> int:
    n = int(_pick(args.n_pos, args.n, "n"))
    shape = _pick(args.shape_pos, args.shape, "shape").lower()
    u = _pick(args.u_pos, args.u, "u", required=False) or "0" * n
    k = _pick(args.k_pos, args.k, "k", required=False)
    vertex = Vertex.parse(u)
    if vertex.n != n:
        raise UsageError(f"vertex {u} has length {vertex.n}, expected {n}")
    if shape == "pk":
        if k is None:
            raise UsageError("pk needs k")
        family = path_cut_pk(vertex, int(k))
    elif Shape.parse(shape) == Shape("path", 2):
        family = path_cut_p2(vertex)
    elif shape.startswith("p"):
        family = path_cut_pk(vertex, Shape.parse(shape).size)
    else:
        build = {Shape("star", 3): star_cut_k13, Shape("star", 4): star_cut_k14}
        sh = Shape.parse(shape)
        if sh not in build:
            raise UsageError(f"no cut construction for {sh.name}; use k13, k14, p2, pk")
        family = build[sh](vertex)
    sys.stdout.write(family.to_text())
    if n <= args.limit:
        topo = build_recursive(n, args.limit)
        res = components_after_removal(topo, family.vertex_set)
        print(f"# removed={len(family.vertex_set)} disjoint={str(family.pairwise_disjoint()).lower()} "
              f"components={res.component_count} sizes={','.join(map(str, res.component_sizes))}")
        print("# smallest " + " ".join(sorted(topo.label(x) for x in res.smallest_component)))
    return 0


def cmd_verify(args) -> int:
    lo = hi = None
    if args.range:
        lo, hi = parse_range(args.range)
    todo = list(cells(args.claim, lo, hi))
    if not todo:
        raise UsageError("no cells to run for that claim and range")
    reports = run_cells(todo, args.jobs)
    _emit(reports, args.json)
    failed = [r for r in reports if not r.passed]
    if failed:
        print(f"first failing claim: {failed[0].claim} n={failed[0].params['n']}", file=sys.stderr)
        return 1
    return 0


def cmd_audit(args) -> int:
    n = int(_pick(args.n_pos, args.n, "n"))
    exhaustive = args.samples is None and n <= args.exhaustive_max
    samples = None if exhaustive else (args.samples or 200)
    topo = build_recursive(n, args.limit) if exhaustive else ImplicitTopology(n)
    if args.shape:
        shapes = [Shape.parse(args.shape)]
    else:
        shapes = [Shape("star", r) for r in (3, 4) if r <= n]
        shapes += [Shape("path", k) for k in range(3, n + 1)] if n <= 12 else [Shape("path", 3)]
    reports = [neighborhood_bound_audit(topo, s, samples, args.seed) for s in shapes]
    if n >= 2:
        reports.append(star_family_edge_audit(topo, samples, args.seed))
    reports.append(local_structure_audit(topo, samples, args.seed))
    reports.append(adjacent_pair_identity_audit(topo, samples, args.seed))
    if n >= 3:
        reports.append(book_lemma_check(n, samples or 50, args.seed))
        if kappa(n - 1) >= 2:
            reports.append(p2_isolating_family_audit(n, samples or 50, args.seed))
    _emit(reports, args.json)
    return 0 if all(r.passed for r in reports) else 1


def cmd_search(args) -> int:
    n = int(_pick(args.n_pos, args.n, "n"))
    shape = Shape.parse(_pick(args.shape_pos, args.shape, "shape"))
    topo = build_recursive(n, args.limit)
    out = structure_connectivity_exact(topo, shape, args.mode, args.budget, jobs=args.jobs,
                                       backend=args.backend)
    d = out.to_dict()
    value = d.pop("value")
    witness = d.pop("witness")
    print(" ".join(f"{k}={v}" for k, v in d.items() if k not in ("witness_disjoint", "disjoint_attainable"))
          + f" value={str(value).replace(' ', '_')}"
          + (f" disjoint={str(out.witness_disjoint).lower()}" if witness else ""))
    for line in witness or []:
        print(line)
    if args.json:
        FilePath(args.json).write_text(dump_json([out.to_dict()]))
    return 0 if out.value is not None else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistcube", description="Twisted hypercube H_n toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, n=True, limit=True):
        if n:
            sp.add_argument("n_pos", nargs="?", type=int, metavar="N")
            sp.add_argument("--n", type=int)
        if limit:
            sp.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                            help="largest n to materialize (default %(default)s)")

    sp = sub.add_parser("gen", help="write the edge list or DOT graph of H_n")
    common(sp)
    sp.add_argument("format_pos", nargs="?", choices=["edgelist", "dot"], metavar="FORMAT")
    sp.add_argument("--format", choices=["edgelist", "dot"])
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("nbr", help='resolve a neighbor chain such as "3,1,1*"')
    sp.add_argument("u")
    sp.add_argument("chain")
    sp.set_defaults(func=cmd_nbr)

    sp = sub.add_parser("cut", help="print an explicit cut family around u")
    common(sp)
    sp.add_argument("shape_pos", nargs="?", metavar="SHAPE")
    sp.add_argument("u_pos", nargs="?", metavar="U")
    sp.add_argument("k_pos", nargs="?", type=int, metavar="K")
    sp.add_argument("--shape")
    sp.add_argument("--u")
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_cut)

    sp = sub.add_parser("verify", help="run acceptance-matrix claims")
    sp.add_argument("claim", choices=["all", *CLAIMS])
    sp.add_argument("range", nargs="?", help="N or LO..HI (default: the claim's own range)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", help="also write a JSON report to this path")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("audit", help="neighborhood bounds, book lemma and local structure")
    common(sp)
    sp.add_argument("--shape")
    sp.add_argument("--samples", type=int, help="sample instead of enumerating")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--exhaustive-max", type=int, default=5,
                    help="largest n audited exhaustively (default %(default)s)")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("search", help="exact minimum (sub)structure cut by exhaustion")
    common(sp)
    sp.add_argument("shape_pos", nargs="?", metavar="SHAPE")
    sp.add_argument("--shape")
    sp.add_argument("--mode", choices=["structure", "substructure"], default="structure")
    sp.add_argument("--budget", type=int, default=3)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--backend", choices=["auto", "numba", "python"], default="auto")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_search)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"twistcube {args.command}: {exc}", file=sys.stderr)
        return 2
    except MemoryError as exc:
        print(f"twistcube {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
