"""Local counting audits: how many neighbors of an outside vertex or edge a
star or path can contain, the absence of 4-cycle books, and the small
common-neighbor facts the cut constructions rely on.

Exhaustive mode walks every instance of a materialized graph; sampled mode
draws random instances and vertices from any topology, so it also runs on
formula-backed graphs far too large to store.
"""

from __future__ import annotations

import math
import random
import time
from collections import Counter

from .core import kappa
from .reports import VerificationReport
from .structures import Instance, Path, Shape, Star, enumerate_shape, path_cut_p2
from .topology import ImplicitTopology, Topology

__all__ = [
    "vertex_bound",
    "edge_bound",
    "neighborhood_bound_audit",
    "star_family_edge_audit",
    "book_lemma_check",
    "p2_isolating_family_audit",
    "local_structure_audit",
    "adjacent_pair_identity_audit",
    "random_instance",
]


def vertex_bound(shape: Shape) -> int:
    """Most vertices of one instance adjacent to a single outside vertex."""
    if shape.kind == "star":
        return min(2, shape.size + 1)
    return math.ceil(shape.size / 2)


def edge_bound(shape: Shape) -> int | None:
    """Most vertices of one instance in the neighborhood of an outside edge."""
    if shape.kind == "star":
        return 3 if shape.size == 3 else 4
    k = shape.size
    if k < 3:
        return None
    return min(2 * (k // 3) + k % 3, k - 1)


def random_instance(topo: Topology, shape: Shape, rng: random.Random) -> Instance:
    n = topo.n
    if shape.kind == "star":
        c = rng.getrandbits(n)
        return Star(n, c, tuple(rng.sample(topo.neighbors(c), shape.size)))
    while True:
        seq = [rng.getrandbits(n)]
        while len(seq) < shape.size:
            options = [w for w in topo.neighbors(seq[-1]) if w not in seq]
            if not options:
                break
            seq.append(rng.choice(options))
        if len(seq) == shape.size:
            return Path(n, tuple(seq))


def _instances(topo: Topology, shape: Shape, samples: int | None, seed: int):
    if samples is None:
        return enumerate_shape(topo, shape)
    rng = random.Random(seed)
    return [random_instance(topo, shape, rng) for _ in range(samples)]


def neighborhood_bound_audit(
    topo: Topology, shape: Shape | str, samples: int | None = None, seed: int = 0
) -> VerificationReport:
    """Check the single-vertex and single-edge intersection bounds for every
    (or ``samples`` random) instance of ``shape``.

    For stars with an edge meeting four instance vertices, also check that
    neither edge end is adjacent to the center and that both ends and the
    center share their first bit.
    """
    if isinstance(shape, str):
        shape = Shape.parse(shape)
    t0 = time.perf_counter()
    vb, eb = vertex_bound(shape), edge_bound(shape)
    vmax = emax = 0
    witness = None
    count = 0
    top = 1 << (topo.n - 1)
    for inst in _instances(topo, shape, samples, seed):
        count += 1
        s = inst.vertex_set
        nbr = {v: set(topo.neighbors(v)) for v in topo.neighborhood(s)}
        for v, nv in nbr.items():
            c = len(nv & s)
            vmax = max(vmax, c)
            if c > vb and witness is None:
                witness = {"instance": inst.to_text(), "vertex": topo.label(v), "count": c}
        if eb is None:
            continue
        for a in nbr:
            for b in nbr[a]:
                if b in s:
                    continue
                # an end outside N(S) adds nothing to the count
                c = len((nbr[a] | nbr.get(b, set())) & s)
                emax = max(emax, c)
                bad = c > eb
                if not bad and shape.kind == "star" and c == 4:
                    x = inst.center
                    bad = (
                        topo.is_adjacent(a, x)
                        or topo.is_adjacent(b, x)
                        or len({a & top, b & top, x & top}) != 1
                    )
                if bad and witness is None:
                    witness = {
                        "instance": inst.to_text(),
                        "edge": [topo.label(a), topo.label(b)],
                        "count": c,
                    }
    details = {"instances": count, "vertex_max": vmax, "vertex_bound": vb}
    if eb is not None:
        details.update(edge_max=emax, edge_bound=eb)
    return VerificationReport(
        claim=f"audit-{shape.name}",
        params={"n": topo.n, "shape": shape.name, "mode": "exhaustive" if samples is None else "sampled"},
        passed=witness is None,
        witness=witness,
        details=details,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def star_family_edge_audit(
    topo: Topology, samples: int | None = None, seed: int = 0
) -> VerificationReport:
    """No ceil(n/2) - 1 stars avoiding an edge contain its whole neighborhood,
    so at most 2n - 3 of its 2n - 2 vertices are covered.

    Per center the best star takes every neighbor of the edge it can reach, so
    one maximal cover per center is enough.
    """
    t0 = time.perf_counter()
    n = topo.n
    m = math.ceil(n / 2) - 1
    bound = 2 * n - 3
    if samples is None:
        edges = list(topo.edges())
    else:
        rng = random.Random(seed)
        edges = []
        for _ in range(samples):
            a = rng.getrandbits(n)
            edges.append((a, rng.choice(topo.neighbors(a))))
    full = (1 << (2 * n - 2)) - 1
    widest = 0
    witness = None
    for a, b in edges:
        target = sorted(topo.neighborhood({a, b}))
        pos = {v: i for i, v in enumerate(target)}
        # cover[x]: the part of the target a star centred at x can contain
        cover: dict[int, int] = {}
        for t, i in pos.items():
            cover[t] = cover.get(t, 0) | 1 << i
            for x in topo.neighbors(t):
                if x != a and x != b:
                    cover[x] = cover.get(x, 0) | 1 << i
        covers = set(cover.values())
        widest = max(widest, max(c.bit_count() for c in covers))
        if _can_cover(covers, full, m) and witness is None:
            witness = {"edge": [topo.label(a), topo.label(b)], "stars": m}
    return VerificationReport(
        claim="audit-star-family",
        params={"n": n, "stars": m, "mode": "exhaustive" if samples is None else "sampled"},
        passed=witness is None,
        witness=witness,
        details={"edges": len(edges), "widest_star": widest, "bound": bound},
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def _maximal(masks: set[int]) -> set[int]:
    return {x for x in masks if not any(y != x and x & y == x for y in masks)}


def _can_cover(masks, target: int, m: int) -> bool:
    """Whether at most m masks cover ``target``: branch on its lowest uncovered bit."""
    widest = max((x.bit_count() for x in masks), default=0)
    if widest * m < target.bit_count():
        return False
    return _cover_rec(sorted(_maximal(set(masks)), reverse=True), target, m)


def _cover_rec(masks: list[int], target: int, m: int) -> bool:
    if not target:
        return True
    if m == 0:
        return False
    widest = max((x & target).bit_count() for x in masks) if masks else 0
    if widest * m < target.bit_count():
        return False
    low = target & -target
    return any(_cover_rec(masks, target & ~x, m - 1) for x in masks if x & low)


def book_lemma_check(n: int, samples: int = 50, seed: int = 0) -> VerificationReport:
    """Common neighbors around a vertex, in whichever regime kappa(n-1) puts H_n.

    kappa(n-1) >= 2: for sampled u, u^i (i <= n-2) and u^n share only u, and
    so do u^{n-1} and u^1.  kappa(n-1) == 1: with u = 0...0 and v = u^{n-1},
    every u^i, v^i (i != n-1) is an edge closing the 4-cycle u, u^i, v^i, v.
    """
    t0 = time.perf_counter()
    topo = ImplicitTopology(n)
    witness = None
    checks = 0
    if kappa(n - 1) >= 2:
        regime = "no-book"
        rng = random.Random(seed)
        for _ in range(samples):
            u = rng.getrandbits(n)
            nb = [None] + [topo.neighbor(u, i) for i in range(1, n + 1)]
            pairs = [(i, n) for i in range(1, n - 1)] + [(n - 1, 1)]
            for i, j in pairs:
                common = set(topo.neighbors(nb[i])) & set(topo.neighbors(nb[j]))
                checks += 1
                if common != {u} and witness is None:
                    witness = {
                        "u": topo.label(u),
                        "pair": [i, j],
                        "common": sorted(topo.label(x) for x in common),
                    }
    else:
        regime = "c4-book"
        u = 0
        v = topo.neighbor(u, n - 1)
        for i in range(1, n + 1):
            if i == n - 1:
                continue
            ui, vi = topo.neighbor(u, i), topo.neighbor(v, i)
            checks += 1
            cycle = {u, ui, vi, v}
            if not (topo.is_adjacent(ui, vi) and len(cycle) == 4) and witness is None:
                witness = {"i": i, "u^i": topo.label(ui), "v^i": topo.label(vi)}
    return VerificationReport(
        claim="book-lemma",
        params={"n": n, "regime": regime, "samples": samples if regime == "no-book" else 1},
        passed=witness is None,
        witness=witness,
        details={"checks": checks},
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def p2_isolating_family_audit(n: int, samples: int = 50, seed: int = 0) -> VerificationReport:
    """The n-edge family {u^i u^{i,1}} + {u^n u^{n,1*}} for kappa(n-1) >= 2,
    checked by formula: valid edges, pairwise disjoint, covering N(u), avoiding u."""
    if kappa(n - 1) < 2:
        raise ValueError(f"kappa({n - 1}) = 1; the n-edge family applies only when it is >= 2")
    t0 = time.perf_counter()
    topo = ImplicitTopology(n)
    rng = random.Random(seed)
    witness = None
    for _ in range(samples):
        u = rng.getrandbits(n)
        fam = path_cut_p2(topo.vertex(u))
        covered = fam.vertex_set
        problems = []
        if len(fam) != n:
            problems.append("size")
        if not fam.members_valid(topo):
            problems.append("not-edges")
        if not fam.pairwise_disjoint():
            problems.append("overlap")
        if not set(topo.neighbors(u)) <= covered:
            problems.append("uncovered")
        if u in covered:
            problems.append("contains-u")
        if problems and witness is None:
            witness = {"u": topo.label(u), "problems": problems}
    return VerificationReport(
        claim="p2-isolating-family",
        params={"n": n, "samples": samples},
        passed=witness is None,
        witness=witness,
        details={"family_size": n},
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def local_structure_audit(
    topo: Topology, samples: int | None = None, seed: int = 0
) -> VerificationReport:
    """Degree n, no triangles, and at most two common neighbors for any pair."""
    t0 = time.perf_counter()
    if samples is None:
        roots = list(topo.vertices())
    else:
        rng = random.Random(seed)
        roots = [rng.getrandbits(topo.n) for _ in range(samples)]
    witness = None
    max_common = 0
    for u in roots:
        nbrs = topo.neighbors(u)
        if len(set(nbrs)) != topo.n or u in nbrs:
            witness = witness or {"u": topo.label(u), "problem": "degree"}
        near = {a: set(topo.neighbors(a)) for a in nbrs}
        for a in nbrs:
            for b in near[a] & set(nbrs):
                witness = witness or {"u": topo.label(u), "triangle": [topo.label(a), topo.label(b)]}
        two_step = Counter(w for a in nbrs for w in near[a] if w != u)
        if two_step:
            w, c = two_step.most_common(1)[0]
            max_common = max(max_common, c)
            if c > 2:
                witness = witness or {"u": topo.label(u), "w": topo.label(w), "common": c}
    return VerificationReport(
        claim="local-structure",
        params={"n": topo.n, "mode": "exhaustive" if samples is None else "sampled"},
        passed=witness is None,
        witness=witness,
        details={"roots": len(roots), "max_common": max_common},
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def adjacent_pair_identity_audit(
    topo: Topology, samples: int | None = None, seed: int = 0
) -> VerificationReport:
    """N(u^i) and N(u^{i+1}) meet exactly in {u, u^{i,1}} for 1 <= i <= n-1."""
    t0 = time.perf_counter()
    n = topo.n
    if samples is None:
        roots = list(topo.vertices())
    else:
        rng = random.Random(seed)
        roots = [rng.getrandbits(n) for _ in range(samples)]
    witness = None
    for u in roots:
        for i in range(1, n):
            a, b = topo.neighbor(u, i), topo.neighbor(u, i + 1)
            expect = {u, topo.neighbor(a, i + 1)}
            got = set(topo.neighbors(a)) & set(topo.neighbors(b))
            if got != expect and witness is None:
                witness = {"u": topo.label(u), "i": i, "common": sorted(topo.label(x) for x in got)}
    return VerificationReport(
        claim="adjacent-pair-identity",
        params={"n": n, "mode": "exhaustive" if samples is None else "sampled"},
        passed=witness is None,
        witness=witness,
        details={"roots": len(roots)},
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )
