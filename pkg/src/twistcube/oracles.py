"""Ground-truth connectivity oracles over a materialized graph.

Everything here reads only the adjacency of the topology it is handed; it
never consults the neighbor formula or any closed-form value.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Any

import numpy as np

from . import _kernels
from .structures import CutFamily, Instance, Shape, instance_universe
from .topology import Topology

__all__ = [
    "ConnectivityResult",
    "SearchOutcome",
    "ExtraConnectivity",
    "components_after_removal",
    "vertex_connectivity",
    "g_extra_connectivity",
    "g_extra_details",
    "structure_connectivity_exact",
    "family_disconnects",
]

log = logging.getLogger(__name__)


@dataclass
class ConnectivityResult:
    component_count: int
    component_sizes: list[int]
    smallest_component: frozenset[int]
    components: list[frozenset[int]] = field(repr=False, default_factory=list)

    @property
    def disconnected(self) -> bool:
        return self.component_count >= 2


def components_after_removal(topo: Topology, removed) -> ConnectivityResult:
    """Connected components of the graph induced on the survivors."""
    removed = set(removed)
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for s in topo.vertices():
        if s in removed or s in seen:
            continue
        seen.add(s)
        stack = [s]
        comp = [s]
        while stack:
            x = stack.pop()
            for y in topo.neighbors(x):
                if y not in removed and y not in seen:
                    seen.add(y)
                    stack.append(y)
                    comp.append(y)
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (len(c), min(c)))
    return ConnectivityResult(
        component_count=len(comps),
        component_sizes=sorted(len(c) for c in comps),
        smallest_component=comps[0] if comps else frozenset(),
        components=comps,
    )


def family_disconnects(topo: Topology, family: CutFamily) -> bool:
    return components_after_removal(topo, family.vertex_set).disconnected


# -- flows --------------------------------------------------------------------


class _FlowGraph:
    """CSR arrays plus scratch buffers for repeated flow queries."""

    def __init__(self, topo: Topology):
        nv = topo.order
        indptr = np.zeros(nv + 1, dtype=np.int64)
        for v in range(nv):
            indptr[v + 1] = indptr[v] + len(topo.neighbors(v))
        indices = np.empty(indptr[-1], dtype=np.int64)
        pos = {}
        for v in range(nv):
            for j, y in enumerate(topo.neighbors(v)):
                e = indptr[v] + j
                indices[e] = y
                pos[(v, y)] = e
        rev = np.array([pos[(int(indices[e]), v)] for v in range(nv)
                        for e in range(indptr[v], indptr[v + 1])], dtype=np.int64)
        self.nv = nv
        self.indptr, self.indices, self.rev = indptr, indices, rev
        self.used = np.zeros(nv, dtype=np.uint8)
        self.eflow = np.zeros(len(indices), dtype=np.int32)
        self.reach = np.zeros(2 * nv, dtype=np.uint8)

    def flow(self, sources, sinks, cap: int) -> int:
        is_src = np.zeros(self.nv, dtype=np.uint8)
        is_snk = np.zeros(self.nv, dtype=np.uint8)
        is_src[list(sources)] = 1
        is_snk[list(sinks)] = 1
        return int(_kernels.vertex_flow(self.indptr, self.indices, self.rev, is_src, is_snk,
                                        cap, self.used, self.eflow, self.reach))

    def min_cut(self, sources, sinks) -> set[int]:
        """Vertex cut nearest the sources, read off the final residual graph."""
        value = self.flow(sources, sinks, self.nv + 1)
        cut = {v for v in range(self.nv)
               if self.reach[2 * v] and not self.reach[2 * v + 1]}
        assert len(cut) == value, (len(cut), value)
        return cut


def vertex_connectivity(topo: Topology) -> int:
    """Exact kappa(G) by Menger: min over the pairs Even's argument requires."""
    nv = topo.order
    degrees = [topo.degree(v) for v in topo.vertices()]
    if all(d == nv - 1 for d in degrees):
        return nv - 1
    fg = _FlowGraph(topo)
    best = min(degrees)
    i = 0
    # some vertex among the first best+1 lies outside any minimum cut
    while i <= best and i < nv:
        for j in range(i + 1, nv):
            if topo.is_adjacent(i, j):
                continue
            best = min(best, fg.flow([i], [j], best))
        i += 1
    return best


def _connected_sets(topo: Topology, size: int) -> list[tuple[int, ...]]:
    found: set[frozenset[int]] = {frozenset([v]) for v in topo.vertices()}
    for _ in range(size - 1):
        grown: set[frozenset[int]] = set()
        for s in found:
            for v in s:
                for y in topo.neighbors(v):
                    if y not in s:
                        grown.add(s | {y})
        found = grown
    return sorted(tuple(sorted(s)) for s in found)


@dataclass
class ExtraConnectivity:
    g: int
    value: int
    cut: frozenset[int]
    pair: tuple[tuple[int, ...], tuple[int, ...]]
    pairs_evaluated: int
    valid: bool


def g_extra_details(topo: Topology, g: int) -> ExtraConnectivity:
    """kappa_g with a certificate.

    Every pair of disjoint, non-adjacent connected (g+1)-sets is separated
    with a capped flow; the minimum is a lower bound on kappa_g.  The minimum
    cut of a minimising pair is then checked to leave only components of more
    than g vertices, which makes the bound tight.
    """
    if g not in (1, 2):
        raise ValueError(f"g must be 1 or 2, got {g}")
    sets = _connected_sets(topo, g + 1)
    if len(sets) < 2:
        raise ValueError("graph too small for g-extra connectivity")
    fg = _FlowGraph(topo)
    adjmat = np.zeros((topo.order, topo.order), dtype=np.uint8)
    for u, v in topo.edges():
        adjmat[u, v] = adjmat[v, u] = 1
    arr = np.array(sets, dtype=np.int64)
    start = topo.order + 1
    best, bi, bj, evaluated = _kernels.extra_scan(fg.indptr, fg.indices, fg.rev, arr, adjmat, start)
    if bi < 0:
        raise ValueError("no pair of separable connected sets")
    others = ((i, j) for i, j in combinations(range(len(sets)), 2) if (i, j) != (bi, bj))
    for a, b in chain([(bi, bj)], others):
        A, B = sets[a], sets[b]
        if set(A) & set(B) or any(topo.is_adjacent(x, y) for x in A for y in B):
            continue
        if fg.flow(A, B, best + 1) != best:
            continue
        for src, snk in ((A, B), (B, A)):
            cut = fg.min_cut(src, snk)
            res = components_after_removal(topo, cut)
            if res.disconnected and min(res.component_sizes) > g:
                return ExtraConnectivity(g, int(best), frozenset(cut), (A, B), int(evaluated), True)
    log.warning("no minimising pair produced a valid %d-extra cut", g)
    return ExtraConnectivity(g, int(best), frozenset(), (sets[bi], sets[bj]), int(evaluated), False)


def g_extra_connectivity(topo: Topology, g: int) -> int:
    return g_extra_details(topo, g).value


# -- exhaustive family search -------------------------------------------------


@dataclass
class SearchOutcome:
    n: int
    shape: str
    mode: str
    budget: int
    value: int | None
    witness: CutFamily | None
    explored: int
    elapsed_ms: float
    witness_disjoint: bool | None = None
    disjoint_attainable: bool | None = None
    universe: int = 0

    @property
    def exceeds_budget(self) -> bool:
        return self.value is None

    def to_dict(self, claim: str = "search") -> dict[str, Any]:
        return {
            "claim": claim,
            "n": self.n,
            "shape": self.shape,
            "mode": self.mode,
            "value": self.value if self.value is not None else "exceeds budget",
            "witness": self.witness.to_dict()["members"] if self.witness else None,
            "explored": self.explored,
            "elapsed_ms": round(self.elapsed_ms, 1),
            "witness_disjoint": self.witness_disjoint,
            "disjoint_attainable": self.disjoint_attainable,
        }


def _byte_table(topo: Topology) -> np.ndarray:
    masks = [0] * topo.order
    for v in topo.vertices():
        for y in topo.neighbors(v):
            masks[v] |= 1 << y
    table = np.zeros((8, 256), dtype=np.uint64)
    for b in range(8):
        for val in range(256):
            acc = 0
            for bit in range(8):
                v = 8 * b + bit
                if val >> bit & 1 and v < topo.order:
                    acc |= masks[v]
            table[b, val] = acc
    return table


def _scan_chunk(args):
    masks, table, full, m, lo, hi, disjoint_only = args
    found, idx, explored = _kernels.family_scan(masks, table, full, m, lo, hi, disjoint_only)
    return bool(found), [int(x) for x in idx], int(explored)


def _python_scan(universe_masks, nbr_masks, full, m, lo, hi, disjoint_only):
    """Reference scan on Python ints; same order and skip rule as the kernel."""
    u = len(universe_masks)
    explored = 0

    def split(r: int) -> bool:
        if r == 0:
            return False
        reach = frontier = r & -r
        while frontier:
            nb = 0
            f = frontier
            while f:
                low = f & -f
                nb |= nbr_masks[low.bit_length() - 1]
                f ^= low
            nb &= r & ~reach
            reach |= nb
            frontier = nb
        return reach != r

    def rec(start: int, depth: int, pre: int, chosen: list[int]):
        nonlocal explored
        stop = u - (m - depth) + 1
        if depth == 0:
            stop = min(stop, hi)
        for i in range(start, stop):
            x = universe_masks[i]
            if not x & ~pre or (disjoint_only and x & pre):
                continue
            cur = pre | x
            chosen.append(i)
            if depth == m - 1:
                explored += 1
                redundant = any(
                    not universe_masks[chosen[a]] & ~_or_except(universe_masks, chosen, a)
                    for a in range(m - 1)
                )
                if not redundant and split(full & ~cur):
                    return list(chosen)
            else:
                hit = rec(i + 1, depth + 1, cur, chosen)
                if hit is not None:
                    return hit
            chosen.pop()
        return None

    hit = rec(lo, 0, 0, [])
    return hit is not None, hit or [], explored


def _or_except(masks, chosen, skip):
    acc = 0
    for b, i in enumerate(chosen):
        if b != skip:
            acc |= masks[i]
    return acc


class _Scanner:
    def __init__(self, topo: Topology, universe: list[Instance], backend: str, jobs: int):
        if backend == "auto":
            backend = "numba" if topo.order <= 64 else "python"
        if backend == "numba" and topo.order > 64:
            raise ValueError("the compiled scan handles at most 64 vertices")
        self.backend = backend
        self.jobs = max(1, jobs)
        self.size = len(universe)
        self.full = (1 << topo.order) - 1
        if backend == "numba":
            self.masks = np.array([x.mask for x in universe], dtype=np.uint64)
            self.table = _byte_table(topo)
        else:
            self.pmasks = [x.mask for x in universe]
            self.nbr = [sum(1 << y for y in topo.neighbors(v)) for v in topo.vertices()]

    def first(self, m: int, disjoint_only: bool = False) -> tuple[list[int] | None, int]:
        """Lexicographically first disconnecting m-family and the families examined
        up to it (or in total when none exists)."""
        if self.backend == "python":
            found, idx, explored = _python_scan(self.pmasks, self.nbr, self.full, m, 0,
                                                self.size, disjoint_only)
            return (idx if found else None), explored
        full = np.uint64(self.full)
        if self.jobs == 1:
            found, idx, explored = _scan_chunk((self.masks, self.table, full, m, 0, self.size,
                                                disjoint_only))
            return (idx if found else None), explored
        # leading-index chunks, merged in order so the result matches a serial scan
        step = max(1, self.size // (self.jobs * 8))
        bounds = [(lo, min(lo + step, self.size)) for lo in range(0, self.size, step)]
        total = 0
        with ProcessPoolExecutor(self.jobs) as pool:
            for w in range(0, len(bounds), self.jobs):
                wave = bounds[w:w + self.jobs]
                results = list(pool.map(_scan_chunk, [
                    (self.masks, self.table, full, m, lo, hi, disjoint_only) for lo, hi in wave
                ]))
                for found, idx, explored in results:
                    total += explored
                    if found:
                        return idx, total
        return None, total


def structure_connectivity_exact(
    topo: Topology,
    shape: Shape | str,
    mode: str = "structure",
    budget: int = 3,
    *,
    jobs: int = 1,
    backend: str = "auto",
    check_disjoint: bool = True,
) -> SearchOutcome:
    """Smallest m <= budget such that some m instances disconnect the graph.

    Families are unordered sets of distinct instances from the universe
    (T-instances, or all connected subshapes of T in substructure mode);
    members may overlap.  Sizes are tried in increasing order and, within a
    size, combinations in lexicographic order of universe index, so the
    witness is deterministic.
    """
    if isinstance(shape, str):
        shape = Shape.parse(shape)
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    t0 = time.perf_counter()
    universe = instance_universe(topo, shape, mode)
    scanner = _Scanner(topo, universe, backend, jobs)
    explored = 0
    for m in range(1, budget + 1):
        idx, count = scanner.first(m)
        explored += count
        log.debug("%s %s n=%d m=%d examined=%d", shape, mode, topo.n, m, count)
        if idx is None:
            continue
        family = CutFamily([universe[i] for i in idx], shape, mode, "search")
        disjoint = family.pairwise_disjoint()
        attainable = True if disjoint else None
        if not disjoint and check_disjoint:
            alt, count = scanner.first(m, disjoint_only=True)
            attainable = alt is not None
        return SearchOutcome(topo.n, shape.name, mode, budget, m, family, explored,
                             (time.perf_counter() - t0) * 1e3, disjoint, attainable,
                             len(universe))
    return SearchOutcome(topo.n, shape.name, mode, budget, None, None, explored,
                         (time.perf_counter() - t0) * 1e3, universe=len(universe))
