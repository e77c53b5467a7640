"""Twisted hypercube H_n, built two ways behind one interface.

``build_recursive`` follows the doubling construction literally (two copies
of H_{n-1} joined by the matching 0x -- 1phi(x)) and records which dimension
each edge came from.  ``ImplicitTopology`` answers every query from the
closed-form neighbor rule and never stores edges.  Both address vertices by
integer id (the label read with bit 1 most significant).
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Iterator

import numpy as np

from .core import MAX_BITS, Vertex, kappa, phi_bits
from .reports import VerificationReport

__all__ = [
    "Topology",
    "MaterializedTopology",
    "ImplicitTopology",
    "build_recursive",
    "neighbor",
    "neighbor_bits",
    "is_adjacent",
    "neighborhood",
    "equivalence_check",
    "edge_list",
    "to_dot",
    "DEFAULT_LIMIT",
]

DEFAULT_LIMIT = 20


def neighbor_bits(u: int, i: int, n: int) -> int:
    """Integer form of the i-neighbor: keep bits 1..i-1, flip bit i, fold the suffix."""
    if not 1 <= i <= n:
        raise ValueError(f"neighbor index {i} outside 1..{n}")
    m = n - i
    suffix = u & ((1 << m) - 1)
    head = (u >> m) ^ 1
    return (head << m) | phi_bits(suffix, m)


def neighbor(u: Vertex | str, i: int) -> Vertex:
    if isinstance(u, str):
        u = Vertex.parse(u)
    return Vertex(u.n, neighbor_bits(u.value, i, u.n))


def is_adjacent(u: Vertex | str, v: Vertex | str) -> bool:
    if isinstance(u, str):
        u = Vertex.parse(u)
    if isinstance(v, str):
        v = Vertex.parse(v)
    if u.n != v.n:
        raise ValueError(f"length mismatch: {u.n} != {v.n}")
    return any(neighbor_bits(u.value, i, u.n) == v.value for i in range(1, u.n + 1))


def neighborhood(s: Iterable[Vertex | str]) -> set[Vertex]:
    verts = {Vertex.parse(x) if isinstance(x, str) else x for x in s}
    if not verts:
        raise ValueError("neighborhood of an empty set")
    lengths = {v.n for v in verts}
    if len(lengths) != 1:
        raise ValueError(f"mixed vertex lengths {sorted(lengths)}")
    (n,) = lengths
    topo = ImplicitTopology(n)
    ids = topo.neighborhood(v.value for v in verts)
    return {Vertex(n, x) for x in ids}


class Topology:
    """Shared query surface; subclasses provide ``neighbors`` and ``neighbor``."""

    n: int

    @property
    def order(self) -> int:
        return 1 << self.n

    def vertices(self) -> range:
        return range(self.order)

    def neighbors(self, v: int) -> tuple[int, ...]:
        raise NotImplementedError

    def neighbor(self, v: int, i: int) -> int:
        raise NotImplementedError

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def is_adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def neighborhood(self, s: Iterable[int]) -> set[int]:
        s = set(s)
        out: set[int] = set()
        for v in s:
            out.update(self.neighbors(v))
        return out - s

    def vertex(self, v: int) -> Vertex:
        return Vertex(self.n, v)

    def label(self, v: int) -> str:
        return format(v, f"0{self.n}b")

    def vid(self, v: Vertex | str | int) -> int:
        if isinstance(v, int):
            if not 0 <= v < self.order:
                raise ValueError(f"vertex id {v} outside H_{self.n}")
            return v
        if isinstance(v, str):
            v = Vertex.parse(v)
        if v.n != self.n:
            raise ValueError(f"vertex {v} has length {v.n}, expected {self.n}")
        return v.value

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in self.vertices():
            for v in self.neighbors(u):
                if u < v:
                    yield u, v


class ImplicitTopology(Topology):
    """Formula-backed H_n; nothing is stored."""

    def __init__(self, n: int):
        if not 1 <= n <= MAX_BITS:
            raise ValueError(f"dimension must be in 1..{MAX_BITS}, got {n}")
        self.n = n

    def neighbor(self, v: int, i: int) -> int:
        return neighbor_bits(v, i, self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(neighbor_bits(v, i, self.n) for i in range(1, self.n + 1)))

    def __repr__(self) -> str:
        return f"ImplicitTopology(n={self.n})"


class MaterializedTopology(Topology):
    """Explicit adjacency.  ``dims[v, i-1]`` is the i-neighbor of ``v``."""

    def __init__(self, n: int, dims: np.ndarray):
        if dims.shape != (1 << n, n):
            raise ValueError(f"dimension table has shape {dims.shape}")
        self.n = n
        self.dims = dims
        self.dims.setflags(write=False)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(x) for x in row) for row in np.sort(dims, axis=1)
        )
        self._adjsets = [frozenset(row) for row in self.adjacency]
        self._masks: list[int] | None = None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor(self, v: int, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"neighbor index {i} outside 1..{self.n}")
        return int(self.dims[v, i - 1])

    def is_adjacent(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    @property
    def neighbor_masks(self) -> list[int]:
        """Per-vertex neighbor bitsets as Python ints (bit v set for vertex v)."""
        if self._masks is None:
            self._masks = [sum(1 << w for w in row) for row in self.adjacency]
        return self._masks

    def edge_count(self) -> int:
        return sum(len(r) for r in self.adjacency) // 2

    def __repr__(self) -> str:
        return f"MaterializedTopology(n={self.n})"


def _fold_table(m: int) -> np.ndarray:
    """Fold permutation of all m-bit labels, evaluated on an explicit bit matrix."""
    ids = np.arange(1 << m, dtype=np.int64)
    if m == 0:
        return ids
    # column c holds bit c+1 (leftmost first)
    bits = (ids[:, None] >> np.arange(m - 1, -1, -1)) & 1
    k = kappa(m)
    if k:
        bits[:, :k] ^= bits[:, m - k:]
    weights = 1 << np.arange(m - 1, -1, -1, dtype=np.int64)
    return bits @ weights


def build_recursive(n: int, limit: int = DEFAULT_LIMIT) -> MaterializedTopology:
    """Materialize H_n by repeated doubling."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n > limit:
        raise MemoryError(
            f"H_{n} has {1 << n} vertices; materialization limit is n={limit}"
        )
    dims = np.array([[1], [0]], dtype=np.int32)  # H_1 = K_2
    for m in range(2, n + 1):
        half = 1 << (m - 1)
        new = np.empty((2 * half, m), dtype=np.int32)
        new[:half, 1:] = dims
        new[half:, 1:] = dims + half
        fold = _fold_table(m - 1)
        cross = np.full(2 * half, -1, dtype=np.int64)
        lo = np.arange(half)
        hi = fold + half
        cross[lo] = hi
        if np.any(cross[hi] != -1):
            raise AssertionError(f"cross edges at level {m} are not a matching")
        cross[hi] = lo
        if np.any(cross < 0):
            raise AssertionError(f"cross edges at level {m} miss a vertex")
        new[:, 0] = cross
        dims = new
    return MaterializedTopology(n, dims)


def equivalence_check(n: int, limit: int = DEFAULT_LIMIT) -> VerificationReport:
    """Compare the doubling construction with the neighbor formula, dimension by dimension."""
    t0 = time.perf_counter()
    mat = build_recursive(n, limit)
    imp = ImplicitTopology(n)
    witness = None
    for v in mat.vertices():
        expect = [imp.neighbor(v, i) for i in range(1, n + 1)]
        got = [int(x) for x in mat.dims[v]]
        if expect != got:
            witness = {
                "vertex": mat.label(v),
                "recursive": [mat.label(x) for x in got],
                "formula": [mat.label(x) for x in expect],
            }
            break
    return VerificationReport(
        claim="topology-equivalence",
        params={"n": n},
        passed=witness is None,
        witness=witness,
        details={"edges": mat.edge_count()},
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def edge_list(topo: Topology) -> str:
    """One ``a b`` line per edge, a < b, lexicographic, LF-terminated."""
    lines = [f"{topo.label(u)} {topo.label(v)}" for u, v in sorted(topo.edges())]
    return "".join(line + "\n" for line in lines)


def to_dot(topo: Topology) -> str:
    out = [f"graph H{topo.n} {{"]
    out += [f'  "{topo.label(v)}";' for v in topo.vertices()]
    out += [f'  "{topo.label(u)}" -- "{topo.label(v)}";' for u, v in sorted(topo.edges())]
    out.append("}")
    return "\n".join(out) + "\n"
