"""Star and path instances in H_n, and explicit cut families around a vertex.

Composite neighbor labels such as u^{i,1,1*} are produced by ``superscript``,
which only ever applies the single flip-and-fold primitive; nothing in the
cut constructions is transcribed bit by bit.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Union

from .core import Vertex, kappa
from .topology import Topology, neighbor_bits

__all__ = [
    "Shape",
    "Star",
    "Path",
    "Instance",
    "CutFamily",
    "parse_chain",
    "superscript",
    "enumerate_stars",
    "enumerate_paths",
    "enumerate_shape",
    "instance_universe",
    "star_cut_k13",
    "star_cut_k14",
    "path_cut_p2",
    "path_cut_pk",
]


@dataclass(frozen=True)
class Shape:
    """``Shape("star", r)`` is K_{1,r}; ``Shape("path", k)`` is P_k."""

    kind: str
    size: int

    def __post_init__(self) -> None:
        if self.kind not in ("star", "path"):
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.size < 1:
            raise ValueError(f"shape size must be >= 1, got {self.size}")

    _PATTERN = re.compile(r"^\s*(?:k_?\{?1,?(\d+)\}?|p_?\{?(\d+)\}?)\s*$", re.IGNORECASE)

    @classmethod
    def parse(cls, text: str) -> Shape:
        m = cls._PATTERN.match(text)
        if not m:
            raise ValueError(f"cannot parse shape {text!r} (try k13, K1,4, p3)")
        if m.group(1) is not None:
            return cls("star", int(m.group(1)))
        return cls("path", int(m.group(2)))

    @property
    def order(self) -> int:
        return self.size + 1 if self.kind == "star" else self.size

    @property
    def name(self) -> str:
        return f"K1,{self.size}" if self.kind == "star" else f"P{self.size}"

    def __str__(self) -> str:
        return self.name

    def substructures(self) -> list[Shape]:
        """Connected subgraph shapes, largest first, each listed once.

        For stars, K_{1,1} and K_{1,2} stand in for P_2 and P_3.
        """
        if self.kind == "star":
            return [Shape("star", s) for s in range(self.size, 0, -1)] + [Shape("path", 1)]
        return [Shape("path", j) for j in range(self.size, 0, -1)]

    def admits(self, other: Shape) -> bool:
        """Whether ``other`` is (isomorphic to) a connected subgraph of this shape."""
        if self.kind == "star":
            if other.kind == "star":
                return other.size <= self.size
            return other.size <= min(3, self.size + 1)
        if other.kind == "path":
            return other.size <= self.size
        return other.size <= 2 and other.size + 1 <= self.size


def _bits(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _label(v: int, n: int) -> str:
    return format(v, f"0{n}b")


@dataclass(frozen=True)
class Star:
    n: int
    center: int
    leaves: tuple[int, ...]

    kind = "star"

    def __post_init__(self) -> None:
        object.__setattr__(self, "leaves", tuple(sorted(self.leaves)))

    @property
    def shape(self) -> Shape:
        return Shape("star", len(self.leaves))

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center, *self.leaves)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def mask(self) -> int:
        return _bits(self.vertices)

    def canonical(self) -> Star:
        return self

    def key(self) -> tuple[int, ...]:
        return self.vertices

    def is_valid(self, topo: Topology) -> bool:
        if len(set(self.vertices)) != len(self.vertices):
            return False
        return all(topo.is_adjacent(self.center, x) for x in self.leaves)

    def to_text(self) -> str:
        return " ".join([self.shape.name] + [_label(v, self.n) for v in self.vertices])


@dataclass(frozen=True)
class Path:
    n: int
    seq: tuple[int, ...]

    kind = "path"

    @property
    def shape(self) -> Shape:
        return Shape("path", len(self.seq))

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.seq

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.seq)

    @property
    def mask(self) -> int:
        return _bits(self.seq)

    def canonical(self) -> Path:
        rev = self.seq[::-1]
        return self if self.seq <= rev else Path(self.n, rev)

    def key(self) -> tuple[int, ...]:
        return self.canonical().seq

    def is_valid(self, topo: Topology) -> bool:
        if len(set(self.seq)) != len(self.seq):
            return False
        return all(topo.is_adjacent(a, b) for a, b in zip(self.seq, self.seq[1:]))

    def to_text(self) -> str:
        return " ".join([self.shape.name] + [_label(v, self.n) for v in self.key()])


Instance = Union[Star, Path]


@dataclass
class CutFamily:
    """Instances proposed as a (sub)structure cut."""

    members: list[Instance]
    shape: Shape
    mode: str = "structure"
    provenance: str = "search"
    isolated: frozenset[int] | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("structure", "substructure"):
            raise ValueError(f"mode must be structure or substructure, got {self.mode!r}")

    def __len__(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        m = 0
        for x in self.members:
            m |= x.mask
        return m

    @property
    def vertex_set(self) -> frozenset[int]:
        out: set[int] = set()
        for x in self.members:
            out |= x.vertex_set
        return frozenset(out)

    def pairwise_disjoint(self) -> bool:
        return sum(len(x.vertex_set) for x in self.members) == len(self.vertex_set)

    def conforms(self) -> bool:
        """Member shapes respect the family mode."""
        if self.mode == "structure":
            return all(_same_shape(x.shape, self.shape) for x in self.members)
        return all(self.shape.admits(x.shape) for x in self.members)

    def members_valid(self, topo: Topology) -> bool:
        return all(x.is_valid(topo) for x in self.members)

    def to_text(self) -> str:
        head = f"# family shape={self.shape.name} mode={self.mode} provenance={self.provenance} size={len(self)}"
        return "\n".join([head] + [x.to_text() for x in self.members]) + "\n"

    def to_dict(self) -> dict:
        return {
            "shape": self.shape.name,
            "mode": self.mode,
            "provenance": self.provenance,
            "members": [x.to_text() for x in self.members],
        }


def _same_shape(a: Shape, b: Shape) -> bool:
    if a == b:
        return True
    # K_{1,1} = P_2 and K_{1,2} = P_3
    pairs = {(Shape("star", 1), Shape("path", 2)), (Shape("star", 2), Shape("path", 3))}
    return (a, b) in pairs or (b, a) in pairs


# -- superscript notation ---------------------------------------------------

_STEP = re.compile(r"^(\d+)(\*?)$")


def parse_chain(text: str) -> list[tuple[int, bool]]:
    """Parse ``"3,1,1*"`` into ``[(3, False), (1, False), (1, True)]``."""
    steps = []
    for tok in text.replace(" ", "").split(","):
        m = _STEP.match(tok)
        if not m:
            raise ValueError(f"malformed superscript step {tok!r} in {text!r}")
        steps.append((int(m.group(1)), bool(m.group(2))))
    if not steps:
        raise ValueError("empty superscript chain")
    return steps


def _resolve(u: int, n: int, steps) -> int:
    # plain j advances the position by j; starred i jumps to position i
    pos = 0
    w = u
    for idx, starred in steps:
        pos = idx if starred else pos + idx
        if not 1 <= pos <= n:
            raise ValueError(f"superscript position {pos} outside 1..{n}")
        w = neighbor_bits(w, pos, n)
    return w


def superscript(u: Vertex | str, chain: str | list[tuple[int, bool]]) -> Vertex:
    """Evaluate composite neighbor notation, e.g. ``superscript("0010", "2,1,1*")``."""
    if isinstance(u, str):
        u = Vertex.parse(u)
    steps = parse_chain(chain) if isinstance(chain, str) else chain
    return Vertex(u.n, _resolve(u.value, u.n, steps))


class _Sup:
    """Shorthand used by the constructions: ``s("3,1,1*")`` -> vertex id."""

    def __init__(self, u: int, n: int):
        self.u, self.n = u, n

    def __call__(self, chain: str) -> int:
        return _resolve(self.u, self.n, parse_chain(chain))


# -- enumeration ------------------------------------------------------------

def enumerate_stars(topo: Topology, r: int) -> list[Star]:
    """All K_{1,r} subgraphs; for r == 1 each edge once, centred at its smaller end."""
    if not 1 <= r <= topo.n:
        raise ValueError(f"leaf count r={r} outside 1..{topo.n}")
    out = []
    for c in topo.vertices():
        nbrs = topo.neighbors(c)
        if r == 1:
            out.extend(Star(topo.n, c, (x,)) for x in nbrs if x > c)
        else:
            out.extend(Star(topo.n, c, leaves) for leaves in combinations(nbrs, r))
    out.sort(key=Star.key)
    return out


def enumerate_paths(topo: Topology, k: int) -> list[Path]:
    """All simple paths on k vertices, one orientation each."""
    if k < 1:
        raise ValueError(f"path order must be >= 1, got {k}")
    n = topo.n
    out: list[Path] = []
    adj = [topo.neighbors(v) for v in topo.vertices()]

    def extend(seq: list[int], used: set[int]) -> None:
        if len(seq) == k:
            if seq[0] < seq[-1] or k == 1:
                out.append(Path(n, tuple(seq)))
            return
        for w in adj[seq[-1]]:
            if w not in used:
                seq.append(w)
                used.add(w)
                extend(seq, used)
                used.discard(w)
                seq.pop()

    for v in topo.vertices():
        extend([v], {v})
    out.sort(key=Path.key)
    return out


def enumerate_shape(topo: Topology, shape: Shape) -> list[Instance]:
    if shape.kind == "star":
        return enumerate_stars(topo, shape.size)
    return enumerate_paths(topo, shape.size)


def instance_universe(topo: Topology, shape: Shape, mode: str) -> list[Instance]:
    """Search universe: T itself, or every connected subshape (largest first)."""
    if mode == "structure":
        return enumerate_shape(topo, shape)
    if mode != "substructure":
        raise ValueError(f"mode must be structure or substructure, got {mode!r}")
    out: list[Instance] = []
    for s in shape.substructures():
        if s.kind == "star" and s.size > topo.n:
            continue
        out.extend(enumerate_shape(topo, s))
    return out


# -- explicit cuts ----------------------------------------------------------

def _anchor(u: Vertex | str) -> tuple[int, int]:
    if isinstance(u, str):
        u = Vertex.parse(u)
    return u.value, u.n


def star_cut_k13(u: Vertex | str) -> CutFamily:
    """ceil(n/2) disjoint K_{1,3} covering N(u)."""
    uid, n = _anchor(u)
    if n < 4:
        raise ValueError(f"K1,3 cut needs n >= 4, got {n}")
    s = _Sup(uid, n)

    def t(i: int) -> Star:
        return Star(n, s(f"{i},1"), (s(f"{i}"), s(f"{i + 1}"), s(f"{i},1,1")))

    if n % 2:
        members = [t(i) for i in range(1, n - 1, 2)]
        members.append(Star(n, s(f"{n}"), (s(f"{n - 1},1"), s(f"{n},1*"), s(f"{n},2*"))))
    else:
        members = [t(i) for i in range(1, n - 2, 2)]
        members.append(
            Star(n, s(f"{n - 1},1"), (s(f"{n - 1}"), s(f"{n}"), s(f"{n - 1},1,1*")))
        )
    return CutFamily(members, Shape("star", 3), "structure", "k13-isolate", frozenset({uid}))


def star_cut_k14(u: Vertex | str) -> CutFamily:
    """ceil(n/2) disjoint K_{1,4} covering N(u)."""
    uid, n = _anchor(u)
    if n < 4:
        raise ValueError(f"K1,4 cut needs n >= 4, got {n}")
    s = _Sup(uid, n)

    def t(i: int) -> Star:
        return Star(
            n, s(f"{i},1"), (s(f"{i}"), s(f"{i + 1}"), s(f"{i},1,1"), s(f"{i},1,2"))
        )

    if n % 2:
        members = [t(i) for i in range(1, n - 3, 2)]
        members.append(
            Star(
                n,
                s(f"{n - 2},1"),
                (s(f"{n - 2}"), s(f"{n - 1}"), s(f"{n - 2},1,1"), s(f"{n - 2},1,1*")),
            )
        )
        members.append(
            Star(n, s(f"{n}"), (s(f"{n - 1},1"), s(f"{n},1*"), s(f"{n},2*"), s(f"{n},3*")))
        )
    else:
        members = [t(i) for i in range(1, n - 2, 2)]
        members.append(
            Star(
                n,
                s(f"{n - 1},1"),
                (s(f"{n - 1}"), s(f"{n}"), s(f"{n - 1},1,1*"), s(f"{n - 1},1,2*")),
            )
        )
    return CutFamily(members, Shape("star", 4), "structure", "k14-isolate", frozenset({uid}))


def path_cut_p2(u: Vertex | str) -> CutFamily:
    """Edge cut: n-1 edges around a 4-cycle book when kappa(n-1) == 1, else n edges.

    The first branch is only defined for the all-zeros vertex.
    """
    uid, n = _anchor(u)
    if n < 3:
        raise ValueError(f"P2 cut needs n >= 3, got {n}")
    s = _Sup(uid, n)
    if kappa(n - 1) == 1:
        if uid != 0:
            raise ValueError("the n-1 edge cut is only defined at the all-zeros vertex")
        v = s(f"{n - 1}")
        members = [
            Path(n, (s(f"{i}"), neighbor_bits(v, i, n))) for i in range(1, n + 1) if i != n - 1
        ]
        return CutFamily(members, Shape("path", 2), "structure", "p2-c4-book", frozenset({uid, v}))
    members = [Path(n, (s(f"{i}"), s(f"{i},1"))) for i in range(1, n)]
    members.append(Path(n, (s(f"{n}"), s(f"{n},1*"))))
    return CutFamily(members, Shape("path", 2), "structure", "p2-isolate", frozenset({uid}))


def path_cut_pk(u: Vertex | str, k: int) -> CutFamily:
    """Disjoint P_k's covering N(u): ceil(2n/(k+1)) for odd k, ceil(2n/k) for even k."""
    uid, n = _anchor(u)
    if not 3 <= k <= n:
        raise ValueError(f"path order k={k} outside 3..{n}")
    s = _Sup(uid, n)

    def run(first: int, last: int, close: bool) -> list[int]:
        # u^first, u^{first,1}, u^{first+1}, ..., u^last [, u^{last,1}]
        seq = []
        for i in range(first, last + 1):
            seq.append(s(f"{i}"))
            if i < last or close:
                seq.append(s(f"{i},1") if i < n else s(f"{n},1*"))
        return seq

    if k % 2:
        width, close = (k + 1) // 2, False
    else:
        width, close = k // 2, True
    q, r = divmod(n, width)
    members = [Path(n, tuple(run(j * width + 1, (j + 1) * width, close))) for j in range(q)]
    if r:
        seq = run(n - r + 1, n, False)
        w = seq[-1]
        lowest = n - k + 2 * r - 2
        if lowest < 1:
            raise ValueError(f"no tail path recipe for n={n}, k={k}")
        for pos in range(n - 2, lowest - 1, -1):
            w = neighbor_bits(w, pos, n)
            seq.append(w)
        members.append(Path(n, tuple(seq)))
    expected = math.ceil(2 * n / (k + 1)) if k % 2 else math.ceil(2 * n / k)
    assert len(members) == expected, (n, k, len(members), expected)
    return CutFamily(members, Shape("path", k), "structure", "pk-isolate", frozenset({uid}))
