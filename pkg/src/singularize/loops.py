"""Simple edge-cycles on a complex and the operations assigned to them."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence, Union

from .complex import CellComplex, component_count, connected_components, cut_cycle
from .errors import NotACycle, NotSimple

LOOP_KINDS = ("handle", "tunnel", "separating", "unclassified")


@dataclass(frozen=True)
class Collapse:
    pass


@dataclass(frozen=True)
class Zip:
    p: int | None = None
    q: int | None = None


@dataclass(frozen=True)
class IdentifyWith:
    partner: str
    offset: int = 0
    reversed: bool = False


Operation = Union[Collapse, Zip, IdentifyWith, None]


@dataclass(frozen=True)
class LoopMarking:
    """A simple edge-cycle ``vertices[i] -edges[i]- vertices[i+1]`` (closing up)."""

    surface: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    kind: str = "unclassified"
    operation: Operation = None
    name: str = ""

    def __len__(self):
        return len(self.edges)

    def with_kind(self, kind: str) -> "LoopMarking":
        return replace(self, kind=kind)

    def with_operation(self, op: Operation) -> "LoopMarking":
        return replace(self, operation=op)

    def shifted(self, vshift: int, eshift: int) -> "LoopMarking":
        return replace(
            self,
            vertices=tuple(v + vshift for v in self.vertices),
            edges=tuple(e + eshift for e in self.edges),
        )

    def rotated(self, start: int) -> "LoopMarking":
        """Same loop, listed from vertex index ``start``."""
        k = len(self.vertices)
        s = start % k
        return replace(
            self,
            vertices=self.vertices[s:] + self.vertices[:s],
            edges=self.edges[s:] + self.edges[:s],
        )


def _edge_between(c: CellComplex, u: int, v: int) -> int | None:
    best = None
    for e, end in c.edge_ends.get(u, ()):
        t, h = c.edges[e]
        other = h if end == 0 else t
        if other == v and (best is None or e < best):
            best = e
    return best


def validate_simple_cycle(
    c: CellComplex, cycle: Sequence[int], surface: str = "", name: str = ""
) -> LoopMarking:
    """Check that ``cycle`` is a simple closed edge path and mark it.

    Where two vertices are joined by several edges the smallest edge id is
    used.
    """
    cycle = tuple(int(v) for v in cycle)
    if len(cycle) < 3:
        raise NotACycle("a simple cycle needs at least 3 vertices")
    if len(set(cycle)) != len(cycle):
        raise NotSimple(f"cycle repeats a vertex: {list(cycle)}")
    for v in cycle:
        if v not in c.vertices:
            raise NotACycle(f"vertex {v} is not in the complex")
    edges = []
    k = len(cycle)
    for i in range(k):
        u, v = cycle[i], cycle[(i + 1) % k]
        e = _edge_between(c, u, v)
        if e is None:
            raise NotACycle(f"no edge joins {u} and {v}")
        edges.append(e)
    return LoopMarking(surface, cycle, tuple(edges), name=name)


def is_separating(c: CellComplex, loop: LoopMarking) -> bool:
    """True iff cutting along ``loop`` increases the number of components."""
    cut = cut_cycle(c, loop.vertices, loop.edges).complex
    return component_count(cut) > component_count(c)


@dataclass(frozen=True)
class Conflict:
    a: LoopMarking
    b: LoopMarking
    shared: tuple[int, ...]


def check_pairwise_disjoint(loops: Sequence[LoopMarking]) -> list[Conflict]:
    """Every pair of loops sharing a vertex; an empty list means disjoint.

    Vertices are compared per surface, so loops on different surfaces never
    conflict.
    """
    conflicts = []
    for i in range(len(loops)):
        for j in range(i + 1, len(loops)):
            a, b = loops[i], loops[j]
            if a.surface != b.surface:
                continue
            shared = set(a.vertices) & set(b.vertices)
            if shared:
                conflicts.append(Conflict(a, b, tuple(sorted(shared))))
    return conflicts


def are_cobordant(c: CellComplex, a: LoopMarking, b: LoopMarking) -> bool:
    """True iff some piece of ``c`` cut along both loops is bounded by one copy of each."""
    first = cut_cycle(c, a.vertices, a.edges)
    second = cut_cycle(first.complex, b.vertices, b.edges)
    copies = {
        "a0": set(a.vertices),
        "a1": {first.vertex_copy[v] for v in a.vertices},
        "b0": set(b.vertices),
        "b1": {second.vertex_copy[v] for v in b.vertices},
    }
    for comp in connected_components(second.complex):
        touched = {k for k, vs in copies.items() if vs & comp.vertices}
        if len(touched) == 2 and {t[0] for t in touched} == {"a", "b"}:
            return True
    return False
