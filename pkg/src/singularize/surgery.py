"""Collapsing, zipping and double loop identification as cell quotients."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace

from .complex import (
    CellComplex,
    euler_count,
    quotient,
    singular_edges,
    singular_vertices,
)
from .errors import (
    ArcMismatch,
    DegenerateArc,
    LengthMismatch,
    OverlapError,
    SelfIdentification,
)
from .homology import HomologyProfile, betti_numbers
from .loops import LoopMarking, is_separating


@dataclass(frozen=True)
class OpRecord:
    kind: str  # "collapse" | "zip" | "identify"
    loops: tuple[str, ...]
    delta_euler: int
    before: HomologyProfile | None = None
    after: HomologyProfile | None = None
    separating: bool | None = None
    zip_matches_collapse: bool | None = None

    @property
    def delta_chi(self) -> int | None:
        if self.before is None or self.after is None:
            return None
        return self.after.chi - self.before.chi

    @property
    def delta_betti(self) -> tuple[int, int, int] | None:
        if self.before is None or self.after is None:
            return None
        return self.before.delta(self.after)


@dataclass(frozen=True)
class SingularComplex:
    carrier: CellComplex
    op_log: tuple[OpRecord, ...] = ()
    singular_vertices: frozenset[int] = frozenset()
    singular_edges: frozenset[int] = frozenset()
    cone_points: frozenset[int] = field(default=frozenset(), compare=False)
    pinch_points: frozenset[int] = field(default=frozenset(), compare=False)

    @classmethod
    def smooth(cls, c: CellComplex) -> "SingularComplex":
        return cls(c)

    def _count(self, kind):
        return sum(1 for r in self.op_log if r.kind == kind)

    @property
    def C(self) -> int:
        return self._count("collapse")

    @property
    def Z(self) -> int:
        return self._count("zip")

    @property
    def D(self) -> int:
        return self._count("identify")

    def with_carrier(self, c: CellComplex) -> "SingularComplex":
        """Swap in a refined carrier (subdivision away from singular cells)."""
        return replace(self, carrier=c)


def _check_available(s: SingularComplex, loop: LoopMarking):
    c = s.carrier
    k = len(loop.vertices)
    if k < 3 or k != len(loop.edges):
        raise OverlapError(f"loop {loop.name!r} is not a valid cycle")
    for i, e in enumerate(loop.edges):
        if e not in c.edges or e in c.deleted_edges:
            raise OverlapError(f"loop {loop.name!r} uses a missing or collapsed edge {e}")
        ends = set(c.edges[e])
        if ends != {loop.vertices[i], loop.vertices[(i + 1) % k]}:
            raise OverlapError(f"loop {loop.name!r} edge {e} no longer joins its vertices")
        if e in s.singular_edges or c.edge_face_count[e] != 2:
            raise OverlapError(f"loop {loop.name!r} touches singular edge {e}")
    for v in loop.vertices:
        if v not in c.vertices or v in s.singular_vertices:
            raise OverlapError(f"loop {loop.name!r} touches singular or merged vertex {v}")


def _measure(c: CellComplex, measure: bool):
    return betti_numbers(c) if measure else None


def _map_corr(c: CellComplex, corr: dict[int, int], pairs):
    """Edge identifications from a vertex correspondence of edge pairs."""
    out = []
    for e1, e2 in pairs:
        t1, _ = c.edges[e1]
        t2, h2 = c.edges[e2]
        if corr[t1] == t2:
            out.append((e1, e2, True))
        elif corr[t1] == h2:
            out.append((e1, e2, False))
        else:
            raise ArcMismatch(f"edges {e1} and {e2} do not correspond")
    return out


def collapse(s: SingularComplex, loop: LoopMarking, measure: bool = True) -> SingularComplex:
    """Contract ``loop`` to a single vertex (a cone point)."""
    _check_available(s, loop)
    c = s.carrier
    before = _measure(c, measure)
    sep = is_separating(c, loop) if measure else None
    p = min(loop.vertices)
    out = quotient(c, [(p, v) for v in loop.vertices], delete=loop.edges)
    record = OpRecord(
        "collapse", (loop.name,), euler_count(out) - euler_count(c), before, _measure(out, measure), sep
    )
    return replace(
        s,
        carrier=out,
        op_log=s.op_log + (record,),
        singular_vertices=s.singular_vertices | {p},
        cone_points=s.cone_points | {p},
    )


def zip_loop(
    s: SingularComplex, loop: LoopMarking, p: int, q: int, measure: bool = True
) -> SingularComplex:
    """Fold ``loop`` onto the arc from ``p`` to ``q``.

    The two arcs between ``p`` and ``q`` must have equal length ``m``; arc one
    is glued to arc two reversed, fixing ``p`` and ``q``.
    """
    _check_available(s, loop)
    if p == q:
        raise DegenerateArc("zip endpoints must differ")
    if p not in loop.vertices or q not in loop.vertices:
        raise ArcMismatch("zip endpoints must lie on the loop")
    rot = loop.rotated(loop.vertices.index(p))
    k = len(rot.vertices)
    m = rot.vertices.index(q)
    if 2 * m != k:
        raise ArcMismatch(f"arcs from {p} to {q} have lengths {m} and {k - m}")
    c = s.carrier
    before = _measure(c, measure)
    sep = is_separating(c, loop) if measure else None
    vs, es = rot.vertices, rot.edges
    corr = {vs[i]: vs[(k - i) % k] for i in range(k)}
    vpairs = [(vs[i], vs[k - i]) for i in range(1, m)]
    epairs = _map_corr(c, corr, [(es[i], es[k - 1 - i]) for i in range(m)])
    out = quotient(c, vpairs, epairs)
    merged_v = {min(vs[i], vs[(k - i) % k]) for i in range(m + 1)}
    merged_e = {min(es[i], es[k - 1 - i]) for i in range(m)}
    after = _measure(out, measure)
    matches = None
    if measure:
        # zipping is homotopic to collapsing the same loop
        collapsed = collapse(s, loop, measure=False).carrier
        matches = betti_numbers(collapsed) == after
    record = OpRecord("zip", (loop.name,), euler_count(out) - euler_count(c), before, after, sep, matches)
    return replace(
        s,
        carrier=out,
        op_log=s.op_log + (record,),
        singular_vertices=s.singular_vertices | merged_v,
        singular_edges=s.singular_edges | merged_e,
        pinch_points=s.pinch_points | {vs[0], vs[m]},
    )


def antipode(loop: LoopMarking, p: int) -> int:
    k = len(loop.vertices)
    if k % 2:
        raise ArcMismatch("odd-length loop has no antipodal vertex")
    i = loop.vertices.index(p)
    return loop.vertices[(i + k // 2) % k]


def identify(
    s: SingularComplex,
    a: LoopMarking,
    b: LoopMarking,
    offset: int = 0,
    reversed: bool = False,
    measure: bool = True,
) -> SingularComplex:
    """Glue loop ``a`` to loop ``b``: vertex ``i`` of ``a`` goes to vertex
    ``offset + i`` of ``b`` (``offset - i`` when ``reversed``)."""
    if a.vertices == b.vertices or (a.name and a.name == b.name):
        raise SelfIdentification("a loop cannot be identified with itself")
    _check_available(s, a)
    _check_available(s, b)
    if len(a.vertices) != len(b.vertices):
        raise LengthMismatch(f"loops have lengths {len(a.vertices)} and {len(b.vertices)}")
    if set(a.vertices) & set(b.vertices):
        raise OverlapError("identified loops must be disjoint")
    k = len(a.vertices)
    sign = -1 if reversed else 1
    c = s.carrier
    before = _measure(c, measure)
    corr = {a.vertices[i]: b.vertices[(offset + sign * i) % k] for i in range(k)}
    epairs = []
    for i in range(k):
        if reversed:
            j = (offset - i - 1) % k
        else:
            j = (offset + i) % k
        epairs.append((a.edges[i], b.edges[j]))
    edge_ids = _map_corr(c, corr, epairs)
    out = quotient(c, corr.items(), edge_ids)
    merged_v = {min(x, y) for x, y in corr.items()}
    merged_e = {min(x, y) for x, y, _ in edge_ids}
    record = OpRecord(
        "identify", (a.name, b.name), euler_count(out) - euler_count(c), before, _measure(out, measure)
    )
    return replace(
        s,
        carrier=out,
        op_log=s.op_log + (record,),
        singular_vertices=s.singular_vertices | merged_v,
        singular_edges=s.singular_edges | merged_e,
    )


@dataclass(frozen=True)
class SingularSet:
    vertices: frozenset[int]
    edges: frozenset[int]
    cone_points: frozenset[int]
    pinch_points: frozenset[int]
    curves: tuple[tuple[str, frozenset[int]], ...]  # ("closed" | "arc", edge ids)

    @property
    def double_crossing_curves(self) -> int:
        return len(self.curves)


def singular_set(s: SingularComplex | CellComplex) -> SingularSet:
    """Recompute singular cells from links and face counts, and classify them."""
    c = s.carrier if isinstance(s, SingularComplex) else s
    sv = singular_vertices(c)
    se = singular_edges(c)
    degree = defaultdict(int)
    adj = defaultdict(set)
    for e in se:
        t, h = c.edges[e]
        degree[t] += 1
        degree[h] += 1
        adj[t].add(e)
        adj[h].add(e)
    curves = []
    seen = set()
    for e0 in sorted(se):
        if e0 in seen:
            continue
        comp = set()
        stack = [e0]
        while stack:
            e = stack.pop()
            if e in comp:
                continue
            comp.add(e)
            for v in c.edges[e]:
                stack.extend(adj[v] - comp)
        seen |= comp
        verts = {v for e in comp for v in c.edges[e]}
        kind = "closed" if all(degree[v] == 2 for v in verts) else "arc"
        curves.append((kind, frozenset(comp)))
    cones = frozenset(v for v in sv if degree[v] == 0)
    pinches = frozenset(v for v in sv if degree[v] == 1)
    return SingularSet(sv, se, cones, pinches, tuple(curves))
