"""Delta-style 2-complexes with triangular faces.

A :class:`CellComplex` stores edges as oriented pairs ``(tail, head)`` and
faces as closed walks of three ``(edge_id, forward)`` sides.  Multi-edges
and self-loops are allowed, which is what quotients by loop operations
produce.  Edges removed by a collapse are kept as tombstones in
``deleted_edges``: faces may still walk over them, but they are excluded
from every count, boundary and link.

Complexes are treated as immutable.  Every operation returns a new value.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DisconnectedInput,
    InvalidCut,
    MalformedInput,
    NonOrientable,
    NotASurface,
    UnsupportedSubdivision,
)
from .unionfind import ParityUnionFind, UnionFind

Side = tuple[int, bool]
Point = tuple[float, float, float]


def side_tail(edges, side):
    e, fwd = side
    t, h = edges[e]
    return t if fwd else h


def side_head(edges, side):
    e, fwd = side
    t, h = edges[e]
    return h if fwd else t


@dataclass(frozen=True)
class Corner:
    """A face corner at a vertex, seen as an arc of that vertex's link.

    ``a`` and ``b`` are edge-ends ``(edge_id, end)`` with ``end`` 0 for the
    tail and 1 for the head.  A face whose edges are all tombstoned yields a
    corner with ``a is b is None`` (a whole circle in the link).
    """

    face: int
    position: int
    vertex: int
    a: tuple[int, int] | None
    b: tuple[int, int] | None


@dataclass(frozen=True)
class CellComplex:
    vertices: frozenset[int]
    edges: Mapping[int, tuple[int, int]]
    faces: Mapping[int, tuple[Side, ...]]
    deleted_edges: frozenset[int] = frozenset()
    coords: Mapping[int, Point] | None = field(default=None, compare=False)
    landmarks: Mapping[tuple[str, int], tuple[int, ...]] = field(
        default_factory=dict, compare=False
    )

    @cached_property
    def live_edges(self) -> tuple[int, ...]:
        return tuple(sorted(e for e in self.edges if e not in self.deleted_edges))

    @cached_property
    def edge_face_count(self) -> dict[int, int]:
        """Face incidences per undeleted edge, with multiplicity."""
        count = {e: 0 for e in self.live_edges}
        for sides in self.faces.values():
            for e, _ in sides:
                if e in count:
                    count[e] += 1
        return count

    @cached_property
    def edge_faces(self) -> dict[int, list[tuple[int, int]]]:
        """Undeleted edge -> list of (face, position) where it is walked."""
        out = defaultdict(list)
        for f in sorted(self.faces):
            for i, (e, _) in enumerate(self.faces[f]):
                if e not in self.deleted_edges:
                    out[e].append((f, i))
        return dict(out)

    @cached_property
    def corners(self) -> dict[int, list[Corner]]:
        """Vertex -> face corners at it, with tombstoned edges contracted."""
        out = defaultdict(list)
        for f in sorted(self.faces):
            reduced = [s for s in self.faces[f] if s[0] not in self.deleted_edges]
            if not reduced:
                v = side_tail(self.edges, self.faces[f][0])
                out[v].append(Corner(f, 0, v, None, None))
                continue
            for j, cur in enumerate(reduced):
                prev = reduced[j - 1]
                v = side_tail(self.edges, cur)
                a = (prev[0], 1 if prev[1] else 0)
                b = (cur[0], 0 if cur[1] else 1)
                out[v].append(Corner(f, j, v, a, b))
        return dict(out)

    @cached_property
    def edge_ends(self) -> dict[int, list[tuple[int, int]]]:
        out = defaultdict(list)
        for e in self.live_edges:
            t, h = self.edges[e]
            out[t].append((e, 0))
            out[h].append((e, 1))
        return dict(out)

    @property
    def is_quotient(self) -> bool:
        return bool(self.deleted_edges)

    def summary(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.live_edges), len(self.faces)


def build_from_cells(
    vertices: Iterable[int],
    edges: Mapping[int, Sequence[int]],
    faces: Mapping[int, Sequence[Sequence]],
    *,
    deleted_edges: Iterable[int] = (),
    coords: Mapping[int, Point] | None = None,
    landmarks=None,
) -> CellComplex:
    """Build a complex from raw cell lists, checking references and closure."""
    vertex_list = list(vertices)
    vset = frozenset(vertex_list)
    if len(vset) != len(vertex_list):
        raise MalformedInput("duplicate vertex ids")
    edge_map = {}
    for e, pair in edges.items():
        t, h = pair
        if t not in vset or h not in vset:
            raise MalformedInput(f"edge {e} references a missing vertex")
        edge_map[int(e)] = (t, h)
    face_map = {}
    for f, sides in faces.items():
        sides = tuple((int(e), bool(fwd)) for e, fwd in sides)
        if len(sides) != 3:
            raise MalformedInput(f"face {f} must have exactly 3 sides")
        for e, _ in sides:
            if e not in edge_map:
                raise MalformedInput(f"face {f} references missing edge {e}")
        for i, s in enumerate(sides):
            nxt = sides[(i + 1) % 3]
            if side_head(edge_map, s) != side_tail(edge_map, nxt):
                raise MalformedInput(f"face {f} is not a closed walk")
        face_map[int(f)] = sides
    deleted = frozenset(deleted_edges)
    if not deleted <= edge_map.keys():
        raise MalformedInput("deleted edge ids must exist")
    if coords is not None:
        coords = {v: tuple(map(float, coords[v])) for v in vset}
    return CellComplex(vset, edge_map, face_map, deleted, coords, dict(landmarks or {}))


def from_triangles(
    triangles: Sequence[Sequence[int]],
    coords: Mapping[int, Point] | None = None,
    vertices: Iterable[int] | None = None,
) -> CellComplex:
    """Build a complex from vertex triples; edges are created per vertex pair."""
    edge_id = {}
    edges = {}
    faces = {}
    for f, tri in enumerate(triangles):
        sides = []
        for i in range(3):
            u, v = tri[i], tri[(i + 1) % 3]
            key = (min(u, v), max(u, v))
            if key not in edge_id:
                edge_id[key] = len(edges)
                edges[edge_id[key]] = key
            sides.append((edge_id[key], u < v))
        faces[f] = sides
    if vertices is None:
        vertices = sorted({v for tri in triangles for v in tri})
    return build_from_cells(vertices, edges, faces, coords=coords)


def euler_count(c: CellComplex) -> int:
    return len(c.vertices) - len(c.live_edges) + len(c.faces)


def _component_roots(c: CellComplex) -> UnionFind:
    uf = UnionFind(c.vertices)
    for t, h in c.edges.values():
        uf.union(t, h)
    return uf


def component_count(c: CellComplex) -> int:
    return len(_component_roots(c))


def connected_components(c: CellComplex) -> list[CellComplex]:
    """Split ``c`` into connected sub-complexes, ordered by smallest vertex."""
    uf = _component_roots(c)
    groups = defaultdict(lambda: (set(), {}, {}))
    for v in c.vertices:
        groups[uf.find(v)][0].add(v)
    for e, (t, _) in c.edges.items():
        groups[uf.find(t)][1][e] = c.edges[e]
    for f, sides in c.faces.items():
        groups[uf.find(side_tail(c.edges, sides[0]))][2][f] = sides
    out = []
    for root in sorted(groups):
        vs, es, fs = groups[root]
        coords = None if c.coords is None else {v: c.coords[v] for v in vs}
        landmarks = {k: loop for k, loop in c.landmarks.items() if set(loop) <= vs}
        out.append(
            CellComplex(
                frozenset(vs),
                es,
                fs,
                frozenset(e for e in c.deleted_edges if e in es),
                coords,
                landmarks,
            )
        )
    return out


def vertex_link(c: CellComplex, v: int):
    """Return ``(nodes, corners)`` describing the link of ``v``."""
    return c.edge_ends.get(v, []), c.corners.get(v, [])


def is_smooth_vertex(c: CellComplex, v: int) -> bool:
    """True iff the link of ``v`` is exactly one cycle."""
    nodes, corners = vertex_link(c, v)
    if not nodes or not corners:
        return False
    degree = {n: 0 for n in nodes}
    uf = UnionFind(nodes)
    for k in corners:
        if k.a is None:
            return False
        degree[k.a] += 1
        degree[k.b] += 1
        uf.union(k.a, k.b)
    return all(d == 2 for d in degree.values()) and len(uf) == 1


def singular_vertices(c: CellComplex) -> frozenset[int]:
    return frozenset(v for v in c.vertices if not is_smooth_vertex(c, v))


def singular_edges(c: CellComplex) -> frozenset[int]:
    return frozenset(e for e, n in c.edge_face_count.items() if n != 2)


def validate_closed_orientable_surface(c: CellComplex) -> int:
    """Check that ``c`` is a connected closed orientable surface; return its genus."""
    if c.deleted_edges:
        raise NotASurface("complex has collapsed edges")
    if not c.vertices:
        raise NotASurface("empty complex")
    for e, n in c.edge_face_count.items():
        if n != 2:
            raise NotASurface(f"edge {e} lies in {n} faces")
    for v in sorted(c.vertices):
        if not is_smooth_vertex(c, v):
            raise NotASurface(f"link of vertex {v} is not a single cycle")
    if component_count(c) != 1:
        raise DisconnectedInput("surface is disconnected; validate each component")
    # orientation: 2-colour faces so that each edge is walked once each way
    pf = ParityUnionFind()
    for e, incid in c.edge_faces.items():
        (f1, i1), (f2, i2) = incid
        d1 = c.faces[f1][i1][1]
        d2 = c.faces[f2][i2][1]
        # same walking direction means one of the two faces must flip
        if f1 == f2 or not pf.union(f1, f2, d1 == d2):
            raise NonOrientable(f"no consistent orientation across edge {e}")
    chi = euler_count(c)
    if chi > 2 or chi % 2:
        raise NotASurface(f"Euler characteristic {chi} is not that of a closed orientable surface")
    return (2 - chi) // 2


def is_consistently_oriented(c: CellComplex) -> bool:
    """True iff every edge in two faces is walked once in each direction."""
    for e, incid in c.edge_faces.items():
        if len(incid) != 2:
            continue
        (f1, i1), (f2, i2) = incid
        if c.faces[f1][i1][1] == c.faces[f2][i2][1]:
            return False
    return True


@dataclass(frozen=True)
class EdgeSplit:
    complex: CellComplex
    midpoint: int
    head_half: int  # new edge from the midpoint to the old head


def split_edge(c: CellComplex, e: int) -> EdgeSplit:
    """Subdivide edge ``e`` at a new midpoint, splitting both incident faces.

    ``e`` keeps its id for the half ``tail -> midpoint``; the other half and
    the two spokes get fresh ids.
    """
    if e not in c.edges or e in c.deleted_edges:
        raise UnsupportedSubdivision(f"edge {e} is missing or collapsed")
    incid = c.edge_faces.get(e, [])
    if len(incid) != 2 or incid[0][0] == incid[1][0]:
        raise UnsupportedSubdivision(f"edge {e} lies in {len(incid)} faces, need 2")
    t, h = c.edges[e]
    m = max(c.vertices) + 1
    next_edge = max(c.edges) + 1
    next_face = max(c.faces) + 1
    edges = dict(c.edges)
    faces = dict(c.faces)
    second = next_edge
    next_edge += 1
    edges[e] = (t, m)
    edges[second] = (m, h)
    for f, pos in incid:
        sides = faces[f]
        rot = sides[pos:] + sides[:pos]
        (_, fwd), s1, s2 = rot
        opposite = side_head(c.edges, s1)
        spoke = next_edge
        next_edge += 1
        edges[spoke] = (m, opposite)
        if fwd:
            first_half, second_half = (e, True), (second, True)
        else:
            first_half, second_half = (second, False), (e, False)
        faces[f] = (first_half, (spoke, True), s2)
        faces[next_face] = (second_half, s1, (spoke, False))
        next_face += 1
    coords = None
    if c.coords is not None:
        coords = dict(c.coords)
        coords[m] = tuple((a + b) / 2 for a, b in zip(c.coords[t], c.coords[h]))
    out = CellComplex(c.vertices | {m}, edges, faces, c.deleted_edges, coords, {})
    return EdgeSplit(out, m, second)


def subdivide_edge(c: CellComplex, e: int) -> CellComplex:
    return split_edge(c, e).complex


def _loop_cells(loop) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(loop.vertices), tuple(loop.edges)


@dataclass(frozen=True)
class Cut:
    complex: CellComplex
    vertex_copy: dict[int, int]
    edge_copy: dict[int, int]


def cut_cycle(c: CellComplex, vertices: Sequence[int], edges: Sequence[int]) -> Cut:
    """Cut ``c`` along a simple edge-cycle, duplicating its vertices and edges.

    Faces on the left of the cycle (walking it in the same direction) keep
    the original cells; faces on the right are reattached to the copies.
    """
    k = len(vertices)
    if k != len(edges) or k < 1:
        raise InvalidCut("cycle vertex and edge lists disagree")
    for i, e in enumerate(edges):
        if e not in c.edges or e in c.deleted_edges:
            raise InvalidCut(f"cycle edge {e} is missing or collapsed")
        if c.edge_face_count[e] != 2:
            raise InvalidCut(f"cycle edge {e} is singular")
        if {*c.edges[e]} != {vertices[i], vertices[(i + 1) % k]} and k > 1:
            raise InvalidCut(f"cycle edge {e} does not join its vertices")
    for v in vertices:
        if not is_smooth_vertex(c, v):
            raise InvalidCut(f"cycle vertex {v} is singular")

    # left/right face of each cycle edge, from the walk direction
    left_face = {}
    right_sides = set()
    for i, e in enumerate(edges):
        v0 = vertices[i]
        sides = []
        for f, pos in c.edge_faces[e]:
            walks_with = side_tail(c.edges, c.faces[f][pos]) == v0
            sides.append(((f, pos), walks_with))
        (fp1, w1), (fp2, w2) = sides
        if w1 == w2:
            raise InvalidCut(f"faces around cycle edge {e} are not consistently oriented")
        left, right = (fp1, fp2) if w1 else (fp2, fp1)
        left_face[e] = left
        right_sides.add(right)

    new_v = max(c.vertices) + 1
    new_e = max(c.edges) + 1
    vcopy = {v: new_v + i for i, v in enumerate(vertices)}
    ecopy = {e: new_e + i for i, e in enumerate(edges)}
    cycle_edges = set(edges)

    # which edge-ends at each cycle vertex move to the copy
    moved_ends = set()
    for i, v in enumerate(vertices):
        e_prev, e_next = edges[i - 1], edges[i]
        _, corners = vertex_link(c, v)
        end_next = (e_next, 0 if c.edges[e_next][0] == v else 1)
        end_prev = (e_prev, 1 if c.edges[e_prev][1] == v else 0)
        if e_prev == e_next:
            raise InvalidCut("degenerate cycle")
        adj = defaultdict(list)
        for idx, k_ in enumerate(corners):
            adj[k_.a].append((idx, k_.b))
            adj[k_.b].append((idx, k_.a))
        # start from the corner of the right face that uses e_next at v
        start = None
        for idx, k_ in enumerate(corners):
            if (k_.face, k_.position) in _corner_keys_for(c, e_next, right_sides):
                if end_next in (k_.a, k_.b):
                    start = idx
                    break
        if start is None:
            raise InvalidCut(f"cannot locate the right side at vertex {v}")
        node = end_next
        idx = start
        used = set()
        while True:
            used.add(idx)
            k_ = corners[idx]
            node = k_.b if k_.a == node else k_.a
            if node == end_prev:
                break
            moved_ends.add(node)
            nxt = [j for j, other in adj[node] if j not in used]
            if len(nxt) != 1:
                raise InvalidCut(f"link of vertex {v} is not a cycle")
            idx = nxt[0]

    edges_out = dict(c.edges)
    for e, (t, h) in c.edges.items():
        if e in cycle_edges:
            continue
        nt = vcopy[t] if (e, 0) in moved_ends else t
        nh = vcopy[h] if (e, 1) in moved_ends else h
        edges_out[e] = (nt, nh)
    for e in edges:
        t, h = c.edges[e]
        edges_out[ecopy[e]] = (vcopy[t], vcopy[h])
    faces_out = dict(c.faces)
    for f, pos in right_sides:
        sides = list(faces_out[f])
        e, fwd = sides[pos]
        sides[pos] = (ecopy[e], fwd)
        faces_out[f] = tuple(sides)
    coords = None
    if c.coords is not None:
        coords = dict(c.coords)
        for v, w in vcopy.items():
            coords[w] = c.coords[v]
    out = CellComplex(
        c.vertices | frozenset(vcopy.values()), edges_out, faces_out, c.deleted_edges, coords, {}
    )
    return Cut(out, vcopy, ecopy)


def _corner_keys_for(c: CellComplex, e: int, right_sides) -> set[tuple[int, int]]:
    """Corner keys ``(face, reduced position)`` of the right face along ``e``.

    The corner at the tail of a side has the side's reduced position, and the
    corner at its head has the next reduced position.
    """
    keys = set()
    for f, pos in c.edge_faces[e]:
        if (f, pos) not in right_sides:
            continue
        reduced = [i for i, s in enumerate(c.faces[f]) if s[0] not in c.deleted_edges]
        j = reduced.index(pos)
        keys.add((f, j))
        keys.add((f, (j + 1) % len(reduced)))
    return keys


def cut_along_cycle(c: CellComplex, cycle) -> CellComplex:
    """Cut ``c`` along a validated loop marking; Euler count is unchanged."""
    vertices, edges = _loop_cells(cycle)
    return cut_cycle(c, vertices, edges).complex


def quotient(
    c: CellComplex,
    vertex_pairs: Iterable[tuple[int, int]] = (),
    edge_pairs: Iterable[tuple[int, int, bool]] = (),
    delete: Iterable[int] = (),
) -> CellComplex:
    """Identify vertices and edges of ``c``; optionally tombstone edges.

    ``edge_pairs`` holds ``(e1, e2, same_direction)``.  Class
    representatives are the smallest ids; faces are never merged.
    """
    vuf = UnionFind(c.vertices)
    for a, b in vertex_pairs:
        vuf.union(a, b)
    euf = ParityUnionFind()
    for e1, e2, same in edge_pairs:
        if not euf.union(e1, e2, not same):
            raise MalformedInput(f"contradictory identification of edges {e1}, {e2}")
    vmap = {v: vuf.find(v) for v in c.vertices}
    edges = {}
    rep_of = {}
    for e in sorted(c.edges):
        r, p = euf.find(e)
        rep_of[e] = (r, p)
        t, h = c.edges[e]
        t, h = vmap[t], vmap[h]
        if p:
            t, h = h, t
        if r in edges:
            if edges[r] != (t, h):
                raise MalformedInput(f"edge {e} glued to {r} with mismatched endpoints")
        else:
            edges[r] = (t, h)
    faces = {}
    for f, sides in c.faces.items():
        out = []
        for e, fwd in sides:
            r, p = rep_of[e]
            out.append((r, fwd != bool(p)))
        faces[f] = tuple(out)
    deleted = {rep_of[e][0] for e in c.deleted_edges} | {rep_of[e][0] for e in delete}
    vertices = frozenset(vmap.values())
    coords = None
    if c.coords is not None:
        coords = {v: c.coords[v] for v in vertices}
    return CellComplex(vertices, edges, faces, frozenset(deleted), coords, {})


def relabel(c: CellComplex, vshift: int, eshift: int, fshift: int) -> CellComplex:
    """Shift every id by a constant (used for disjoint unions)."""
    edges = {e + eshift: (t + vshift, h + vshift) for e, (t, h) in c.edges.items()}
    faces = {
        f + fshift: tuple((e + eshift, fwd) for e, fwd in sides) for f, sides in c.faces.items()
    }
    coords = None
    if c.coords is not None:
        coords = {v + vshift: p for v, p in c.coords.items()}
    landmarks = {k: tuple(v + vshift for v in loop) for k, loop in c.landmarks.items()}
    return CellComplex(
        frozenset(v + vshift for v in c.vertices),
        edges,
        faces,
        frozenset(e + eshift for e in c.deleted_edges),
        coords,
        landmarks,
    )
