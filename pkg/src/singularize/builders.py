"""Canonical triangulated surfaces and their canonical loops.

The genus-g carrier is a row of grid tori joined by short triangular
tubes.  On torus ``i`` the handle loop is grid column 0 and the tunnel
loop is grid row 0; the separating loop of tube ``k`` is the triangle
ring in the middle of that tube.  Tubes are attached at grid triangles
away from row 0 and column 0 so all of these stay available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .complex import CellComplex, euler_count, from_triangles, relabel, split_edge
from .errors import CannotCoarsen, DegenerateGrid, NameClash, NoSuchLoop
from .loops import LoopMarking, validate_simple_cycle

TORUS_SPACING = 7.0


def build_sphere(refinement: int = 0) -> CellComplex:
    """Octahedron with ``refinement`` rounds of 1-to-4 face subdivision.

    Ids 0-3 are the equator, 4 the north pole and 5 the south pole; the
    midpoints of each round follow in order of first appearance.
    """
    if refinement < 0:
        raise ValueError("refinement must be non-negative")
    coords = {
        0: (1.0, 0.0, 0.0),
        1: (0.0, 1.0, 0.0),
        2: (-1.0, 0.0, 0.0),
        3: (0.0, -1.0, 0.0),
        4: (0.0, 0.0, 1.0),
        5: (0.0, 0.0, -1.0),
    }
    tris = []
    for i in range(4):
        j = (i + 1) % 4
        tris.append((i, j, 4))
        tris.append((j, i, 5))
    for _ in range(refinement):
        mid = {}

        def midpoint(u, v):
            key = (min(u, v), max(u, v))
            if key not in mid:
                w = len(coords)
                p = [(a + b) / 2 for a, b in zip(coords[u], coords[v])]
                norm = math.sqrt(sum(x * x for x in p))
                coords[w] = tuple(x / norm for x in p)
                mid[key] = w
            return mid[key]

        new = []
        for a, b, c in tris:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
        tris = new
    return from_triangles(tris, coords)


def _grid_id(i, j, m, n):
    return (i % m) * n + (j % n)


def _torus_triangles(m, n, base=0):
    tris = {}
    for i in range(m):
        for j in range(n):
            a = base + _grid_id(i, j, m, n)
            b = base + _grid_id(i + 1, j, m, n)
            c = base + _grid_id(i + 1, j + 1, m, n)
            d = base + _grid_id(i, j + 1, m, n)
            tris[("A", i, j)] = (a, b, c)
            tris[("B", i, j)] = (a, c, d)
    return tris


def _torus_coords(m, n, base=0, x_offset=0.0):
    coords = {}
    for i in range(m):
        for j in range(n):
            u = 2 * math.pi * i / m
            v = 2 * math.pi * j / n
            r = 2.0 + math.cos(v)
            coords[base + _grid_id(i, j, m, n)] = (x_offset + r * math.cos(u), r * math.sin(u), math.sin(v))
    return coords


def build_torus(m: int = 4, n: int = 4) -> CellComplex:
    """An ``m`` x ``n`` wraparound grid, each square split along its diagonal.

    Vertex ``(i, j)`` has id ``i * n + j``, so grid column ``i`` (a meridian)
    is the consecutive run ``i*n .. i*n + n - 1``.
    """
    if m < 3 or n < 3:
        raise DegenerateGrid(f"torus grid needs m, n >= 3, got {m} x {n}")
    tris = list(_torus_triangles(m, n).values())
    c = from_triangles(tris, _torus_coords(m, n))
    landmarks = {
        ("handle", 1): tuple(_grid_id(0, j, m, n) for j in range(n)),
        ("tunnel", 1): tuple(_grid_id(i, 0, m, n) for i in range(m)),
    }
    return CellComplex(c.vertices, c.edges, c.faces, c.deleted_edges, c.coords, landmarks)


def build_genus_chain(g: int, m: int = 4, n: int = 4, refinement: int = 0) -> CellComplex:
    """Closed orientable surface of genus ``g`` as a chain of ``g`` grid tori.

    ``g = 0`` gives :func:`build_sphere` with ``refinement`` rounds.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    if g == 0:
        return build_sphere(refinement)
    if g == 1:
        return build_torus(m, n)
    if m < 3 or n < 4:
        raise DegenerateGrid(f"chained tori need m >= 3 and n >= 4, got {m} x {n}")
    size = m * n
    tris = []
    coords = {}
    landmarks = {}
    # tube k leaves torus k at triangle A(1,1) and enters torus k+1 at B(1,2)
    right_key, left_key = ("A", 1, 1), ("B", 1, 2)
    holes = {}
    for t in range(g):
        base = t * size
        cells = _torus_triangles(m, n, base)
        if t < g - 1:
            holes[(t, "right")] = cells.pop(right_key)
        if t > 0:
            holes[(t, "left")] = cells.pop(left_key)
        tris.extend(cells.values())
        coords.update(_torus_coords(m, n, base, TORUS_SPACING * t))
        landmarks[("handle", t + 1)] = tuple(base + _grid_id(0, j, m, n) for j in range(n))
        landmarks[("tunnel", t + 1)] = tuple(base + _grid_id(i, 0, m, n) for i in range(m))
    ring_base = g * size
    for k in range(g - 1):
        a = holes[(k, "right")]
        b = holes[(k + 1, "left")]
        ring = tuple(ring_base + 3 * k + i for i in range(3))
        # the ring follows a; the far hole is listed against b's orientation
        b_rev = (b[0], b[2], b[1])
        for i in range(3):
            coords[ring[i]] = tuple((p + q) / 2 for p, q in zip(coords[a[i]], coords[b_rev[i]]))
        for lo, hi in ((a, ring), (ring, b_rev)):
            for i in range(3):
                j = (i + 1) % 3
                tris.append((lo[i], lo[j], hi[j]))
                tris.append((lo[i], hi[j], hi[i]))
        landmarks[("separating", k + 1)] = ring
    vertices = list(range(ring_base + 3 * (g - 1)))
    c = from_triangles(tris, coords, vertices)
    return CellComplex(c.vertices, c.edges, c.faces, c.deleted_edges, c.coords, landmarks)


def canonical_loop(c: CellComplex, kind: str, index: int, surface: str = "", name: str = "") -> LoopMarking:
    """The builder-declared handle, tunnel or separating loop number ``index``."""
    key = (kind, index)
    if key not in c.landmarks:
        raise NoSuchLoop(f"no {kind} loop with index {index}")
    loop = validate_simple_cycle(c, c.landmarks[key], surface=surface, name=name)
    return loop.with_kind(kind)


def link_loop(c: CellComplex, v: int, surface: str = "", name: str = "") -> LoopMarking:
    """The cycle of neighbours around a smooth vertex ``v``."""
    from .complex import is_smooth_vertex

    if v not in c.vertices or not is_smooth_vertex(c, v):
        raise NoSuchLoop(f"vertex {v} has no link cycle")
    # walk the corners: each corner contributes the edge opposite to v
    nxt = {}
    for f, sides in c.faces.items():
        vs = [c.edges[e][0] if fwd else c.edges[e][1] for e, fwd in sides]
        if v not in vs:
            continue
        i = vs.index(v)
        nxt[vs[(i + 1) % 3]] = vs[(i + 2) % 3]
    start = min(nxt)
    cycle = [start]
    while nxt[cycle[-1]] != start:
        cycle.append(nxt[cycle[-1]])
    return validate_simple_cycle(c, cycle, surface=surface, name=name)


@dataclass(frozen=True)
class SurfaceBundle:
    surfaces: tuple[tuple[str, CellComplex, int], ...] = ()

    def __post_init__(self):
        names = [s[0] for s in self.surfaces]
        if len(set(names)) != len(names):
            raise NameClash("duplicate surface names in bundle")

    @property
    def n(self) -> int:
        return len(self.surfaces)

    @property
    def G(self) -> int:
        return sum(g for _, _, g in self.surfaces)

    def names(self) -> list[str]:
        return [s[0] for s in self.surfaces]

    def get(self, name: str) -> CellComplex:
        for nm, c, _ in self.surfaces:
            if nm == name:
                return c
        raise KeyError(name)

    def offsets(self) -> dict[str, tuple[int, int, int]]:
        """Id shifts ``(vertex, edge, face)`` used by :func:`disjoint_union`."""
        out = {}
        v = e = f = 0
        for name, c, _ in self.surfaces:
            out[name] = (v, e, f)
            v += max(c.vertices, default=-1) + 1
            e += max(c.edges, default=-1) + 1
            f += max(c.faces, default=-1) + 1
        return out


def make_bundle(items: Sequence[tuple[str, CellComplex, int]]) -> SurfaceBundle:
    names = [name for name, _, _ in items]
    dup = {x for x in names if names.count(x) > 1}
    if dup:
        raise NameClash(f"duplicate surface name(s): {sorted(dup)}")
    return SurfaceBundle(tuple(items))


def disjoint_union(bundle: SurfaceBundle) -> CellComplex:
    offsets = bundle.offsets()
    vertices, edges, faces, deleted = set(), {}, {}, set()
    coords = {}
    has_coords = True
    landmarks = {}
    for name, c, _ in bundle.surfaces:
        shifted = relabel(c, *offsets[name])
        vertices |= shifted.vertices
        edges.update(shifted.edges)
        faces.update(shifted.faces)
        deleted |= shifted.deleted_edges
        if shifted.coords is None:
            has_coords = False
        else:
            coords.update(shifted.coords)
    return CellComplex(
        frozenset(vertices), edges, faces, frozenset(deleted), coords if has_coords else None, landmarks
    )


def _split_loop_edge(c: CellComplex, verts: list, edges: list, idx: int) -> CellComplex:
    """Split loop edge ``idx`` in place in ``verts``/``edges``; return the new complex."""
    e = edges[idx]
    forward = c.edges[e][0] == verts[idx]
    split = split_edge(c, e)
    if forward:
        first, second = e, split.head_half
    else:
        first, second = split.head_half, e
    edges[idx : idx + 1] = [first, second]
    verts.insert(idx + 1, split.midpoint)
    return split.complex


def split_loop_edges(c: CellComplex, loop: LoopMarking, pieces: Sequence[int]):
    """Cut loop edge ``i`` into ``pieces[i]`` parts; returns ``(complex, loop)``."""
    verts, edges = list(loop.vertices), list(loop.edges)
    for idx in range(len(pieces) - 1, -1, -1):
        for step in range(pieces[idx] - 1):
            c = _split_loop_edge(c, verts, edges, idx + step)
    return c, LoopMarking(loop.surface, tuple(verts), tuple(edges), loop.kind, loop.operation, loop.name)


def refine_loop_to_length(c: CellComplex, loop: LoopMarking, k: int):
    """Subdivide loop edges until the loop has exactly ``k`` edges.

    Extra vertices are spread evenly: every edge gets ``k // len`` pieces
    and the first ``k % len`` edges one more.
    """
    length = len(loop.edges)
    if k < length:
        raise CannotCoarsen(f"loop has {length} edges, cannot shorten to {k}")
    base, extra = divmod(k, length)
    pieces = [base + (1 if i < extra else 0) for i in range(length)]
    return split_loop_edges(c, loop, pieces)


def check_genus(c: CellComplex, g: int) -> bool:
    return euler_count(c) == 2 - 2 * g
