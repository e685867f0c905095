"""Cellular homology over Z2 for :class:`~singularize.complex.CellComplex`.

Matrices are stored column-wise as Python ints used as bitsets; rank is
computed by Gaussian elimination on those bitsets.  This is independent of
the cell counting in :func:`~singularize.complex.euler_count`, which makes
it usable as ground truth for the Euler characteristic predictions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .complex import CellComplex


@dataclass(frozen=True)
class HomologyProfile:
    beta0: int
    beta1: int
    beta2: int
    chi: int

    def __post_init__(self):
        if min(self.beta0, self.beta1, self.beta2) < 0:
            raise ValueError("Betti numbers must be non-negative")
        if self.chi != self.beta0 - self.beta1 + self.beta2:
            raise ValueError("chi must equal beta0 - beta1 + beta2")

    @classmethod
    def from_betti(cls, b0: int, b1: int, b2: int) -> "HomologyProfile":
        return cls(b0, b1, b2, b0 - b1 + b2)

    @property
    def betti(self) -> tuple[int, int, int]:
        return (self.beta0, self.beta1, self.beta2)

    def delta(self, other: "HomologyProfile") -> tuple[int, int, int]:
        """Betti differences ``other - self``."""
        return tuple(b - a for a, b in zip(self.betti, other.betti))


@dataclass(frozen=True)
class ChainComplexZ2:
    """Boundary maps d1 (edges -> vertices) and d2 (faces -> edges) over Z2.

    ``d1[j]`` is the bitset of vertex rows in the boundary of edge column
    ``j``; ``d2[j]`` likewise for face ``j`` over edge rows.  Row/column
    order follows ``vertex_ids``, ``edge_ids`` and ``face_ids``.
    """

    vertex_ids: tuple[int, ...]
    edge_ids: tuple[int, ...]
    face_ids: tuple[int, ...]
    d1: tuple[int, ...]
    d2: tuple[int, ...]

    @property
    def d1_shape(self) -> tuple[int, int]:
        return (len(self.vertex_ids), len(self.edge_ids))

    @property
    def d2_shape(self) -> tuple[int, int]:
        return (len(self.edge_ids), len(self.face_ids))

    def dense(self, which: int) -> list[list[int]]:
        cols, nrows = (self.d1, len(self.vertex_ids)) if which == 1 else (self.d2, len(self.edge_ids))
        return [[(col >> r) & 1 for col in cols] for r in range(nrows)]

    def boundary_squared_is_zero(self) -> bool:
        for col in self.d2:
            acc = 0
            j = 0
            while col:
                if col & 1:
                    acc ^= self.d1[j]
                col >>= 1
                j += 1
            if acc:
                return False
        return True


def boundary_matrices(c: CellComplex) -> ChainComplexZ2:
    vertex_ids = tuple(sorted(c.vertices))
    edge_ids = c.live_edges
    face_ids = tuple(sorted(c.faces))
    vrow = {v: i for i, v in enumerate(vertex_ids)}
    erow = {e: i for i, e in enumerate(edge_ids)}
    d1 = []
    for e in edge_ids:
        t, h = c.edges[e]
        d1.append((1 << vrow[t]) ^ (1 << vrow[h]))
    d2 = []
    for f in face_ids:
        col = 0
        for e, _ in c.faces[f]:
            if e in erow:
                col ^= 1 << erow[e]
        d2.append(col)
    return ChainComplexZ2(vertex_ids, edge_ids, face_ids, tuple(d1), tuple(d2))


def _pack(row: Sequence[int]) -> int:
    bits = 0
    for i, x in enumerate(row):
        if int(x) & 1:
            bits |= 1 << i
    return bits


def z2_rank(m) -> int:
    """Rank over the two-element field.

    ``m`` is either a sequence of int bitsets (rows or columns; rank is the
    same) or a 2-D sequence / array of 0/1 entries.
    """
    vectors = [v if isinstance(v, int) else _pack(v) for v in m]
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                rank += 1
                break
            v ^= p
    return rank


def betti_numbers(c: CellComplex) -> HomologyProfile:
    cc = boundary_matrices(c)
    nv, ne, nf = len(cc.vertex_ids), len(cc.edge_ids), len(cc.face_ids)
    r1 = z2_rank(cc.d1)
    r2 = z2_rank(cc.d2)
    return HomologyProfile.from_betti(nv - r1, ne - r1 - r2, nf - r2)
