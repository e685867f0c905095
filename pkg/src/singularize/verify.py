"""Euler characteristic and genus predictions, checked against homology.

:func:`genus_oracle` is a brute-force cross-check of the genus formula: it
enumerates short simple cycles in the nonsingular part and searches for the
largest vertex-disjoint family whose removal leaves the complex connected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import (
    CellComplex,
    component_count,
    connected_components,
    cut_cycle,
    singular_edges,
    singular_vertices,
)
from .errors import CannotBeConnected, DisconnectedInput, OracleTimeout
from .homology import HomologyProfile, betti_numbers
from .surgery import SingularComplex, singular_set

EXPECTED_DELTA_CHI = {"collapse": 1, "zip": 1, "identify": 0}
COLLAPSE_BETTI_DELTAS = {(0, 0, 1), (0, -1, 0)}


def predict_chi(n: int, G: int, C: int, Z: int) -> int:
    if min(n, G, C, Z) < 0:
        raise ValueError("counts must be non-negative")
    return 2 * n - 2 * G + C + Z


def predict_genus(G: int, D: int, n: int) -> int:
    """Genus of a connected singularization: total genus plus surplus identifications."""
    if D < n - 1:
        raise CannotBeConnected(f"{n} surfaces need at least {n - 1} identifications, got {D}")
    return G + D - (n - 1)


def chi_from_genus(genus: int, C: int, Z: int, D: int) -> int:
    return 2 - 2 * genus + 2 * D + C + Z


@dataclass(frozen=True)
class ComponentSummary:
    profile: HomologyProfile
    singular_vertices: int
    singular_edges: int
    cone_points: int = 0
    pinch_points: int = 0
    curves: int = 0


@dataclass(frozen=True)
class LemmaChecks:
    per_op_delta_chi: tuple[int, ...]
    per_op_ok: bool
    collapse_betti_ok: bool
    zip_equals_collapse: bool | None
    diagnostics: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.per_op_ok and self.collapse_betti_ok and self.zip_equals_collapse is not False


@dataclass(frozen=True)
class SingularizationReport:
    n: int
    G: int
    C: int
    Z: int
    D: int
    predicted_chi: int
    chi_total: int
    components: tuple[ComponentSummary, ...]
    connected: bool
    genus_formula: int | None
    theorem1_ok: bool
    theorem2_ok: bool | None
    lemma_checks: LemmaChecks
    warnings: tuple[str, ...] = ()
    refinements: tuple[str, ...] = ()
    genus_oracle: int | None = None
    result: SingularComplex | None = field(default=None, compare=False, repr=False)

    @property
    def all_ok(self) -> bool:
        oracle_ok = self.genus_oracle is None or self.genus_oracle == self.genus_formula
        return self.theorem1_ok and self.theorem2_ok is not False and self.lemma_checks.ok and oracle_ok

    def to_dict(self) -> dict:
        """Report in the fixed key order of the JSON schema."""
        out = {
            "n": self.n,
            "G": self.G,
            "C": self.C,
            "Z": self.Z,
            "D": self.D,
            "predicted_chi": self.predicted_chi,
            "chi_total": self.chi_total,
            "components": [
                {
                    "betti": list(comp.profile.betti),
                    "chi": comp.profile.chi,
                    "singular_vertices": comp.singular_vertices,
                    "singular_edges": comp.singular_edges,
                }
                for comp in self.components
            ],
            "connected": self.connected,
            "genus_formula": self.genus_formula,
            "theorem1_ok": self.theorem1_ok,
            "theorem2_ok": self.theorem2_ok,
            "lemma_checks": {
                "per_op_delta_chi": list(self.lemma_checks.per_op_delta_chi),
                "zip_equals_collapse": self.lemma_checks.zip_equals_collapse,
                "per_op_ok": self.lemma_checks.per_op_ok,
                "collapse_betti_ok": self.lemma_checks.collapse_betti_ok,
            },
            "warnings": list(self.warnings),
            "refinements": list(self.refinements),
        }
        if self.genus_oracle is not None:
            out["genus_oracle"] = self.genus_oracle
        return out


def _lemma_checks(s: SingularComplex) -> LemmaChecks:
    deltas = []
    per_op_ok = True
    betti_ok = True
    zip_flags = []
    notes = []
    for i, rec in enumerate(s.op_log):
        expected = EXPECTED_DELTA_CHI[rec.kind]
        measured = rec.delta_chi
        deltas.append(rec.delta_euler if measured is None else measured)
        if rec.delta_euler != expected or (measured is not None and measured != expected):
            per_op_ok = False
            notes.append(f"op {i} ({rec.kind}): delta chi {measured}, cells {rec.delta_euler}, expected {expected}")
        if rec.kind in ("collapse", "zip") and rec.delta_betti is not None:
            d = rec.delta_betti
            if d not in COLLAPSE_BETTI_DELTAS or (rec.separating and d != (0, 0, 1)):
                betti_ok = False
                notes.append(f"op {i} ({rec.kind}): Betti change {d}, separating={rec.separating}")
        if rec.kind == "zip" and rec.zip_matches_collapse is not None:
            zip_flags.append(rec.zip_matches_collapse)
    return LemmaChecks(
        tuple(deltas),
        per_op_ok,
        betti_ok,
        all(zip_flags) if zip_flags else None,
        tuple(notes),
    )


def check_theorems(
    s: SingularComplex,
    n: int,
    G: int,
    warnings=(),
    refinements=(),
) -> SingularizationReport:
    """Compare the theorem predictions with Z2 homology of each component."""
    comps = connected_components(s.carrier)
    summaries = []
    for comp in comps:
        sing = singular_set(comp)
        summaries.append(
            ComponentSummary(
                betti_numbers(comp),
                len(sing.vertices),
                len(sing.edges),
                len(sing.cone_points),
                len(sing.pinch_points),
                len(sing.curves),
            )
        )
    C, Z, D = s.C, s.Z, s.D
    predicted = predict_chi(n, G, C, Z)
    chi_total = sum(cs.profile.chi for cs in summaries)
    connected = len(comps) == 1
    genus = None
    theorem2 = None
    if connected:
        genus = predict_genus(G, D, n)
        theorem2 = chi_total == chi_from_genus(genus, C, Z, D)
    return SingularizationReport(
        n=n,
        G=G,
        C=C,
        Z=Z,
        D=D,
        predicted_chi=predicted,
        chi_total=chi_total,
        components=tuple(summaries),
        connected=connected,
        genus_formula=genus,
        theorem1_ok=chi_total == predicted,
        theorem2_ok=theorem2,
        lemma_checks=_lemma_checks(s),
        warnings=tuple(warnings),
        refinements=tuple(refinements),
        result=s,
    )


def nonsingular_graph(c: CellComplex) -> dict[int, list[tuple[int, int]]]:
    """Adjacency ``v -> [(w, edge)]`` of the 1-skeleton away from singular cells."""
    bad_v = singular_vertices(c)
    bad_e = singular_edges(c)
    adj = {v: [] for v in sorted(c.vertices - bad_v)}
    for e in c.live_edges:
        t, h = c.edges[e]
        if e in bad_e or t == h or t in bad_v or h in bad_v:
            continue
        adj[t].append((h, e))
        adj[h].append((t, e))
    for v in adj:
        adj[v].sort()
    return adj


def enumerate_simple_cycles(adj, max_len: int, budget: int | None = None):
    """All simple cycles with 3..``max_len`` vertices, each listed once.

    A cycle is reported from its smallest vertex, in the direction whose
    first edge id is smaller than its closing edge id.  Parallel edges give
    distinct cycles.
    """
    out = []
    for s in sorted(adj):
        path_v = [s]
        path_e = []
        on_path = {s}

        def extend(v):
            for w, e in adj[v]:
                if w == s:
                    if len(path_v) >= 3 and path_e[0] < e:
                        out.append((tuple(path_v), tuple(path_e) + (e,)))
                        if budget is not None and len(out) > budget:
                            raise OracleTimeout(f"more than {budget} cycles of length <= {max_len}")
                elif w > s and w not in on_path and len(path_v) < max_len:
                    path_v.append(w)
                    path_e.append(e)
                    on_path.add(w)
                    extend(w)
                    on_path.discard(w)
                    path_e.pop()
                    path_v.pop()

        extend(s)
    return out


def default_cycle_bound(c: CellComplex) -> int:
    if c.landmarks:
        return max(len(loop) for loop in c.landmarks.values())
    return 8


def genus_oracle(
    s: SingularComplex | CellComplex,
    max_cycle_len: int | None = None,
    budget: int = 50_000,
) -> int:
    """Largest number of disjoint nonsingular cycles removable without disconnecting.

    Exact among edge-cycles with at most ``max_cycle_len`` vertices.  Raises
    :class:`OracleTimeout` when more than ``budget`` cycles or search nodes
    would be visited.
    """
    c = s.carrier if isinstance(s, SingularComplex) else s
    if component_count(c) != 1:
        raise DisconnectedInput("genus is defined for connected complexes")
    if max_cycle_len is None:
        max_cycle_len = default_cycle_bound(c)
    cycles = enumerate_simple_cycles(nonsingular_graph(c), max_cycle_len, budget)
    # removing more curves never reconnects, so only individually
    # non-separating cycles can appear in a non-disconnecting family
    candidates = []
    cuts = {}
    for vs, es in cycles:
        cut = cut_cycle(c, vs, es).complex
        if component_count(cut) == 1:
            cuts[len(candidates)] = cut
            candidates.append((vs, es, frozenset(vs)))
    best = 0
    visited = 0

    def search(cur: CellComplex, used: frozenset, start: int, depth: int):
        nonlocal best, visited
        best = max(best, depth)
        for i in range(start, len(candidates)):
            if depth + (len(candidates) - i) <= best:
                return
            vs, es, vset = candidates[i]
            if vset & used:
                continue
            visited += 1
            if visited > budget:
                raise OracleTimeout(f"subset search exceeded {budget} nodes")
            nxt = cuts[i] if depth == 0 else cut_cycle(cur, vs, es).complex
            if component_count(nxt) == 1:
                search(nxt, used | vset, i + 1, depth + 1)

    search(c, frozenset(), 0, 0)
    return best
