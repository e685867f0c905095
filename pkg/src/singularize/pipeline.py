"""End-to-end execution of a parsed plan, and serialization of the result."""

from __future__ import annotations

import json
import math
import random
from dataclasses import replace

from .builders import disjoint_union, refine_loop_to_length, split_loop_edges
from .complex import CellComplex
from .dsl import CollapseStmt, IdentifyStmt, SingularizationPlan, ZipStmt, parse_script
from .errors import DisconnectedInput, NoGeometry, OracleTimeout, ScriptError, SingularizeError
from .loops import LoopMarking
from .surgery import SingularComplex, antipode, collapse, identify, zip_loop
from .verify import SingularizationReport, check_theorems, genus_oracle

FORMATS = ("report-json", "cells-json", "off")


def _spread(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _equalize_arcs(c: CellComplex, loop: LoopMarking, p: int, q: int):
    """Refine the shorter arc between ``p`` and ``q`` to match the longer one."""
    rot = loop.rotated(loop.vertices.index(p))
    k = len(rot.edges)
    m = rot.vertices.index(q)
    if 2 * m == k:
        return c, rot, None
    longer = max(m, k - m)
    if m < k - m:
        pieces = _spread(longer, m) + [1] * (k - m)
    else:
        pieces = [1] * m + _spread(longer, k - m)
    c, refined = split_loop_edges(c, rot, pieces)
    return c, refined, f"{len(refined.edges)}"


def _run_zip(s, loop, stmt, rng, notes):
    c = s.carrier
    if stmt.at is not None:
        p, q = stmt.at
        c, loop, grown = _equalize_arcs(c, loop, p, q)
        if grown:
            notes.append(f"line {stmt.line}: zip {stmt.loop} arcs equalized, loop length {grown}")
    else:
        k = len(loop.edges)
        if k % 2:
            c, loop = refine_loop_to_length(c, loop, k + 1)
            notes.append(f"line {stmt.line}: zip {stmt.loop} refined from {k} to {k + 1} edges")
        p = rng.choice(loop.vertices) if rng else min(loop.vertices)
        q = antipode(loop, p)
    return zip_loop(s.with_carrier(c), loop, p, q)


def _run_identify(s, a, b, stmt, rng, notes):
    c = s.carrier
    la, lb = len(a.edges), len(b.edges)
    target = math.lcm(la, lb)
    if la != target:
        c, a = refine_loop_to_length(c, a, target)
    if lb != target:
        c, b = refine_loop_to_length(c, b, target)
    if la != lb:
        notes.append(f"line {stmt.line}: identify {stmt.a} {stmt.b} refined {la} and {lb} to {target} edges")
    offset = stmt.offset
    if offset is None:
        offset = rng.randrange(target) if rng else 0
    return identify(s.with_carrier(c), a, b, offset, stmt.reverse)


def run(
    plan: SingularizationPlan,
    *,
    seed: int | None = None,
    verify_oracle: bool = False,
    oracle_budget: int = 50_000,
) -> SingularizationReport:
    """Apply every operation of ``plan`` and check the result.

    With ``seed`` set, zip endpoints and identify offsets that the script
    leaves open are drawn from a seeded generator instead of the defaults.
    """
    rng = random.Random(seed) if seed is not None else None
    offsets = plan.bundle.offsets()
    carrier = disjoint_union(plan.bundle)
    loops = {}
    for name, marking in plan.markings.items():
        dv, de, _ = offsets[marking.surface]
        loops[name] = marking.shifted(dv, de)
    s = SingularComplex.smooth(carrier)
    notes: list[str] = []
    for stmt in plan.operations:
        try:
            if isinstance(stmt, CollapseStmt):
                s = collapse(s, loops[stmt.loop])
            elif isinstance(stmt, ZipStmt):
                loop = loops[stmt.loop]
                if stmt.at is not None:
                    dv = offsets[loop.surface][0]
                    stmt = replace(stmt, at=(stmt.at[0] + dv, stmt.at[1] + dv))
                s = _run_zip(s, loop, stmt, rng, notes)
            else:
                s = _run_identify(s, loops[stmt.a], loops[stmt.b], stmt, rng, notes)
        except SingularizeError as exc:
            raise ScriptError(f"{type(stmt).__name__.removesuffix('Stmt').lower()} failed: {exc}", stmt.line) from exc
    report = check_theorems(s, plan.n, plan.G, plan.warnings, notes)
    if verify_oracle:
        try:
            report = replace(report, genus_oracle=genus_oracle(s, budget=oracle_budget))
        except (OracleTimeout, DisconnectedInput) as exc:
            report = replace(report, warnings=report.warnings + (f"genus oracle skipped: {exc}",))
    return report


def run_script(text: str, source: str = "<script>", **kwargs) -> SingularizationReport:
    plan = parse_script(text, source)
    try:
        return run(plan, **kwargs)
    except ScriptError as exc:
        raise ScriptError(exc.message, exc.line, exc.column, exc.suggestion, source) from exc.__cause__


def report_json(report: SingularizationReport) -> bytes:
    return (json.dumps(report.to_dict(), indent=2) + "\n").encode()


def cells_json(c: CellComplex) -> bytes:
    data = {
        "vertices": sorted(c.vertices),
        "edges": [[e, *c.edges[e]] for e in sorted(c.edges) if e not in c.deleted_edges],
        "faces": [[f, [[e, fwd] for e, fwd in c.faces[f]]] for f in sorted(c.faces)],
        "deleted_edges": sorted(c.deleted_edges),
    }
    return (json.dumps(data, indent=1) + "\n").encode()


def off_mesh(c: CellComplex) -> bytes:
    if c.coords is None:
        raise NoGeometry("complex has no vertex coordinates")
    order = sorted(c.vertices)
    index = {v: i for i, v in enumerate(order)}
    lines = ["OFF", f"{len(order)} {len(c.faces)} 0"]
    for v in order:
        lines.append(" ".join(f"{x:.6f}" for x in c.coords[v]))
    for f in sorted(c.faces):
        corners = [c.edges[e][0] if fwd else c.edges[e][1] for e, fwd in c.faces[f]]
        lines.append("3 " + " ".join(str(index[v]) for v in corners))
    return ("\n".join(lines) + "\n").encode()


def export(report: SingularizationReport | None, complex: CellComplex | None = None, format: str = "report-json") -> bytes:
    """Serialize a run: the report itself, the quotient cells, or an OFF mesh."""
    if format not in FORMATS:
        raise ValueError(f"unknown export format {format!r}; expected one of {FORMATS}")
    if format == "report-json":
        return report_json(report)
    if complex is None:
        complex = report.result.carrier
    return cells_json(complex) if format == "cells-json" else off_mesh(complex)
