from __future__ import annotations

import json
from dataclasses import replace

import pytest

from singularize.builders import build_sphere
from singularize.complex import build_from_cells, component_count
from singularize.dsl import parse_script
from singularize.errors import NoGeometry, ScriptError
from singularize.pipeline import export, run, run_script


def run_file(scripts_dir, name, **kwargs):
    return run(parse_script((scripts_dir / name).read_text()), **kwargs)


def test_tori_chain(scripts_dir):
    r = run_file(scripts_dir, "tori_chain.sing")
    assert len(r.components) == 1
    assert r.chi_total == 0 and r.genus_formula == 5
    assert r.all_ok


def test_empty_plan_on_sphere():
    r = run_script("surface S genus 0\n")
    assert r.chi_total == 2
    assert r.components[0].singular_vertices == 0 and r.components[0].singular_edges == 0
    assert r.lemma_checks.per_op_delta_chi == ()


def test_surface_chain(scripts_dir):
    r = run_file(scripts_dir, "surface_chain.sing")
    assert r.chi_total == -4 and r.D == 3 and r.all_ok


def test_three_spheres_components(scripts_dir):
    r = run_file(scripts_dir, "three_spheres.sing")
    assert [c.profile.chi for c in r.components] == [5, 7]
    assert component_count(r.result.carrier) == 2
    assert r.genus_formula is None and r.theorem2_ok is None and r.theorem1_ok


def test_eight_surface_report_json(scripts_dir):
    r = run_file(scripts_dir, "eight_surface.sing")
    data = json.loads(export(r, format="report-json"))
    assert data["chi_total"] == 3
    assert data["components"] == [{"betti": [1, 0, 2], "chi": 3, "singular_vertices": 1, "singular_edges": 0}]


def test_cells_json_of_sphere():
    r = run_script("surface S genus 0\n")
    data = json.loads(export(r, format="cells-json"))
    assert (len(data["vertices"]), len(data["edges"]), len(data["faces"])) == (6, 12, 8)
    data = json.loads(export(None, build_sphere(0), "cells-json"))
    assert len(data["faces"]) == 8


def test_off_export():
    r = run_script("surface T genus 1\nloop a = handle(T, 1)\ncollapse a\n")
    text = export(r, format="off").decode().splitlines()
    assert text[0] == "OFF"
    nv, nf, _ = map(int, text[1].split())
    assert (nv, nf) == (13, 32)
    assert all(line.startswith("3 ") for line in text[2 + nv :])


def test_off_needs_coordinates():
    c = build_from_cells([0, 1, 2], {0: (0, 1), 1: (1, 2), 2: (0, 2)}, {0: [(0, True), (1, True), (2, False)]})
    with pytest.raises(NoGeometry):
        export(None, c, "off")


def test_unknown_format():
    with pytest.raises(ValueError):
        export(run_script("surface S genus 0\n"), format="ply")


def test_auto_refinement_is_logged():
    r = run_script(
        "surface A genus 1\nsurface B genus 1 res 3\n"
        "loop a = handle(A, 1)\nloop b = handle(B, 1)\nidentify a b\n"
    )
    assert r.refinements == ("line 5: identify a b refined 4 and 3 to 12 edges",)
    assert r.all_ok
    r = run_script("surface T genus 1 res 5\nloop a = handle(T, 1)\nzip a\n")
    assert r.refinements == ("line 3: zip a refined from 5 to 6 edges",)
    assert r.all_ok and r.chi_total == 1
    r = run_script("surface T genus 1 res 6\nloop a = handle(T, 1)\nzip a at 0 1\n")
    assert "arcs equalized" in r.refinements[0]
    assert r.all_ok and r.chi_total == 1


def test_seed_changes_parameters_not_verdicts():
    text = "surface T genus 2\nloop a = handle(T, 1)\nloop b = handle(T, 2)\nzip a\nidentify b a\n"
    with pytest.raises(ScriptError):
        run_script(text)  # 'a' is used twice, rejected at parse time
    text = "surface T genus 2\nloop a = handle(T, 1)\nloop b = handle(T, 2)\nloop c = separating(T, 1)\nzip a\nidentify b c\n"
    plain = export(run_script(text))
    for seed in range(5):
        r = run_script(text, seed=seed)
        assert r.all_ok
        assert json.loads(export(r))["chi_total"] == json.loads(plain)["chi_total"]


def test_report_json_is_byte_stable(scripts_dir):
    outputs = {export(run_file(scripts_dir, "three_spheres.sing")) for _ in range(3)}
    assert len(outputs) == 1


def test_identify_offset_wraps_around():
    r = run_script("surface T genus 1\nloop a = handle(T, 1)\nloop b = cycle(T, 8, 9, 10, 11)\nidentify a b offset 7\n")
    assert r.all_ok and r.chi_total == 0


def test_surgery_failures_carry_the_statement_line():
    plan = parse_script("surface T genus 1\nloop a = handle(T, 1)\nloop b = cycle(T, 8, 9, 10, 11)\ncollapse a\ncollapse b\n")
    # bypass the static checks: make b overlap the already collapsed loop
    markings = dict(plan.markings)
    markings["b"] = replace(markings["b"], vertices=markings["a"].vertices, edges=markings["a"].edges)
    with pytest.raises(ScriptError) as info:
        run(replace(plan, markings=markings))
    assert info.value.line == 5
    assert info.value.message.startswith("collapse failed:")


def test_oracle_in_report(scripts_dir):
    r = run_file(scripts_dir, "two_spheres_d2.sing", verify_oracle=True)
    assert r.genus_oracle == r.genus_formula == 1
    assert json.loads(export(r))["genus_oracle"] == 1
    r = run_file(scripts_dir, "three_spheres.sing", verify_oracle=True)
    assert r.genus_oracle is None
    assert any("oracle skipped" in w for w in r.warnings)
