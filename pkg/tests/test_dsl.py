from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from plan_factory import random_script
from singularize.dsl import CollapseStmt, IdentifyStmt, ZipStmt, parse_script, render_plan
from singularize.errors import ScriptError


def read(scripts_dir, name):
    return (scripts_dir / name).read_text()


def error_of(text):
    with pytest.raises(ScriptError) as info:
        parse_script(text)
    return info.value


def test_three_spheres_counts(scripts_dir):
    plan = parse_script(read(scripts_dir, "three_spheres.sing"))
    assert (plan.n, plan.G, plan.C, plan.Z, plan.D) == (3, 0, 5, 1, 1)


def test_statement_kinds():
    plan = parse_script(
        "surface T genus 1 res 6\n"
        "loop a = handle(T, 1)\n"
        "loop b = cycle(T, 12 13 14 15 16 17)  # spaces work too\n"
        "loop c = cycle(T, 24, 25, 26, 27, 28, 29)\n"
        "collapse a\n"
        "zip b at 12 15\n"
    )
    assert plan.operations == (CollapseStmt("a"), ZipStmt("b", (12, 15)))
    assert plan.loops[1].args == (12, 13, 14, 15, 16, 17)
    assert plan.markings["a"].kind == "handle"
    assert plan.markings["b"].kind == "unclassified"
    assert any("'b'" in w for w in plan.warnings)


def test_link_loops_on_spheres_are_separating():
    plan = parse_script("surface S genus 0\nloop e = link(S, 4)\ncollapse e\n")
    assert plan.markings["e"].kind == "separating"
    assert plan.warnings == ()


def test_misspelled_keyword():
    err = error_of("colapse a")
    assert (err.line, err.column) == (1, 1)
    assert err.suggestion == "collapse"
    assert "did you mean 'collapse'" in err.render()


def test_loop_reuse():
    err = error_of("surface T genus 1\nloop a = handle(T, 1)\ncollapse a\nzip a\n")
    assert err.line == 4 and "already operated" in err.message


def test_unknown_names():
    err = error_of("surface T genus 1\nloop a = handle(Q, 1)\n")
    assert (err.line, err.column) == (2, 17)
    err = error_of("surface T genus 1\nloop a = handle(T, 1)\ncollapse b\n")
    assert err.line == 3 and "unknown loop" in err.message
    err = error_of("surface T genus 1\nloop a = hndle(T, 1)\n")
    assert err.suggestion == "handle"


def test_identify_needs_two_loops():
    err = error_of("surface T genus 1\nloop a = handle(T, 1)\nidentify a a\n")
    assert err.line == 3 and "distinct" in err.message


def test_disjointness_conflict_is_located():
    err = error_of("surface T genus 1\nloop a = handle(T, 1)\nloop b = tunnel(T, 1)\ncollapse a\ncollapse b\n")
    assert (err.line, err.column) == (5, 10)
    assert "shares vertices [0]" in err.message


def test_syntax_errors_are_located():
    err = error_of("surface T genus\n")
    assert err.line == 1 and "expected genus" in err.message
    err = error_of("surface T genus 1\n\nloop a = handle(T, 1) extra\n")
    assert err.line == 3 and err.column == 23
    err = error_of("surface T genus 1 $\n")
    assert err.column == 19
    err = error_of("surface T genus 1\nloop a = handle(T, 1)\nidentify a b offest 2\n")
    assert err.line == 3


def test_bad_loop_definitions():
    assert "no edge" in error_of("surface T genus 1\nloop a = cycle(T, 0, 2, 3)\n").message
    assert "no handle loop" in error_of("surface T genus 1\nloop a = handle(T, 2)\n").message
    assert "at least 3" in error_of("surface T genus 1\nloop a = cycle(T, 0, 1)\n").message
    assert error_of("surface T genus 2 res 2\n").line == 1


def test_zip_points_must_lie_on_loop():
    err = error_of("surface T genus 1\nloop a = handle(T, 1)\nzip a at 0 9\n")
    assert err.line == 3
    err = error_of("surface T genus 1\nloop a = handle(T, 1)\nzip a at 1 1\n")
    assert "differ" in err.message


def test_duplicate_declarations():
    assert "already declared" in error_of("surface T genus 1\nsurface T genus 0\n").message
    assert "already declared" in error_of("surface T genus 1\nloop a = handle(T, 1)\nloop a = tunnel(T, 1)\n").message


def test_comments_and_blank_lines():
    plan = parse_script("# nothing here\n\n   # indented comment\nsurface S genus 0  # trailing\n")
    assert plan.n == 1 and plan.operations == ()


def test_render_round_trip_of_explicit_plan():
    text = (
        "surface A genus 2 res 5\nsurface B genus 0\n"
        "loop a = separating(A, 1)\nloop b = link(B, 4)\nloop c = handle(A, 2)\n"
        "identify a b offset 3 reverse\nzip c at 25 27\n"
    )
    plan = parse_script(text)
    assert render_plan(plan) == text
    assert plan.operations[0] == IdentifyStmt("a", "b", 3, True)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_render_round_trips_random_scripts(seed):
    plan = parse_script(random_script(random.Random(seed)))
    again = parse_script(render_plan(plan))
    assert again == plan
    assert render_plan(again) == render_plan(plan)
