"""Command line entry point: ``singularize run`` and ``singularize check``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dsl import parse_script
from .errors import NoGeometry, ScriptError, SingularizeError
from .pipeline import export, run

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SCRIPT_ERROR = 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="singularize", description="Singularize closed surfaces and check Euler characteristic formulas.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="execute a script and verify the result")
    r.add_argument("script", type=Path)
    r.add_argument("--report", type=Path, help="write report JSON here instead of stdout")
    r.add_argument("--export-off", type=Path, metavar="DIR", help="write result.off into DIR")
    r.add_argument("--verify-oracle", action="store_true", help="cross-check the genus by cycle enumeration")
    r.add_argument("--seed", type=int, help="randomize zip points and identify offsets left open by the script")
    c = sub.add_parser("check", help="parse and statically validate a script")
    c.add_argument("script", type=Path)
    return ap


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise ScriptError(f"cannot read script: {exc.strerror}", 0, 0, source=str(path)) from exc


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    source = str(args.script)
    try:
        text = _read(args.script)
        plan = parse_script(text, source)
        if args.command == "check":
            for w in plan.warnings:
                print(f"{source}: warning: {w}", file=sys.stderr)
            print(f"{source}: ok (n={plan.n}, G={plan.G}, C={plan.C}, Z={plan.Z}, D={plan.D})")
            return EXIT_OK
        report = run(plan, seed=args.seed, verify_oracle=args.verify_oracle)
    except ScriptError as exc:
        if exc.source != source:
            exc = ScriptError(exc.message, exc.line, exc.column, exc.suggestion, source)
        print(exc.render(), file=sys.stderr)
        return EXIT_SCRIPT_ERROR
    except SingularizeError as exc:
        print(f"{source}: error: {exc}", file=sys.stderr)
        return EXIT_SCRIPT_ERROR

    data = export(report)
    if args.report:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    if args.export_off:
        try:
            off = export(report, format="off")
        except NoGeometry as exc:
            print(f"{source}: error: {exc}", file=sys.stderr)
            return EXIT_SCRIPT_ERROR
        args.export_off.mkdir(parents=True, exist_ok=True)
        (args.export_off / "result.off").write_bytes(off)
    status = "ok" if report.all_ok else "FAILED"
    print(
        f"{source}: {status}: chi={report.chi_total} predicted={report.predicted_chi} "
        f"components={len(report.components)}",
        file=sys.stderr,
    )
    for note in report.lemma_checks.diagnostics:
        print(f"{source}: {note}", file=sys.stderr)
    return EXIT_OK if report.all_ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
