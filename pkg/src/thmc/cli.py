"""Command-line front end.

Subcommands build design matrices, reproduce the published tables and
hyperplane blocks against the embedded fixtures, run the verification
suite, and export Hilbert bases and Markov-degree reports. Exit codes:
0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import fixtures, hilbert, markov, polyhedra, verify
from .design import DEFAULT_COLUMN_CAP, Model, build_design_matrix, distinct_columns

_USAGE_ERROR = 1
_VERIFY_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(_USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo_i, hi_i + 1))
    return [int(text)]


def _column_cap() -> int:
    return int(os.environ.get("THMC_COLUMN_CAP", DEFAULT_COLUMN_CAP))


def _hilbert_cap() -> int | None:
    value = os.environ.get("THMC_HILBERT_T_CAP")
    return int(value) if value else None


def cmd_design(args: argparse.Namespace) -> int:
    model = Model.parse(args.model)
    matrix = build_design_matrix(model, args.S, args.T, column_cap=_column_cap())
    if args.check_fixture:
        fixture = fixtures.load_design_fixture(model)
        if (fixture.S, fixture.T) != (args.S, args.T):
            print(f"no embedded fixture for model {model.value} at S={args.S}, T={args.T}", file=sys.stderr)
            return _USAGE_ERROR
        cmp = fixtures.compare_design_fixture(model)
        if model in (Model.A, Model.B):
            print(f"fixture check model {model.value}: entrywise {'PASS' if cmp.strict_entrywise else 'FAIL'}")
        else:
            perm_note = "printed data columns are a permutation of the lex-ordered build"
            if cmp.permutation == tuple(range(len(cmp.permutation or ()))):
                perm_note = "printed data matches the lex order"
            print(
                f"fixture check model {model.value}: multiset {'PASS' if cmp.columns_match_as_multiset else 'FAIL'}"
                f" ({perm_note})"
            )
        return 0 if cmp.ok else _VERIFY_ERROR
    if args.format == "csv":
        payload = matrix.to_csv()
    elif args.format == "json":
        payload = matrix.to_json() + "\n"
    else:
        widths = [max(len(str(row[i])) for row in matrix.as_rows()) for i in range(len(matrix.columns))]
        lines = []
        for label, row in zip(matrix.rows, matrix.as_rows()):
            from .design import format_row_label

            lines.append(format_row_label(label).rjust(4) + " " + " ".join(str(x).rjust(w) for x, w in zip(row, widths)))
        payload = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def _table_row(model_value: str, T: int) -> tuple[int, int, tuple[int, ...], bool]:
    model = Model.parse(model_value)
    result = hilbert.hilbert_basis(model, 3, T, max_T=_hilbert_cap())
    fv = polyhedra.f_vector(distinct_columns(model, 3, T))
    return T, result.count, fv.counts, result.normal


def cmd_tables(args: argparse.Namespace) -> int:
    model = Model.parse(args.model)
    if model not in (Model.C, Model.D):
        print("tables exist for models c and d", file=sys.stderr)
        return _USAGE_ERROR
    table = fixtures.load_tables()[model.value]
    T_values = _parse_range(args.T) if args.T else sorted(table)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_table_row, [model.value] * len(T_values), T_values))
    else:
        rows = [_table_row(model.value, T) for T in T_values]
    rows.sort()
    failed = False
    records = []
    for T, hb_count, fv, normal in rows:
        if T in table:
            hb_expected, f_expected = table[T]
            ok = hb_count == hb_expected and fv == f_expected and normal
            failed |= not ok
            status = "PASS" if ok else "FAIL"
        else:
            status = "NO-FIXTURE"
        records.append({"T": T, "hb": hb_count, "f": list(fv), "normal": normal, "status": status})
        if args.format == "text":
            print(f"T={T:2d}  #HB={hb_count:4d}  f={' '.join(str(x) for x in fv)}  {status}")
    if args.format == "json":
        print(json.dumps({"model": model.value, "rows": records}, indent=1))
    return _VERIFY_ERROR if failed else 0


def cmd_hyperplanes(args: argparse.Namespace) -> int:
    model = Model.parse(args.model)
    if model not in (Model.C, Model.D):
        print("hyperplane fixtures exist for models c and d", file=sys.stderr)
        return _USAGE_ERROR
    blocks = fixtures.load_hyperplane_blocks(model)
    T_values = _parse_range(args.T) if args.T else sorted(blocks)
    failed = False
    for T in T_values:
        nontrivial, hrep = verify.computed_nontrivial_facets(model, T)
        if args.check_fixture:
            if T not in blocks:
                print(f"T={T}: no fixture block", file=sys.stderr)
                return _USAGE_ERROR
            cmp = fixtures.compare_hyperplanes(model, T, nontrivial)
            if model is Model.D:
                count_ok = len(hrep.inequalities) == fixtures.load_tables()["d"][T][1][-1] if T in fixtures.load_tables()["d"] else True
                ok = cmp.ok and count_ok
                failed |= not ok
                print(f"T={T:2d}: {len(nontrivial)} nontrivial facets, fixture match {'PASS' if ok else 'FAIL'}")
                if not cmp.ok:
                    for h in cmp.fixture_only:
                        print(f"    fixture-only: {h}")
                    for h in cmp.computed_only:
                        print(f"    computed-only: {h}")
            else:
                print(
                    f"T={T:2d}: report: {cmp.matches} matching, "
                    f"{len(cmp.fixture_only)} fixture-only, {len(cmp.computed_only)} computed-only"
                )
        else:
            print(f"T={T}")
            sys.stdout.write(polyhedra.normals_to_block_text(list(nontrivial)))
    return _VERIFY_ERROR if failed else 0


def _run_criterion(name_seed: tuple[str, int]) -> verify.CriterionResult:
    name, seed = name_seed
    return verify.run_suite([name], seed=seed)[0]


def cmd_verify(args: argparse.Namespace) -> int:
    names = args.only.split(",") if args.only else list(verify.ALL_CRITERIA)
    unknown = [n for n in names if n not in verify.ALL_CRITERIA]
    if unknown:
        print(f"unknown criteria: {', '.join(unknown)}", file=sys.stderr)
        print(f"known: {', '.join(verify.ALL_CRITERIA)}", file=sys.stderr)
        return _USAGE_ERROR
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_criterion, [(n, args.seed) for n in names]))
    else:
        results = [_run_criterion((n, args.seed)) for n in names]
    results.sort(key=lambda r: names.index(r.name))
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        print(json.dumps({"results": [r.__dict__ for r in results], "passed": not failed}, indent=1))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:24s} {r.seconds:7.2f}s  {r.details}")
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return _VERIFY_ERROR if failed else 0


def cmd_hilbert(args: argparse.Namespace) -> int:
    result = hilbert.hilbert_basis(args.model, args.S, args.T, max_T=args.max_T or _hilbert_cap())
    if args.format == "csv":
        sys.stdout.write(result.to_csv())
    else:
        print(json.dumps(result.summary()))
    return 0


def cmd_markov(args: argparse.Namespace) -> int:
    cap = int(os.environ.get("THMC_FIBER_DEGREE_CAP", max(args.D, 4)))
    report = markov.minimal_connecting_degree(args.model, args.S, args.T, args.D, degree_cap=cap)
    print(report.to_json())
    if args.moves_out:
        moves = markov.moves_up_to_degree(args.model, args.S, args.T, args.moves_k)
        with open(args.moves_out, "w") as fh:
            fh.write(markov.moves_to_text(moves))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thmc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="build a design matrix or check it against the embedded fixture")
    p.add_argument("--model", required=True)
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--check-fixture", action="store_true")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_design)

    p = sub.add_parser("tables", help="recompute Hilbert basis sizes and f-vectors against the fixture tables")
    p.add_argument("--model", required=True)
    p.add_argument("--T", help="single T or inclusive range a..b (default: fixture rows)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("hyperplanes", help="print or fixture-check the cone facet normals")
    p.add_argument("--model", required=True)
    p.add_argument("--T", help="single T or inclusive range a..b (default: fixture blocks)")
    p.add_argument("--check-fixture", action="store_true")
    p.set_defaults(fn=cmd_hyperplanes)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--only", help="comma-separated criterion names")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("hilbert", help="compute a Hilbert basis and export it")
    p.add_argument("--model", required=True)
    p.add_argument("--S", type=int, default=3)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--max-T", type=int, dest="max_T")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(fn=cmd_hilbert)

    p = sub.add_parser("markov", help="degree-capped fiber connectivity probe")
    p.add_argument("--model", required=True)
    p.add_argument("--S", type=int, default=3)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--D", type=int, default=3)
    p.add_argument("--moves-k", type=int, default=2)
    p.add_argument("--moves-out")
    p.set_defaults(fn=cmd_markov)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"thmc: {exc}", file=sys.stderr)
        return _USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
